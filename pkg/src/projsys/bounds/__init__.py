"""Bound rule engine: length caps, integrality tests, extremal dimensions, audits."""

from .audit import AuditCheck, AuditReport, RuleViolationError, audit, structural_query
from .integrality import (
    FULL_LENGTH,
    NEAR_FULL_LENGTH,
    IntegralityReport,
    ModeMismatchError,
    expected_length,
    extremal_length,
    gamma_factorial_form,
    integrality,
    prime_window_hit,
)
from .kappa import KappaEntry, kappa
from .mds import MdsValue, m_mds
from .rules import (
    BoundQuery,
    BoundResult,
    best_lower,
    best_upper,
    binding_rule,
    explain_rules,
    lower_bounds,
    upper_bounds,
)

__all__ = [
    "AuditCheck",
    "AuditReport",
    "RuleViolationError",
    "audit",
    "structural_query",
    "FULL_LENGTH",
    "NEAR_FULL_LENGTH",
    "IntegralityReport",
    "ModeMismatchError",
    "expected_length",
    "extremal_length",
    "gamma_factorial_form",
    "integrality",
    "prime_window_hit",
    "KappaEntry",
    "kappa",
    "MdsValue",
    "m_mds",
    "BoundQuery",
    "BoundResult",
    "best_lower",
    "best_upper",
    "binding_rule",
    "explain_rules",
    "lower_bounds",
    "upper_bounds",
]
