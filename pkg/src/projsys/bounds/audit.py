"""Consistency audit: a concrete system against every applicable rule.

A failed check means the engine, a construction, or a rule transcription is
wrong, never the system: audited systems exist, so every sound bound must
hold for them.  Structural rules that need facts about the specific point
set (disjoint lines, heavy flats, weight-spectrum gaps) get those facts
computed here and attached to the query.
"""

from __future__ import annotations

from dataclasses import dataclass

from .integrality import FULL_LENGTH, NEAR_FULL_LENGTH, extremal_length, integrality
from .rules import BoundQuery, upper_bounds, _both_two_powers
from ..projsystem import (
    ProjectiveSystem,
    hyperplane_counts,
    params,
    support_flat,
    weight_distribution,
)


class RuleViolationError(AssertionError):
    def __init__(self, rule_id: str, detail: str):
        super().__init__(f"{rule_id}: {detail}")
        self.rule_id = rule_id


@dataclass(frozen=True)
class AuditCheck:
    rule_id: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class AuditReport:
    checks: tuple[AuditCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violations(self) -> tuple[AuditCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


def _fat_flat_excess(ps: ProjectiveSystem) -> int | None:
    """Max a with some (k-3)-flat holding k-2+a weighted points; small k only."""
    k = ps.k
    if k == 3:
        return max(ps.mult.values()) - 1
    if k == 4 and len(ps.mult) <= 64:
        gf = ps.geometry.field
        support = list(ps.mult)
        best = 0
        for i in range(len(support)):
            for j in range(i + 1, len(support)):
                line = support_flat(ps, (support[i], support[j]))
                mass = sum(
                    m for idx, m in ps.mult.items()
                    if line.contains(ps.geometry.points[idx], gf)
                )
                best = max(best, mass - 2)
        return best
    return None


def structural_query(ps: ProjectiveSystem) -> BoundQuery:
    """Bound query enriched with facts observed on the concrete system."""
    p = params(ps)
    counts = hyperplane_counts(ps)
    weight_alpha = None
    if p.t == 1:
        wd = weight_distribution(ps)
        alphas = [a for a in range(p.s + 2) if wd.get(p.d + p.s + 1 - a, 0) > 0]
        weight_alpha = min(alphas) if alphas else None
    return BoundQuery(
        k=p.k,
        q=ps.q,
        s=p.s,
        t=p.t,
        d=p.d,
        has_disjoint_line=(p.k == 3 and 0 in counts),
        hyperplane_meets_k_minus_3=(p.k >= 3 and (p.k - 3) in counts),
        fat_flat_excess=_fat_flat_excess(ps) if p.k >= 3 else None,
        weight_alpha=weight_alpha,
    )


def audit(ps: ProjectiveSystem, raise_on_violation: bool = False) -> AuditReport:
    """Check the system against every fired bound and every forcing theorem."""
    if ps.zero_mult > 0:
        raise ValueError("bound rules exclude degenerate systems")
    p = params(ps)
    n, k, q, s, t = p.n, p.k, ps.q, p.s, p.t
    checks: list[AuditCheck] = []

    def check(rule_id: str, passed: bool, detail: str) -> None:
        checks.append(AuditCheck(rule_id, passed, detail))

    query = structural_query(ps)
    for r in upper_bounds(query):
        if r.target == "n":
            check(f"bound:{r.rule_id}", n <= r.value, f"n={n} vs bound {r.value}")
        else:
            check(f"bound:{r.rule_id}", k <= r.value, f"k={k} vs bound {r.value}")

    if k > 2:
        check(
            "projectivity_criterion",
            p.projective == (p.d_perp >= 3),
            f"projective={p.projective}, d_perp={p.d_perp}",
        )
    if s >= 1 and k >= 2 and n > s * (q + 1) + k - 1:
        check("forcing:long_t1", t <= 1, f"n={n} forces t <= 1, got t={t}")
    if k > 2 and n > s * (q + 1) + k - 1:
        check("forcing:long_projective", p.projective, f"n={n} forces a projective system")
    if k >= 3 and n > s * (q + 1) + k - 1:
        # Both conclusions need the strict threshold: at n = s(q+1)+k-1 the
        # codes [7,5,2]_2 (Griesmer sum 6, t=4) and [15,4,8]_2 (t=2) exist.
        check("forcing:long_griesmer", p.griesmer_met, f"n={n} forces Griesmer equality")
        if s >= 1:
            check("forcing:long_griesmer_t1", t == 1, f"n={n} forces t=1, got t={t}")
    if (
        1 < s < q - 1
        and not _both_two_powers(s + 1, q)
        and k > (s - 1) * (q + 1) - 1
        and n > s * (q + 1) + k - 3
    ):
        check("forcing:nsmds", t == s, f"conditions force t=s={s}, got t={t}")
    if k >= 3 and n == extremal_length(k, q, s):
        reports = integrality(n, k, q, s, FULL_LENGTH)
        check(
            "forcing:full_length_integrality",
            all(rep.all_integer for rep in reports),
            "secant counts must be integers at the extremal length",
        )
    if k >= 3 and s >= 1 and n == extremal_length(k, q, s) - 1:
        reports = integrality(n, k, q, s, NEAR_FULL_LENGTH)
        check(
            "forcing:near_full_length_integrality",
            all(rep.all_integer for rep in reports),
            "tangent and secant counts must be integers one below the extremal length",
        )

    report = AuditReport(checks=tuple(checks))
    if raise_on_violation and not report.ok:
        bad = report.violations[0]
        raise RuleViolationError(bad.rule_id, bad.detail)
    return report
