"""Largest dimension carrying a code of the extremal length (s+1)(q+1)+k-2.

Shortening an extremal-length system at a multiplicity-one point (long codes
are projective, so one always exists) produces an extremal-length system one
dimension lower; the property is therefore downward closed in k, and the
first dimension where the rule engine or an integrality report excludes the
extremal length pins the maximum exactly, provided a witness exists just
below it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .integrality import FULL_LENGTH, extremal_length, integrality
from .rules import BoundQuery, best_upper, upper_bounds
from ..projsystem import ProjectiveSystem, min_distance

KAPPA_02_NOTE = (
    "even-weight [k+1, k, 2] binary codes attain the extremal length with "
    "s = 0 for every k, so no finite upper bound is reported here; the "
    "conjectured value kappa(0, 2) = 3 disagrees with these witnesses"
)


@dataclass(frozen=True)
class KappaEntry:
    s: int
    q: int
    lower: int
    upper: int | None
    status: str                      # "exact" | "interval"
    witness: str | None              # construction name or "search" at the lower value
    upper_rule: str | None
    note: str | None = None
    search_outcomes: tuple[tuple[int, str], ...] = ()


def _even_weight_system(k: int) -> ProjectiveSystem:
    from ..projsystem import from_generator_matrix
    from ..gf import field

    rows = [[1 if j == i else 0 for j in range(k)] + [1] for i in range(k)]
    return from_generator_matrix(rows, field(2))


def _witness_candidates(k: int, q: int, s: int):
    from .. import constructions as cons

    if k == 2:
        yield "two_dim_extremal", lambda: cons.two_dim_extremal(q, s)
    if k == 3:
        if s == 0 and q % 2 == 0:
            yield "hyperoval", lambda: cons.hyperoval(q)
        if q % 2 == 0 and s + 2 >= 2 and (s + 2) & (s + 1) == 0 and q % (s + 2) == 0:
            yield "denniston", lambda: cons.denniston(q, s + 2)
        if s == q - 1:
            yield "full_space", lambda: cons.full_space(3, q)
        if s == q - 2:
            yield "plane_minus_line", lambda: cons.plane_minus_line(q)
    if k == 4:
        if s == q - 2:
            yield "elliptic_quadric", lambda: cons.elliptic_quadric(q)
        if (q, s) == (2, 1):
            yield "cap8_pg32", lambda: cons.cap8_pg32()
    if q == 2 and s == 0 and k >= 2:
        yield "even_weight", lambda: _even_weight_system(k)


def _verified_witness(k: int, q: int, s: int) -> str | None:
    """Name of a catalog construction that is extremal-length at (k, q, s)."""
    target = extremal_length(k, q, s)
    for name, build in _witness_candidates(k, q, s):
        try:
            ps = build()
        except Exception:
            continue
        if ps.n != target or ps.k != k:
            continue
        d, _ = min_distance(ps)
        if ps.n - ps.k + 1 - d == s:
            return name
    return None


def _excluded(k: int, q: int, s: int) -> str | None:
    """Rule id excluding the extremal length at dimension k, or None."""
    target = extremal_length(k, q, s)
    ub = best_upper(k, q, s)
    if ub is not None and ub < target:
        for r in upper_bounds(BoundQuery(k=k, q=q, s=s)):
            if r.binding:
                return r.rule_id
        return "engine"
    if k >= 3:
        for rep in integrality(target, k, q, s, FULL_LENGTH):
            if not rep.all_integer:
                return f"integrality:gamma_{rep.j}"
    return None


def kappa(s: int, q: int, search_budget: int | None = None, max_scan_k: int = 0) -> KappaEntry:
    """Bracket the maximum dimension with an extremal-length code.

    Lower bounds come from verified catalog witnesses (plus the search when a
    budget is given); the upper bound is one below the first dimension the
    engine or an integrality sweep excludes.
    """
    if s < 0:
        raise ValueError("defect must be nonnegative")
    scan_cap = max_scan_k or max(q + 2, 8)

    upper: int | None = None
    upper_rule: str | None = None
    for k in range(3, scan_cap + 1):
        rule = _excluded(k, q, s)
        if rule is not None:
            upper = k - 1
            upper_rule = rule
            break

    lower, witness = 2, "two_dim_extremal"
    top = upper if upper is not None else scan_cap
    for k in range(3, top + 1):
        name = _verified_witness(k, q, s)
        if name is not None and k > lower:
            lower, witness = k, name

    search_outcomes: list[tuple[int, str]] = []
    if search_budget is not None and (upper is None or lower < upper):
        from ..search import verify_kappa_entry

        for k in range(lower + 1, top + 1):
            outcome = verify_kappa_entry(s, q, k, budget=search_budget)
            search_outcomes.append((k, outcome.kind))
            if outcome.kind == "exists":
                lower, witness = k, "search"
            else:
                if outcome.kind == "exhausted_no_code" and upper is None:
                    # exhaustive search certifies nonexistence; downward closure
                    # then caps every higher dimension as well
                    upper, upper_rule = k - 1, "search_exhausted"
                break

    note = KAPPA_02_NOTE if (s, q) == (0, 2) else None
    status = "exact" if upper is not None and lower == upper else "interval"
    return KappaEntry(
        s=s,
        q=q,
        lower=lower,
        upper=upper,
        status=status,
        witness=witness,
        upper_rule=upper_rule,
        note=note,
        search_outcomes=tuple(search_outcomes),
    )
