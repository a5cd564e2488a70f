"""Length-bound rule engine for codes of given dimension, field, and defect.

Every bound is a datum: an identifier, a predicate over the query, a value
formula, and a citation naming the underlying argument or literature result.
upper_bounds fires all applicable rules; the minimum n-bound is the engine's
answer.  Rules marked target "k" cap the dimension instead of the length.

Two composite rules encode forcing arguments: a code longer than
s(q+1)+k-1 must be dual to an AMDS code, and (under the stated side
conditions) a code longer than s(q+1)+k-3 must have dual defect exactly s,
so best bounds for unconstrained t fold in the corresponding t-specific
engines.  Recursive rules (dimension reduction, quotient chains) bottom out
at the exact two-dimensional value (s+1)(q+1) and are memoized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

from .integrality import prime_window_hit
from .mds import MdsValue, m_mds
from ..geometry import theta


@dataclass(frozen=True)
class BoundQuery:
    k: int
    q: int
    s: int
    t: int | None = None
    d: int | None = None
    # structural facts about one concrete system, supplied by audit only
    has_disjoint_line: bool = False
    hyperplane_meets_k_minus_3: bool = False
    fat_flat_excess: int | None = None
    weight_alpha: int | None = None

    def __post_init__(self):
        if self.k < 1 or self.s < 0 or self.q < 2:
            raise ValueError("need k >= 1, s >= 0, q >= 2")


@dataclass(frozen=True)
class BoundResult:
    value: int
    direction: str          # "upper" | "lower"
    target: str             # "n" | "k"
    rule_id: str
    citation: str
    conditions_used: tuple[str, ...]
    binding: bool = False
    witness: str | None = None


class _Skip(Exception):
    def __init__(self, reason: str):
        self.reason = reason


def _is_two_power(x: int) -> bool:
    return x >= 2 and (x & (x - 1)) == 0


def _both_two_powers(a: int, q: int) -> bool:
    return _is_two_power(a) and _is_two_power(q)


# ---------------------------------------------------------------------------
# upper-bound rules


@dataclass(frozen=True)
class Rule:
    rule_id: str
    target: str
    citation: str
    fn: Callable[[BoundQuery], tuple[int, tuple[str, ...]]]
    composite: bool = False  # uses the engine recursively on the same (k, q, s)


def _require(cond: bool, reason: str) -> None:
    if not cond:
        raise _Skip(reason)


def _mds_upper(k: int, q: int) -> int | None:
    return m_mds(k, q).upper


def _r_max_multiarc(b: BoundQuery):
    _require(b.k >= 2, "needs k >= 2")
    return (b.s + 1) * (b.q + 1) + b.k - 2, (f"k={b.k} >= 2",)


def _r_one_dim_defect(b: BoundQuery):
    _require(b.k == 1 and b.s >= 1, "needs k = 1 and s >= 1")
    return 0, ("k = 1", "s >= 1: a non-degenerate 1-dim code has d = n")


def _r_mds_value(b: BoundQuery):
    _require(b.s == 0, "needs s = 0")
    mv = m_mds(b.k, b.q)
    _require(mv.upper is not None, "m(1, q) is unbounded")
    return mv.upper, ("s = 0", mv.rule)


def _r_barlotti_gap(b: BoundQuery):
    _require(b.k >= 3, "needs k >= 3")
    _require(0 < b.s < b.q - 2, "needs 0 < s < q-2")
    _require(not _both_two_powers(b.s + 2, b.q), "(s+2, q) are both powers of 2")
    return (b.s + 1) * (b.q + 1) + b.k - 4, ("0 < s < q-2", "(s+2, q) not both 2-powers")


def _r_planar_prime(b: BoundQuery):
    # q >= 5 keeps the arc degree s+2 below q; at q <= 3 the window admits
    # degree q, where the affine plane attains q^2 points.
    _require(b.k >= 3, "needs k >= 3")
    _require(b.q >= 5 and _is_prime(b.q), "needs prime q >= 5")
    _require(2 * (b.s + 2) <= b.q + 3, "needs s+2 <= (q+3)/2")
    return (b.s + 1) * b.q + b.k - 2, ("q prime, q >= 5", "s+2 <= (q+3)/2")


def _r_planar_coprime(b: BoundQuery):
    _require(b.k >= 3, "needs k >= 3")
    _require(math.gcd(b.s + 2, b.q) == 1, "needs gcd(s+2, q) = 1")
    _require((b.s + 1) ** 2 < 2 * b.q, "needs s < sqrt(2q) - 1")
    return (b.s + 1) * b.q + b.k - 2, ("gcd(s+2, q) = 1", "s < sqrt(2q)-1")


def _r_planar_odd_divisor(b: BoundQuery):
    _require(b.k >= 3, "needs k >= 3")
    _require(b.q % 2 == 1, "needs odd q")
    _require(b.q % (b.s + 2) == 0, "needs (s+2) | q")
    _require(16 * (b.s + 2) ** 2 < b.q, "needs s < sqrt(q)/4 - 2")
    return (b.s + 1) * b.q + b.k - 2, ("q odd", "(s+2) | q", "s < sqrt(q)/4 - 2")


def _r_disjoint_line(b: BoundQuery):
    _require(b.k == 3, "needs k = 3")
    _require(math.gcd(b.s + 2, b.q) == 1, "needs gcd(s+2, q) = 1")
    _require(b.has_disjoint_line, "needs a line disjoint from the system")
    return (b.s + 1) * b.q + 1, ("gcd(s+2, q) = 1", "a disjoint line exists")


def _r_thin_hyperplane(b: BoundQuery):
    # The quotient to a plane has some defect s' <= s: the disjoint-line
    # bound needs gcd(s'+2, q) = 1 when s' = s, and s <= q covers s' < s.
    _require(b.k >= 3, "needs k >= 3")
    _require(b.hyperplane_meets_k_minus_3, "needs a hyperplane meeting in exactly k-3 points")
    _require(math.gcd(b.s + 2, b.q) == 1, "needs gcd(s+2, q) = 1")
    _require(b.s <= b.q, "needs s <= q")
    return b.q * (b.s + 1) + b.k - 2, (
        "some hyperplane meets the system in k-3 points",
        "gcd(s+2, q) = 1",
        "s <= q",
    )


def _r_fat_flat(b: BoundQuery):
    _require(b.k >= 3, "needs k >= 3")
    a = b.fat_flat_excess
    _require(a is not None and a >= 1, "needs a (k-3)-flat with at least k-1 points")
    return (b.s + 1 - a) * (b.q + 1) + b.k - 2 + a, (f"(k-3)-flat holding k-2+{a} points",)


def _r_big_s(b: BoundQuery):
    _require(b.k >= 3, "needs k >= 3")
    alpha = (b.s + 1) // (b.q + 1)
    _require(alpha >= 1, "needs s >= q")
    return (b.s + 1 - alpha) * (b.q + 1) + b.k - 2 + alpha, (f"s >= {alpha}(q+1)-1",)


def _r_mc_big_s(b: BoundQuery):
    _require(b.k >= 3, "needs k >= 3")
    mv = m_mds(b.k - 1, b.q)
    _require(mv.exact and mv.upper == b.q + 1, "needs m(k-1, q) = q+1 exactly")
    _require(b.s > b.q + 2 - b.k, "needs s > q+2-k")
    return b.s * (b.q + 1) + b.k - 1, ("m(k-1, q) = q+1", "s > q+2-k")


def _r_big_d(b: BoundQuery):
    _require(b.k >= 3, "needs k >= 3")
    _require(b.d is not None, "needs a known minimum distance")
    alpha = (b.d + b.q - 1) // (b.q * b.q + b.q)
    _require(alpha >= 1, "needs d > q^2")
    return (b.s + 1 - alpha) * (b.q + 1) + b.k - 2 + alpha, (f"d > {alpha}(q^2+q)-q",)


def _r_defect_vs_mds(b: BoundQuery):
    _require(b.s >= 1 and b.k >= 3, "needs s >= 1 and k >= 3")
    mu = _mds_upper(b.k - 1, b.q)
    _require(mu is not None, "m(k-1, q) unbounded")
    _require(b.s > mu - b.k + 1, "needs s > m(k-1, q)-k+1")
    return b.s * (b.q + 1) + b.k - 1, (f"s > m(k-1,q)-k+1 = {mu - b.k + 1}",)


def _r_k_gt_q(b: BoundQuery):
    _require(b.s > 1 and b.k > b.q, "needs s > 1 and k > q")
    return b.s * (b.q + 1) + b.k - 1, ("s > 1", "k > q")


def _r_sq_qm1_high_k(b: BoundQuery):
    _require(b.s == b.q - 1 and b.q > 2 and b.k >= 4, "needs s = q-1, q > 2, k >= 4")
    return b.s * (b.q + 1) + b.k - 1, ("s = q-1", "q > 2", "k >= 4")


def _r_sq_qm2_high_k(b: BoundQuery):
    _require(b.s == b.q - 2 and b.q > 2 and b.k >= 5, "needs s = q-2, q > 2, k >= 5")
    return b.s * (b.q + 1) + b.k - 1, ("s = q-2", "q > 2", "k >= 5")


def _r_binary_qm1_high_k(b: BoundQuery):
    _require(b.q == 2 and b.s == 1 and b.k >= 5, "needs q = 2, s = 1, k >= 5")
    return b.k + 2, ("q = 2", "s = q-1 = 1", "k >= 5")


def _prime_rule(variant: int, drop: int):
    def fn(b: BoundQuery):
        _require(b.k >= 3 and b.s >= 1, "needs k >= 3 and s >= 1")
        p = prime_window_hit(b.k, b.q, b.s, variant)
        _require(p is not None, "no prime in the divisibility window")
        return (b.s + 1) * (b.q + 1) + b.k - 2 - drop, (f"prime {p} hits window variant {variant}",)

    return fn


def _r_dim_reduction(b: BoundQuery):
    _require(b.k >= 3, "needs k >= 3")
    sub = best_upper(b.k - 1, b.q, b.s)
    _require(sub is not None, "no bound one dimension down")
    return sub + 1, (f"m^s({b.k - 1},{b.q}) <= {sub}",)


def _r_long_forces_t1(b: BoundQuery):
    _require(b.t is None, "t already constrained")
    _require(b.s >= 1 and b.k >= 2, "needs s >= 1 and k >= 2")
    with_t1 = best_upper(b.k, b.q, b.s, t=1)
    _require(with_t1 is not None, "no t=1 bound available")
    return max(b.s * (b.q + 1) + b.k - 1, with_t1), (
        "any longer code is dual to an AMDS code",
        f"t=1 engine bound {with_t1}",
    )


def _r_nsmds_forcing(b: BoundQuery):
    _require(1 < b.s < b.q - 1, "needs 1 < s < q-1")
    _require(not _both_two_powers(b.s + 1, b.q), "(s+1, q) are both powers of 2")
    _require(b.k > (b.s - 1) * (b.q + 1) - 1, "needs k > (s-1)(q+1)-1")
    threshold = b.s * (b.q + 1) + b.k - 3
    conds = ("1 < s < q-1", "(s+1, q) not both 2-powers", "k > (s-1)(q+1)-1")
    if b.t is None:
        with_ts = best_upper(b.k, b.q, b.s, t=b.s)
        _require(with_ts is not None, "no t=s bound available")
        return max(threshold, with_ts), conds + (f"t=s engine bound {with_ts}",)
    _require(b.t != b.s, "dual defect already equals s")
    return threshold, conds + (f"t={b.t} != s excluded beyond this length",)


# -- t-specific rules ----------------------------------------------------------


def _r_dual_amds_cap(b: BoundQuery):
    _require(b.t is not None and b.t > 1 and b.s >= 1, "needs t > 1 and s >= 1")
    return b.s * (b.q + 1) + b.k - 1, ("t > 1",)


def _r_dual_dim_cap(b: BoundQuery):
    _require(b.t is not None and b.t >= 1 and b.s > 1, "needs s > 1 and t >= 1")
    return b.t * (b.q + 1) - 1, ("s > 1",)


def _r_dual_len_cap(b: BoundQuery):
    _require(b.t is not None and b.t >= 1 and b.s >= 1, "needs s, t >= 1")
    return (b.t + 1) * (b.q + 1) - 2, ("s >= 1", "t >= 1")


def _r_nmds_len(b: BoundQuery):
    _require(b.s == 1 and b.t == 1, "needs s = t = 1")
    return 2 * b.q + b.k, ("s = t = 1",)


def _r_nmds_q_gt_3(b: BoundQuery):
    _require(b.s == 1 and b.t == 1 and b.q > 3 and b.k >= 3, "needs s = t = 1, q > 3, k >= 3")
    return 2 * b.q + b.k - 2, ("s = t = 1", "q > 3", "k >= 3")


def _r_nmds_extremal_k(b: BoundQuery):
    _require(b.s == 1 and b.t == 1 and b.q > 3, "needs s = t = 1 and q > 3")
    _require(b.k in (2 * b.q - 1, 2 * b.q), "needs k = 2q-1 or 2q")
    return b.k + 2, ("s = t = 1", "q > 3", "k in {2q-1, 2q}")


def _r_nmds_k_gt_2q(b: BoundQuery):
    _require(b.s == 1 and b.t == 1 and b.k > 2 * b.q, "needs s = t = 1 and k > 2q")
    return b.k + 1, ("s = t = 1", "k > 2q")


def _r_nsmds_len(b: BoundQuery):
    _require(b.t is not None and b.s == b.t and b.s > 1, "needs s = t > 1")
    return b.s * (b.q + 1) + b.k - 1, ("s = t > 1",)


def _r_nsmds_dim(b: BoundQuery):
    _require(b.t is not None and b.s == b.t and b.s > 1, "needs s = t > 1")
    return b.s * (b.q + 1) - 1, ("s = t > 1",)


def _r_dual_mds_embed(b: BoundQuery):
    _require(b.t == 1 and b.s >= 1, "needs t = 1 and s >= 1")
    mu = _mds_upper(b.k - 1, b.q)
    _require(mu is not None, "m(k-1, q) unbounded")
    _require(b.k + b.s - 1 > mu, "secant arc fits: k+s-1 <= m(k-1, q)")
    return b.k + b.s, (f"k+s-1 = {b.k + b.s - 1} > m(k-1,q) = {mu} forces d = 1",)


def _r_dual_secant_embed(b: BoundQuery):
    _require(b.s == 1 and b.t is not None and b.t >= 2, "needs s = 1 and t >= 2")
    top = (b.s + 1) * (b.q + 1) + b.k - 2
    value = b.k + 1
    for n in range(top, b.k + 1, -1):
        j = n - b.k - 1
        if j < 1:
            value = n
            break
        mu = _mds_upper(j, b.q)
        if mu is None or n - b.k + b.t - 1 <= mu:
            value = n
            break
    _require(value < top, "no improvement over the extremal length")
    return value, ("dual secant arc needs k_perp+t-1 <= m(k_perp-1, q)",)


def _r_big_k_t1(b: BoundQuery):
    _require(b.s in (0, 1) and b.t is not None and b.t >= 1, "needs s in {0, 1} and t >= 1")
    _require(b.k >= (b.t + 1) * (b.q + 1) - 1, "needs k >= (t+1)(q+1)-1")
    return b.k + 1, ("s <= 1", "k >= (t+1)(q+1)-1")


def _r_big_k_ts(b: BoundQuery):
    _require(b.s > 1 and b.t is not None and b.t >= 1, "needs s > 1 and t >= 1")
    _require(b.k >= b.t * (b.q + 1), "needs k >= t(q+1)")
    return b.k + b.s, ("s > 1", "k >= t(q+1)")


def _r_big_d_t2(b: BoundQuery):
    _require(b.t is not None and b.t > 1 and b.k >= 3, "needs t > 1 and k >= 3")
    _require(b.d is not None, "needs a known minimum distance")
    alpha = (b.d + 2 * b.q - 1) // (b.q * b.q + b.q)
    _require(alpha >= 1, "needs d > q^2 - q")
    return (b.s + 1 - alpha) * (b.q + 1) + b.k - 2 + alpha, (f"d > {alpha}(q^2+q)-2q", "t > 1")


def _r_amds_no_k_s1(b: BoundQuery):
    _require(b.t == 1 and b.s == 1 and b.k >= 3 and b.q > 3, "needs s = 1, t = 1, k >= 3, q > 3")
    return 4 * (b.q + 1) - 6, ("s = 1", "t = 1", "q > 3")


def _r_amds_no_k_sgt1(b: BoundQuery):
    # s > 1 with an AMDS dual caps the dimension at q; composing with the
    # extremal length cap gives (s+1)(q+1)+q-2 = (s+2)(q+1)-3.
    _require(b.t == 1 and b.s > 1 and b.k >= 3 and b.q > 3, "needs s > 1, t = 1, k >= 3, q > 3")
    return (b.s + 2) * (b.q + 1) - 3, ("s > 1", "t = 1", "q > 3")


def _r_amds_dual_bound(b: BoundQuery):
    _require(b.s == 1 and b.t is not None and b.t >= 2 and b.k >= 2, "needs s = 1 and t >= 2")
    return b.q + b.k, ("s = 1", "t >= 2")


def _r_amds_dual_big_t(b: BoundQuery):
    _require(b.s == 1 and b.t is not None and b.t >= b.q, "needs s = 1 and t >= q")
    return b.k + 2, ("s = 1", "t >= q")


def _r_amds_dual_mds_exact(b: BoundQuery):
    _require(b.s == 1 and b.t is not None and b.t >= 2, "needs s = 1 and t >= 2")
    mv = m_mds(b.t, b.q)
    _require(mv.exact and mv.upper == b.q + 1, "needs m(t, q) = q+1 exactly")
    return b.q + b.k + 2 - b.t, ("s = 1", "t >= 2", "m(t, q) = q+1")


def _r_t3_planar_reduction(b: BoundQuery):
    _require(b.t is not None and b.t >= 3 and b.s >= 1, "needs t >= 3 and s >= 1")
    sub = best_upper(3, b.q, b.s - 1)
    _require(sub is not None, "no planar bound at defect s-1")
    return sub + b.k - 2, (f"m^(s-1)(3,{b.q}) <= {sub}",)


def _r_dual_defect_chain(b: BoundQuery):
    _require(b.t is not None and b.t >= 2 and b.s >= 1 and b.k >= 3, "needs t >= 2, s >= 1, k >= 3")
    sub = best_upper(b.t, b.q, b.s - 1)
    _require(sub is not None, "no bound for the quotient dimension")
    return sub + b.k - b.t + 1, (f"m^(s-1)({b.t},{b.q}) <= {sub}",)


def _r_weight_gap(b: BoundQuery):
    _require(b.t == 1, "needs t = 1")
    _require(b.weight_alpha is not None, "needs the observed weight spectrum gap")
    a = b.weight_alpha
    return b.q * (b.s + 1) + b.k - 2 + a, (f"a codeword of weight d+s+1-{a} exists",)


def _is_prime(x: int) -> bool:
    return x >= 2 and all(x % f for f in range(2, int(x**0.5) + 1))


UPPER_RULES: tuple[Rule, ...] = (
    Rule("max_multiarc", "n", "hyperplane cap k+s-1 over the pencil through a point", _r_max_multiarc),
    Rule("one_dim_defect", "n", "non-degenerate one-dimensional codes are MDS", _r_one_dim_defect),
    Rule("mds_value", "n", "known values of m(k, q)", _r_mds_value),
    Rule("barlotti_gap", "n", "Barlotti; Ball-Blokhuis-Mazzocca maximal-arc exclusion", _r_barlotti_gap),
    Rule("planar_prime", "n", "Ball: arcs in prime-order planes", _r_planar_prime),
    Rule("planar_coprime", "n", "Ball-Hirschfeld: arcs with degree coprime to q", _r_planar_coprime),
    Rule("planar_odd_divisor", "n", "planar arcs, odd q with (s+2) | q", _r_planar_odd_divisor),
    Rule("disjoint_line", "n", "arcs missing a line, degree coprime to q", _r_disjoint_line),
    Rule("thin_hyperplane", "n", "quotient to a plane with a disjoint line", _r_thin_hyperplane),
    Rule("fat_flat", "n", "pencil count through a heavy (k-3)-flat", _r_fat_flat),
    Rule("big_s", "n", "heavy flats forced by large defect", _r_big_s),
    Rule("mc_big_s", "n", "secant-arc embedding when m(k-1, q) = q+1", _r_mc_big_s),
    Rule("big_d", "n", "large distance forces a heavy pencil", _r_big_d),
    Rule("defect_vs_mds", "n", "secant arcs embed in MDS arcs one dimension down", _r_defect_vs_mds),
    Rule("k_gt_q", "n", "dimension above q forces short codes for s > 1", _r_k_gt_q),
    Rule("sq_qm1_high_k", "n", "no (q^2+2)-caps: Bose, Qvist", _r_sq_qm1_high_k),
    Rule("sq_qm2_high_k", "n", "m(4, q) <= q+1 blocks s = q-2 beyond k = 4", _r_sq_qm2_high_k),
    Rule("binary_qm1_high_k", "n", "binary NMDS codes stop at k = 4", _r_binary_qm1_high_k),
    Rule("prime_divisor_1", "n", "secant-count integrality, full length", _prime_rule(1, 1)),
    Rule("prime_divisor_2", "n", "tangent-count integrality, near-full length", _prime_rule(2, 2)),
    Rule("prime_divisor_3", "n", "secant-count integrality, near-full length", _prime_rule(3, 2)),
    Rule("dim_reduction", "n", "point shortening drops the dimension by one", _r_dim_reduction, composite=True),
    Rule("long_forces_t1", "n", "long codes are dual to AMDS codes", _r_long_forces_t1, composite=True),
    Rule("nsmds_forcing", "n", "long codes here have dual defect exactly s", _r_nsmds_forcing, composite=True),
    Rule("dual_amds_cap", "n", "quotient at a heavy flat from the dual dependency", _r_dual_amds_cap),
    Rule("dual_dim_cap", "k", "dual view of the t > 1 length cap", _r_dual_dim_cap),
    Rule("dual_len_cap", "k", "weight-gap bound applied to the dual code", _r_dual_len_cap),
    Rule("nmds_len", "n", "Dodunekov-Landjev NMDS length bound", _r_nmds_len),
    Rule("nmds_q_gt_3", "n", "NMDS length bound for q > 3", _r_nmds_q_gt_3),
    Rule("nmds_extremal_k", "n", "NMDS codes of dimension 2q-1 and 2q", _r_nmds_extremal_k),
    Rule("nmds_k_gt_2q", "n", "Dodunekov-Landjev: m'(k, q) = k+1 beyond k = 2q", _r_nmds_k_gt_2q),
    Rule("nsmds_len", "n", "self-dual defect length cap", _r_nsmds_len),
    Rule("nsmds_dim", "k", "self-dual defect dimension cap", _r_nsmds_dim),
    Rule("dual_mds_embed", "n", "secants carry (k+s-1)-point MDS-type arcs", _r_dual_mds_embed),
    Rule("dual_secant_embed", "n", "dual secants carry (k_perp+t-1)-point arcs", _r_dual_secant_embed),
    Rule("big_k_t1", "n", "very high dimension forces d = 1, s <= 1", _r_big_k_t1),
    Rule("big_k_ts", "n", "very high dimension forces d = 1, s > 1", _r_big_k_ts),
    Rule("big_d_t2", "n", "large distance with t > 1 forces heavy pencils", _r_big_d_t2),
    Rule("amds_no_k_s1", "n", "dimension-free cap for NMDS, q > 3", _r_amds_no_k_s1),
    Rule("amds_no_k_sgt1", "n", "dimension-free cap for duals of AMDS, q > 3", _r_amds_no_k_sgt1),
    Rule("amds_dual_bound", "n", "AMDS with non-AMDS dual", _r_amds_dual_bound),
    Rule("amds_dual_big_t", "n", "AMDS with dual defect at least q", _r_amds_dual_big_t),
    Rule("amds_dual_mds_exact", "n", "AMDS dual bound sharpened by m(t, q) = q+1", _r_amds_dual_mds_exact),
    Rule("t3_planar_reduction", "n", "quotient chain down to a plane", _r_t3_planar_reduction, composite=True),
    Rule("dual_defect_chain", "n", "quotient at a (d_perp-3)-flat from the dual dependency", _r_dual_defect_chain, composite=True),
    Rule("weight_gap", "n", "heavy pencil through k-2 points of a light hyperplane", _r_weight_gap),
)


def upper_bounds(query: BoundQuery) -> list[BoundResult]:
    """All applicable upper bounds, n-bounds first, ascending; minimum is binding."""
    fired, _ = explain_rules(query)
    return fired


def explain_rules(query: BoundQuery) -> tuple[list[BoundResult], list[tuple[str, str]]]:
    fired: list[BoundResult] = []
    skipped: list[tuple[str, str]] = []
    for rule in UPPER_RULES:
        try:
            value, conds = rule.fn(query)
        except _Skip as sk:
            skipped.append((rule.rule_id, sk.reason))
            continue
        fired.append(
            BoundResult(
                value=value,
                direction="upper",
                target=rule.target,
                rule_id=rule.rule_id,
                citation=rule.citation,
                conditions_used=conds,
            )
        )
    fired.sort(key=lambda r: (r.target != "n", r.value, r.rule_id))
    n_bounds = [r for r in fired if r.target == "n"]
    if n_bounds:
        best = min(r.value for r in n_bounds)
        for i, r in enumerate(fired):
            if r.target == "n" and r.value == best:
                fired[i] = replace(r, binding=True)
                break
    return fired, skipped


_UPPER_MEMO: dict[tuple[int, int, int, int | None], int | None] = {}
_IN_PROGRESS = object()


def best_upper(k: int, q: int, s: int, t: int | None = None) -> int | None:
    """Minimum n-bound the engine can prove; None when the length is unbounded."""
    key = (k, q, s, t)
    memo = _UPPER_MEMO.get(key)
    if memo is _IN_PROGRESS:
        return None
    if key in _UPPER_MEMO:
        return memo
    _UPPER_MEMO[key] = _IN_PROGRESS
    try:
        if k == 1:
            value = 0 if s >= 1 else None
        else:
            results = upper_bounds(BoundQuery(k=k, q=q, s=s, t=t))
            values = [r.value for r in results if r.target == "n"]
            value = min(values) if values else None
    finally:
        if _UPPER_MEMO.get(key) is _IN_PROGRESS:
            _UPPER_MEMO[key] = None
    _UPPER_MEMO[key] = value
    return value


def binding_rule(k: int, q: int, s: int, t: int | None = None) -> BoundResult | None:
    for r in upper_bounds(BoundQuery(k=k, q=q, s=s, t=t)):
        if r.binding:
            return r
    return None


# ---------------------------------------------------------------------------
# lower bounds


def lower_bounds(query: BoundQuery) -> list[BoundResult]:
    """Known lower bounds with witness constructions where available."""
    k, q, s = query.k, query.q, query.s
    out: list[BoundResult] = []

    def add(value, rule_id, citation, conds, witness=None):
        out.append(
            BoundResult(
                value=value,
                direction="lower",
                target="n",
                rule_id=rule_id,
                citation=citation,
                conditions_used=tuple(conds),
                witness=witness,
            )
        )

    if k >= 2:
        add(k + s, "spike", "standard frame with a repeated first point", ("k >= 2",), "trivial_spike")
    if k == 2:
        add((s + 1) * (q + 1), "two_dim_full_line", "the full line with multiplicity s+1",
            ("k = 2",), "two_dim_extremal")
    if s == 0 and k >= 2:
        mv = m_mds(k, q)
        add(mv.lower, "mds_witness", mv.rule, ("s = 0",),
            "hyperoval" if (k == 3 and q % 2 == 0) else None)
    if k == 3 and s == 0 and q % 2 == 0:
        add(q + 2, "hyperoval", "hyperovals in even order planes", ("k = 3", "s = 0", "q even"), "hyperoval")
    if k == 3 and q % 2 == 0 and _is_two_power(s + 2) and q % (s + 2) == 0 and s <= q - 2:
        add((s + 1) * (q + 1) + 1, "denniston", "Denniston maximal arcs",
            ("k = 3", "(s+2, q) powers of 2", "(s+2) | q"), "denniston")
    if k >= 2 and s == theta(k - 2, q) - k + 1:
        add(theta(k - 1, q), "full_space", "the whole point set of the space",
            ("s = theta(k-2,q)-k+1",), "full_space")
    if k == 3 and s == q - 2:
        add(q * q, "plane_minus_line", "the affine plane", ("k = 3", "s = q-2"), "plane_minus_line")
    if k == 4 and s == q - 2:
        add(q * q + 1, "elliptic_quadric", "elliptic quadric caps", ("k = 4", "s = q-2"), "elliptic_quadric")
    if (k, q, s) == (4, 2, 1):
        add(8, "cap8", "the 8-point affine cap in PG(3, 2)", ("(k, q, s) = (4, 2, 1)",), "cap8_pg32")
    if s == 1 and k > 2 * q:
        add(k + 2, "amds_high_k", "dual of a two-point-support line code", ("s = 1", "k > 2q"))
    if s == 1 and 2 <= k <= 2 * q:
        add(k + 2, "short_nmds", "dual of a near-extremal line code", ("s = 1", "2 <= k <= 2q"))
    if k >= 2 and s >= k - 1:
        budget = s - k + 1
        best_split, best_val = None, None
        for s1 in range(budget // 2 + 1):
            v1 = best_lower(k, q, s1)
            v2 = best_lower(k, q, budget - s1)
            if v1 is not None and v2 is not None and (best_val is None or v1 + v2 > best_val):
                best_val, best_split = v1 + v2, (s1, budget - s1)
        if best_val is not None:
            add(best_val, "union", "hyperplane caps add under multiset union",
                (f"s = k-1+{best_split[0]}+{best_split[1]}",), "union")
    out.sort(key=lambda r: (-r.value, r.rule_id))
    return out


_LOWER_MEMO: dict[tuple[int, int, int], int | None] = {}


def best_lower(k: int, q: int, s: int) -> int | None:
    key = (k, q, s)
    memo = _LOWER_MEMO.get(key)
    if memo is _IN_PROGRESS:
        return None
    if key in _LOWER_MEMO:
        return memo
    _LOWER_MEMO[key] = _IN_PROGRESS
    try:
        if k == 1:
            value = None
        else:
            results = lower_bounds(BoundQuery(k=k, q=q, s=s))
            value = max((r.value for r in results), default=None)
    finally:
        if _LOWER_MEMO.get(key) is _IN_PROGRESS:
            _LOWER_MEMO[key] = None
    _LOWER_MEMO[key] = value
    return value
