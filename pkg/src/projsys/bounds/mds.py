"""Known exact values and intervals for the maximum MDS code length m(k, q)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..gf import factor_prime_power


@dataclass(frozen=True)
class MdsValue:
    """Maximum length of an MDS code of dimension k over GF(q).

    upper is None only for k = 1, where repetition codes make the length
    unbounded.  exact means lower == upper (or the unbounded k = 1 case).
    """

    k: int
    q: int
    lower: int
    upper: int | None
    exact: bool
    rule: str

    @property
    def value(self) -> int | None:
        return self.upper if self.exact else None


def m_mds(k: int, q: int) -> MdsValue:
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return MdsValue(k, q, lower=1, upper=None, exact=True, rule="repetition codes")
    if k >= q:
        return MdsValue(k, q, k + 1, k + 1, True, "Bush bound, k >= q")
    if k == 2:
        return MdsValue(k, q, q + 1, q + 1, True, "full projective line")
    if k == 3:
        if q % 2:
            return MdsValue(k, q, q + 1, q + 1, True, "Segre: ovals in odd order planes")
        return MdsValue(k, q, q + 2, q + 2, True, "hyperovals in even order planes")
    if k in (4, 5):
        return MdsValue(k, q, q + 1, q + 1, True, "Segre / Casse / Gulati-Kounias arcs")
    p, h = factor_prime_power(q)
    if 4 <= k <= p:
        return MdsValue(k, q, q + 1, q + 1, True, "prime-window arc bound")
    if h > 1 and k <= 2 * p - 2:
        return MdsValue(k, q, q + 1, q + 1, True, "extension-field arc bound")
    if h % 2 == 0:
        root = math.isqrt(q)
        if k <= root - root // p + 2:
            return MdsValue(k, q, q + 1, q + 1, True, "square-order arc bound")
    return MdsValue(k, q, q + 1, q + k - 3, False, "normal rational curve / general arc cap")
