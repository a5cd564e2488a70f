"""Counting integralities satisfied by codes at and near the extremal length.

At the extremal length n = (s+1)(q+1)+k-2 every (k-2)-subset of the system
spans a flat whose hyperplane pencil consists of secants only, and double
counting (subset, secant) pairs forces the ratios gamma_j below to be
integers.  One length lower the pencil carries exactly one tangent, giving
the alpha_j / beta_j ratios.  A single non-integer among them certifies that
no code of those parameters exists, which is the workhorse behind the
dimension sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, prod


class ModeMismatchError(ValueError):
    """Length n does not match the requested counting mode."""


FULL_LENGTH = "full_length"
NEAR_FULL_LENGTH = "near_full_length"


def extremal_length(k: int, q: int, s: int) -> int:
    return (s + 1) * (q + 1) + k - 2


def expected_length(k: int, q: int, s: int, mode: str) -> int:
    if mode == FULL_LENGTH:
        return extremal_length(k, q, s)
    if mode == NEAR_FULL_LENGTH:
        return extremal_length(k, q, s) - 1
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class IntegralityReport:
    j: int
    gamma: Fraction | None = None
    gamma_raw: tuple[int, int] | None = None    # unreduced (numerator, denominator)
    alpha: Fraction | None = None
    alpha_raw: tuple[int, int] | None = None
    beta: Fraction | None = None
    beta_raw: tuple[int, int] | None = None

    @property
    def gamma_integer(self) -> bool | None:
        return None if self.gamma is None else self.gamma.denominator == 1

    @property
    def alpha_integer(self) -> bool | None:
        return None if self.alpha is None else self.alpha.denominator == 1

    @property
    def beta_integer(self) -> bool | None:
        return None if self.beta is None else self.beta.denominator == 1

    @property
    def all_integer(self) -> bool:
        return all(
            f is None or f.denominator == 1 for f in (self.gamma, self.alpha, self.beta)
        )


def integrality(n: int, k: int, q: int, s: int, mode: str = FULL_LENGTH) -> list[IntegralityReport]:
    """Exact rational gamma_j (full length) or alpha_j / beta_j (one shorter)."""
    if k < 3:
        raise ValueError("counting integralities need k >= 3")
    if n != expected_length(k, q, s, mode):
        raise ModeMismatchError(
            f"n={n} does not match {mode} length {expected_length(k, q, s, mode)} for (k={k}, q={q}, s={s})"
        )
    d = n - k + 1 - s
    out = []
    if mode == FULL_LENGTH:
        for j in range(k - 1):  # 0 .. k-2
            num = comb(n - j, k - 1 - j)
            den = comb(n - d - j, k - 1 - j)
            out.append(IntegralityReport(j=j, gamma=Fraction(num, den), gamma_raw=(num, den)))
    else:
        for j in range(k - 2):  # 0 .. k-3
            a_num = comb(n - j, k - 2 - j)
            a_den = comb(k + s - 2 - j, k - 2 - j)
            alpha = Fraction(a_num, a_den)
            b_num = a_num * q * (s + 1)
            b_den = a_den * (k + s - 1 - j)
            out.append(
                IntegralityReport(
                    j=j,
                    alpha=alpha,
                    alpha_raw=(a_num, a_den),
                    beta=alpha * Fraction(q * (s + 1), k + s - 1 - j),
                    beta_raw=(b_num, b_den),
                )
            )
    return out


def gamma_factorial_form(n: int, k: int, q: int, s: int, j: int) -> Fraction:
    """Equivalent form s! * C(n-j, d) / ((d+1)...(d+s)); used to cross-check."""
    d = n - k + 1 - s
    num = prod(range(1, s + 1)) * comb(n - j, d)
    den = prod(range(d + 1, d + s + 1))
    return Fraction(num, den)


# -- prime windows ------------------------------------------------------------


def _primes_strictly_between(lo: int, hi: int) -> list[int]:
    out = []
    for p in range(max(2, lo + 1), hi):
        if all(p % f for f in range(2, int(p**0.5) + 1)):
            out.append(p)
    return out


def prime_window_hit(k: int, q: int, s: int, variant: int) -> int | None:
    """Smallest prime triggering the divisibility exclusion, or None.

    variant 1: s < p < k+s   dividing prod_{i=1..s} (q(s+1)+i)  -> length-3 cap
    variant 2: s < p < k+s-1 dividing the same product          -> length-4 cap
    variant 3: s+1 < p < k+s-1, gcd(p, q) = 1, dividing
               prod_{i=0..s} (q(s+1)+i)                         -> length-4 cap
    """
    base = q * (s + 1)
    if variant == 1:
        window = _primes_strictly_between(s, k + s)
        product = prod(range(base + 1, base + s + 1)) if s >= 1 else 1
    elif variant == 2:
        window = _primes_strictly_between(s, k + s - 1)
        product = prod(range(base + 1, base + s + 1)) if s >= 1 else 1
    elif variant == 3:
        window = [p for p in _primes_strictly_between(s + 1, k + s - 1) if gcd(p, q) == 1]
        product = prod(range(base, base + s + 1))
    else:
        raise ValueError("variant must be 1, 2 or 3")
    for p in window:
        if product % p == 0:
            return p
    return None


def denominator_primes_in_window(
    reports: list[IntegralityReport], which: str, lo: int, hi: int, coprime_to: int | None = None
) -> set[int]:
    """Primes from (lo, hi) appearing in reduced denominators of a quantity."""
    found: set[int] = set()
    for rep in reports:
        frac = getattr(rep, which)
        if frac is None:
            continue
        den = frac.denominator
        for p in _primes_strictly_between(lo, hi):
            if coprime_to is not None and gcd(p, coprime_to) != 1:
                continue
            if den % p == 0:
                found.add(p)
    return found
