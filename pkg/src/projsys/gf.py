"""Exact arithmetic in GF(p^h) for every prime power q <= 64.

Field elements are plain integers in [0, q).  The integer sum(a_i * p^i)
encodes the element sum(a_i * alpha^i), where alpha is a root of the
field's defining polynomial.  The defining polynomial is itself encoded
as an integer: the non-leading coefficients in base p, the leading 1
implicit.  For prime q the polynomial is the trivial degree-1 poly x
(encoded 0) and elements are just residues mod p.
"""

from __future__ import annotations


class NotPrimePowerError(ValueError):
    """Requested field order is not a prime power."""


class UnsupportedFieldError(ValueError):
    """Requested field order is outside the supported range."""


class ReduciblePolynomialError(ValueError):
    """Supplied defining polynomial is reducible."""


MAX_ORDER = 64

# One canonical monic irreducible polynomial per extension field, chosen as
# the smallest integer encoding that passes the irreducibility check.  Prime
# fields use the trivial polynomial x (encoding 0).
CANONICAL_POLYS = {
    4: 3,    # x^2 + x + 1
    8: 3,    # x^3 + x + 1
    9: 1,    # x^2 + 1
    16: 3,   # x^4 + x + 1
    25: 2,   # x^2 + 2
    27: 7,   # x^3 + 2x + 1
    32: 5,   # x^5 + x^2 + 1
    49: 1,   # x^2 + 1
    64: 3,   # x^6 + x + 1
}


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, h) with q = p^h and p prime, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            h = 0
            rest = q
            while rest % p == 0:
                rest //= p
                h += 1
            return (p, h) if rest == 1 else None
        p += 1
    return (q, 1)


def is_prime_power(q: int) -> bool:
    return factor_prime_power(q) is not None


def _digits(value: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(value % p)
        value //= p
    return out


def _poly_coeffs(poly: int, p: int, h: int) -> list[int]:
    """Full coefficient list, low degree first, of the monic polynomial."""
    return _digits(poly, p, h) + [1]


def _poly_reduce(coeffs: list[int], mod: list[int], p: int) -> list[int]:
    rem = list(coeffs)
    dm = len(mod) - 1
    for i in range(len(rem) - 1, dm - 1, -1):
        c = rem[i]
        if c:
            for j in range(dm + 1):
                rem[i - dm + j] = (rem[i - dm + j] - c * mod[j]) % p
    return rem[:dm]


def _check_irreducible(poly: int, p: int, h: int) -> bool:
    """Root test for h <= 3; trial division up to degree h//2 beyond that."""
    coeffs = _poly_coeffs(poly, p, h)
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    if h <= 3:
        return True
    for deg in range(2, h // 2 + 1):
        for enc in range(p**deg):
            divisor = _digits(enc, p, deg) + [1]
            if all(r == 0 for r in _poly_reduce(coeffs, divisor, p)):
                return False
    return True


class GF:
    """The finite field GF(q) with a fixed defining polynomial.

    Immutable after construction; multiplication and inversion run off
    log/antilog tables built from the smallest generator of the
    multiplicative group.
    """

    __slots__ = ("q", "p", "h", "poly", "_exp", "_log", "_add_rows", "_neg")

    def __init__(self, q: int, poly: int | None = None):
        if q > MAX_ORDER:
            raise UnsupportedFieldError(f"q={q} exceeds the supported maximum {MAX_ORDER}")
        pp = factor_prime_power(q)
        if pp is None:
            raise NotPrimePowerError(f"q={q} is not a prime power")
        self.q = q
        self.p, self.h = pp
        if poly is None:
            poly = CANONICAL_POLYS.get(q, 0)
        if self.h == 1:
            if poly != 0:
                raise ReduciblePolynomialError("prime fields use the trivial polynomial x")
        elif not 0 <= poly < q or not _check_irreducible(poly, self.p, self.h):
            raise ReduciblePolynomialError(
                f"polynomial encoding {poly} is not monic irreducible of degree {self.h} over GF({self.p})"
            )
        self.poly = poly
        self._build_tables()

    # -- table construction -------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        """Polynomial-basis multiplication, used only to bootstrap tables."""
        p, h = self.p, self.h
        if h == 1:
            return (a * b) % p
        da = _digits(a, p, h)
        db = _digits(b, p, h)
        prod = [0] * (2 * h - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] += ai * bj
        mod = _poly_coeffs(self.poly, p, h)
        red = _poly_reduce([c % p for c in prod], mod, p)
        out = 0
        for i in reversed(range(h)):
            out = out * p + red[i]
        return out

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        self._neg = tuple(
            sum(((-d) % p) * p**i for i, d in enumerate(_digits(a, p, self.h)))
            for a in range(q)
        )
        rows = []
        for a in range(q):
            da = _digits(a, p, self.h)
            row = []
            for b in range(q):
                db = _digits(b, p, self.h)
                row.append(sum(((x + y) % p) * p**i for i, (x, y) in enumerate(zip(da, db))))
            rows.append(tuple(row))
        self._add_rows = tuple(rows)

        exp = None
        for g in range(2, q):
            seen = [g]  # g^1 .. g^(order-1); the closing power 1 is not appended
            x = g
            while True:
                x = self._raw_mul(x, g)
                if x == 1:
                    break
                seen.append(x)
            if len(seen) == q - 2:
                exp = [1] + seen
                break
        if exp is None:  # q == 2
            exp = [1]
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp = tuple(exp)
        self._log = tuple(log)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add_rows[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self._add_rows[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def dot(self, u, v) -> int:
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = self._add_rows[acc][self.mul(a, b)]
        return acc

    def elements(self) -> range:
        return range(self.q)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.q, self.poly) == (other.q, other.poly)

    def __hash__(self) -> int:
        return hash((self.q, self.poly))

    def __repr__(self) -> str:
        return f"GF({self.q})" if self.h == 1 else f"GF({self.q}, poly={self.poly})"


_FIELD_CACHE: dict[tuple[int, int | None], GF] = {}


def field(q: int, poly: int | None = None) -> GF:
    """Shared, cached field instance for an order (and optional polynomial)."""
    key = (q, poly)
    got = _FIELD_CACHE.get(key)
    if got is None:
        got = GF(q, poly)
        _FIELD_CACHE[key] = got
    return got
