import random

import pytest

from projsys.gf import (
    CANONICAL_POLYS,
    GF,
    NotPrimePowerError,
    ReduciblePolynomialError,
    UnsupportedFieldError,
    factor_prime_power,
    field,
    is_prime_power,
)

SUPPORTED = [q for q in range(2, 65) if is_prime_power(q)]


def test_prime_power_factoring():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(49) == (7, 2)
    assert factor_prime_power(6) is None
    assert factor_prime_power(1) is None


def test_field_new_examples():
    f2 = field(2)
    assert (f2.p, f2.h) == (2, 1)
    f4 = field(4)
    assert (f4.p, f4.h, f4.poly) == (2, 2, 3)
    with pytest.raises(NotPrimePowerError):
        field(6)
    with pytest.raises(UnsupportedFieldError):
        field(67)


def test_arith_examples():
    assert field(2).add(1, 1) == 0
    assert field(5).inv(2) == 3
    assert field(4).mul(2, 2) == 3  # alpha * alpha = alpha + 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        field(7).inv(0)


def test_bad_polynomial_rejected():
    with pytest.raises(ReduciblePolynomialError):
        GF(4, poly=2)  # x^2 + x = x(x+1)
    with pytest.raises(ReduciblePolynomialError):
        GF(8, poly=1)  # x^3 + 1 has root 1


def test_canonical_polys_are_minimal_irreducible():
    # every smaller encoding must fail construction
    for q, poly in CANONICAL_POLYS.items():
        for smaller in range(poly):
            with pytest.raises(ReduciblePolynomialError):
                GF(q, poly=smaller)
        GF(q, poly=poly)


def _axioms(gf, triples):
    for a, b, c in triples:
        assert gf.add(a, b) == gf.add(b, a)
        assert gf.mul(a, b) == gf.mul(b, a)
        assert gf.add(gf.add(a, b), c) == gf.add(a, gf.add(b, c))
        assert gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))
        assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))


@pytest.mark.parametrize("q", [q for q in SUPPORTED if q <= 16])
def test_axioms_exhaustive_small(q):
    gf = field(q)
    triples = [(a, b, c) for a in range(q) for b in range(q) for c in range(q)]
    _axioms(gf, triples)
    for x in range(q):
        assert gf.pow(x, q) == x
    for a in range(q):
        for b in range(q):
            assert gf.pow(gf.add(a, b), gf.p) == gf.add(gf.pow(a, gf.p), gf.pow(b, gf.p))


@pytest.mark.parametrize("q", [q for q in SUPPORTED if q > 16])
def test_axioms_sampled_large(q):
    gf = field(q)
    rng = random.Random(q)
    triples = [tuple(rng.randrange(q) for _ in range(3)) for _ in range(200)]
    _axioms(gf, triples)
    for _ in range(50):
        x = rng.randrange(q)
        assert gf.pow(x, q) == x
        a, b = rng.randrange(q), rng.randrange(q)
        assert gf.pow(gf.add(a, b), gf.p) == gf.add(gf.pow(a, gf.p), gf.pow(b, gf.p))


@pytest.mark.parametrize("q", SUPPORTED)
def test_inverse_involution(q):
    gf = field(q)
    for x in range(1, q):
        assert gf.mul(x, gf.inv(x)) == 1
        assert gf.inv(gf.inv(x)) == x


def test_sub_and_neg():
    gf = field(9)
    for a in range(9):
        assert gf.add(a, gf.neg(a)) == 0
        for b in range(9):
            assert gf.add(gf.sub(a, b), b) == a
