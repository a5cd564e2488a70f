from fractions import Fraction

import pytest

from projsys.bounds import (
    FULL_LENGTH,
    NEAR_FULL_LENGTH,
    ModeMismatchError,
    expected_length,
    extremal_length,
    gamma_factorial_form,
    integrality,
    prime_window_hit,
)
from projsys.bounds.integrality import denominator_primes_in_window


def test_gamma_examples():
    reps = integrality(8, 4, 2, 1, FULL_LENGTH)
    assert [r.gamma for r in reps] == [14, 7, 3]
    assert all(r.gamma_integer for r in reps)

    reps = integrality(29, 4, 8, 2, FULL_LENGTH)
    assert reps[0].gamma_raw == (3654, 10)
    assert reps[0].gamma == Fraction(1827, 5)
    assert not reps[0].gamma_integer

    reps = integrality(17, 4, 4, 2, FULL_LENGTH)
    assert reps[0].gamma == 68 and reps[0].all_integer


def test_mode_mismatch():
    with pytest.raises(ModeMismatchError):
        integrality(28, 4, 8, 2, FULL_LENGTH)
    with pytest.raises(ModeMismatchError):
        integrality(29, 4, 8, 2, NEAR_FULL_LENGTH)
    assert expected_length(4, 8, 2, FULL_LENGTH) == 29
    assert expected_length(4, 8, 2, NEAR_FULL_LENGTH) == 28


def test_near_full_length_reports():
    reps = integrality(28, 4, 8, 2, NEAR_FULL_LENGTH)
    assert len(reps) == 2  # j in {0, 1}
    for rep in reps:
        assert rep.alpha is not None and rep.beta is not None
        assert rep.beta == rep.alpha * Fraction(8 * 3, 4 + 2 - 1 - rep.j)


def test_factorial_form_identical():
    for (n, k, q, s) in [(8, 4, 2, 1), (29, 4, 8, 2), (17, 4, 4, 2), (47, 5, 8, 3)]:
        assert n == extremal_length(k, q, s)
        for j in range(k - 1):
            assert integrality(n, k, q, s, FULL_LENGTH)[j].gamma == gamma_factorial_form(n, k, q, s, j)


def test_prime_window_examples():
    # 5 divides 25*26 with 2 < 5 < 6
    assert prime_window_hit(4, 8, 2, 1) == 5
    # same product, but the window 2 < p < 5 misses it
    assert prime_window_hit(4, 8, 2, 2) is None
    # no window primes at (4, 4, 2): 13 * 14 has factors 2, 7, 13
    assert prime_window_hit(4, 4, 2, 1) is None
    # s = 0 never fires (empty product)
    assert prime_window_hit(6, 8, 0, 1) is None


def test_denominator_window_scan():
    reps = integrality(29, 4, 8, 2, FULL_LENGTH)
    assert denominator_primes_in_window(reps, "gamma", 2, 6) == {5}
    clean = integrality(17, 4, 4, 2, FULL_LENGTH)
    assert denominator_primes_in_window(clean, "gamma", 2, 6) == set()


def test_small_k_rejected():
    with pytest.raises(ValueError):
        integrality(extremal_length(2, 4, 1), 2, 4, 1, FULL_LENGTH)
