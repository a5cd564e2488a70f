import pytest

from projsys.constructions import (
    AmbientMismatchError,
    BadDegreeError,
    CATALOG,
    QOddError,
    build,
    cap8_pg32,
    denniston,
    elliptic_quadric,
    full_space,
    hyperoval,
    plane_minus_line,
    trivial_spike,
    two_dim_extremal,
    union,
)
from projsys.projsystem import dual_distance, hyperplane_counts, params


@pytest.mark.parametrize(
    "build_fn,expect",
    [
        (lambda: trivial_spike(3, 3, 2), (5, 3, 1, 2)),
        (lambda: trivial_spike(2, 2, 0), (2, 2, 1, 0)),
        (lambda: trivial_spike(4, 2, 1), (5, 4, 1, 1)),
        (lambda: two_dim_extremal(2, 1), (6, 2, 4, 1)),
        (lambda: two_dim_extremal(3, 0), (4, 2, 3, 0)),
        (lambda: two_dim_extremal(4, 2), (15, 2, 12, 2)),
        (lambda: plane_minus_line(3), (9, 3, 6, 1)),
        (lambda: full_space(3, 2), (7, 3, 4, 1)),
        (lambda: full_space(3, 4), (21, 3, 16, 3)),
        (lambda: hyperoval(2), (4, 3, 2, 0)),
        (lambda: hyperoval(4), (6, 3, 4, 0)),
        (lambda: hyperoval(8), (10, 3, 8, 0)),
        (lambda: denniston(4, 2), (6, 3, 4, 0)),
        (lambda: denniston(4, 4), (16, 3, 12, 2)),
        (lambda: denniston(8, 4), (28, 3, 24, 2)),
        (lambda: elliptic_quadric(3), (10, 4, 6, 1)),
        (lambda: elliptic_quadric(4), (17, 4, 12, 2)),
        (lambda: elliptic_quadric(5), (26, 4, 20, 3)),
        (cap8_pg32, (8, 4, 4, 1)),
    ],
)
def test_stated_parameters(build_fn, expect):
    p = params(build_fn())
    assert (p.n, p.k, p.d, p.s) == expect


def test_spike_dual_distance():
    assert params(trivial_spike(3, 3, 2)).d_perp == 2
    assert params(trivial_spike(4, 2, 1)).d_perp == 2


@pytest.mark.parametrize("q,degree", [(4, 2), (4, 4), (8, 2), (8, 4), (8, 8), (16, 4), (16, 16)])
def test_denniston_line_intersections(q, degree):
    ps = denniston(q, degree)
    assert ps.n == (degree - 1) * (q + 1) + 1
    assert set(hyperplane_counts(ps)) <= {0, degree}
    assert ps.is_projective


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_elliptic_quadric_cap_property(q):
    ps = elliptic_quadric(q)
    assert ps.n == q * q + 1
    assert ps.is_projective
    assert dual_distance(ps) >= 4  # no 3 collinear
    sections = set(hyperplane_counts(ps))
    assert sections == {1, q + 1}


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_hyperoval_is_arc(q):
    ps = hyperoval(q)
    assert set(hyperplane_counts(ps)) <= {0, 1, 2}
    assert ps.is_projective


def test_hyperoval_odd_q_rejected():
    with pytest.raises(QOddError):
        hyperoval(3)


def test_denniston_bad_degree():
    with pytest.raises(BadDegreeError):
        denniston(8, 3)
    with pytest.raises(BadDegreeError):
        denniston(8, 16)
    with pytest.raises(QOddError):
        denniston(9, 3)


def test_union_examples():
    simplex = full_space(3, 2)
    u = union(simplex, simplex)
    p = params(u)
    assert (p.n, p.k, p.d) == (14, 3, 8)
    assert p.s <= 3 - 1 + 1 + 1
    ho = hyperoval(4)
    p2 = params(union(ho, ho))
    assert p2.n == 12 and p2.s <= 2


def test_union_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        union(full_space(3, 2), full_space(3, 3))
    with pytest.raises(AmbientMismatchError):
        union(full_space(3, 2), full_space(4, 2))


def test_catalog_build():
    ps = build("elliptic_quadric", q=4)
    assert ps.n == 17
    with pytest.raises(ValueError):
        build("elliptic_quadric")  # missing q
    with pytest.raises(ValueError):
        build("nonesuch", q=2)
    assert set(CATALOG) == {
        "trivial_spike", "two_dim_extremal", "full_space", "plane_minus_line",
        "hyperoval", "denniston", "elliptic_quadric", "cap8_pg32",
    }
