import random

import pytest

from projsys.constructions import cap8_pg32, elliptic_quadric, full_space, trivial_spike
from projsys.geometry import geometry, span_flat
from projsys.gf import field
from projsys.projsystem import (
    DegenerateSystemError,
    EmptyQuotientError,
    GmFormatError,
    ProjectiveSystem,
    RankDeficientError,
    check_nsmds_conditions,
    dual_distance,
    flat_mass,
    from_generator_matrix,
    griesmer_sum,
    min_distance,
    params,
    quotient_shorten,
    read_gm,
    support_flat,
    to_generator_matrix,
    weight_distribution,
    write_gm,
)


def test_from_generator_matrix_identity():
    ps = from_generator_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], field(2))
    assert ps.n == 3 and ps.k == 3 and len(ps.mult) == 3


def test_from_generator_matrix_simplex():
    g = geometry(3, 2)
    cols = list(zip(*g.points))
    ps = from_generator_matrix([list(r) for r in cols], field(2))
    assert ps.n == 7 and set(ps.mult) == set(range(7))


def test_from_generator_matrix_repeated_column():
    ps = from_generator_matrix([[1, 1, 0], [0, 0, 1]], field(3))
    assert ps.n == 3
    assert sorted(ps.mult.values()) == [1, 2]


def test_from_generator_matrix_scalar_columns_merge():
    # (1,2) and (2,4)=2*(1,2) over GF(5) are the same projective point
    ps = from_generator_matrix([[1, 2, 0], [2, 4, 1]], field(5))
    assert sorted(ps.mult.values()) == [1, 2]


def test_rank_deficient_rejected():
    with pytest.raises(RankDeficientError):
        from_generator_matrix([[1, 0, 1], [1, 0, 1]], field(2))


def test_zero_columns_counted():
    ps = from_generator_matrix([[1, 0, 0], [0, 1, 0]], field(2))
    assert ps.zero_mult == 1 and ps.n == 3
    p = params(ps)
    assert p.degenerate and p.d_perp == 1 and p.d == 1


def test_round_trip_matrix():
    rng = random.Random(7)
    for _ in range(30):
        q = rng.choice([2, 3, 4, 5])
        k = rng.randint(2, 4)
        n = rng.randint(k, k + 5)
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        try:
            ps = from_generator_matrix(rows, field(q))
        except RankDeficientError:
            continue
        again = from_generator_matrix(to_generator_matrix(ps), field(q))
        assert again == ps


def test_gm_file_round_trip(tmp_path):
    ps = elliptic_quadric(4)
    path = tmp_path / "quadric.gm"
    write_gm(ps, path)
    loaded = read_gm(path)
    assert loaded == ps
    assert params(loaded) == params(ps)
    header = path.read_text().splitlines()[:2]
    assert header[0] == "q 4 poly 3"
    assert header[1] == "k 4 n 17"


def test_gm_format_errors(tmp_path):
    path = tmp_path / "bad.gm"
    path.write_text("q 2 poly 0\nk 2 n 2\n1 0\n")
    with pytest.raises(GmFormatError):
        read_gm(path)
    path.write_text("nonsense\n")
    with pytest.raises(GmFormatError):
        read_gm(path)


def test_min_distance_examples():
    d, secants = min_distance(full_space(3, 2))
    assert d == 4 and len(secants) == 7
    p = params(trivial_spike(3, 3, 2))
    assert p.d == 1


def test_weight_distribution_examples():
    assert weight_distribution(full_space(3, 2)) == {0: 1, 4: 7}
    assert weight_distribution(cap8_pg32()) == {0: 1, 4: 14, 8: 1}
    wd = weight_distribution(elliptic_quadric(4))
    assert sum(wd.values()) == 4**4


def test_dual_distance_examples():
    assert dual_distance(trivial_spike(3, 3, 2)) == 2
    assert dual_distance(full_space(3, 2)) == 3
    assert dual_distance(cap8_pg32()) == 4
    frame = from_generator_matrix([[1, 0], [0, 1]], field(3))
    assert dual_distance(frame) == 3  # zero dual code: conventional n+1


def test_params_quadrics():
    p3 = params(elliptic_quadric(3))
    assert (p3.n, p3.k, p3.d, p3.s, p3.t) == (10, 4, 6, 1, 1)
    p4 = params(elliptic_quadric(4))
    assert (p4.n, p4.k, p4.d, p4.s, p4.t) == (17, 4, 12, 2, 1)
    assert p4.griesmer_met and griesmer_sum(12, 4, 4) == 17


def test_quotient_shorten_simplex():
    simplex = full_space(3, 2)
    flat = span_flat([simplex.geometry.points[0]], field(2))
    shorter = quotient_shorten(simplex, flat)
    p = params(shorter)
    assert (p.n, p.k, p.d) == (6, 2, 4)


def test_quotient_shorten_quadric_point():
    ps = elliptic_quadric(3)
    idx = ps.support[0]
    flat = support_flat(ps, (idx,))
    shorter = quotient_shorten(ps, flat)
    p = params(shorter)
    assert p.n == 9 and p.k == 3 and p.d >= 6 and p.s <= 1


def test_quotient_shorten_point_of_frame():
    g = geometry(3, 2)
    ps = ProjectiveSystem(g, {0: 1, 1: 1, 3: 1})
    line = span_flat([g.points[0]], g.field)
    shorter = quotient_shorten(ps, line)
    assert shorter.n == 2 and shorter.k == 2


def test_support_in_hyperplane_rejected():
    # a spanning system cannot have all mass on a codim-2 flat, so the
    # empty-quotient guard is purely defensive; the constructor refuses first
    with pytest.raises(RankDeficientError):
        ProjectiveSystem(geometry(3, 2), {0: 1, 1: 1, 2: 1})


def test_shortening_off_secant_changes_distance():
    # four collinear points plus two generic ones in PG(2, 4): the only secant
    # is the heavy line, and shortening at a point off it raises the distance
    g = geometry(3, 4)
    line_pts = [(0, 0, 1), (0, 1, 1), (0, 1, 2), (0, 1, 3)]
    others = [(1, 0, 0), (1, 1, 0)]
    mult = {g._index[pt]: 1 for pt in line_pts + others}
    ps = ProjectiveSystem(g, mult)
    p = params(ps)
    assert (p.n, p.k, p.d, p.s) == (6, 3, 2, 2)
    d, secants = min_distance(ps)
    off_idx = g._index[(1, 0, 0)]
    assert all(off_idx not in g.hyperplane_point_indices(h) for h in secants)
    shorter = quotient_shorten(ps, support_flat(ps, (off_idx,)))
    assert params(shorter).d > p.d
    # a point on the secant keeps the distance and drops the defect correctly
    on_idx = g._index[(0, 0, 1)]
    shorter2 = quotient_shorten(ps, support_flat(ps, (on_idx,)))
    p2 = params(shorter2)
    assert p2.d == p.d and p2.s == p.s - ps.mult[on_idx] + 1


def test_flat_mass():
    ps = full_space(3, 2)
    line = span_flat([ps.geometry.points[0], ps.geometry.points[1]], field(2))
    assert flat_mass(ps, line) == 3


def test_degenerate_quotient_refused():
    ps = from_generator_matrix([[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 1, 0]], field(2))
    assert ps.zero_mult == 1
    flat = span_flat([ps.geometry.points[0]], field(2))
    with pytest.raises(DegenerateSystemError):
        quotient_shorten(ps, flat)


def test_check_nsmds_conditions():
    # cap8 plus one point at infinity: projective [9,4,4]_2 with s = t = 2
    g = geometry(4, 2)
    mult = {i: 1 for i, pt in enumerate(g.points) if pt[0] == 1}
    mult[g._index[(0, 1, 0, 0)]] = 1
    ps = ProjectiveSystem(g, mult)
    p = params(ps)
    assert (p.n, p.k, p.d, p.s) == (9, 4, 4, 2)
    report = check_nsmds_conditions(ps)
    assert report.applicable and report.conclusion_holds and report.t == 2
    # quadric over GF(4): the dimension condition fails, lemma not applicable
    report4 = check_nsmds_conditions(elliptic_quadric(4))
    assert not report4.dimension_condition and not report4.applicable
    with pytest.raises(ValueError):
        check_nsmds_conditions(elliptic_quadric(3))  # s = 1 excluded


def test_projectivity_criterion_random():
    rng = random.Random(11)
    for _ in range(60):
        q = rng.choice([2, 3, 4])
        k = rng.randint(3, 4)
        n = rng.randint(k, k + 5)
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        try:
            ps = from_generator_matrix(rows, field(q))
        except RankDeficientError:
            continue
        if ps.zero_mult:
            continue
        assert ps.is_projective == (dual_distance(ps) >= 3)
