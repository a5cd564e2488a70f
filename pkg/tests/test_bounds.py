import random

import pytest

from projsys.bounds import (
    BoundQuery,
    audit,
    best_lower,
    best_upper,
    binding_rule,
    explain_rules,
    lower_bounds,
    m_mds,
    upper_bounds,
)
from projsys.constructions import (
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
from projsys.gf import field
from projsys.projsystem import from_generator_matrix, params
from projsys.bounds.audit import RuleViolationError


def _min_upper(k, q, s, t=None):
    return upper_bounds(BoundQuery(k=k, q=q, s=s, t=t))[0].value


def test_engine_examples():
    assert _min_upper(3, 4, 1) == 9
    assert _min_upper(4, 8, 2) == 28
    assert _min_upper(5, 4, 2) == 14


def test_binding_is_lex_smallest_among_minimum():
    results = upper_bounds(BoundQuery(k=3, q=4, s=1))
    minimum = min(r.value for r in results if r.target == "n")
    binding = [r for r in results if r.binding]
    assert len(binding) == 1
    assert binding[0].value == minimum
    tied = sorted(r.rule_id for r in results if r.target == "n" and r.value == minimum)
    assert binding[0].rule_id == tied[0]


def test_skipped_rules_listed_with_reason():
    fired, skipped = explain_rules(BoundQuery(k=3, q=4, s=1))
    ids = {r.rule_id for r in fired}
    skip_map = dict(skipped)
    assert "planar_prime" in skip_map and "prime" in skip_map["planar_prime"]
    assert ids.isdisjoint(skip_map)


def test_m_mds_examples():
    assert m_mds(3, 4).value == 6
    assert m_mds(4, 5).value == 6
    assert m_mds(7, 3).value == 8   # k >= q
    assert m_mds(2, 9).value == 10
    assert m_mds(1, 5).upper is None
    interval = m_mds(6, 8)
    assert not interval.exact and (interval.lower, interval.upper) == (9, 13)
    assert m_mds(6, 49).value == 50  # k <= p window
    assert m_mds(6, 16).value == 17  # square order window


def test_m_mds_stepwise_growth():
    # the dual-secant feasibility scan relies on m(j+1, q) <= m(j, q) + 1
    for q in (2, 3, 4, 5, 7, 8, 9, 16):
        prev = None
        for j in range(2, 25):
            upper = m_mds(j, q).upper
            if prev is not None:
                assert upper <= prev + 1, (j, q)
            prev = upper


def test_lower_bound_examples():
    assert best_lower(4, 4, 2) == 17      # quadric
    assert best_lower(3, 4, 2) == 16      # maximal arc
    assert best_lower(6, 3, 2) == 8       # spike
    rows = lower_bounds(BoundQuery(k=4, q=4, s=2))
    assert rows[0].witness == "elliptic_quadric"


def test_union_lower_bound_recursion():
    # at s = k-1 the union of two MDS arcs beats the spike
    rows = lower_bounds(BoundQuery(k=3, q=4, s=2))
    union_rows = [r for r in rows if r.rule_id == "union"]
    assert union_rows and union_rows[0].value == 12


def test_upper_monotone_in_s():
    for q in (2, 3, 4, 5, 8, 9, 16):
        for k in (3, 4, 5, 6, 7):
            values = [best_upper(k, q, s) for s in range(0, 12)]
            assert all(a <= b for a, b in zip(values, values[1:])), (k, q, values)


def test_two_dim_exact():
    for q in (2, 3, 4, 5):
        for s in range(4):
            assert best_upper(2, q, s) == (s + 1) * (q + 1) == best_lower(2, q, s)


def test_one_dim():
    assert best_upper(1, 5, 1) == 0
    assert best_upper(1, 5, 0) is None  # unbounded


def test_t_specific_rules():
    # dual defect above 1 caps the length at s(q+1)+k-1
    res = upper_bounds(BoundQuery(k=4, q=3, s=2, t=2))
    assert any(r.rule_id == "dual_amds_cap" and r.value == 2 * 4 + 3 for r in res)
    # s = t = 1 extremal dimensions
    assert _min_upper(2 * 5 - 1, 5, 1, t=1) == 2 * 5 + 1
    assert _min_upper(11, 5, 1, t=1) == 12  # k > 2q forces n = k+1
    # k-target rules appear after n-target rows
    res = upper_bounds(BoundQuery(k=3, q=4, s=2, t=2))
    targets = [r.target for r in res]
    assert targets == sorted(targets, key=lambda t: t != "n") or "k" in targets


def test_d_conditioned_rules():
    with_d = _min_upper_d = upper_bounds(BoundQuery(k=3, q=3, s=4, d=10))
    assert any(r.rule_id == "big_d" for r in with_d)
    without_d = upper_bounds(BoundQuery(k=3, q=3, s=4))
    assert all(r.rule_id != "big_d" for r in without_d)


def test_audit_catalog_clean():
    for ps in [
        full_space(3, 2), plane_minus_line(3), hyperoval(4), denniston(4, 4),
        denniston(8, 4), elliptic_quadric(3), elliptic_quadric(4), cap8_pg32(),
        trivial_spike(3, 3, 2), two_dim_extremal(2, 1), full_space(4, 2),
        union(full_space(3, 2), full_space(3, 2)),
    ]:
        report = audit(ps)
        assert report.ok, report.violations


def test_audit_random_systems_clean():
    rng = random.Random(3)
    done = 0
    while done < 60:
        q = rng.choice([2, 3, 4, 5])
        k = rng.randint(2, 4)
        n = rng.randint(k, k + 6)
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        try:
            ps = from_generator_matrix(rows, field(q))
        except Exception:
            continue
        if ps.zero_mult:
            continue
        done += 1
        report = audit(ps)
        assert report.ok, (params(ps), report.violations)


def test_audit_raise_on_violation_flag():
    report = audit(elliptic_quadric(4), raise_on_violation=True)
    assert report.ok
    with pytest.raises(RuleViolationError):
        raise RuleViolationError("demo", "detail")


def test_boundary_counterexamples_documented():
    # at n = s(q+1)+k-1 none of the long-code conclusions are forced:
    # [15,4,8]_2 has dual defect 2, and a doubled point in the full plane
    # gives a non-projective [8,3,4]_2
    p = params(full_space(4, 2))
    assert p.n == p.s * 3 + p.k - 1 and p.t == 2 and p.griesmer_met
    plane = full_space(3, 2)
    doubled = dict(plane.mult)
    doubled[0] = 2
    from projsys.projsystem import ProjectiveSystem

    ps = ProjectiveSystem(plane.geometry, doubled)
    p2 = params(ps)
    assert p2.n == p2.s * 3 + p2.k - 1 and not p2.projective
    assert audit(ps).ok and audit(full_space(4, 2)).ok
