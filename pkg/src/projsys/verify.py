"""Acceptance battery: one entry per shipped claim, runnable from CLI or pytest.

Each criterion function returns CheckResult rows; run_suite flattens them.
Randomized checks draw from a seeded generator so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from . import constructions as cons
from .bounds import (
    FULL_LENGTH,
    NEAR_FULL_LENGTH,
    audit,
    integrality,
    kappa,
    prime_window_hit,
)
from .bounds.integrality import denominator_primes_in_window, extremal_length
from .bounds.kappa import _even_weight_system
from .geometry import geometry, span_flat
from .gf import field
from .projsystem import (
    ProjectiveSystem,
    dual_distance,
    from_generator_matrix,
    hyperplane_counts,
    min_distance,
    params,
    quotient_shorten,
    to_generator_matrix,
    weight_distribution,
)
from .search import SearchConfig, dual_defect_scan, max_length


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str = ""


def _check(criterion: int, name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(criterion, name, bool(passed), detail)


# -- criterion 1: construction golden table -----------------------------------


GOLDEN = [
    ("full_space(3,2)", lambda: cons.full_space(3, 2), (7, 3, 4), {"s": 1}),
    ("plane_minus_line(3)", lambda: cons.plane_minus_line(3), (9, 3, 6), {"s": 1}),
    ("hyperoval(4)", lambda: cons.hyperoval(4), (6, 3, 4), {"s": 0}),
    ("denniston(4,4)", lambda: cons.denniston(4, 4), (16, 3, 12), {"s": 2, "t": 1}),
    ("denniston(8,4)", lambda: cons.denniston(8, 4), (28, 3, 24), {"s": 2}),
    ("elliptic_quadric(3)", lambda: cons.elliptic_quadric(3), (10, 4, 6), {"s": 1, "t": 1}),
    ("elliptic_quadric(4)", lambda: cons.elliptic_quadric(4), (17, 4, 12), {"s": 2, "t": 1}),
    ("cap8_pg32()", cons.cap8_pg32, (8, 4, 4), {"s": 1, "t": 1}),
]


def criterion_1() -> list[CheckResult]:
    out = []
    for name, build, nkd, extras in GOLDEN:
        ps = build()
        p = params(ps)
        ok = (p.n, p.k, p.d) == nkd and all(getattr(p, key) == val for key, val in extras.items())
        out.append(_check(1, f"golden:{name}", ok, f"got [{p.n},{p.k},{p.d}] s={p.s} t={p.t}"))
    for degree_q in ((4, 4), (8, 4)):
        q, degree = degree_q
        ps = cons.denniston(q, degree)
        sizes = set(hyperplane_counts(ps))
        out.append(
            _check(1, f"golden:denniston({q},{degree}):lines", sizes <= {0, degree}, f"line sizes {sorted(sizes)}")
        )
    for k, q, s in ((3, 3, 2), (4, 2, 1), (5, 4, 3)):
        p = params(cons.trivial_spike(k, q, s))
        ok = (p.n, p.k, p.d, p.d_perp) == (k + s, k, 1, 2)
        out.append(_check(1, f"golden:trivial_spike({k},{q},{s})", ok, f"got [{p.n},{p.k},{p.d}] d_perp={p.d_perp}"))
    p = params(cons.trivial_spike(2, 2, 0))
    out.append(_check(1, "golden:trivial_spike(2,2,0)", (p.n, p.k, p.d, p.s) == (2, 2, 1, 0), f"{p}"))
    for q, s in ((2, 1), (3, 0), (4, 2)):
        p = params(cons.two_dim_extremal(q, s))
        ok = (p.n, p.k, p.d) == ((s + 1) * (q + 1), 2, (s + 1) * q)
        out.append(_check(1, f"golden:two_dim_extremal({q},{s})", ok, f"got [{p.n},{p.k},{p.d}]"))
    return out


# -- criterion 2: brute-force oracle equivalence --------------------------------


def _random_system(rng: random.Random, max_words: int = 4096) -> ProjectiveSystem:
    choices = [(q, k) for q in (2, 3, 4, 5, 7, 8, 9, 16) for k in range(2, 7) if q**k <= max_words]
    while True:
        q, k = rng.choice(choices)
        n = rng.randint(k, k + 6)
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        try:
            return from_generator_matrix(rows, field(q))
        except Exception:
            continue


def _brute_weights(ps: ProjectiveSystem) -> dict[int, int]:
    gf = ps.geometry.field
    mat = to_generator_matrix(ps)
    k, n = len(mat), ps.n
    dist: dict[int, int] = {}
    for msg in product(range(gf.q), repeat=k):
        word = [0] * n
        for i, m in enumerate(msg):
            if m:
                row = mat[i]
                word = [gf.add(w, gf.mul(m, c)) for w, c in zip(word, row)]
        w = sum(1 for c in word if c)
        dist[w] = dist.get(w, 0) + 1
    return dist


def _null_space_basis(mat, gf):
    from .geometry import rref

    echelon = rref(mat, gf)
    n = len(mat[0])
    pivots = [next(i for i, c in enumerate(r) if c) for r in echelon]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for row, piv in zip(echelon, pivots):
            vec[piv] = gf.neg(row[f])
        basis.append(vec)
    return basis


def _brute_dual_min_weight(ps: ProjectiveSystem) -> int:
    gf = ps.geometry.field
    basis = _null_space_basis(to_generator_matrix(ps), gf)
    if not basis:
        return ps.n + 1
    best = ps.n + 1
    for coeffs in product(range(gf.q), repeat=len(basis)):
        if not any(coeffs):
            continue
        word = [0] * ps.n
        for c, vec in zip(coeffs, basis):
            if c:
                word = [gf.add(w, gf.mul(c, v)) for w, v in zip(word, vec)]
        best = min(best, sum(1 for c in word if c))
    return best


def criterion_2(seed: int = 0, samples: int = 200) -> list[CheckResult]:
    rng = random.Random(seed)
    weight_fail = dual_fail = norm_fail = 0
    dual_checked = 0
    for _ in range(samples):
        ps = _random_system(rng)
        wd = weight_distribution(ps)
        if sum(wd.values()) != ps.q**ps.k:
            norm_fail += 1
        if wd != _brute_weights(ps):
            weight_fail += 1
        if ps.q ** (ps.n - ps.k) <= 4096:
            dual_checked += 1
            if dual_distance(ps) != _brute_dual_min_weight(ps):
                dual_fail += 1
    return [
        _check(2, "oracle:weight_distribution", weight_fail == 0, f"{weight_fail} mismatches / {samples}"),
        _check(2, "oracle:weight_normalization", norm_fail == 0, f"{norm_fail} mismatches"),
        _check(
            2,
            "oracle:dual_distance",
            dual_fail == 0 and dual_checked >= samples // 4,
            f"{dual_fail} mismatches / {dual_checked} checked",
        ),
    ]


# -- criterion 3: search certifications ------------------------------------------


SEARCH_TARGETS = [(3, 2, 0, 4), (3, 4, 0, 6), (2, 3, 1, 8), (4, 2, 1, 8), (5, 2, 1, 7)]


def criterion_3() -> tuple[list[CheckResult], list[ProjectiveSystem]]:
    out = []
    witnesses = []
    for k, q, s, expect in SEARCH_TARGETS:
        cert = max_length(SearchConfig(k=k, q=q, s=s))
        ok = cert.n_max == expect and cert.exhaustive
        out.append(
            _check(3, f"search:m^{s}({k},{q})={expect}", ok,
                   f"n_max={cert.n_max} exhaustive={cert.exhaustive} nodes={cert.nodes}")
        )
        if cert.witness is not None:
            witnesses.append(cert.witness)
            dual_defect_scan(cert)
    return out, witnesses


# -- criterion 4: extremal-dimension reproduction ---------------------------------


def criterion_4() -> list[CheckResult]:
    out = []
    e = kappa(2, 8)
    reps = integrality(29, 4, 8, 2, FULL_LENGTH)
    out.append(
        _check(4, "kappa(2,8)=3",
               (e.lower, e.upper, e.witness) == (3, 3, "denniston")
               and reps[0].gamma_raw == (3654, 10) and not reps[0].gamma_integer,
               f"{e.lower}..{e.upper} witness={e.witness} gamma0={reps[0].gamma_raw}")
    )
    e = kappa(2, 4)
    out.append(
        _check(4, "kappa(2,4)=4",
               (e.lower, e.upper, e.witness) == (4, 4, "elliptic_quadric"),
               f"{e.lower}..{e.upper} witness={e.witness}")
    )
    supported = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    bad = [(s, q) for q in supported for s in (q, q + 1, q + 3)
           if (lambda x: (x.lower, x.upper) != (2, 2))(kappa(s, q))]
    out.append(_check(4, "kappa(s>=q,q)=2 for q<=16", not bad, f"failures: {bad}"))
    bad = [q for q in supported if q > 2 and (lambda x: (x.lower, x.upper) != (4, 4))(kappa(q - 2, q))]
    out.append(_check(4, "kappa(q-2,q)=4 for 2<q<=16", not bad, f"failures: {bad}"))
    return out


# -- criterion 5: prime-window vs direct integrality ---------------------------------


def criterion_5() -> list[CheckResult]:
    mismatches = []
    cells = 0
    for q in (4, 8, 16, 32, 64):
        for s in range(0, 7):
            if q % (s + 2):
                continue
            for k in range(3, 13):
                cells += 1
                full = integrality(extremal_length(k, q, s), k, q, s, FULL_LENGTH)
                near = (
                    integrality(extremal_length(k, q, s) - 1, k, q, s, NEAR_FULL_LENGTH)
                    if k >= 3 else []
                )
                fired1 = prime_window_hit(k, q, s, 1) is not None
                found1 = bool(denominator_primes_in_window(full, "gamma", s, k + s))
                if fired1 != found1:
                    mismatches.append((k, q, s, 1))
                fired2 = prime_window_hit(k, q, s, 2) is not None
                found2 = bool(denominator_primes_in_window(near, "alpha", s, k + s - 1))
                if fired2 != found2:
                    mismatches.append((k, q, s, 2))
                fired3 = prime_window_hit(k, q, s, 3) is not None
                found3 = bool(
                    denominator_primes_in_window(near, "beta", s + 1, k + s - 1, coprime_to=q)
                )
                if fired3 != found3:
                    mismatches.append((k, q, s, 3))
    return [_check(5, "integrality:prime_window_sweep", not mismatches,
                   f"{cells} cells, mismatches: {mismatches[:8]}")]


# -- criterion 6: forcing meta-tests --------------------------------------------------


def criterion_6(extra_witnesses: list[ProjectiveSystem] | None = None) -> list[CheckResult]:
    systems: list[tuple[str, ProjectiveSystem]] = [(name, build()) for name, build, _, _ in GOLDEN]
    systems += [
        ("trivial_spike(3,3,2)", cons.trivial_spike(3, 3, 2)),
        ("two_dim_extremal(2,1)", cons.two_dim_extremal(2, 1)),
        ("two_dim_extremal(4,2)", cons.two_dim_extremal(4, 2)),
    ]
    for i, w in enumerate(extra_witnesses or []):
        systems.append((f"search_witness_{i}", w))
    # The forcing threshold is strict: length s(q+1)+k-1 itself admits
    # counterexamples to all three conclusions ([7,5,2]_2, [15,4,8]_2).
    griesmer_bad, t1_bad, audit_bad = [], [], []
    for name, ps in systems:
        p = params(ps)
        n, k, q, s = p.n, p.k, ps.q, p.s
        if k >= 3 and n > s * (q + 1) + k - 1:
            if not (p.griesmer_met and p.projective):
                griesmer_bad.append(name)
            if s >= 1 and p.t != 1:
                griesmer_bad.append(name)
        if s >= 1 and k >= 3 and n > s * (q + 1) + k - 1 and p.t > 1:
            t1_bad.append(name)
        if not audit(ps).ok:
            audit_bad.append(name)
    return [
        _check(6, "forcing:long_griesmer_projective", not griesmer_bad, f"failures: {griesmer_bad}"),
        _check(6, "forcing:long_dual_amds", not t1_bad, f"failures: {t1_bad}"),
        _check(6, "forcing:audit_catalog", not audit_bad, f"failures: {audit_bad}"),
    ]


# -- criterion 7: shortening properties -------------------------------------------------


def _random_flat(rng: random.Random, ps: ProjectiveSystem):
    geom = ps.geometry
    max_dim = ps.k - 2  # codim >= 2 means at most k-2 basis rows
    size = rng.randint(1, max_dim)
    pts = [geom.points[rng.randrange(geom.num_points)] for _ in range(size)]
    flat = span_flat(pts, geom.field)
    if flat.proj_dim > ps.k - 3:
        return None
    return flat


def criterion_7(seed: int = 0, pairs: int = 1000) -> list[CheckResult]:
    rng = random.Random(seed ^ 0x5EED)
    general_bad = point_bad = 0
    done = 0
    systems = []
    while len(systems) < 40:
        ps = _random_system(rng, max_words=2048)
        if ps.k >= 3 and ps.zero_mult == 0:
            systems.append(ps)
    while done < pairs:
        ps = systems[done % len(systems)]
        flat = _random_flat(rng, ps)
        if flat is None:
            continue
        gf = ps.geometry.field
        alpha = sum(m for idx, m in ps.mult.items() if flat.contains(ps.geometry.points[idx], gf))
        try:
            shortened = quotient_shorten(ps, flat)
        except Exception:
            continue
        done += 1
        p0, p1 = params(ps), params(shortened)
        if p1.d < p0.d or p1.s > p0.s - alpha + flat.proj_dim + 1:
            general_bad += 1
    # point shortening at a secant point: distance survives exactly
    point_done = 0
    for ps in systems:
        if point_done >= 100:
            break
        d, secants = min_distance(ps)
        p0 = params(ps)
        on_secant = [
            idx for idx in ps.mult
            if any(h in ps.geometry.hyperplanes_through_point(idx) for h in secants[:4])
        ]
        if not on_secant:
            continue
        idx = on_secant[0]
        mu = ps.mult[idx]
        flat = span_flat([ps.geometry.points[idx]], ps.geometry.field)
        shortened = quotient_shorten(ps, flat)
        p1 = params(shortened)
        point_done += 1
        if p1.d != p0.d or p1.s != p0.s - mu + 1:
            point_bad += 1
    return [
        _check(7, "shortening:quotient_inequalities", general_bad == 0, f"{general_bad} bad / {done} pairs"),
        _check(7, "shortening:secant_point_exact", point_bad == 0 and point_done >= 30,
               f"{point_bad} bad / {point_done} pairs"),
    ]


# -- criterion 8: extremal-length conjecture probe ------------------------------------------


def criterion_8() -> list[CheckResult]:
    out = []
    all_found = True
    details = []
    for k in range(3, 9):
        cert = max_length(SearchConfig(k=k, q=2, s=0))
        ok = cert.n_max == k + 1 and cert.witness is not None and params(cert.witness).s == 0
        all_found = all_found and ok
        details.append(f"k={k}:n={cert.n_max}")
    out.append(_check(8, "probe:even_weight_witnesses", all_found, " ".join(details)))
    entry = kappa(0, 2)
    out.append(
        _check(8, "probe:kappa(0,2)_discrepancy_note",
               entry.note is not None and entry.upper is None and entry.lower >= 4,
               f"lower={entry.lower} upper={entry.upper} note={'present' if entry.note else 'missing'}")
    )
    ew = _even_weight_system(8)
    p = params(ew)
    out.append(
        _check(8, "probe:even_weight[9,8,2]",
               (p.n, p.k, p.d, p.s) == (9, 8, 2, 0) and p.n == extremal_length(8, 2, 0),
               f"got [{p.n},{p.k},{p.d}] s={p.s}")
    )
    return out


def run_suite(seed: int = 0) -> list[CheckResult]:
    """Full acceptance battery in criterion order."""
    results = list(criterion_1())
    results += criterion_2(seed=seed)
    c3, witnesses = criterion_3()
    results += c3
    results += criterion_4()
    results += criterion_5()
    results += criterion_6(witnesses)
    results += criterion_7(seed=seed)
    results += criterion_8()
    return results
