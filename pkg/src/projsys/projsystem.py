"""Linear codes as multisets of points in PG(k-1, q).

A system stores point multiplicities over a shared geometry plus a count of
all-zero generator columns (zero_mult) so that degenerate codes from the
1-dimensional discussion remain representable.  All parameter computations
run off the hyperplane scan: a hyperplane meeting the system in m points
(counting multiplicity, with zero columns on every hyperplane) corresponds
to q-1 codewords of weight n - m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Flat, ProjectiveGeometry, geometry, quotient_map, rank, span_flat
from .gf import GF


class RankDeficientError(ValueError):
    """Generator matrix rows are linearly dependent."""


class EmptyQuotientError(ValueError):
    """All of the system's mass lies on the quotient flat."""


class DegenerateSystemError(ValueError):
    """Operation is not defined for systems with zero columns."""


class GmFormatError(ValueError):
    """Malformed generator-matrix file."""


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    d_perp: int
    s: int
    t: int
    k_perp: int
    projective: bool
    degenerate: bool
    griesmer_met: bool


class ProjectiveSystem:
    """Multiset of projective points whose support spans the ambient space."""

    def __init__(self, geom: ProjectiveGeometry, mult: dict[int, int], zero_mult: int = 0):
        if zero_mult < 0:
            raise ValueError("zero_mult must be nonnegative")
        if not mult:
            raise ValueError("a projective system needs at least one point")
        if any(m < 1 for m in mult.values()):
            raise ValueError("multiplicities must be at least 1")
        support = [geom.points[i] for i in mult]
        if rank(support, geom.field) < geom.k:
            raise RankDeficientError("support lies in a hyperplane")
        self.geometry = geom
        self.mult = dict(sorted(mult.items()))
        self.zero_mult = zero_mult
        self.n = zero_mult + sum(mult.values())

    @property
    def k(self) -> int:
        return self.geometry.k

    @property
    def q(self) -> int:
        return self.geometry.field.q

    @property
    def is_projective(self) -> bool:
        return self.zero_mult == 0 and all(m == 1 for m in self.mult.values())

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.mult)

    def support_vectors(self) -> list[tuple[int, ...]]:
        return [self.geometry.points[i] for i in self.mult]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProjectiveSystem)
            and self.geometry.field == other.geometry.field
            and self.k == other.k
            and self.mult == other.mult
            and self.zero_mult == other.zero_mult
        )

    def __repr__(self) -> str:
        return f"ProjectiveSystem(k={self.k}, q={self.q}, n={self.n}, support={len(self.mult)})"


# -- generator matrices --------------------------------------------------------


def from_generator_matrix(rows, gf: GF) -> ProjectiveSystem:
    """Read the columns of a rank-k generator matrix as a point multiset."""
    mat = [list(r) for r in rows]
    k = len(mat)
    if rank(mat, gf) < k:
        raise RankDeficientError("generator matrix does not have full row rank")
    geom = geometry(k, gf.q, None if gf.poly == 0 or gf.h == 1 else gf.poly)
    mult: dict[int, int] = {}
    zero_mult = 0
    for col in zip(*mat):
        pt = geom.normalize(col)
        if pt is None:
            zero_mult += 1
        else:
            idx = geom._index[pt]
            mult[idx] = mult.get(idx, 0) + 1
    return ProjectiveSystem(geom, mult, zero_mult)


def to_generator_matrix(ps: ProjectiveSystem) -> list[list[int]]:
    """Canonical export: columns sorted by point index, zero columns last."""
    cols: list[tuple[int, ...]] = []
    for idx, m in ps.mult.items():
        cols.extend([ps.geometry.points[idx]] * m)
    cols.extend([(0,) * ps.k] * ps.zero_mult)
    return [list(row) for row in zip(*cols)]


def write_gm(ps: ProjectiveSystem, path) -> None:
    gf = ps.geometry.field
    lines = [f"q {gf.q} poly {gf.poly}", f"k {ps.k} n {ps.n}"]
    for row in to_generator_matrix(ps):
        lines.append(" ".join(str(x) for x in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_gm(path) -> ProjectiveSystem:
    from .gf import field

    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) < 2:
        raise GmFormatError("missing header lines")
    head1 = lines[0].split()
    head2 = lines[1].split()
    if len(head1) != 4 or head1[0] != "q" or head1[2] != "poly":
        raise GmFormatError(f"bad first header line: {lines[0]!r}")
    if len(head2) != 4 or head2[0] != "k" or head2[2] != "n":
        raise GmFormatError(f"bad second header line: {lines[1]!r}")
    q, poly, k, n = int(head1[1]), int(head1[3]), int(head2[1]), int(head2[3])
    gf = field(q, poly or None)
    rows = []
    for ln in lines[2:]:
        row = [int(tok) for tok in ln.split()]
        if len(row) != n:
            raise GmFormatError(f"expected {n} entries per row, got {len(row)}")
        if any(not 0 <= x < q for x in row):
            raise GmFormatError("entry outside [0, q)")
        rows.append(row)
    if len(rows) != k:
        raise GmFormatError(f"expected {k} rows, got {len(rows)}")
    return from_generator_matrix(rows, gf)


# -- hyperplane scan -----------------------------------------------------------


def hyperplane_counts(ps: ProjectiveSystem) -> list[int]:
    """Multiplicity-weighted |system  ^ H| per hyperplane index, zero columns excluded."""
    geom = ps.geometry
    counts = [0] * geom.num_points
    for idx, m in ps.mult.items():
        for h in geom.hyperplanes_through_point(idx):
            counts[h] += m
    return counts


def min_distance(ps: ProjectiveSystem) -> tuple[int, list[int]]:
    """Minimum distance and the list of secant hyperplane indices.

    Zero columns sit on every hyperplane, so they cancel out of the weights:
    d = (n - zero_mult) - max over hyperplanes of the support count.
    """
    counts = hyperplane_counts(ps)
    if ps.k == 1:
        return ps.n - ps.zero_mult, []
    best = max(counts)
    secants = [h for h, c in enumerate(counts) if c == best]
    return ps.n - ps.zero_mult - best, secants


def weight_distribution(ps: ProjectiveSystem) -> dict[int, int]:
    """weight -> codeword count; each hyperplane contributes q-1 words."""
    counts = hyperplane_counts(ps)
    q = ps.q
    dist: dict[int, int] = {0: 1}
    for c in counts:
        w = ps.n - ps.zero_mult - c
        dist[w] = dist.get(w, 0) + (q - 1)
    return dist


def dual_distance(ps: ProjectiveSystem) -> int:
    """Smallest size of a linearly dependent sub-multiset.

    1 for degenerate systems, 2 on any repeated point, then the smallest
    m <= k+1 for which some m support points have rank m-1.  When no
    dependent sub-multiset exists (the support is a frame of size k) the
    dual code is zero and the conventional value n+1 is returned.
    """
    if ps.zero_mult > 0:
        return 1
    if any(m >= 2 for m in ps.mult.values()):
        return 2
    vectors = ps.support_vectors()
    m = _min_circuit_size(vectors, ps.geometry.field, ps.k)
    return m if m is not None else ps.n + 1


def _min_circuit_size(vectors, gf: GF, k: int) -> int | None:
    """Smallest m with an m-subset of rank m-1, by increasing subset size.

    Subsets are extended with an incremental echelon basis; prefixes stay
    independent because any dependent prefix would have been found at a
    smaller target size.
    """
    n = len(vectors)
    for target in range(3, min(n, k + 1) + 1):
        if _find_circuit(vectors, gf, target):
            return target
    return None


def _find_circuit(vectors, gf: GF, target: int) -> bool:
    n = len(vectors)

    def extend(start: int, basis: list[list[int]]) -> bool:
        depth = len(basis)
        if depth == target - 1:
            for i in range(start, n):
                reduced = _reduce(vectors[i], basis, gf)
                if reduced is None:
                    return True
            return False
        # keep room for target - depth more picks
        for i in range(start, n - (target - depth) + 1):
            reduced = _reduce(vectors[i], basis, gf)
            if reduced is None:
                continue  # dependency of size depth+1 < target: found earlier
            basis.append(reduced)
            if extend(i + 1, basis):
                return True
            basis.pop()
        return False

    return extend(0, [])


def _reduce(vec, basis, gf: GF) -> list[int] | None:
    """Reduce vec against echelon rows; None if it lies in their span."""
    out = list(vec)
    for row in basis:
        pivot = next(i for i, c in enumerate(row) if c)
        if out[pivot]:
            factor = gf.div(out[pivot], row[pivot])
            out = [gf.sub(x, gf.mul(factor, y)) for x, y in zip(out, row)]
    return out if any(out) else None


# -- parameters ------------------------------------------------------------------


def griesmer_sum(d: int, k: int, q: int) -> int:
    return sum(math.ceil(d / q**i) for i in range(k))


def params(ps: ProjectiveSystem) -> CodeParams:
    d, _ = min_distance(ps)
    d_perp = dual_distance(ps)
    n, k, q = ps.n, ps.k, ps.q
    return CodeParams(
        n=n,
        k=k,
        d=d,
        d_perp=d_perp,
        s=n - k + 1 - d,
        t=k + 1 - d_perp,
        k_perp=n - k,
        projective=ps.is_projective,
        degenerate=ps.zero_mult > 0,
        griesmer_met=(n == griesmer_sum(d, k, q)),
    )


# -- quotient shortening -----------------------------------------------------------


def quotient_shorten(ps: ProjectiveSystem, flat: Flat) -> ProjectiveSystem:
    """Shorten by passing to the quotient geometry at a flat of codim >= 2."""
    if ps.zero_mult > 0:
        raise DegenerateSystemError("quotient shortening is defined for non-degenerate systems")
    qmap = quotient_map(flat, ps.geometry)
    new_mult: dict[int, int] = {}
    for idx, m in ps.mult.items():
        dst = qmap.assign.get(idx)
        if dst is not None:
            new_mult[dst] = new_mult.get(dst, 0) + m
    if not new_mult:
        raise EmptyQuotientError("all mass lies on the flat")
    return ProjectiveSystem(qmap.geometry, new_mult)


def flat_mass(ps: ProjectiveSystem, flat: Flat) -> int:
    """Multiplicity-weighted number of system points on the flat."""
    gf = ps.geometry.field
    return sum(
        m for idx, m in ps.mult.items() if flat.contains(ps.geometry.points[idx], gf)
    )


# -- dual-defect structure check ------------------------------------------------------


@dataclass(frozen=True)
class NsmdsReport:
    s: int
    t: int
    dimension_condition: bool       # k >= (s-1)(q+1)
    independence_condition: bool    # every (k-s)-subset affine independent
    applicable: bool
    conclusion_holds: bool          # t == s


def check_nsmds_conditions(ps: ProjectiveSystem) -> NsmdsReport:
    """Check the sufficiency conditions forcing the dual defect to equal s.

    Affine independence of every (k-s)-subset is equivalent to
    d_perp >= k-s+1.  When both conditions hold, t = s must follow;
    a False conclusion on an applicable system signals a bug.
    """
    p = params(ps)
    if p.s <= 1 or p.d <= 1:
        raise ValueError("check requires s > 1 and d > 1")
    dim_ok = p.k >= (p.s - 1) * (ps.q + 1)
    indep_ok = p.d_perp >= p.k - p.s + 1
    applicable = dim_ok and indep_ok
    return NsmdsReport(
        s=p.s,
        t=p.t,
        dimension_condition=dim_ok,
        independence_condition=indep_ok,
        applicable=applicable,
        conclusion_holds=(p.t == p.s),
    )


def support_flat(ps: ProjectiveSystem, point_indices) -> Flat:
    """Flat spanned by the given point indices of the system's geometry."""
    pts = [ps.geometry.points[i] for i in point_indices]
    return span_flat(pts, ps.geometry.field)
