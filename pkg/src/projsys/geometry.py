"""Points, hyperplanes, flats, and incidence in PG(k-1, q).

Points and hyperplanes are normalized coordinate tuples: the first nonzero
coordinate is scaled to 1.  Both carry canonical integer indices given by
lexicographic order on the coordinate tuples; hyperplanes reuse the point
enumeration in the dual coordinates, so point i and hyperplane i have the
same tuple.  A point lies on a hyperplane iff the dot product of the two
tuples vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .gf import GF


class GeometryTooLargeError(ValueError):
    """Point count exceeds the configured enumeration limit."""


class MixedAmbientError(ValueError):
    """Vectors from different ambient spaces were mixed."""


class CodimTooSmallError(ValueError):
    """Quotient requested by a flat of codimension below 2."""


DEFAULT_POINT_LIMIT = 10**6


def theta(m: int, q: int) -> int:
    """Number of points of PG(m, q); zero for the empty flat (m = -1)."""
    return (q ** (m + 1) - 1) // (q - 1)


def _enumerate_normalized(k: int, q: int) -> list[tuple[int, ...]]:
    if k == 1:
        return [(1,)]
    tails = _enumerate_normalized(k - 1, q)
    pts = [(0,) + t for t in tails]
    pts.extend((1,) + v for v in product(range(q), repeat=k - 1))
    return pts


class ProjectiveGeometry:
    """PG(k-1, q): canonical point/hyperplane enumeration plus incidence.

    Immutable after construction.  Per-point hyperplane lists are built
    lazily and cached; they are the hot-path structure shared read-only by
    the parameter scans and the arc search.
    """

    def __init__(self, k: int, field: GF, point_limit: int = DEFAULT_POINT_LIMIT):
        if k < 1:
            raise ValueError("dimension k must be at least 1")
        self.k = k
        self.field = field
        self.num_points = theta(k - 1, field.q)
        if self.num_points > point_limit:
            raise GeometryTooLargeError(
                f"PG({k - 1},{field.q}) has {self.num_points} points, over the limit {point_limit}"
            )
        self.points: tuple[tuple[int, ...], ...] = tuple(_enumerate_normalized(k, field.q))
        self._index = {pt: i for i, pt in enumerate(self.points)}
        self._point_hyps: dict[int, tuple[int, ...]] = {}

    # -- basic coordinate work ----------------------------------------------

    def normalize(self, vec) -> tuple[int, ...] | None:
        """Scale so the first nonzero coordinate is 1; None for the zero vector."""
        gf = self.field
        for c in vec:
            if c:
                if c == 1:
                    return tuple(vec)
                inv = gf.inv(c)
                return tuple(gf.mul(inv, x) for x in vec)
        return None

    def index_of(self, vec) -> int:
        pt = self.normalize(vec)
        if pt is None:
            raise ValueError("zero vector has no projective point")
        return self._index[pt]

    def incident(self, hyp: tuple[int, ...], pt: tuple[int, ...]) -> bool:
        return self.field.dot(hyp, pt) == 0

    @property
    def hyperplanes(self) -> tuple[tuple[int, ...], ...]:
        """Dual coordinates, same enumeration as points."""
        return self.points

    # -- incidence ------------------------------------------------------------

    def hyperplanes_through_point(self, point_index: int) -> tuple[int, ...]:
        """Indices of the theta(k-2, q) hyperplanes through a point."""
        cached = self._point_hyps.get(point_index)
        if cached is None:
            basis = self._orthogonal_basis(self.points[point_index])
            cached = tuple(sorted(self._index[h] for h in self._span_points(basis)))
            self._point_hyps[point_index] = cached
        return cached

    def hyperplane_point_indices(self, hyp_index: int) -> tuple[int, ...]:
        """Indices of the points on a hyperplane (dual of the map above)."""
        return self.hyperplanes_through_point(hyp_index)

    def _orthogonal_basis(self, vec: tuple[int, ...]) -> list[tuple[int, ...]]:
        """Basis of the solutions of x . vec = 0."""
        gf = self.field
        pivot = next(i for i, c in enumerate(vec) if c)
        inv = gf.inv(vec[pivot])
        basis = []
        for j in range(self.k):
            if j == pivot:
                continue
            row = [0] * self.k
            row[j] = 1
            row[pivot] = gf.neg(gf.mul(inv, vec[j]))
            basis.append(tuple(row))
        return basis

    def _span_points(self, basis: list[tuple[int, ...]]):
        """Normalized points of the span of independent row vectors."""
        gf = self.field
        q = gf.q
        r = len(basis)
        for coeffs in _enumerate_normalized(r, q) if r else ():
            vec = [0] * self.k
            for c, row in zip(coeffs, basis):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            vec[j] = gf.add(vec[j], gf.mul(c, x))
            yield self.normalize(vec)


# -- rank and flats ----------------------------------------------------------


def rref(rows, gf: GF) -> list[list[int]]:
    """Reduced row echelon form over GF(q); returns the nonzero rows."""
    mat = [list(r) for r in rows]
    if not mat:
        return []
    width = len(mat[0])
    if any(len(r) != width for r in mat):
        raise MixedAmbientError("rows of differing length")
    pivot_row = 0
    for col in range(width):
        src = next((r for r in range(pivot_row, len(mat)) if mat[r][col]), None)
        if src is None:
            continue
        mat[pivot_row], mat[src] = mat[src], mat[pivot_row]
        inv = gf.inv(mat[pivot_row][col])
        mat[pivot_row] = [gf.mul(inv, x) for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [gf.sub(x, gf.mul(factor, y)) for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return [r for r in mat[:pivot_row] if any(r)]


def rank(vectors, gf: GF) -> int:
    """Linear rank of coordinate vectors by Gaussian elimination."""
    return len(rref(vectors, gf))


@dataclass(frozen=True)
class Flat:
    """A projective subspace given by its reduced row-echelon basis."""

    basis: tuple[tuple[int, ...], ...]
    q: int

    @property
    def proj_dim(self) -> int:
        return len(self.basis) - 1

    @property
    def ambient_k(self) -> int:
        return len(self.basis[0])

    def contains(self, vec, gf: GF) -> bool:
        reduced = _reduce_against(list(vec), self.basis, gf)
        return all(x == 0 for x in reduced)


def _reduce_against(vec: list[int], basis, gf: GF) -> list[int]:
    """Eliminate the pivot coordinates of an RREF basis from vec."""
    for row in basis:
        pivot = next(i for i, c in enumerate(row) if c)
        if vec[pivot]:
            factor = vec[pivot]
            vec = [gf.sub(x, gf.mul(factor, y)) for x, y in zip(vec, row)]
    return vec


def span_flat(points, gf: GF) -> Flat:
    """Smallest flat containing the given coordinate tuples."""
    basis = rref(points, gf)
    if not basis:
        raise ValueError("cannot span a flat from an empty point set")
    return Flat(basis=tuple(tuple(r) for r in basis), q=gf.q)


def hyperplanes_through(flat: Flat, geom: ProjectiveGeometry) -> list[int]:
    """All hyperplanes containing the flat; a pencil of q+1 when codim is 2."""
    gf = geom.field
    k = geom.k
    if flat.proj_dim > k - 2:
        return []
    # Solutions h of basis . h^T = 0, i.e. the null space of the basis matrix.
    basis = _null_space(flat.basis, k, gf)
    return sorted(geom._index[h] for h in geom._span_points(basis))


def _null_space(rows, width: int, gf: GF) -> list[tuple[int, ...]]:
    echelon = rref(rows, gf)
    pivots = [next(i for i, c in enumerate(r) if c) for r in echelon]
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * width
        vec[f] = 1
        for row, piv in zip(echelon, pivots):
            vec[piv] = gf.neg(row[f])
        basis.append(tuple(vec))
    return basis


@dataclass(frozen=True)
class QuotientMap:
    """Quotient of PG(k-1, q) by a flat of codimension r >= 2."""

    r: int
    geometry: ProjectiveGeometry          # the quotient PG(r-1, q)
    assign: dict[int, int]                # source point index -> quotient point index

    def fibers(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for src, dst in self.assign.items():
            out.setdefault(dst, []).append(src)
        return out


def quotient_map(flat: Flat, geom: ProjectiveGeometry) -> QuotientMap:
    """Map every point off the flat to its image in the quotient geometry.

    The image of P is the point of PG(r-1, q) whose coordinates are the
    non-pivot coordinates of P after eliminating the flat's RREF pivots,
    so the kernel of the linear map is exactly the span of the flat.
    """
    gf = geom.field
    k = geom.k
    r = k - (flat.proj_dim + 1)
    if r < 2:
        raise CodimTooSmallError(f"flat has codimension {r}, need at least 2")
    pivots = [next(i for i, c in enumerate(row) if c) for row in flat.basis]
    keep = [j for j in range(k) if j not in pivots]
    quotient = ProjectiveGeometry(r, gf)
    assign: dict[int, int] = {}
    for idx, pt in enumerate(geom.points):
        reduced = _reduce_against(list(pt), flat.basis, gf)
        img = tuple(reduced[j] for j in keep)
        if any(img):
            assign[idx] = quotient.index_of(img)
    return QuotientMap(r=r, geometry=quotient, assign=assign)


@lru_cache(maxsize=None)
def _geometry_cached(k: int, q: int, poly: int | None) -> ProjectiveGeometry:
    from .gf import field

    return ProjectiveGeometry(k, field(q, poly))


def geometry(
    k: int, q: int, poly: int | None = None, point_limit: int = DEFAULT_POINT_LIMIT
) -> ProjectiveGeometry:
    """Shared geometry instance for (k, q); same-object reuse keeps caches warm."""
    if k >= 1 and theta(k - 1, q) > point_limit:
        raise GeometryTooLargeError(
            f"PG({k - 1},{q}) has {theta(k - 1, q)} points, over the limit {point_limit}"
        )
    return _geometry_cached(k, q, poly)
