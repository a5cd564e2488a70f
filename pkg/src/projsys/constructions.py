"""Named generators for the catalog of witness codes and arcs.

Every generator is deterministic: form coefficients are the smallest field
elements (in encoding order) passing the relevant irreducibility test, the
additive subgroup used by the maximal-arc generator is the GF(2)-span of
the first basis elements, and fixed flats are spanned by leading
coordinates.  This keeps golden tests and file exports byte-stable.
"""

from __future__ import annotations

from .geometry import geometry
from .gf import GF, field
from .projsystem import ProjectiveSystem


class QOddError(ValueError):
    """Construction needs an even field order."""


class BadDegreeError(ValueError):
    """Maximal-arc degree must divide the field order."""


class AmbientMismatchError(ValueError):
    """Operands live in different ambient spaces."""


def trivial_spike(k: int, q: int, s: int) -> ProjectiveSystem:
    """The [k+s, k, 1] code: e1 with multiplicity s+1, e2..ek once each."""
    if k < 2:
        raise ValueError("spike needs k >= 2")
    if s < 0:
        raise ValueError("defect must be nonnegative")
    geom = geometry(k, q)
    mult = {}
    for i in range(k):
        e = tuple(1 if j == i else 0 for j in range(k))
        mult[geom._index[e]] = s + 1 if i == 0 else 1
    return ProjectiveSystem(geom, mult)


def two_dim_extremal(q: int, s: int) -> ProjectiveSystem:
    """Every point of PG(1, q) taken s+1 times: [(s+1)(q+1), 2, (s+1)q]."""
    if s < 0:
        raise ValueError("defect must be nonnegative")
    geom = geometry(2, q)
    return ProjectiveSystem(geom, {i: s + 1 for i in range(geom.num_points)})


def full_space(k: int, q: int) -> ProjectiveSystem:
    """All points of PG(k-1, q) once each."""
    if k < 2:
        raise ValueError("full space needs k >= 2")
    geom = geometry(k, q)
    return ProjectiveSystem(geom, {i: 1 for i in range(geom.num_points)})


def plane_minus_line(q: int) -> ProjectiveSystem:
    """The affine q^2 points of PG(2, q), removing the line x0 = 0."""
    geom = geometry(3, q)
    mult = {i: 1 for i, pt in enumerate(geom.points) if pt[0] != 0}
    return ProjectiveSystem(geom, mult)


def hyperoval(q: int) -> ProjectiveSystem:
    """Conic {(1, t, t^2)} plus both infinite points; a (q+2)-arc, q even."""
    if q % 2:
        raise QOddError("hyperovals exist only for even q")
    gf = field(q)
    geom = geometry(3, q)
    pts = [(1, t, gf.mul(t, t)) for t in range(q)] + [(0, 1, 0), (0, 0, 1)]
    return ProjectiveSystem(geom, {geom._index[p]: 1 for p in pts})


def _smallest_anisotropic_lambda(gf: GF) -> int:
    # smallest lam with z^2 + lam*z + 1 having no root
    for lam in range(gf.q):
        if all(gf.add(gf.add(gf.mul(z, z), gf.mul(lam, z)), 1) != 0 for z in range(gf.q)):
            return lam
    raise AssertionError("no anisotropic binary form over the field")


def denniston(q: int, degree: int) -> ProjectiveSystem:
    """Maximal arc of degree 2^e in PG(2, 2^h): every line meets it in 0 or degree.

    Points (1, x, y) with x^2 + lam*xy + y^2 in the additive subgroup H of
    order ``degree`` spanned over GF(2) by 1, alpha, ..., alpha^(e-1); in the
    integer element encoding H is exactly {0, ..., degree-1}.
    """
    if q % 2:
        raise QOddError("maximal arcs of this kind need even q")
    if degree < 2 or q % degree:
        raise BadDegreeError(f"degree {degree} does not divide q={q}")
    if degree & (degree - 1):
        raise BadDegreeError(f"degree {degree} is not a power of 2")
    gf = field(q)
    geom = geometry(3, q)
    lam = _smallest_anisotropic_lambda(gf)
    mult = {}
    for x in range(q):
        for y in range(q):
            value = gf.add(gf.add(gf.mul(x, x), gf.mul(lam, gf.mul(x, y))), gf.mul(y, y))
            if value < degree:
                mult[geom._index[(1, x, y)]] = 1
    return ProjectiveSystem(geom, mult)


def _smallest_irreducible_pair(gf: GF) -> tuple[int, int]:
    # smallest (b, c) in lexicographic encoding order with z^2 + b*z + c irreducible
    for b in range(gf.q):
        for c in range(gf.q):
            if all(gf.add(gf.add(gf.mul(z, z), gf.mul(b, z)), c) != 0 for z in range(gf.q)):
                return b, c
    raise AssertionError("no irreducible quadratic over the field")


def elliptic_quadric(q: int) -> ProjectiveSystem:
    """The (q^2+1)-cap {(1, -(y^2+byz+cz^2), y, z)} + (0,1,0,0) in PG(3, q)."""
    gf = field(q)
    geom = geometry(4, q)
    b, c = _smallest_irreducible_pair(gf)
    mult = {geom._index[(0, 1, 0, 0)]: 1}
    for y in range(q):
        for z in range(q):
            form = gf.add(gf.mul(y, y), gf.add(gf.mul(b, gf.mul(y, z)), gf.mul(c, gf.mul(z, z))))
            mult[geom._index[(1, gf.neg(form), y, z)]] = 1
    return ProjectiveSystem(geom, mult)


def cap8_pg32() -> ProjectiveSystem:
    """The 8 points of PG(3, 2) off the hyperplane with dual coordinates (1,0,0,0)."""
    geom = geometry(4, 2)
    mult = {i: 1 for i, pt in enumerate(geom.points) if pt[0] == 1}
    return ProjectiveSystem(geom, mult)


def union(ps1: ProjectiveSystem, ps2: ProjectiveSystem) -> ProjectiveSystem:
    """Multiset union: multiplicities add."""
    if ps1.k != ps2.k or ps1.geometry.field != ps2.geometry.field:
        raise AmbientMismatchError("systems live in different ambient spaces")
    mult = dict(ps1.mult)
    for idx, m in ps2.mult.items():
        mult[idx] = mult.get(idx, 0) + m
    return ProjectiveSystem(ps1.geometry, mult, ps1.zero_mult + ps2.zero_mult)


# name -> (builder, required argument names); the CLI surface
CATALOG = {
    "trivial_spike": (trivial_spike, ("k", "q", "s")),
    "two_dim_extremal": (two_dim_extremal, ("q", "s")),
    "full_space": (full_space, ("k", "q")),
    "plane_minus_line": (plane_minus_line, ("q",)),
    "hyperoval": (hyperoval, ("q",)),
    "denniston": (denniston, ("q", "degree")),
    "elliptic_quadric": (elliptic_quadric, ("q",)),
    "cap8_pg32": (cap8_pg32, ()),
}


def build(name: str, **kwargs) -> ProjectiveSystem:
    """Build a catalog construction by name with keyword arguments."""
    if name not in CATALOG:
        raise ValueError(f"unknown construction {name!r}")
    builder, arg_names = CATALOG[name]
    missing = [a for a in arg_names if a not in kwargs or kwargs[a] is None]
    if missing:
        raise ValueError(f"{name} needs arguments: {', '.join(missing)}")
    return builder(**{a: kwargs[a] for a in arg_names})
