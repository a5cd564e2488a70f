"""Exhaustive backtracking search for maximum-length multi-arcs.

The target is the longest multiset of points in PG(k-1, q) meeting every
hyperplane in at most k+s-1 points (counting multiplicity) and spanning the
space; by strict monotonicity of the maximum length in the defect this
equals the maximum length at defect exactly s.  Extension order is
nondecreasing point index, which kills all permutation symmetry of the
multiset; per-point multiplicity is capped at s+1, sound because quotient
shortening at a heavier point would push the defect negative.

Certificates record whether the canonical tree was fully explored (pruning
by sound bounds preserves exhaustiveness) and which bounds were used.  The
top two tree levels are sharded into independent tasks whose results merge
by maximum length with lexicographic tie-break, so certificates do not
depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .bounds.integrality import FULL_LENGTH, extremal_length, integrality
from .bounds.kappa import _verified_witness, _witness_candidates
from .bounds.rules import BoundQuery, best_upper, upper_bounds
from .geometry import ProjectiveGeometry, geometry, hyperplanes_through, rank, span_flat
from .gf import field
from .projsystem import ProjectiveSystem, params


class ForcingViolatedError(AssertionError):
    """A search witness contradicts a forcing theorem: an implementation bug."""


DEFAULT_BUDGET = 10**8


@dataclass
class SearchConfig:
    k: int
    q: int
    s: int
    max_mult: int | None = None          # default s+1
    budget: int = DEFAULT_BUDGET
    symmetry: str = "lex_only"
    threads: int = 0                     # 0: PROJSYS_THREADS or 1
    fix_first_point: bool = True
    use_engine_bound: bool = True
    seed_witness: bool = True
    point_limit: int = 10**5

    def resolved_threads(self) -> int:
        if self.threads > 0:
            return self.threads
        return int(os.environ.get("PROJSYS_THREADS", "1"))


@dataclass(frozen=True)
class SearchCertificate:
    n_max: int
    witness: ProjectiveSystem | None
    exhaustive: bool
    nodes: int
    rules_used: tuple[str, ...]
    config: SearchConfig | None = dc_field(compare=False, default=None)


def _coordinate_pencils(geom: ProjectiveGeometry) -> list[tuple[int, ...]]:
    """Hyperplane pencils through (k-3)-flats spanned by coordinate points."""
    k, gf = geom.k, geom.field
    if k == 2:
        return [tuple(range(geom.num_points))]
    pencils = []
    basis_pts = [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]
    for subset in combinations(range(k), k - 2):
        flat = span_flat([basis_pts[i] for i in subset], gf)
        pencils.append(tuple(hyperplanes_through(flat, geom)))
    return pencils


def _verify_point_transitivity(geom: ProjectiveGeometry) -> bool:
    """Every point completes to a basis, so any point can be moved to index 0."""
    k, gf = geom.k, geom.field
    if geom.num_points <= 2000:
        sample = geom.points
    else:
        sample = geom.points[:: max(1, geom.num_points // 500)]
    basis_pts = [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]
    for pt in sample:
        pivot = next(i for i, c in enumerate(pt) if c)
        rows = [pt] + [basis_pts[i] for i in range(k) if i != pivot]
        if rank(rows, gf) != k:
            return False
    return True


def _seed_witness(k: int, q: int, s: int) -> ProjectiveSystem | None:
    """Longest catalog system with hyperplane counts within the cap k+s-1.

    Used as the initial incumbent: the tree below any node that cannot beat
    it is cut, which closes the search immediately whenever a catalog
    witness already meets the engine's upper bound.
    """
    from . import constructions as cons
    from .bounds.kappa import _even_weight_system
    from .projsystem import hyperplane_counts

    candidates = []
    if k >= 2:
        candidates.append(lambda: cons.trivial_spike(k, q, s))
    if k == 2:
        candidates.append(lambda: cons.two_dim_extremal(q, s))
    if q == 2:
        candidates.append(lambda: _even_weight_system(k))
    if k == 3:
        if q % 2 == 0:
            candidates.append(lambda: cons.hyperoval(q))
            degree = 2
            while degree * 2 <= min(s + 2, q) and q % (degree * 2) == 0:
                degree *= 2
            if q % degree == 0 and degree - 2 <= s:
                candidates.append(lambda d=degree: cons.denniston(q, d))
        if q - 2 <= s:
            candidates.append(lambda: cons.plane_minus_line(q))
        if q - 1 <= s:
            candidates.append(lambda: cons.full_space(3, q))
    if k == 4:
        if q - 2 <= s:
            candidates.append(lambda: cons.elliptic_quadric(q))
        if q == 2 and s >= 1:
            candidates.append(cons.cap8_pg32)
    best = None
    for build in candidates:
        try:
            ps = build()
        except Exception:
            continue
        if ps.k != k or max(hyperplane_counts(ps)) > k + s - 1:
            continue
        if best is None or ps.n > best.n:
            best = ps
    return best


class _Engine:
    """Shared read-only tables; every DFS run owns its own mutable state."""

    def __init__(self, config: SearchConfig):
        self.config = config
        self.k, self.q, self.s = config.k, config.q, config.s
        self.gf = field(config.q)
        self.geom = geometry(config.k, config.q, point_limit=config.point_limit)
        self.cap = self.k + self.s - 1
        self.max_mult = config.max_mult if config.max_mult is not None else self.s + 1
        self.point_hyps = [
            self.geom.hyperplanes_through_point(i) for i in range(self.geom.num_points)
        ]
        self.pencils = _coordinate_pencils(self.geom)
        self.engine_ub = best_upper(self.k, self.q, self.s) if config.use_engine_bound else None
        self.seed: ProjectiveSystem | None = None
        if config.seed_witness:
            seed = _seed_witness(self.k, self.q, self.s)
            if seed is not None and all(m <= self.max_mult for m in seed.mult.values()):
                self.seed = seed

    def shard_prefixes(self) -> list[tuple[int, ...]]:
        """Legal depth-2 prefixes in lexicographic order (depth-1 if none extend)."""
        num = self.geom.num_points
        roots = [0] if self.config.fix_first_point else list(range(num))
        prefixes: list[tuple[int, ...]] = []
        for p0 in roots:
            extensions = []
            for p1 in range(p0, num):
                if p1 == p0:
                    if self.max_mult < 2 or self.cap < 2:
                        continue
                elif self.cap < 2 and set(self.point_hyps[p0]) & set(self.point_hyps[p1]):
                    continue
                extensions.append((p0, p1))
            prefixes.extend(extensions if extensions else [(p0,)])
        return prefixes

    def run_from(self, prefix: tuple[int, ...], budget: int):
        """DFS below the prefix; returns (best_n, best_seq, nodes, exhausted)."""
        counts = [0] * self.geom.num_points
        mult = [0] * self.geom.num_points
        basis: list[list[int]] = []
        seq: list[int] = []
        best = self.seed.n if self.seed is not None else 0
        best_seq: tuple[int, ...] | None = None
        nodes = 0
        exhausted = True
        cap, max_mult = self.cap, self.max_mult
        point_hyps = self.point_hyps
        points = self.geom.points
        num = self.geom.num_points

        # parallel stack recording whether each push added a basis row
        basis_flags: list[bool] = []

        def push(p: int) -> bool:
            if mult[p] >= max_mult:
                return False
            hyps = point_hyps[p]
            for h in hyps:
                if counts[h] >= cap:
                    return False
            for h in hyps:
                counts[h] += 1
            mult[p] += 1
            seq.append(p)
            reduced = self._reduce(points[p], basis)
            if reduced is not None:
                basis.append(reduced)
                basis_flags.append(True)
            else:
                basis_flags.append(False)
            return True

        def pop() -> None:
            p = seq.pop()
            for h in point_hyps[p]:
                counts[h] -= 1
            mult[p] -= 1
            if basis_flags.pop():
                basis.pop()

        for p in prefix:
            if not push(p):
                raise AssertionError("invalid shard prefix")
            nodes += 1
            if len(basis) == self.k and len(seq) > best:
                best, best_seq = len(seq), tuple(seq)

        def upper_estimate(n_cur: int, start: int) -> int:
            ub = n_cur + (num - start) * max_mult
            if self.engine_ub is not None and self.engine_ub < ub:
                ub = self.engine_ub
            for pencil in self.pencils:
                residual = n_cur
                for h in pencil:
                    residual += cap - counts[h]
                if residual < ub:
                    ub = residual
            return ub

        def dfs(start: int) -> None:
            nonlocal best, best_seq, nodes, exhausted
            if upper_estimate(len(seq), start) <= best:
                return
            for p in range(start, num):
                if nodes >= budget:
                    exhausted = False
                    return
                if not push(p):
                    continue
                nodes += 1
                if len(basis) == self.k and len(seq) > best:
                    best, best_seq = len(seq), tuple(seq)
                dfs(p)
                pop()
                if not exhausted:
                    return

        dfs(prefix[-1] if prefix else 0)
        return best, best_seq, nodes, exhausted

    def _reduce(self, vec, basis) -> list[int] | None:
        gf = self.gf
        out = list(vec)
        for row in basis:
            pivot = next(i for i, c in enumerate(row) if c)
            if out[pivot]:
                factor = gf.div(out[pivot], row[pivot])
                out = [gf.sub(x, gf.mul(factor, y)) for x, y in zip(out, row)]
        return out if any(out) else None


def max_length(config: SearchConfig) -> SearchCertificate:
    """Certified maximum length at the config's hyperplane cap.

    Exhaustive means every branch was either explored or cut by a sound
    bound; a budget overrun clears the flag, and the certificate then only
    witnesses a lower bound on the maximum.
    """
    engine = _Engine(config)
    rules_used = ["lex_extension"]
    if config.fix_first_point:
        if not _verify_point_transitivity(engine.geom):
            raise AssertionError("point transitivity check failed")
        rules_used.append("point_transitivity")
    rules_used.append("pencil_capacity")
    if config.use_engine_bound and engine.engine_ub is not None:
        for r in upper_bounds(BoundQuery(k=config.k, q=config.q, s=config.s)):
            if r.binding:
                rules_used.append(f"engine:{r.rule_id}")
                break
    if engine.seed is not None:
        rules_used.append(f"seed:n={engine.seed.n}")

    prefixes = engine.shard_prefixes()
    shard_budget = max(1, (config.budget - len(prefixes)) // max(1, len(prefixes)))

    threads = config.resolved_threads()
    if threads > 1 and len(prefixes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda pfx: engine.run_from(pfx, shard_budget), prefixes))
    else:
        results = [engine.run_from(pfx, shard_budget) for pfx in prefixes]

    best_n = engine.seed.n if engine.seed is not None else 0
    best_seq = None
    nodes = 0
    exhausted = True
    for n, seq, used, done in results:
        nodes += used
        exhausted = exhausted and done
        if n > best_n and seq is not None:
            best_n, best_seq = n, seq
    if best_seq is not None:
        mult: dict[int, int] = {}
        for p in best_seq:
            mult[p] = mult.get(p, 0) + 1
        witness = ProjectiveSystem(engine.geom, mult)
    else:
        witness = engine.seed
    return SearchCertificate(
        n_max=best_n,
        witness=witness,
        exhaustive=exhausted,
        nodes=nodes,
        rules_used=tuple(rules_used),
        config=config,
    )


# -- extremal-length verification ---------------------------------------------


@dataclass(frozen=True)
class KappaOutcome:
    kind: str                       # exists | ruled_out | exhausted_no_code | inconclusive
    witness: ProjectiveSystem | None = None
    rule_id: str | None = None
    certificate: SearchCertificate | None = None


def verify_kappa_entry(s: int, q: int, k: int, budget: int | None = None) -> KappaOutcome:
    """Does a code of the extremal length (s+1)(q+1)+k-2 exist at (k, q, s)?

    Consults the bound engine and the integrality reports for a short
    circuit, then the construction catalog, then searches.
    """
    target = extremal_length(k, q, s)
    ub = best_upper(k, q, s)
    if ub is not None and ub < target:
        rule = next(
            (r.rule_id for r in upper_bounds(BoundQuery(k=k, q=q, s=s)) if r.binding), "engine"
        )
        return KappaOutcome(kind="ruled_out", rule_id=rule)
    if k >= 3:
        for rep in integrality(target, k, q, s, FULL_LENGTH):
            if not rep.all_integer:
                return KappaOutcome(kind="ruled_out", rule_id=f"integrality:gamma_{rep.j}")
    name = _verified_witness(k, q, s)
    if name is not None:
        for cand_name, build in _witness_candidates(k, q, s):
            if cand_name == name:
                return KappaOutcome(kind="exists", witness=build(), rule_id=name)
    cert = max_length(SearchConfig(k=k, q=q, s=s, budget=budget or DEFAULT_BUDGET))
    if cert.n_max >= target:
        return KappaOutcome(kind="exists", witness=cert.witness, rule_id="search", certificate=cert)
    if cert.exhaustive:
        return KappaOutcome(kind="exhausted_no_code", certificate=cert)
    return KappaOutcome(kind="inconclusive", certificate=cert)


def dual_defect_scan(cert: SearchCertificate) -> int:
    """Dual defect of the witness, with the long-code forcing asserted."""
    if cert.witness is None:
        raise ValueError("certificate has no witness")
    p = params(cert.witness)
    if p.s >= 1 and p.k >= 2 and p.n > p.s * (cert.witness.q + 1) + p.k - 1 and p.t > 1:
        raise ForcingViolatedError(
            f"witness [{p.n},{p.k},{p.d}] with s={p.s} is long enough to force t <= 1, got t={p.t}"
        )
    return p.t
