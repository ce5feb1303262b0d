"""Exact traces of the full hyperclass via theta-pattern realizability.

For a step function with interior root set A, |f(x)| is the distance from x
to A, so the theta pattern of a point set is fixed by which points lie within
gamma of some root.  A pattern is realizable iff every 0-labelled point can
get its own root that stays more than gamma (strict mode) away from all
1-labelled points; roots never help a 1-point, so the 0-points are checked
independently.  All geometry runs on integers after scaling by a common
denominator.
"""
from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .bounds import BoundParams, theorem_bound
from .hyper import Threshold, pack, unpack, vector_from_pattern
from .model import Domain, SampleCollection, WidthLabError, as_scalar, format_scalar

Pattern = tuple[int, ...]

EXHAUSTIVE_MAX_M = 10
EXHAUSTIVE_MAX_ELL = 3
MODES = ("exhaustive", "canonical", "random")


class BudgetExceeded(WidthLabError):
    """Raised only on request; growth_search normally flags the condition instead."""


@dataclass(frozen=True)
class RealizabilityInstance:
    points: tuple[Fraction, ...]
    threshold: Threshold
    domain: Domain

    def __post_init__(self):
        pts = tuple(sorted(as_scalar(p) for p in self.points))
        if len(set(pts)) != len(pts):
            raise WidthLabError("ground points must be distinct")
        for p in pts:
            self.domain.check(p)
        object.__setattr__(self, "points", pts)

    @property
    def K(self) -> int:
        return math.floor(self.domain.B / (2 * self.threshold.gamma))


class _Scaled:
    """Integer image of an instance: every coordinate times ``scale``, all even."""

    def __init__(self, inst: RealizabilityInstance):
        vals = list(inst.points) + [inst.threshold.gamma, inst.domain.B]
        lcd = math.lcm(*(v.denominator for v in vals))
        self.scale = 2 * lcd
        self.xs = [int(p * self.scale) for p in inst.points]
        self.g = int(inst.threshold.gamma * self.scale)
        self.B = int(inst.domain.B * self.scale)
        self.strict = inst.threshold.strict

    def covers(self, center: int, a: int) -> bool:
        """True when a root at ``a`` makes the point at ``center`` a 0."""
        d = abs(center - a)
        return d <= self.g if self.strict else d < self.g


def _witness(sc: _Scaled, center: int, blockers: Sequence[int]) -> int | None:
    """Integer root position that zeroes ``center`` and no blocker, or None.

    The feasible set is a finite union of intervals whose endpoints lie in
    the critical list below, so checking every critical value and every
    midpoint between consecutive ones is exhaustive.
    """
    lo, hi = center - sc.g, center + sc.g
    crit = {lo, hi, 0, sc.B}
    for c in blockers:
        crit.add(c - sc.g)
        crit.add(c + sc.g)
    cand = sorted(v for v in crit if lo <= v <= hi)
    probes = []
    for i, v in enumerate(cand):
        probes.append(v)
        if i + 1 < len(cand):
            probes.append((v + cand[i + 1]) // 2)  # exact: all criticals are even
    for a in probes:
        if 0 < a < sc.B and sc.covers(center, a) and not any(sc.covers(c, a) for c in blockers):
            return a
    return None


class _Realizer:
    def __init__(self, inst: RealizabilityInstance):
        self.inst = inst
        self.sc = _Scaled(inst)
        n = len(self.sc.xs)
        self.n = n
        # only 1-points within 2 gamma can block a root serving point i
        self.near = [
            pack([1 if j != i and abs(self.sc.xs[j] - self.sc.xs[i]) <= 2 * self.sc.g else 0 for j in range(n)])
            for i in range(n)
        ]
        self._memo: dict[tuple[int, int], int | None] = {}

    def witness(self, i: int, ones: int) -> int | None:
        key = (i, ones & self.near[i])
        if key not in self._memo:
            blockers = [self.sc.xs[j] for j in range(self.n) if (key[1] >> j) & 1]
            self._memo[key] = _witness(self.sc, self.sc.xs[i], blockers)
        return self._memo[key]

    def realizes(self, pattern: int) -> bool:
        for i in range(self.n):
            if not (pattern >> i) & 1 and self.witness(i, pattern) is None:
                return False
        return True

    def roots_for(self, pattern: int) -> list[Fraction] | None:
        roots = []
        for i in range(self.n):
            if not (pattern >> i) & 1:
                a = self.witness(i, pattern)
                if a is None:
                    return None
                roots.append(Fraction(a, self.sc.scale))
        return sorted(set(roots))


def realizable_masks(inst: RealizabilityInstance) -> set[int]:
    """Packed realizable patterns; bit i is the theta value at the i-th point."""
    r = _Realizer(inst)
    return {p for p in range(1 << r.n) if r.realizes(p)}


def realizable_patterns(inst: RealizabilityInstance) -> set[Pattern]:
    n = len(inst.points)
    return {unpack(p, n) for p in realizable_masks(inst)}


def realizing_roots(inst: RealizabilityInstance, pattern: Sequence[int]) -> list[Fraction] | None:
    """A root set inside (0, B) producing ``pattern``, or None when unrealizable."""
    return _Realizer(inst).roots_for(pack(pattern))


def grid_candidates(inst: RealizabilityInstance, delta) -> list[Fraction]:
    """Root positions for the grid oracle, all strictly inside (0, B).

    Multiples of ``delta``, the points, the points shifted by +-gamma and the
    midpoints between consecutive values of that list.
    """
    delta = as_scalar(delta)
    if delta <= 0:
        raise WidthLabError("grid spacing must be positive")
    B, g = inst.domain.B, inst.threshold.gamma
    vals = {k * delta for k in range(1, math.ceil(B / delta))}
    for x in inst.points:
        vals.update((x, x - g, x + g))
    vals.update((Fraction(0), B))
    ordered = sorted(vals)
    vals.update((u + v) / 2 for u, v in zip(ordered, ordered[1:]))
    return sorted(v for v in vals if 0 < v < B)


def grid_oracle_patterns(inst: RealizabilityInstance, delta) -> set[Pattern]:
    """Patterns reached by root sets drawn from :func:`grid_candidates`.

    The 0-set of a root set is the union of the 0-sets of its roots, so the
    reachable 0-sets are the union-closure of single-root 0-sets (with the
    empty root set giving the all-ones pattern).
    """
    n = len(inst.points)
    g = inst.threshold.gamma
    strict = inst.threshold.strict
    singles = set()
    for a in grid_candidates(inst, delta):
        zeros = [1 if (abs(x - a) <= g if strict else abs(x - a) < g) else 0 for x in inst.points]
        singles.add(pack(zeros))
    reach = {0}
    for z in singles:
        reach |= {s | z for s in reach}
    full = (1 << n) - 1
    return {unpack(full ^ s, n) for s in reach}


def _sets(zeta) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(s) for s in zeta.sets)


def hyper_trace_exact(zeta, t: Threshold, d: Domain) -> int:
    """Exact trace of the whole hyperclass on a (possibly generalized) collection."""
    sets = _sets(zeta)
    support = sorted({p for s in sets for p in s})
    masks = [pack([1 if p in s else 0 for p in support]) for s in sets]
    patterns = realizable_masks(RealizabilityInstance(tuple(support), t, d))
    return len({vector_from_pattern(p, masks) for p in patterns})


# growth search


def uniform_grid(B, q: int) -> tuple[Fraction, ...]:
    """Interior grid {k B / q : 0 < k < q}."""
    B = as_scalar(B)
    return tuple(B * Fraction(k, q) for k in range(1, q))


@dataclass(frozen=True)
class GrowthSearchConfig:
    ell: int
    m: int
    gamma: Fraction
    B: Fraction
    mode: str = "canonical"
    budget: int = 100_000
    seed: int = 0
    grid: tuple[Fraction, ...] | None = None
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_scalar(self.gamma))
        object.__setattr__(self, "B", as_scalar(self.B))
        if self.mode not in MODES:
            raise WidthLabError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.budget < 1:
            raise WidthLabError("budget must be at least 1")
        if not 1 <= self.ell <= self.m:
            raise WidthLabError(f"need 1 <= ell <= m, got ell={self.ell}, m={self.m}")
        if self.mode == "exhaustive" and (self.m > EXHAUSTIVE_MAX_M or self.ell > EXHAUSTIVE_MAX_ELL):
            raise WidthLabError(
                f"exhaustive mode is capped at m <= {EXHAUSTIVE_MAX_M}, ell <= {EXHAUSTIVE_MAX_ELL}"
            )
        grid = self.grid
        if grid is None:
            grid = uniform_grid(self.B, self.m + 2)
        grid = tuple(sorted({as_scalar(p) for p in grid}))
        domain = Domain(self.B)
        for p in grid:
            domain.check(p)
        if len(grid) < self.m:
            raise WidthLabError(f"grid has {len(grid)} points, fewer than m={self.m}")
        object.__setattr__(self, "grid", grid)

    @property
    def threshold(self) -> Threshold:
        return Threshold(self.gamma, self.strict)

    @property
    def domain(self) -> Domain:
        return Domain(self.B)

    @property
    def params(self) -> BoundParams:
        return BoundParams(self.B, self.gamma, self.ell, self.m)


@dataclass
class GrowthResult:
    best: tuple[tuple[Fraction, ...], ...] | None
    gamma_best: int
    bound: int
    evaluated: int
    budget_exceeded: bool
    violations: list[tuple[tuple[tuple[Fraction, ...], ...], int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.gamma_best <= self.bound and not self.violations

    @property
    def gap(self) -> int:
        return self.bound - self.gamma_best


def derive_seed(seed: int, index: int) -> int:
    """Per-item seed: a 64-bit value fixed by (seed, index)."""
    return random.Random(f"widthlab:{seed}:{index}").getrandbits(64)


def worker_count() -> int:
    raw = os.environ.get("WIDTHLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _support_traces(support: tuple[Fraction, ...], t: Threshold, d: Domain, collections: Iterable):
    patterns = realizable_masks(RealizabilityInstance(support, t, d))
    index = {p: i for i, p in enumerate(support)}
    out = []
    for sets in collections:
        masks = [sum(1 << index[p] for p in s) for s in sets]
        out.append((sets, len({vector_from_pattern(p, masks) for p in patterns})))
    return out


def _covering_collections(support: tuple[Fraction, ...], ell: int, limit: int):
    """Full collection first, then every other covering collection of ell-subsets."""
    subsets = list(combinations(support, ell))
    yield tuple(subsets)
    yielded = 1
    need = set(support)
    for r in range(math.ceil(len(support) / ell), len(subsets)):
        for combo in combinations(subsets, r):
            if yielded >= limit:
                return
            if {p for s in combo for p in s} == need:
                yielded += 1
                yield combo


def _canonical_collections(support: tuple[Fraction, ...], ell: int):
    for first in combinations(support, ell):
        rest = tuple((p,) for p in support if p not in first)
        yield (first,) + rest


def _random_collection(rng: random.Random, grid: Sequence[Fraction], ell: int, m: int):
    support = sorted(rng.sample(list(grid), m))
    order = support.copy()
    rng.shuffle(order)
    sets = []
    for i in range(0, m, ell):
        chunk = order[i : i + ell]
        if len(chunk) < ell:
            chunk += rng.sample([p for p in support if p not in chunk], ell - len(chunk))
        sets.append(tuple(sorted(chunk)))
    for _ in range(rng.randrange(0, m + 1)):
        sets.append(tuple(sorted(rng.sample(support, ell))))
    return tuple(support), tuple(sorted(set(sets)))


def _exhaustive_job(args):
    support, cfg, limit = args
    cols = list(_covering_collections(support, cfg.ell, limit)) if cfg.ell > 1 else [tuple((p,) for p in support)]
    return _support_traces(support, cfg.threshold, cfg.domain, cols)


def _canonical_job(args):
    support, cfg = args
    return _support_traces(support, cfg.threshold, cfg.domain, _canonical_collections(support, cfg.ell))


def _random_job(args):
    index, cfg = args
    rng = random.Random(derive_seed(cfg.seed, index))
    support, sets = _random_collection(rng, cfg.grid, cfg.ell, cfg.m)
    return _support_traces(support, cfg.threshold, cfg.domain, [sets])


def _run(jobs, fn):
    workers = worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(fn, jobs, chunksize=8)
    else:
        yield from map(fn, jobs)


def growth_search(cfg: GrowthSearchConfig) -> GrowthResult:
    """Maximize the exact hyperclass trace over collections of size m.

    exhaustive: every m-point support drawn from ``cfg.grid`` and its
    covering collections of ell-subsets; the full collection of a support is
    evaluated first because adding samples never lowers the trace.
    canonical: one ell-set plus singletons on every support.
    random: ``budget`` seeded random supports and covering collections.
    Stops after ``budget`` collections and flags ``budget_exceeded``.
    """
    bound = theorem_bound(cfg.params)
    result = GrowthResult(best=None, gamma_best=0, bound=bound, evaluated=0, budget_exceeded=False)

    if cfg.mode == "random":
        jobs = ((i, cfg) for i in range(cfg.budget))
        fn = _random_job
    elif cfg.mode == "canonical":
        jobs = ((s, cfg) for s in combinations(cfg.grid, cfg.m))
        fn = _canonical_job
    else:
        jobs = ((s, cfg, cfg.budget) for s in combinations(cfg.grid, cfg.m))
        fn = _exhaustive_job

    for batch in _run(jobs, fn):
        for sets, gamma in batch:
            if result.evaluated >= cfg.budget:
                result.budget_exceeded = True
                return result
            result.evaluated += 1
            if gamma > result.gamma_best or result.best is None:
                result.best, result.gamma_best = sets, gamma
            if gamma > bound:
                result.violations.append((sets, gamma))
    return result


def format_sets(sets) -> str:
    return ";".join(",".join(format_scalar(p) for p in s) for s in sets)


def collection_of(sets) -> SampleCollection:
    return SampleCollection(sets)
