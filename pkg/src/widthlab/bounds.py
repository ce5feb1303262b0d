"""Sauer-Shelah sums, growth bounds, VC-dimension search and interval-union traces."""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Collection, Iterable, Sequence

from .model import WidthLabError, as_scalar


class ConditionNotMet(WidthLabError):
    pass


Pattern = tuple[int, ...]


@dataclass(frozen=True)
class BoundParams:
    B: Fraction
    gamma: Fraction
    ell: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "B", as_scalar(self.B))
        object.__setattr__(self, "gamma", as_scalar(self.gamma))
        if self.B <= 0:
            raise WidthLabError("B must be positive")
        if self.gamma <= 0:
            raise WidthLabError("gamma must be positive")
        if not 1 <= self.ell <= self.m:
            raise WidthLabError(f"need 1 <= ell <= m, got ell={self.ell}, m={self.m}")

    @property
    def K(self) -> int:
        return math.floor(self.B / (2 * self.gamma))


def sauer_phi(d: int, n: int) -> int:
    """Phi_d(n) = sum_{i=0}^{d} C(n, i)."""
    if d < 0 or n < 0:
        raise WidthLabError("sauer_phi needs d, n >= 0")
    return sum(math.comb(n, i) for i in range(min(d, n) + 1))


def theorem_bound(p: BoundParams) -> int:
    return 2 * sauer_phi(2 * p.K, p.m - p.ell)


def remark_condition(p: BoundParams) -> bool:
    return p.m > p.ell + p.B / p.gamma


def remark_bound(p: BoundParams) -> float:
    """Closed-form approximation 2 (e gamma (m - ell) / B) ** (B / gamma); floating point."""
    if not remark_condition(p):
        raise ConditionNotMet(f"needs m > ell + B/gamma = {p.ell + p.B / p.gamma}, got m={p.m}")
    base = math.e * float(p.gamma * (p.m - p.ell) / p.B)
    return 2.0 * base ** float(p.B / p.gamma)


def is_shattered(patterns: Collection[Pattern], k: int) -> bool:
    return len(set(patterns)) == 2**k


def vc_dimension(family_trace: Callable[[tuple], Iterable[Pattern]], ground: Sequence) -> int:
    """Largest size of a subset of ``ground`` on which ``family_trace`` realizes every pattern.

    Sizes are tried in increasing order; since a subset of a shattered set is
    shattered, the search stops at the first size with no shattered subset.
    """
    ground = tuple(ground)
    best = 0
    for k in range(1, len(ground) + 1):
        if not any(is_shattered(family_trace(sub), k) for sub in combinations(ground, k)):
            break
        best = k
    return best


def count_runs(pattern: Sequence[int]) -> int:
    """Number of maximal runs of ones."""
    runs, prev = 0, 0
    for b in pattern:
        if b and not prev:
            runs += 1
        prev = b
    return runs


@lru_cache(maxsize=None)
def interval_union_patterns(K: int, n: int) -> frozenset[Pattern]:
    """Traces on n ordered points of unions of at most K intervals.

    An interval is represented by the index range of points it covers; every
    choice of at most K such ranges is unioned.
    """
    if K < 0 or n < 0:
        raise WidthLabError("interval_union_patterns needs K, n >= 0")
    ranges = [(i, j) for i in range(n) for j in range(i, n)]
    out: set[Pattern] = set()

    def grow(start: int, used: int, bits: list[int]):
        out.add(tuple(bits))
        if used == K:
            return
        for r in range(start, len(ranges)):
            i, j = ranges[r]
            new = bits.copy()
            for k in range(i, j + 1):
                new[k] = 1
            grow(r + 1, used + 1, new)

    grow(0, 0, [0] * n)
    return frozenset(out)


def interval_union_count(K: int, n: int) -> int:
    """sum_{j=0}^{K} C(n + 1, 2j): choose 2j of the n + 1 gaps as run boundaries."""
    return sum(math.comb(n + 1, 2 * j) for j in range(K + 1))


def interval_union_trace(K: int, n: int) -> tuple[frozenset[Pattern], int]:
    patterns = interval_union_patterns(K, n)
    return patterns, len(patterns)


def interval_union_family_trace(K: int) -> Callable[[tuple], frozenset[Pattern]]:
    """Trace function of the unions of at most K intervals, for :func:`vc_dimension`.

    Only the order of the points matters, so the trace on k points is the
    run-bounded pattern set on k ordered positions.
    """

    def trace(points: tuple) -> frozenset[Pattern]:
        return interval_union_patterns(K, len(points))

    return trace


def max_one_runs(B, gamma, strict: bool = True) -> int:
    """Largest number of 1-runs a theta pattern can have on [0, B].

    A run touching 0 or B only needs one root within its own side, so it is
    shorter than the interior runs: ceil(B / (2 gamma)) in strict mode,
    floor(B / (2 gamma)) + 1 in non-strict mode.  Diagnostic only.
    """
    ratio = as_scalar(B) / (2 * as_scalar(gamma))
    return math.ceil(ratio) if strict else math.floor(ratio) + 1
