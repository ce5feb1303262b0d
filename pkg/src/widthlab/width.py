"""Point width, sample width and the piecewise-linear width function."""
from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .model import Domain, EmptySample, StepFunction, WidthLabError, as_scalar, evaluate_h, format_scalar, interior_roots

INF = math.inf
ExtendedScalar = Union[Fraction, float]


class ConstantFunction(WidthLabError):
    """A constant step function has no finite width function."""


def nearest_root_distance(roots: tuple[Fraction, ...], x: Fraction) -> ExtendedScalar:
    if not roots:
        return INF
    i = bisect_left(roots, x)
    best = INF
    if i < len(roots):
        best = roots[i] - x
    if i > 0:
        best = min(best, x - roots[i - 1])
    return best


def point_width(h: StepFunction, x) -> ExtendedScalar:
    """Signed width of ``h`` at ``x``: ``h(x)`` times the distance to the nearest sign change.

    Outside ``[0, B]`` the function keeps its endpoint value, so the domain
    endpoints never limit the window.  Constant functions have width ``±inf``.
    """
    x = h.domain.check(x)
    return evaluate_h(h, x) * nearest_root_distance(interior_roots(h), x)


def sample_width(h: StepFunction, sample: Iterable) -> ExtendedScalar:
    points = list(sample)
    if not points:
        raise EmptySample("sample width of an empty sample")
    roots = interior_roots(h)
    return min(nearest_root_distance(roots, h.domain.check(x)) for x in points)


@dataclass(frozen=True)
class WidthFunction:
    """Continuous piecewise-linear f with |f(x)| = distance from x to the nearest root.

    Piece ``i`` (1-based) covers ``[mu_{i-1}, mu_i]`` and equals
    ``c_i * (x - a_i)`` with ``c_i = leading_sign * (-1)**i``, where
    ``leading_sign`` is the sign of ``h`` just right of 0.
    """

    domain: Domain
    roots: tuple[Fraction, ...]
    leading_sign: int

    def __post_init__(self):
        if not self.roots:
            raise ConstantFunction("width function needs at least one interior root")

    @property
    def midpoints(self) -> tuple[Fraction, ...]:
        """mu_0 = 0, mu_i = (a_i + a_{i+1}) / 2, last mu = B."""
        a = self.roots
        inner = tuple((a[i] + a[i + 1]) / 2 for i in range(len(a) - 1))
        return (Fraction(0),) + inner + (self.domain.B,)

    def piece(self, x: Fraction) -> int:
        """1-based index of a piece whose closed range contains ``x``."""
        mu = self.midpoints
        # first i with x <= mu_i
        i = bisect_left(mu, x, 1, len(mu) - 1)
        return max(i, 1)

    def coefficient(self, i: int) -> int:
        return self.leading_sign if i % 2 == 0 else -self.leading_sign

    def piece_value(self, i: int, x: Fraction) -> Fraction:
        return self.coefficient(i) * (x - self.roots[i - 1])

    def __call__(self, x) -> Fraction:
        return eval_width_function(self, x)

    def abs_width(self, x) -> Fraction:
        return abs(eval_width_function(self, x))

    def to_dict(self) -> dict:
        return {
            "B": format_scalar(self.domain.B),
            "sign": self.leading_sign,
            "roots": [format_scalar(a) for a in self.roots],
            "midpoints": [format_scalar(m) for m in self.midpoints],
        }


@dataclass(frozen=True)
class ConstantWidth:
    """Stand-in for the width function of a constant ``h``: |f| is +inf everywhere."""

    domain: Domain
    sign: int = 1

    def __call__(self, x) -> float:
        self.domain.check(x)
        return self.sign * INF

    def abs_width(self, x) -> float:
        self.domain.check(x)
        return INF


WidthLike = Union[WidthFunction, ConstantWidth]


def _sign_right_of_zero(h: StepFunction) -> int:
    first = h.intervals[0]
    if first.is_singleton and len(h.intervals) > 1:
        return h.sign_of(1)
    return h.leading_sign


def width_function(h: StepFunction) -> WidthFunction:
    roots = interior_roots(h)
    if not roots:
        raise ConstantFunction("constant step function has infinite width everywhere")
    return WidthFunction(h.domain, roots, _sign_right_of_zero(h))


def fplus(h: StepFunction) -> WidthLike:
    """Width function of ``h``, or :class:`ConstantWidth` when ``h`` is constant."""
    roots = interior_roots(h)
    if not roots:
        return ConstantWidth(h.domain, _sign_right_of_zero(h))
    return WidthFunction(h.domain, roots, _sign_right_of_zero(h))


def eval_width_function(f: WidthFunction, x) -> Fraction:
    x = f.domain.check(as_scalar(x))
    return f.piece_value(f.piece(x), x)


def abs_width(f: WidthLike, x) -> ExtendedScalar:
    return f.abs_width(x)
