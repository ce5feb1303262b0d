"""Exact representation of binary step functions, samples and sample collections.

Every coordinate is a :class:`fractions.Fraction`.  A step function on ``[0, B]``
is stored as the alternating partition of the domain into generalized
intervals together with the sign taken on the first interval.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, str, Fraction]


class WidthLabError(ValueError):
    """Base class for input errors raised by the library."""


class NotAPartition(WidthLabError):
    pass


class BadSingleton(WidthLabError):
    pass


class OutOfDomain(WidthLabError):
    pass


class EmptySample(WidthLabError):
    pass


class ParseError(WidthLabError):
    pass


class EndpointRootWarning(UserWarning):
    """A singleton interval sits at 0 or B; its sign change is ignored for widths."""


def as_scalar(value: Number | float) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Strings may be ``"p/q"``, integers or finite decimals (``"2.4"`` is 12/5).
    Floats are accepted only when they are integral, so that binary rounding
    never leaks into counting code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value.is_integer():
            return Fraction(int(value))
        raise ParseError(f"refusing inexact float {value!r}; pass a string such as '12/5'")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse rational {value!r}") from exc
    raise ParseError(f"cannot parse rational {value!r}")


def format_scalar(value: Fraction) -> str:
    """Bit-exact ``"p/q"`` text form (the denominator is always written)."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Domain:
    B: Fraction

    def __post_init__(self):
        object.__setattr__(self, "B", as_scalar(self.B))
        if self.B <= 0:
            raise WidthLabError(f"domain bound must be positive, got {self.B}")

    def check(self, x: Fraction) -> Fraction:
        x = as_scalar(x)
        if not 0 <= x <= self.B:
            raise OutOfDomain(f"{x} is outside [0, {self.B}]")
        return x


@dataclass(frozen=True)
class GeneralizedInterval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", as_scalar(self.lo))
        object.__setattr__(self, "hi", as_scalar(self.hi))
        if self.lo > self.hi:
            raise NotAPartition(f"interval with lo {self.lo} > hi {self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise BadSingleton(f"degenerate interval at {self.lo} must be closed on both sides")

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def __str__(self):
        if self.is_singleton:
            return "{%s}" % self.lo
        return "%s%s, %s%s" % (
            "[" if self.lo_closed else "(",
            self.lo,
            self.hi,
            "]" if self.hi_closed else ")",
        )


@dataclass(frozen=True)
class StepFunction:
    """Binary +-1 function on ``[0, B]`` given by an alternating interval partition.

    ``leading_sign`` is the value on the first interval; the value on interval
    ``i`` (1-based) is ``leading_sign * (-1) ** (i - 1)``.  In the
    ``h(x) = ±sum_i (-1)^i 1_{R_i}(x)`` form the outer sign is ``-leading_sign``.
    Build instances with :func:`make_step_function` or :func:`step_function_from_roots`.
    """

    domain: Domain
    intervals: tuple[GeneralizedInterval, ...]
    leading_sign: int

    @property
    def B(self) -> Fraction:
        return self.domain.B

    @property
    def roots(self) -> tuple[Fraction, ...]:
        """Right endpoints a_1 <= ... <= a_n of the intervals (a_n = B)."""
        return tuple(r.hi for r in self.intervals)

    @property
    def is_constant(self) -> bool:
        return not interior_roots(self)

    def sign_of(self, index: int) -> int:
        return self.leading_sign if index % 2 == 0 else -self.leading_sign

    def __call__(self, x) -> int:
        return evaluate_h(self, x)

    @property
    def has_endpoint_singleton(self) -> bool:
        ivs = self.intervals
        return len(ivs) > 1 and (
            (ivs[0].is_singleton and ivs[0].lo == 0) or (ivs[-1].is_singleton and ivs[-1].hi == self.B)
        )

    def to_dict(self) -> dict:
        return {
            "B": format_scalar(self.B),
            "sign": self.leading_sign,
            "intervals": [
                {
                    "lo": format_scalar(r.lo),
                    "hi": format_scalar(r.hi),
                    "lo_closed": r.lo_closed,
                    "hi_closed": r.hi_closed,
                }
                for r in self.intervals
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "StepFunction":
        try:
            domain = Domain(as_scalar(data["B"]))
            intervals = [
                GeneralizedInterval(
                    as_scalar(r["lo"]), as_scalar(r["hi"]), bool(r["lo_closed"]), bool(r["hi_closed"])
                )
                for r in data["intervals"]
            ]
            sign = data["sign"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed step function document: {exc}") from exc
        return make_step_function(domain, intervals, sign)

    @classmethod
    def from_json(cls, text: str) -> "StepFunction":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ParseError("step function document must be a JSON object")
        return cls.from_dict(data)


def make_step_function(domain: Domain | Number, intervals: Sequence[GeneralizedInterval], leading_sign: int) -> StepFunction:
    """Validate ``intervals`` as an ordered partition of ``[0, B]`` and wrap it."""
    if not isinstance(domain, Domain):
        domain = Domain(as_scalar(domain))
    if leading_sign not in (-1, 1):
        raise WidthLabError(f"leading_sign must be -1 or +1, got {leading_sign!r}")
    intervals = tuple(intervals)
    if not intervals:
        raise NotAPartition("empty interval list")
    for r in intervals:
        if r.lo < 0 or r.hi > domain.B:
            raise OutOfDomain(f"interval {r} leaves [0, {domain.B}]")
    first, last = intervals[0], intervals[-1]
    if first.lo != 0 or not first.lo_closed:
        raise NotAPartition("partition must start with a closed endpoint at 0")
    if last.hi != domain.B or not last.hi_closed:
        raise NotAPartition(f"partition must end with a closed endpoint at {domain.B}")
    for left, right in zip(intervals, intervals[1:]):
        if left.hi != right.lo:
            raise NotAPartition(f"gap or overlap between {left} and {right}")
        if left.hi_closed == right.lo_closed:
            # both closed: the point is owned twice; both open: nobody owns it
            raise NotAPartition(f"boundary {left.hi} must be owned by exactly one of {left}, {right}")
    h = StepFunction(domain, intervals, leading_sign)
    if h.has_endpoint_singleton:
        warnings.warn(
            "singleton interval at a domain endpoint; that sign change is not a root for widths",
            EndpointRootWarning,
            stacklevel=2,
        )
    return h


def step_function_from_roots(
    B: Number,
    roots: Iterable[Number],
    leading_sign: int = 1,
    owners: str | Sequence[str] = "right",
) -> StepFunction:
    """Build a step function whose interior sign changes sit at ``roots``.

    A root listed twice becomes a singleton interval.  ``owners`` says, per
    simple root, whether the boundary point belongs to the interval on its
    ``"left"`` or ``"right"``.
    """
    domain = Domain(as_scalar(B))
    roots = sorted(as_scalar(a) for a in roots)
    groups: list[tuple[Fraction, int]] = []
    for a in roots:
        if not 0 < a < domain.B:
            raise OutOfDomain(f"root {a} is not strictly inside (0, {domain.B})")
        if groups and groups[-1][0] == a:
            groups[-1] = (a, groups[-1][1] + 1)
        else:
            groups.append((a, 1))
    if any(k > 2 for _, k in groups):
        raise BadSingleton("a root can repeat at most twice")
    if isinstance(owners, str):
        owners = [owners] * len(groups)
    owners = list(owners)
    if len(owners) < len(groups):
        raise WidthLabError("not enough ownership flags for the roots")

    intervals: list[GeneralizedInterval] = []
    lo, lo_closed = Fraction(0), True
    for (a, k), owner in zip(groups, owners):
        if k == 2:
            intervals.append(GeneralizedInterval(lo, a, lo_closed, False))
            intervals.append(GeneralizedInterval(a, a, True, True))
            lo, lo_closed = a, False
        else:
            left_owns = owner == "left"
            intervals.append(GeneralizedInterval(lo, a, lo_closed, left_owns))
            lo, lo_closed = a, not left_owns
    intervals.append(GeneralizedInterval(lo, domain.B, lo_closed, True))
    return make_step_function(domain, intervals, leading_sign)


def evaluate_h(h: StepFunction, x) -> int:
    x = h.domain.check(x)
    for i, r in enumerate(h.intervals):
        if x in r:
            return h.sign_of(i)
    raise NotAPartition(f"{x} is not covered")  # unreachable for validated h


def interior_roots(h: StepFunction) -> tuple[Fraction, ...]:
    """Sign-change locations strictly inside ``(0, B)``, singletons repeated."""
    return tuple(a for a in h.roots[:-1] if 0 < a < h.B)


@dataclass(frozen=True)
class Sample:
    points: tuple[Fraction, ...]

    def __post_init__(self):
        pts = tuple(sorted(as_scalar(p) for p in self.points))
        if not pts:
            raise EmptySample("a sample needs at least one point")
        if len(set(pts)) != len(pts):
            raise WidthLabError(f"sample points must be distinct: {pts}")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.points) + "}"


class SampleCollection:
    """Finite collection of distinct samples; duplicates are dropped on input.

    The size ``m`` of a collection is the size of the union of its samples,
    not the number of samples.
    """

    __slots__ = ("samples", "_support")

    def __init__(self, samples: Iterable[Sample | Iterable[Number]], domain: Domain | None = None):
        seen: set[tuple[Fraction, ...]] = set()
        kept: list[Sample] = []
        for s in samples:
            s = s if isinstance(s, Sample) else Sample(tuple(s))
            if s.points in seen:
                continue
            seen.add(s.points)
            kept.append(s)
        if not kept:
            raise EmptySample("a collection needs at least one sample")
        if len({len(s) for s in kept}) != 1:
            raise WidthLabError("all samples in a collection must have the same size")
        if domain is not None:
            for s in kept:
                for p in s:
                    domain.check(p)
        self.samples: tuple[Sample, ...] = tuple(kept)
        self._support = tuple(sorted({p for s in kept for p in s}))

    @property
    def ell(self) -> int:
        return len(self.samples[0])

    @property
    def support(self) -> tuple[Fraction, ...]:
        return self._support

    @property
    def m(self) -> int:
        return len(self._support)

    @property
    def sets(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(s.points for s in self.samples)

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __eq__(self, other):
        return isinstance(other, SampleCollection) and self.sets == other.sets

    def __hash__(self):
        return hash(self.sets)

    def __repr__(self):
        return "SampleCollection([" + ", ".join(str(s) for s in self.samples) + "])"


def canonical_order(zeta: SampleCollection) -> SampleCollection:
    """Sort samples lexically by their (already sorted) elements."""
    return SampleCollection(sorted(zeta.samples, key=lambda s: s.points))


def collection_support(zeta) -> tuple[tuple[Fraction, ...], int]:
    support = tuple(sorted({p for s in zeta.sets for p in s}))
    return support, len(support)


def parse_collection(text: str) -> SampleCollection:
    """Parse ``"2,8,9,10; 2,5,8,9"`` into a collection."""
    samples = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        samples.append(Sample(tuple(as_scalar(p) for p in chunk.split(","))))
    if not samples:
        raise ParseError(f"no samples in {text!r}")
    return SampleCollection(samples)
