"""Hyperconcepts: theta values, e-products over samples, v vectors and trace counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .model import EmptySample, StepFunction, WidthLabError, as_scalar
from .width import WidthLike, fplus, sample_width


class WrongSampleSize(WidthLabError):
    pass


@dataclass(frozen=True)
class Threshold:
    """Width threshold gamma.  ``strict`` compares with ``>``, otherwise ``>=``."""

    gamma: Fraction
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_scalar(self.gamma))
        if self.gamma <= 0:
            raise WidthLabError(f"gamma must be positive, got {self.gamma}")

    @property
    def mode(self) -> str:
        return "strict" if self.strict else "non_strict"

    def passes(self, width) -> bool:
        return width > self.gamma if self.strict else width >= self.gamma


def theta(f: WidthLike, t: Threshold, x) -> int:
    return int(t.passes(f.abs_width(x)))


def e_value(f: WidthLike, t: Threshold, sample: Iterable) -> int:
    points = list(sample)
    if not points:
        raise EmptySample("e-product over an empty set")
    for x in points:
        if not theta(f, t, x):
            return 0
    return 1


def hyperconcept(h: StepFunction, t: Threshold, sample: Iterable, ell: int | None = None) -> int:
    """Indicator that ``sample`` is wide for ``h``, computed from the sample width of ``h``."""
    points = list(sample)
    if ell is not None and len(points) != ell:
        raise WrongSampleSize(f"expected a sample of size {ell}, got {len(points)}")
    return int(t.passes(sample_width(h, points)))


def _sets(zeta) -> Sequence[Sequence[Fraction]]:
    return zeta.sets if hasattr(zeta, "sets") else tuple(tuple(s) for s in zeta)


def v_vector(f: WidthLike, t: Threshold, zeta) -> tuple[int, ...]:
    return tuple(e_value(f, t, s) for s in _sets(zeta))


def pack(bits: Sequence[int]) -> int:
    """Pack a bit vector into an int; coordinate j becomes bit j."""
    out = 0
    for j, b in enumerate(bits):
        if b:
            out |= 1 << j
    return out


def unpack(word: int, length: int) -> tuple[int, ...]:
    return tuple((word >> j) & 1 for j in range(length))


def hyper_vectors(family: Iterable[StepFunction], t: Threshold, zeta) -> set[int]:
    """Distinct packed v vectors realized by ``family`` over ``zeta``.

    theta is evaluated once per support point and function, then the
    e-products are read off as bitmask containment.
    """
    sets = _sets(zeta)
    support = sorted({p for s in sets for p in s})
    masks = [pack([1 if p in s else 0 for p in support]) for s in sets]
    seen: set[int] = set()
    for h in family:
        f = fplus(h)
        pattern = pack([theta(f, t, p) for p in support])
        seen.add(vector_from_pattern(pattern, masks))
    return seen


def vector_from_pattern(pattern: int, masks: Sequence[int]) -> int:
    """Packed v vector of a packed theta pattern: bit j is set iff sample j is all ones."""
    out = 0
    for j, mask in enumerate(masks):
        if pattern & mask == mask:
            out |= 1 << j
    return out


def trace_count(family: Sequence[StepFunction], t: Threshold, zeta) -> int:
    family = list(family)
    if not family:
        raise WidthLabError("trace of an empty family")
    return len(hyper_vectors(family, t, zeta))
