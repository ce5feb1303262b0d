"""Procedures G and Q, and finite-family checks of the two trace inequalities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .hyper import Threshold, trace_count
from .model import SampleCollection, StepFunction, WidthLabError, as_scalar, canonical_order


class BadShape(WidthLabError):
    pass


@dataclass(frozen=True)
class GeneralizedCollection:
    """Collection of nonempty point sets of possibly different sizes."""

    sets: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        cleaned = []
        for s in self.sets:
            pts = tuple(sorted(as_scalar(p) for p in s))
            if not pts:
                raise BadShape("generalized collections hold nonempty sets only")
            if len(set(pts)) != len(pts):
                raise BadShape(f"repeated point in {pts}")
            cleaned.append(pts)
        if not cleaned:
            raise BadShape("empty generalized collection")
        object.__setattr__(self, "sets", tuple(cleaned))

    @classmethod
    def from_collection(cls, zeta: SampleCollection) -> "GeneralizedCollection":
        return cls(zeta.sets)

    @property
    def support(self) -> tuple[Fraction, ...]:
        return tuple(sorted({p for s in self.sets for p in s}))

    @property
    def m(self) -> int:
        return len(self.support)

    def is_disjoint(self) -> bool:
        return sum(len(s) for s in self.sets) == self.m

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


def procedure_g(zeta) -> GeneralizedCollection:
    """Disjointify by sequential set difference, dropping sets that become empty.

    The input order is used as given; pass ``canonical_order(zeta)`` for the
    lexical convention.
    """
    taken: set[Fraction] = set()
    out = []
    for s in zeta.sets:
        rest = tuple(p for p in s if p not in taken)
        taken.update(s)
        if rest:
            out.append(rest)
    return GeneralizedCollection(tuple(out))


def procedure_q(zeta_hat: GeneralizedCollection, ell: int, m: int) -> GeneralizedCollection:
    """Keep the first set and split the rest of the support into ordered singletons."""
    sets = zeta_hat.sets
    if len(sets[0]) != ell:
        raise BadShape(f"first set has {len(sets[0])} points, expected {ell}")
    if not zeta_hat.is_disjoint():
        raise BadShape("procedure Q expects the disjoint output of procedure G")
    if zeta_hat.m != m:
        raise BadShape(f"support has {zeta_hat.m} points, expected {m}")
    first = set(sets[0])
    rest = sorted(p for s in sets[1:] for p in s if p not in first)
    if len(rest) != m - ell:
        raise BadShape(f"{len(rest)} points outside the first set, expected {m - ell}")
    return GeneralizedCollection((sets[0],) + tuple((y,) for y in rest))


class ClaimCheck(NamedTuple):
    lhs: int
    rhs: int
    ok: bool


def verify_claim1(family: Sequence[StepFunction], t: Threshold, zeta: SampleCollection) -> ClaimCheck:
    zeta = canonical_order(zeta)
    lhs = trace_count(family, t, zeta)
    rhs = trace_count(family, t, procedure_g(zeta))
    return ClaimCheck(lhs, rhs, lhs <= rhs)


def verify_claim2(family: Sequence[StepFunction], t: Threshold, zeta: SampleCollection) -> ClaimCheck:
    zeta = canonical_order(zeta)
    g = procedure_g(zeta)
    q = procedure_q(g, zeta.ell, zeta.m)
    lhs = trace_count(family, t, g)
    rhs = trace_count(family, t, q)
    return ClaimCheck(lhs, rhs, lhs <= rhs)
