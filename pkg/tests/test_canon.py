import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from widthlab.canon import BadShape, GeneralizedCollection, procedure_g, procedure_q, verify_claim1, verify_claim2
from widthlab.hyper import Threshold
from widthlab.model import SampleCollection, canonical_order, step_function_from_roots


def sets(*groups):
    return tuple(tuple(Fraction(p) for p in g) for g in groups)


ZETA3 = SampleCollection([(2, 8, 9, 10), (2, 5, 8, 9), (3, 8, 10, 13)])


def test_procedure_g_paper_collection():
    g = procedure_g(canonical_order(ZETA3))
    assert g.sets == sets((2, 5, 8, 9), (10,), (3, 13))


def test_procedure_g_disjoint_input_unchanged():
    z = SampleCollection([(1, 2), (3, 4), (5, 6)])
    assert procedure_g(z).sets == z.sets


def test_procedure_g_drops_covered_sample():
    z = SampleCollection([(1, 2), (2, 3), (1, 3)])
    g = procedure_g(z)
    assert g.sets == sets((1, 2), (3,))
    assert len(g) == len(z) - 1


def test_procedure_q_paper_collection():
    g = procedure_g(canonical_order(ZETA3))
    q = procedure_q(g, 4, 7)
    assert q.sets == sets((2, 5, 8, 9), (3,), (10,), (13,))
    assert len(q) == 7 - 4 + 1


def test_procedure_q_fixed_point_and_single():
    canonical = GeneralizedCollection(sets((1, 2), (3,), (4,)))
    assert procedure_q(canonical, 2, 4) == canonical
    one = GeneralizedCollection(sets((1, 2, 3)))
    assert procedure_q(one, 3, 3) == one


def test_procedure_q_rejects_bad_shapes():
    with pytest.raises(BadShape):
        procedure_q(GeneralizedCollection(sets((1,), (2, 3))), 2, 3)
    with pytest.raises(BadShape):
        procedure_q(GeneralizedCollection(sets((1, 2), (2, 3))), 2, 3)
    with pytest.raises(BadShape):
        procedure_q(GeneralizedCollection(sets((1, 2), (3,))), 2, 4)


@st.composite
def collections(draw):
    ell = draw(st.integers(1, 4))
    pool = draw(st.lists(st.integers(0, 20), min_size=ell, max_size=10, unique=True))
    samples = draw(st.lists(st.lists(st.sampled_from(pool), min_size=ell, max_size=ell, unique=True), min_size=1, max_size=6))
    return SampleCollection(samples)


@settings(max_examples=300, deadline=None)
@given(collections())
def test_g_and_q_invariants(z):
    z = canonical_order(z)
    g = procedure_g(z)
    assert g.is_disjoint()
    assert g.support == z.support
    assert procedure_g(z) == g
    q = procedure_q(g, z.ell, z.m)
    assert len(q) == z.m - z.ell + 1
    assert len(q.sets[0]) == z.ell
    assert all(len(s) == 1 for s in q.sets[1:])
    assert q.is_disjoint() and q.support == z.support


def test_claims_trivial_cases():
    t = Threshold(Fraction(1, 10))
    h = step_function_from_roots(1, [Fraction(1, 2)], 1)
    disjoint = SampleCollection([(Fraction(1, 10), Fraction(2, 10)), (Fraction(6, 10), Fraction(9, 10))])
    family = [h, step_function_from_roots(1, [Fraction(1, 10)], 1), step_function_from_roots(1, [], 1)]
    c = verify_claim1(family, t, disjoint)
    assert c.lhs == c.rhs and c.ok
    assert verify_claim1([h], t, disjoint) == (1, 1, True)
    canonical = SampleCollection([(Fraction(1, 10),), (Fraction(5, 10),), (Fraction(9, 10),)])
    c2 = verify_claim2(family, t, canonical)
    assert c2.lhs == c2.rhs and c2.ok


def test_claim2_holds_on_random_families():
    # G(zeta) coordinates are products of the Q(G(zeta)) coordinates, so this is a projection
    rng = random.Random(11)
    grid = [Fraction(k, 12) for k in range(1, 12)]
    for _ in range(200):
        family = [step_function_from_roots(1, rng.sample(grid, rng.randint(0, 4)), 1) for _ in range(rng.randint(1, 32))]
        ell = rng.randint(1, 3)
        support = rng.sample(grid, rng.randint(ell, 7))
        samples = [tuple(rng.sample(support, ell)) for _ in range(6)]
        samples += [tuple([p] + rng.sample([x for x in support if x != p], ell - 1)) for p in support]
        assert verify_claim2(family, Threshold(Fraction(1, 8)), SampleCollection(samples)).ok


def test_claim1_counterexample_for_a_finite_family():
    # theta patterns (0,1,1) and (0,0,1) on x < y < z: e over {x,y},{y,z} separates them, G does not
    x, y, z = Fraction(1, 10), Fraction(5, 10), Fraction(9, 10)
    t = Threshold(Fraction(1, 5))
    f1 = step_function_from_roots(1, [Fraction(1, 10)], 1)
    f2 = step_function_from_roots(1, [Fraction(1, 10), Fraction(1, 2)], 1)
    c = verify_claim1([f1, f2], t, SampleCollection([(x, y), (y, z)]))
    assert (c.lhs, c.rhs, c.ok) == (2, 1, False)
