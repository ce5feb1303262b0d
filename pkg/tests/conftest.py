from fractions import Fraction

import pytest
from hypothesis import strategies as st

from widthlab.model import step_function_from_roots


def F(x):
    return Fraction(x)


@pytest.fixture
def h_paper():
    """[0, 2.4), [2.4, 3.6), {3.6}, (3.6, 7] with sign -1 on the first interval."""
    from widthlab.model import GeneralizedInterval as I, make_step_function

    return make_step_function(
        7,
        [I(0, F("2.4"), True, False), I(F("2.4"), F("3.6"), True, False), I(F("3.6"), F("3.6")), I(F("3.6"), 7, False, True)],
        -1,
    )


@pytest.fixture
def h_two_roots():
    return step_function_from_roots(7, [F("2.4"), F("3.6")], 1)


@st.composite
def step_functions(draw, max_roots=5):
    """Step functions on [0, B] with roots on a rational grid, random ownership, singletons."""
    B = Fraction(draw(st.integers(1, 9)), draw(st.integers(1, 3)))
    q = draw(st.integers(2, 30))
    ks = draw(st.lists(st.integers(1, q - 1), unique=True, max_size=min(max_roots, q - 1)))
    roots = sorted(B * Fraction(k, q) for k in ks)
    doubled = []
    for a in roots:
        doubled += [a, a] if draw(st.booleans()) and draw(st.booleans()) else [a]
    owners = [draw(st.sampled_from(["left", "right"])) for _ in roots]
    return step_function_from_roots(B, doubled, draw(st.sampled_from([-1, 1])), owners)


