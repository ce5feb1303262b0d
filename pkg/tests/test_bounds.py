import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from widthlab.bounds import (
    BoundParams,
    ConditionNotMet,
    count_runs,
    interval_union_count,
    interval_union_family_trace,
    interval_union_patterns,
    interval_union_trace,
    is_shattered,
    max_one_runs,
    remark_bound,
    remark_condition,
    sauer_phi,
    theorem_bound,
    vc_dimension,
)
from widthlab.model import WidthLabError


def test_sauer_phi_values():
    assert sauer_phi(2, 4) == 11
    assert sauer_phi(0, 9) == 1
    assert sauer_phi(4, 5) == 31
    for n in range(8):
        assert sauer_phi(n, n) == 2**n
        assert sauer_phi(n + 3, n) == 2**n
    with pytest.raises(WidthLabError):
        sauer_phi(-1, 3)


@given(st.integers(1, 20), st.integers(1, 20))
def test_sauer_phi_pascal(d, n):
    assert sauer_phi(d, n) == sauer_phi(d, n - 1) + sauer_phi(d - 1, n - 1)
    assert sauer_phi(d, n) <= sauer_phi(d, n + 1)
    assert sauer_phi(d - 1, n) <= sauer_phi(d, n)


def test_theorem_bound_examples():
    assert theorem_bound(BoundParams(1, Fraction(1, 4), 1, 6)) == 62
    assert theorem_bound(BoundParams(1, Fraction(1, 4), 3, 3)) == 2  # m = ell
    assert theorem_bound(BoundParams(1, Fraction(3, 5), 1, 9)) == 2  # K = 0
    assert BoundParams(7, Fraction(1, 2), 2, 5).K == 7


def test_bound_params_validation():
    with pytest.raises(WidthLabError):
        BoundParams(1, 0, 1, 2)
    with pytest.raises(WidthLabError):
        BoundParams(-1, Fraction(1, 4), 1, 2)
    with pytest.raises(WidthLabError):
        BoundParams(1, Fraction(1, 4), 3, 2)


def test_remark_bound_value():
    p = BoundParams(1, Fraction(1, 4), 1, 7)
    # 2 * (1.5 e)^4 = 2 * 5.0625 * e^4
    assert remark_bound(p) == pytest.approx(552.80626946, rel=1e-9)
    assert remark_bound(p) >= theorem_bound(p)
    assert not remark_condition(BoundParams(1, Fraction(1, 4), 1, 5))
    with pytest.raises(ConditionNotMet):
        remark_bound(BoundParams(1, Fraction(1, 4), 1, 5))


def test_count_runs():
    assert count_runs(()) == 0
    assert count_runs((1, 1, 0, 1, 0, 0, 1)) == 3
    assert count_runs((0, 0)) == 0


def test_interval_unions_small():
    assert interval_union_patterns(1, 2) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert interval_union_trace(0, 5) == (frozenset({(0,) * 5}), 1)
    assert (1, 0, 1) not in interval_union_patterns(1, 3)
    assert (1, 0, 1) in interval_union_patterns(2, 3)


@pytest.mark.parametrize("K", [0, 1, 2, 3])
def test_interval_union_count_matches_direct(K):
    for n in range(0, 10):
        direct = sum(1 for bits in product((0, 1), repeat=n) if count_runs(bits) <= K)
        assert interval_union_trace(K, n)[1] == direct == interval_union_count(K, n)
        assert direct <= sauer_phi(2 * K, n)


def test_vc_dimension_of_interval_unions():
    pts = tuple(Fraction(k, 10) for k in range(1, 6))
    assert vc_dimension(interval_union_family_trace(1), pts) == 2
    pts = tuple(Fraction(k, 10) for k in range(1, 9))
    assert vc_dimension(interval_union_family_trace(2), pts) == 4
    assert vc_dimension(interval_union_family_trace(0), pts) == 0


def test_vc_dimension_of_threshold_family():
    def trace(points):
        # x -> [x >= c] for all c
        return {tuple(int(p >= c) for p in points) for c in list(points) + [math.inf]}

    assert vc_dimension(trace, (1, 2, 3, 4)) == 1
    assert is_shattered({(0,), (1,)}, 1)


def test_max_one_runs():
    assert max_one_runs(1, Fraction(1, 4)) == 2
    assert max_one_runs(1, Fraction(1, 5)) == 3
    assert max_one_runs(1, Fraction(1, 5), strict=False) == 3
    assert max_one_runs(1, Fraction(1, 4), strict=False) == 3
    assert max_one_runs(1, Fraction(3, 5)) == 1
