"""Two-point law and query value objects."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from winsor_bounds.distributions import BoundQuery, two_point
from winsor_bounds.errors import ParameterError

positive = st.floats(min_value=1e-6, max_value=1e6)


@given(a=positive, b=positive)
@settings(max_examples=200, deadline=None)
def test_two_point_moments(a, b):
    dist = two_point(a, b)
    scale = dist.a * dist.p_neg + dist.b * dist.p_pos
    assert abs(dist.mean) <= 1e-14 * scale
    assert abs(dist.second_moment - a * b) <= 1e-14 * a * b
    assert abs(dist.p_neg + dist.p_pos - 1.0) <= 1e-14


def test_two_point_rejects_bad_support():
    with pytest.raises(ParameterError):
        two_point(-1.0, 2.0)
    with pytest.raises(ParameterError):
        two_point(1.0, 0.0)
    with pytest.raises(ParameterError):
        two_point(float("inf"), 1.0)


def test_extreme_support_ratio_mass_rounds_to_one():
    dist = two_point(20.0, 5e18)
    assert dist.p_neg == 1.0
    assert dist.p_pos > 0.0


def test_query_validation():
    with pytest.raises(ParameterError):
        BoundQuery(c=0.0, sigma=1.0)
    with pytest.raises(ParameterError):
        BoundQuery(c=1.0, sigma=-2.0)
    with pytest.raises(ParameterError):
        BoundQuery(c=1.0, sigma=1.0, cut=0.0)
    with pytest.raises(ParameterError):
        BoundQuery(c=float("nan"), sigma=1.0)


def test_query_rescaling_fields():
    query = BoundQuery(c=1.5, sigma=4.0, cut=2.0)
    assert query.effective_c == 3.0
    assert query.effective_sigma == 2.0
