"""Asymptotic constants and leading-order laws."""

import math

import pytest
from scipy.optimize import minimize_scalar

from winsor_bounds import asymptotics
from winsor_bounds.asymptotics import Regime
from winsor_bounds.errors import ParameterError


def bisect(f, lo, hi, iters=200):
    f_lo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if (f(mid) < 0.0) == (f_lo < 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_f_of_t_values():
    assert asymptotics.f_of_t(1.0) == 0.0
    assert abs(asymptotics.f_of_t(0.5) - (math.log(0.5) + 1.0)) < 1e-15
    with pytest.raises(ParameterError):
        asymptotics.f_of_t(0.0)


def test_t_star_against_bisection_oracle():
    oracle = bisect(asymptotics.f_of_t, 0.05, 0.5)
    constants = asymptotics.solve_t_star()
    assert abs(constants.t_star - oracle) < 1e-12
    # 50-digit evaluation of the same root: 0.20318786997997995384
    assert abs(constants.t_star - 0.20318786997997995) < 1e-12
    assert abs(constants.minus_ln_t_star - 1.59362426004004) < 1e-12


def test_t_star_identity():
    constants = asymptotics.solve_t_star()
    assert abs(2.0 * (1.0 - constants.t_star) - constants.minus_ln_t_star) <= 1e-10
    assert abs(
        constants.small_sigma_universal_slope
        + (1.0 - constants.t_star) * constants.t_star
    ) < 1e-15
    assert constants.large_sigma_universal_coeff == math.exp(2.0)


def test_small_sigma_slope_values():
    assert abs(asymptotics.winsor_small_sigma_slope(1.0) + 1.0 / (4.0 * (math.e - 1.0))) < 1e-15
    # c -> 0 tail behaves like -c/4 with a c^2/8 correction
    c = 1e-8
    assert abs(asymptotics.winsor_small_sigma_slope(c) + c / 4.0) < c * c


def test_large_sigma_coeff_values():
    assert abs(asymptotics.winsor_large_sigma_coeff(2.0) - math.exp(2.0)) < 1e-12
    assert abs(asymptotics.winsor_large_sigma_coeff(1.0) - 4.0 * math.e) < 1e-12
    assert abs(asymptotics.winsor_large_sigma_coeff(4.0) - math.exp(4.0) / 4.0) < 1e-12


def test_trunc_asymptote_values():
    assert abs(asymptotics.trunc_asymptote(1.0, 0.01, Regime.SMALL_SIGMA) - 0.9999) < 1e-12
    assert abs(asymptotics.trunc_asymptote(2.0, math.e, Regime.LARGE_SIGMA) - math.exp(-2.0)) < 1e-12


def test_universal_asymptote_values():
    constants = asymptotics.solve_t_star()
    slope = (1.0 - constants.t_star) * constants.t_star
    sigma = 0.01
    expected = 1.0 - slope * sigma * sigma
    assert abs(asymptotics.universal_asymptote(sigma, Regime.SMALL_SIGMA) - expected) < 1e-15
    sigma = 1e10
    expected = math.exp(2.0) * math.log(sigma) ** 2 / sigma**2
    assert abs(asymptotics.universal_asymptote(sigma, Regime.LARGE_SIGMA) - expected) < 1e-25


def test_universal_slope_is_minimum_over_tilts():
    constants = asymptotics.solve_t_star()
    result = minimize_scalar(
        asymptotics.winsor_small_sigma_slope,
        bounds=(1e-6, 20.0),
        method="bounded",
        options={"xatol": 1e-8},
    )
    assert abs(result.x - constants.minus_ln_t_star) < 1e-6
    assert abs(result.fun - constants.small_sigma_universal_slope) < 1e-6


def test_universal_coeff_is_minimum_over_tilts():
    result = minimize_scalar(
        asymptotics.winsor_large_sigma_coeff,
        bounds=(1e-6, 20.0),
        method="bounded",
        options={"xatol": 1e-8},
    )
    assert abs(result.x - 2.0) < 1e-6
    assert abs(result.fun - math.exp(2.0)) < 1e-6


def test_parameter_validation():
    with pytest.raises(ParameterError):
        asymptotics.winsor_small_sigma_slope(0.0)
    with pytest.raises(ParameterError):
        asymptotics.trunc_asymptote(1.0, -1.0, Regime.SMALL_SIGMA)
    with pytest.raises(ParameterError):
        asymptotics.universal_asymptote(0.0, Regime.LARGE_SIGMA)
