"""Exact lower bounds for exponential moments of Winsorized variables.

Setting: X ranges over all laws with E X >= 0 and E X^2 <= sigma^2, and the
Winsorization at level 1 caps the right tail, W(x) = min(1, x).  The infimum
of E exp(c W(X)) is attained by a zero-mean two-point law X_{a,b}, and every
quantity here is a closed form or a scalar root:

* ``b_star(a, c)`` is the positive support point making the quadratic
  tangent certificate touch exp(c W) at both -a and b; it always exceeds 2.
* ``solve_a_c_sigma`` matches the second moment, a * b_star(a, c) = sigma^2,
  fixing the extremal law for a given tilt c.
* ``ell1`` is (1+a)^2 times the log-derivative of the optimal-tilt moment
  curve; its unique - to + sign change on (0, sigma^2) locates the lower
  support magnitude of the tilt-universal extremal law (``solve_a_sigma``),
  from which the optimal tilt is ln(sigma^2/a) / (1 + a).

Cut levels other than 1 reduce to level 1 through
(c, sigma, cut) -> (c*cut, sigma/cut, 1); solutions carry their query so the
rescaled quantities can be mapped back (support scales by cut, tilt by 1/cut).

Large sigma is handled by solving the moment-matching equations in log form,
so budgets up to sigma ~ 1e10 and beyond never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import asymptotics
from .distributions import BoundQuery, TwoPointDistribution, two_point
from .errors import ExponentOverflowError, NoSignChangeError, ParameterError
from .roots import Bracket, find_bracket, solve_root

EXP_ARG_MAX = 709.0  # exp() overflows just above ln(DBL_MAX) ~ 709.78
LOG_FORM_CUTOVER = 30.0


def _exp_checked(z: float, context: str) -> float:
    if z > EXP_ARG_MAX:
        raise ExponentOverflowError(f"{context}: exponent {z!r} exceeds double range")
    return math.exp(z)


def b_star(a: float, c: float) -> float:
    """Saturated positive support point (2(e^{c+ac} - 1) - ac) / c.

    Strictly increasing in a, always > 2.  Raises ExponentOverflowError when
    c + a*c leaves the double exponent range; use log_b_star there.
    """
    _validate_ac(a, c)
    z = c + a * c
    if z > EXP_ARG_MAX:
        raise ExponentOverflowError(
            f"b_star(a={a!r}, c={c!r}): exponent {z!r} exceeds double range"
        )
    return (2.0 * math.expm1(z) - a * c) / c


def log_b_star(a: float, c: float) -> float:
    """ln b_star(a, c), stable for arbitrarily large c + a*c."""
    _validate_ac(a, c)
    z = c + a * c
    if z <= LOG_FORM_CUTOVER:
        return math.log((2.0 * math.expm1(z) - a * c) / c)
    # b_star = (2 e^z / c) * (1 - (2 + ac) e^{-z} / 2); the correction term
    # is below 1e-11 past the cutover and underflows harmlessly to 0.
    correction = math.log1p(-0.5 * (2.0 + a * c) * math.exp(-z))
    return z + math.log(2.0 / c) + correction


def solve_a_c_sigma(
    c: float,
    sigma: float,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
) -> float:
    """Unique a > 0 with a * b_star(a, c) = sigma^2.

    Solved in log form, ln a + ln b_star(a, c) = 2 ln sigma, which keeps the
    equation O(1)-scaled for any sigma and overflow-free during bracketing.
    """
    _validate_c_sigma(c, sigma)
    sigma2 = sigma * sigma
    target = 2.0 * math.log(sigma)

    def g(a: float) -> float:
        return math.log(a) + log_b_star(a, c) - target

    seed = _a_c_sigma_seed(c, sigma2)
    bracket = find_bracket(g, seed, direction_hint=1)
    return solve_root(g, bracket, abs_tol=abs_tol, rel_tol=rel_tol).root


def _a_c_sigma_seed(c: float, sigma2: float) -> float:
    # Blend of both asymptotic regimes: a ~ c sigma^2 / (2(e^c - 1)) as
    # sigma -> 0 and a ~ ln(sigma^2)/c as sigma -> infinity.
    seeds = []
    denom = 2.0 * math.expm1(c) if c <= EXP_ARG_MAX else math.inf
    if math.isfinite(denom) and denom > 0.0:
        small = c * sigma2 / denom
        if small > 0.0 and math.isfinite(small):
            seeds.append(small)
    large = math.log1p(sigma2) / c
    if large > 0.0 and math.isfinite(large):
        seeds.append(large)
    return min(seeds) if seeds else min(sigma2, 1.0)


def ell1(a: float, sigma: float) -> float:
    """ln(a/sigma^2) - 2(a+1)(a-sigma^2)/(a^2+sigma^2).

    Vanishes at a = sigma^2 and switches sign exactly once, - to +, on
    (0, sigma^2); that interior root is the universal extremal a.
    """
    if not (math.isfinite(a) and a > 0.0):
        raise ParameterError(f"a must be a positive real, got {a!r}")
    _validate_sigma(sigma)
    sigma2 = sigma * sigma
    return math.log(a / sigma2) - 2.0 * (a + 1.0) * (a - sigma2) / (a * a + sigma2)


def solve_a_sigma(
    sigma: float,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
) -> float:
    """The sign-change root of ell1 on (0, sigma^2).

    Seeded with 0.5*ln(1 + 2 t_star sigma^2), which tracks both asymptotic
    regimes of the root; the boundary zero of ell1 at a = sigma^2 is excluded
    by keeping the bracket strictly interior.
    """
    _validate_sigma(sigma)
    sigma2 = sigma * sigma

    def f(a: float) -> float:
        return ell1(a, sigma)

    seed = 0.5 * math.log1p(2.0 * asymptotics.t_star() * sigma2)
    try:
        bracket = find_bracket(f, seed, direction_hint=1)
    except NoSignChangeError:
        # ell1 rises through its interior root and returns to 0 only at
        # sigma^2 itself, so this full-width bracket is always valid.
        lo = 1e-12 * min(1.0, sigma2)
        hi = sigma2 * (1.0 - 1e-12)
        bracket = Bracket(lo, hi, f(lo), f(hi))
    return solve_root(f, bracket, abs_tol=abs_tol, rel_tol=rel_tol).root


def optimal_c_for_two_point(a: float, sigma: float) -> float:
    """Tilt minimizing the Winsorized moment of X_{a, sigma^2/a}:
    ln(sigma^2/a) / (1 + a)."""
    _validate_sigma(sigma)
    sigma2 = sigma * sigma
    if not (math.isfinite(a) and 0.0 < a < sigma2):
        raise ParameterError(f"a must lie in (0, sigma^2), got {a!r}")
    return (2.0 * math.log(sigma) - math.log(a)) / (1.0 + a)


def winsor_moment(dist: TwoPointDistribution, c: float) -> float:
    """E exp(c * min(1, X)) for a two-point law, in closed form."""
    _validate_c(c)
    upper = min(1.0, dist.b)
    pos = _exp_checked(c * upper, "winsor_moment")
    neg = _exp_checked(-c * dist.a, "winsor_moment")
    return dist.p_pos * pos + dist.p_neg * neg


def optimal_winsor_moment(a: float, sigma: float) -> float:
    """Winsorized moment of X_{a, sigma^2/a} at its optimal tilt:
    a(1+a)(a/sigma^2)^{-1/(1+a)} / (a^2 + sigma^2)."""
    c_opt = optimal_c_for_two_point(a, sigma)
    sigma2 = sigma * sigma
    return a * (1.0 + a) * math.exp(c_opt) / (a * a + sigma2)


@dataclass(frozen=True)
class WinsorSolution:
    """Fixed-tilt solution; solved fields are in the rescaled (cut level 1)
    parameterization carried by ``query``."""

    query: BoundQuery
    a_c_sigma: float
    b_c_sigma: float
    bound: float
    extremal: TwoPointDistribution


@dataclass(frozen=True)
class UniversalWinsorSolution:
    """Tilt-universal solution at ``sigma`` with cut level ``cut``.

    a_sigma, b_sigma, c_sigma and the extremal law are in the rescaled
    (cut level 1) parameterization: at cut level y the extremal support is
    (-y*a_sigma, y*b_sigma) and the optimizing tilt is c_sigma/y.
    """

    sigma: float
    cut: float
    a_sigma: float
    b_sigma: float
    c_sigma: float
    bound: float
    extremal: TwoPointDistribution

    @property
    def effective_sigma(self) -> float:
        return self.sigma / self.cut


def lower_bound_fixed_c(
    query: BoundQuery,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
) -> WinsorSolution:
    """Exact attained lower bound on E exp(c * min(cut, X)) given
    E X >= 0 and E X^2 <= sigma^2."""
    c_eff = query.effective_c
    sigma_eff = query.effective_sigma
    a = solve_a_c_sigma(c_eff, sigma_eff, abs_tol=abs_tol, rel_tol=rel_tol)
    b = sigma_eff * sigma_eff / a
    extremal = two_point(a, b)
    bound = winsor_moment(extremal, c_eff)
    return WinsorSolution(query=query, a_c_sigma=a, b_c_sigma=b, bound=bound, extremal=extremal)


def lower_bound_universal(
    sigma: float,
    cut: float = 1.0,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
) -> UniversalWinsorSolution:
    """Exact attained lower bound on E exp(c * min(cut, X)) over all tilts
    c > 0 and all X with E X >= 0, E X^2 <= sigma^2."""
    _validate_sigma(sigma)
    if not (math.isfinite(cut) and cut > 0.0):
        raise ParameterError(f"cut must be a positive real, got {cut!r}")
    sigma_eff = sigma / cut
    a = solve_a_sigma(sigma_eff, abs_tol=abs_tol, rel_tol=rel_tol)
    b = sigma_eff * sigma_eff / a
    c_opt = optimal_c_for_two_point(a, sigma_eff)
    bound = optimal_winsor_moment(a, sigma_eff)
    return UniversalWinsorSolution(
        sigma=sigma,
        cut=cut,
        a_sigma=a,
        b_sigma=b,
        c_sigma=c_opt,
        bound=bound,
        extremal=two_point(a, b),
    )


def _validate_ac(a: float, c: float) -> None:
    if not (math.isfinite(a) and a >= 0.0):
        raise ParameterError(f"a must be a nonnegative real, got {a!r}")
    _validate_c(c)


def _validate_c(c: float) -> None:
    if not (math.isfinite(c) and c > 0.0):
        raise ParameterError(f"c must be a positive real, got {c!r}")


def _validate_sigma(sigma: float) -> None:
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise ParameterError(f"sigma must be a positive real, got {sigma!r}")


def _validate_c_sigma(c: float, sigma: float) -> None:
    _validate_c(c)
    _validate_sigma(sigma)
