"""Exact lower bounds for exponential moments of truncated variables.

Truncation at level 1 sends values at or above the cut to zero,
T(x) = x * 1{x < 1} (strict inequality: the cut itself maps to 0).  Under
E X >= 0, E X^2 <= sigma^2 the infimum of E exp(c T(X)) is piecewise in
sigma^2 relative to the threshold A_c:

* sigma^2 <= A_c: attained by the two-point law with support {-sigma^2, 1}.
* sigma^2 >= A_c: attained by X_{A_cs, B_cs} where A_cs solves
  a * B_star(a, c) = sigma^2 and B_cs = sigma^2 / A_cs >= 1.

B_star(a, c) = (2(e^{ac} - 1) - ac)/c mirrors the Winsorized support-point
map but without the e^c factor; A_c is its unique preimage of 1.  Unlike the
Winsorized case there is no positive tilt-universal floor: along
(a, sigma^2/a) with tilt 1/a^2 the truncated moment collapses to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .distributions import BoundQuery, TwoPointDistribution, two_point
from .errors import ExponentOverflowError, ParameterError
from .roots import Bracket, find_bracket, solve_root
from .winsor import EXP_ARG_MAX, LOG_FORM_CUTOVER


class Branch(str, Enum):
    SMALL_SIGMA = "small-sigma"
    LARGE_SIGMA = "large-sigma"


def B_star(a: float, c: float) -> float:
    """(2(e^{ac} - 1) - ac) / c; strictly increasing in a from 0 to infinity."""
    _validate_ac(a, c)
    z = a * c
    if z > EXP_ARG_MAX:
        raise ExponentOverflowError(
            f"B_star(a={a!r}, c={c!r}): exponent {z!r} exceeds double range"
        )
    return (2.0 * math.expm1(z) - z) / c


def log_B_star(a: float, c: float) -> float:
    """ln B_star(a, c), stable for arbitrarily large a*c."""
    _validate_ac(a, c)
    if a == 0.0:
        raise ParameterError("log_B_star requires a > 0")
    z = a * c
    if z <= LOG_FORM_CUTOVER:
        return math.log((2.0 * math.expm1(z) - z) / c)
    correction = math.log1p(-0.5 * (2.0 + z) * math.exp(-z))
    return z + math.log(2.0 / c) + correction


def solve_A_c(
    c: float,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
) -> float:
    """Unique a > 0 with B_star(a, c) = 1; the branch threshold for sigma^2."""
    _validate_c(c)

    def h(a: float) -> float:
        return log_B_star(a, c)

    # B_star tends to a as c -> 0 (threshold near 1) and to (2/c)e^{ac} for
    # large c, so this static bracket straddles the root for any moderate c;
    # beyond c ~ 2e7 the root drops below 1e-6 and the geometric search
    # takes over.
    lo = 1e-6
    hi = max(2.0, 2.0 / c)
    f_lo, f_hi = h(lo), h(hi)
    if f_lo < 0.0 < f_hi:
        bracket = Bracket(lo, hi, f_lo, f_hi)
    else:
        bracket = find_bracket(h, lo, direction_hint=1)
    return solve_root(h, bracket, abs_tol=abs_tol, rel_tol=rel_tol).root


def solve_A_c_sigma(
    c: float,
    sigma: float,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
) -> float:
    """Unique a > 0 with a * B_star(a, c) = sigma^2, solved in log form."""
    _validate_c(c)
    _validate_sigma(sigma)
    target = 2.0 * math.log(sigma)

    def g(a: float) -> float:
        return math.log(a) + log_B_star(a, c) - target

    # a*B_star ~ a^2 for small a and ~ (2a/c) e^{ac} for large a.
    seed = max(math.log1p(sigma * sigma) / c, min(sigma, 1.0))
    bracket = find_bracket(g, seed, direction_hint=1)
    return solve_root(g, bracket, abs_tol=abs_tol, rel_tol=rel_tol).root


def trunc_moment(dist: TwoPointDistribution, c: float) -> float:
    """E exp(c * X * 1{X < 1}) for a two-point law, in closed form.

    The positive support point contributes e^{cb} only when b < 1; at or
    above the cut it contributes 1 exactly.  Underflow of e^{-ca} to 0 is
    legitimate and kept.
    """
    _validate_c(c)
    if dist.b < 1.0:
        z = c * dist.b
        if z > EXP_ARG_MAX:
            raise ExponentOverflowError(
                f"trunc_moment: exponent {z!r} exceeds double range"
            )
        pos = math.exp(z)
    else:
        pos = 1.0
    return dist.p_pos * pos + dist.p_neg * math.exp(-c * dist.a)


@dataclass(frozen=True)
class TruncSolution:
    """Piecewise truncated-bound solution; solved fields are in the rescaled
    (cut level 1) parameterization carried by ``query``.

    On the small-sigma branch the extremal law is X_{sigma^2, 1} and the
    moment-matching fields are absent (None).
    """

    query: BoundQuery
    branch: Branch
    A_c: float
    A_c_sigma: float | None
    B_c_sigma: float | None
    bound: float
    extremal: TwoPointDistribution


def lower_bound_trunc(
    query: BoundQuery,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
) -> TruncSolution:
    """Exact attained lower bound on E exp(c * X * 1{X < cut}) given
    E X >= 0 and E X^2 <= sigma^2.

    Ties at sigma^2 = A_c take the small-sigma branch (both branches agree
    there numerically; a fixed rule keeps sweeps deterministic).
    """
    c_eff = query.effective_c
    sigma_eff = query.effective_sigma
    sigma2 = sigma_eff * sigma_eff
    a_threshold = solve_A_c(c_eff, abs_tol=abs_tol, rel_tol=rel_tol)

    if sigma2 <= a_threshold:
        extremal = two_point(sigma2, 1.0)
        return TruncSolution(
            query=query,
            branch=Branch.SMALL_SIGMA,
            A_c=a_threshold,
            A_c_sigma=None,
            B_c_sigma=None,
            bound=trunc_moment(extremal, c_eff),
            extremal=extremal,
        )

    a = solve_A_c_sigma(c_eff, sigma_eff, abs_tol=abs_tol, rel_tol=rel_tol)
    # On this branch b >= 1 holds exactly; root-solver roundoff at the branch
    # boundary can land an ulp below the cut, where the truncation indicator
    # would flip, so snap such b back onto the cut.
    b = max(sigma2 / a, 1.0)
    extremal = two_point(a, b)
    return TruncSolution(
        query=query,
        branch=Branch.LARGE_SIGMA,
        A_c=a_threshold,
        A_c_sigma=a,
        B_c_sigma=b,
        bound=trunc_moment(extremal, c_eff),
        extremal=extremal,
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
