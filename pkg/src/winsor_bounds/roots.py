"""Bracketed scalar root finding.

A geometric bracket search on (0, inf) plus a hybrid Brent-style iteration
(bisection safeguarded by secant / inverse quadratic steps).  Convergence
demands both a tight bracket and a small function residual, so downstream
solvers can rely on |f(root)| directly instead of re-deriving it from slope
estimates.  Everything here is pure and deterministic: identical inputs
produce bitwise-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .config import resolve_tolerances
from .errors import (
    MaxIterationsError,
    NonFiniteValueError,
    NoSignChangeError,
    ParameterError,
)

_EPS = 2.220446049250313e-16
MAX_BRACKET_STEPS = 200
MAX_SOLVE_ITERATIONS = 200


def _opposite_signs(u: float, v: float) -> bool:
    return (u < 0.0 < v) or (v < 0.0 < u)


@dataclass(frozen=True)
class Bracket:
    """Interval [lo, hi] across which f changes sign strictly."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self) -> None:
        if not (self.lo < self.hi):
            raise ParameterError(
                f"bracket requires lo < hi, got [{self.lo!r}, {self.hi!r}]"
            )
        if not _opposite_signs(self.f_lo, self.f_hi):
            raise ParameterError(
                "bracket requires strictly opposite signs: "
                f"f(lo)={self.f_lo!r}, f(hi)={self.f_hi!r}"
            )


@dataclass(frozen=True)
class RootResult:
    """Solved root with its residual and iteration count.

    When ``converged`` is true the residual is no larger than the absolute
    tolerance and the final bracket was narrower than
    max(abs_tol, rel_tol * |root|).
    """

    root: float
    residual: float
    iterations: int
    converged: bool


def _checked(f: Callable[[float], float], x: float) -> float:
    value = f(x)
    if not math.isfinite(value):
        raise NonFiniteValueError(f"f({x!r}) returned non-finite value {value!r}")
    return value


def _bracket_about(f: Callable[[float], float], x0: float) -> Bracket:
    # f(x0) landed exactly on zero: widen symmetrically until signs straddle.
    delta = 1e-13 * x0
    for _ in range(MAX_BRACKET_STEPS):
        lo, hi = x0 - delta, x0 + delta
        if lo <= 0.0:
            break
        f_lo, f_hi = _checked(f, lo), _checked(f, hi)
        if _opposite_signs(f_lo, f_hi):
            return Bracket(lo, hi, f_lo, f_hi)
        delta *= 2.0
    raise NoSignChangeError(f"no strict sign change around exact zero at {x0!r}")


def find_bracket(
    f: Callable[[float], float],
    seed: float,
    direction_hint: int = 1,
    max_steps: int = MAX_BRACKET_STEPS,
) -> Bracket:
    """Bracket a sign change of f on (0, inf) by geometric probing from seed.

    ``direction_hint`` is the sign of f's slope through the root (+1 for
    functions that increase through zero, -1 for decreasing ones); it decides
    whether to expand outward (factor 2) or contract inward (factor 1/2).
    """
    if not (math.isfinite(seed) and seed > 0.0):
        raise ParameterError(f"seed must be a positive real, got {seed!r}")
    if direction_hint == 0:
        raise ParameterError("direction_hint must be +1 or -1")

    f_seed = _checked(f, seed)
    if f_seed == 0.0:
        return _bracket_about(f, seed)

    # Root lies above the seed when an increasing f is still negative there
    # (or a decreasing f still positive); otherwise it lies below.
    outward = (f_seed < 0.0) == (direction_hint > 0)
    factor = 2.0 if outward else 0.5

    prev, f_prev = seed, f_seed
    for _ in range(max_steps):
        cur = prev * factor
        f_cur = _checked(f, cur)
        if f_cur == 0.0:
            return _bracket_about(f, cur)
        if _opposite_signs(f_prev, f_cur):
            if prev < cur:
                return Bracket(prev, cur, f_prev, f_cur)
            return Bracket(cur, prev, f_cur, f_prev)
        prev, f_prev = cur, f_cur
    raise NoSignChangeError(
        f"no sign change within {max_steps} geometric steps from seed {seed!r}"
    )


def solve_root(
    f: Callable[[float], float],
    bracket: Bracket,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
    max_iter: int = MAX_SOLVE_ITERATIONS,
) -> RootResult:
    """Drive the bracket down around a root of f.

    Brent-style: each step is an inverse quadratic or secant candidate,
    accepted only when it beats bisection, otherwise bisect.  Succeeds once
    the bracket is narrower than max(abs_tol, rel_tol*|root|) AND
    |f(root)| <= abs_tol; the returned root never leaves the initial bracket.

    Raises MaxIterationsError after ``max_iter`` steps, which for a
    continuous f only happens when the residual target is unreachable in
    double precision (a pathologically steep or noisy function).
    """
    abs_tol, rel_tol = resolve_tolerances(abs_tol, rel_tol)
    lo0, hi0 = bracket.lo, bracket.hi

    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi
    if abs(fa) < abs(fb):
        a, b, fa, fb = b, a, fb, fa
    c, fc = a, fa
    d = e = b - a

    for iteration in range(max_iter):
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb

        width = abs(c - b)
        if fb == 0.0 or (
            width <= max(abs_tol, rel_tol * abs(b)) and abs(fb) <= abs_tol
        ):
            root = min(max(b, lo0), hi0)
            return RootResult(root=root, residual=fb, iterations=iteration, converged=True)

        # Adjacent floats still straddling a sign change: no representable
        # point is left to try, so the residual target is unreachable in
        # double precision (f is too steep at this scale for abs_tol).
        inner, outer = (b, c) if b < c else (c, b)
        if math.nextafter(inner, outer) >= outer:
            raise MaxIterationsError(
                f"bracket collapsed to adjacent floats [{inner!r}, {outer!r}] "
                f"with residual {fb!r} still above abs_tol={abs_tol!r}; "
                "the function is too steep at this scale for the tolerance"
            )

        step_floor = 2.0 * _EPS * abs(b)
        m = 0.5 * (c - b)

        if abs(e) < step_floor or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                # secant
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                # inverse quadratic interpolation
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            s_prev = e
            e = d
            if 2.0 * p < min(3.0 * m * q - abs(step_floor * q), abs(s_prev * q)):
                d = p / q
            else:
                d = e = m

        a, fa = b, fb
        if abs(d) > step_floor:
            b += d
        elif abs(m) <= step_floor:
            b += m  # resolve the last ulps exactly instead of overshooting
        elif m > 0.0:
            b += step_floor
        else:
            b -= step_floor
        fb = _checked(f, b)

        if (fb < 0.0) == (fc < 0.0):
            c, fc = a, fa
            d = e = b - a

    raise MaxIterationsError(
        f"no convergence in {max_iter} iterations; last estimate {b!r} "
        f"with residual {fb!r} (abs_tol={abs_tol!r})"
    )
