"""Quadratic tangent-minorant certificates.

Each bound in this package is proved by a parabola G(x) = alpha + beta*x +
gamma*x^2 lying below the capped exponential F and touching it exactly at
the extremal support points.  beta > 0 > gamma makes E G(X) monotone in the
constraint moments, so E F(X) >= E G(X) >= E G(X_{a,b}) = E F(X_{a,b}) for
every admissible X.  This module rebuilds those parabolas from their closed
forms and checks the geometry numerically on dense grids: G <= F everywhere,
equality only near the contact points, and tangency (value and one-sided
derivative) at each contact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import CaseViolationError, ParameterError
from .trunc import B_star, solve_A_c
from .winsor import b_star

GAP_RTOL = 1e-12       # allowed negative gap, relative to max(1, F)
EQUALITY_RTOL = 1e-10  # |F - G| below this counts as contact
CONTACT_WINDOW = 1e-2  # equality must sit within this relative distance


class MomentKind(str, Enum):
    WINSOR = "winsor"
    TRUNC = "trunc"


@dataclass(frozen=True)
class QuadraticMinorant:
    """alpha + beta*x + gamma*x^2 touching the capped exponential at
    ``contact_points``; beta > 0 > gamma always.

    ``lower_value``/``lower_slope`` carry the same parabola anchored at the
    lower contact, where both are known in closed form (e^{-ac} and
    c e^{-ac}).  The raw coefficients reach magnitude e^c, so evaluating
    them near the lower contact (where F ~ 1) cancels catastrophically for
    large c; the anchored form keeps the roundoff proportional to F(x)
    everywhere.  Instances built from raw coefficients only (both anchors
    None) evaluate the plain polynomial.
    """

    alpha: float
    beta: float
    gamma: float
    contact_points: tuple[float, float]
    lower_value: float | None = None
    lower_slope: float | None = None

    def __post_init__(self) -> None:
        if not (self.beta > 0.0 > self.gamma):
            raise ParameterError(
                f"minorant requires beta > 0 > gamma, got beta={self.beta!r}, "
                f"gamma={self.gamma!r}"
            )

    def __call__(self, x):
        if self.lower_value is not None:
            u = np.subtract(x, self.contact_points[0])
            return self.lower_value + self.lower_slope * u + self.gamma * np.square(u)
        return self.alpha + self.beta * x + self.gamma * np.square(x)


def capped_exp(kind: MomentKind, c: float, x):
    """F(x): exp(c*min(1,x)) for winsor, exp(c*x*1{x<1}) for trunc."""
    x = np.asarray(x, dtype=float)
    with np.errstate(under="ignore"):
        if kind is MomentKind.WINSOR:
            return np.exp(c * np.minimum(x, 1.0))
        return np.exp(np.where(x < 1.0, c * x, 0.0))


def winsor_minorant(a: float, c: float) -> QuadraticMinorant:
    """Certificate for the Winsorized moment: contacts at -a and b_star(a, c)."""
    _validate(a, c)
    b = b_star(a, c)
    decay = math.exp(-a * c)
    w = c * decay
    denom = 2.0 * (a + b)
    return QuadraticMinorant(
        alpha=math.exp(c) - b * b * w / denom,
        beta=2.0 * b * w / denom,
        gamma=-w / denom,
        contact_points=(-a, b),
        lower_value=decay,
        lower_slope=w,
    )


def trunc_minorant_small(a: float, c: float) -> QuadraticMinorant:
    """Certificate for the truncated moment when sigma^2 = a <= A_c:
    contacts at -a and the cut point 1."""
    _validate(a, c)
    threshold = solve_A_c(c)
    if a > threshold * (1.0 + 1e-9):
        raise CaseViolationError(
            f"trunc_minorant_small requires a <= A_c = {threshold!r}, got a={a!r}"
        )
    eac = math.exp(a * c)
    w = math.exp(-a * c)
    denom = (a + 1.0) ** 2
    return QuadraticMinorant(
        alpha=w * (a * a * eac + c * a * a + a * c + 2.0 * a + 1.0) / denom,
        beta=w * (2.0 * a * (eac - 1.0) + c * (1.0 - a * a)) / denom,
        gamma=w * (eac - a * c - c - 1.0) / denom,
        contact_points=(-a, 1.0),
        lower_value=w,
        lower_slope=c * w,
    )


def trunc_minorant_large(a: float, c: float) -> QuadraticMinorant:
    """Certificate for the truncated moment when B_star(a, c) >= 1:
    contacts at -a and b = B_star(a, c)."""
    _validate(a, c)
    b = B_star(a, c)
    if b < 1.0 - 1e-12:
        raise CaseViolationError(
            f"trunc_minorant_large requires B_star(a, c) >= 1, got {b!r}"
        )
    # Roundoff at the case boundary may put b an ulp below the cut, where
    # the truncation indicator flips; the case condition pins b >= 1.
    b = max(b, 1.0)
    w = math.exp(-a * c)
    denom = 2.0 * (a + b)
    return QuadraticMinorant(
        alpha=w * (c * a * a + 2.0 * a * b * c + 2.0 * a + 2.0 * b) / denom,
        beta=2.0 * c * b * w / denom,
        gamma=-c * w / denom,
        contact_points=(-a, b),
        lower_value=w,
        lower_slope=c * w,
    )


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of a grid check; violations are reported as data, not raised."""

    passed: bool
    worst_gap: float          # min of (F - G)/max(1, F); >= -GAP_RTOL to pass
    worst_x: float
    equality_localized: bool  # near-contact points are the only equalities
    stray_equality_x: float | None
    n_points: int

    def __bool__(self) -> bool:
        return self.passed


def certificate_grid(minorant: QuadraticMinorant, n_base: int = 100_001) -> np.ndarray:
    """Evaluation grid: wide span around the contacts plus dense refinement
    near each contact and near the kink at x = 1."""
    lo_c, hi_c = minorant.contact_points
    span = 10.0 * max(abs(lo_c), abs(hi_c), 1.0)
    pieces = [np.linspace(-span, span, n_base)]
    for x0 in (lo_c, hi_c, 1.0):
        window = 1e-3 * (1.0 + abs(x0))
        pieces.append(np.linspace(x0 - window, x0 + window, 2001))
        pieces.append(np.array([x0]))
    return np.unique(np.concatenate(pieces))


def check_certificate(
    minorant: QuadraticMinorant,
    kind: MomentKind,
    c: float,
    grid: np.ndarray | None = None,
) -> CertificateReport:
    """Verify G <= F on the grid with equality only near the contacts."""
    if grid is None:
        grid = certificate_grid(minorant)
    f_values = capped_exp(kind, c, grid)
    gap = f_values - minorant(grid)
    scale = np.maximum(1.0, f_values)
    normalized = gap / scale

    worst_idx = int(np.argmin(normalized))
    passed = bool(normalized[worst_idx] >= -GAP_RTOL)

    equality = np.abs(normalized) <= EQUALITY_RTOL
    localized = True
    stray: float | None = None
    if np.any(equality):
        xs = grid[equality]
        near_contact = np.zeros_like(xs, dtype=bool)
        for x0 in minorant.contact_points:
            near_contact |= np.abs(xs - x0) <= CONTACT_WINDOW * (1.0 + abs(x0))
        if not bool(np.all(near_contact)):
            localized = False
            stray = float(xs[~near_contact][0])
    return CertificateReport(
        passed=passed and localized,
        worst_gap=float(normalized[worst_idx]),
        worst_x=float(grid[worst_idx]),
        equality_localized=localized,
        stray_equality_x=stray,
        n_points=int(grid.size),
    )


def tangency_gaps(
    minorant: QuadraticMinorant,
    kind: MomentKind,
    c: float,
    upper_contact_tangent: bool = True,
    rel_step: float = 1e-6,
) -> dict[float, tuple[float, float | None]]:
    """Normalized |F - G| and |F' - G'| at each contact point.

    Derivatives are central differences, except at a contact sitting on the
    kink at x = 1 where the second-order one-sided (right) difference is
    used.  The small-sigma truncated certificate pins only the value at its
    upper contact, not the slope: pass ``upper_contact_tangent=False`` there
    and the derivative gap is reported as None.
    """
    out: dict[float, tuple[float, float | None]] = {}
    scale = max(1.0, math.exp(min(c, 700.0)))

    def d(x: float) -> float:
        return float(capped_exp(kind, c, x) - minorant(x))

    lower, upper = minorant.contact_points
    for x0 in (lower, upper):
        h = rel_step * (1.0 + abs(x0))
        value_gap = abs(d(x0)) / scale
        if x0 == upper and not upper_contact_tangent:
            out[x0] = (value_gap, None)
            continue
        if abs(x0 - 1.0) <= 2.0 * h:
            # contact on the kink: second-order one-sided (right) difference
            deriv = (-3.0 * d(x0) + 4.0 * d(x0 + h) - d(x0 + 2.0 * h)) / (2.0 * h)
        else:
            deriv = (d(x0 + h) - d(x0 - h)) / (2.0 * h)
        out[x0] = (value_gap, abs(deriv) / scale)
    return out


def _validate(a: float, c: float) -> None:
    if not (math.isfinite(a) and a > 0.0):
        raise ParameterError(f"a must be a positive real, got {a!r}")
    if not (math.isfinite(c) and c > 0.0):
        raise ParameterError(f"c must be a positive real, got {c!r}")
