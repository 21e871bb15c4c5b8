"""Brute-force extremal search, independent of the analytic solvers.

Three verification routes:

* grid minimization of the closed-form two-point moments over the lower
  support magnitude (and jointly over the tilt for the universal bound),
  with staged window refinement around the coarse argmin;
* randomized three-point laws satisfying the same moment constraints, which
  must never undercut any bound;
* the collapse construction (a, sigma^2/a) with tilt 1/a^2 showing that the
  truncated moment has no positive tilt-universal floor while the
  Winsorized one does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .certificates import MomentKind
from .errors import ParameterError


@dataclass(frozen=True)
class GridMinResult:
    """Minimum of a two-point moment over a search grid.

    ``cell_ratio`` is the ratio between adjacent points of the (finest) a
    grid; ``cell_ratio_c`` likewise for joint searches over the tilt.
    """

    argmin_a: float
    argmin_c: float  # the fixed tilt, or the grid argmin for joint searches
    min_value: float
    cell_ratio: float
    grid_spec: str
    cell_ratio_c: float | None = None


def two_point_moment_grid(
    kind: MomentKind, c, sigma: float, a: np.ndarray
) -> np.ndarray:
    """Closed-form moment of X_{a, sigma^2/a} for each a (and tilt c,
    broadcastable)."""
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    sigma2 = sigma * sigma
    b = sigma2 / a
    if kind is MomentKind.WINSOR:
        upper = np.minimum(b, 1.0)
    else:
        upper = np.where(b < 1.0, b, 0.0)
    with np.errstate(under="ignore"):
        return (a * np.exp(c * upper) + b * np.exp(-c * a)) / (a + b)


def grid_min_two_point(
    c: float,
    sigma: float,
    kind: MomentKind,
    a_lo: float,
    a_hi: float,
    n_points: int = 10_000,
) -> GridMinResult:
    """Minimize the two-point moment over a log-spaced grid in a.

    Ties resolve to the smaller a (first grid index), so the reduction is
    order-independent and deterministic.
    """
    if not (0.0 < a_lo < a_hi):
        raise ParameterError(f"need 0 < a_lo < a_hi, got [{a_lo!r}, {a_hi!r}]")
    grid = np.geomspace(a_lo, a_hi, n_points)
    values = two_point_moment_grid(kind, c, sigma, grid)
    idx = int(np.argmin(values))
    return GridMinResult(
        argmin_a=float(grid[idx]),
        argmin_c=c,
        min_value=float(values[idx]),
        cell_ratio=(a_hi / a_lo) ** (1.0 / (n_points - 1)),
        grid_spec=f"{kind.value}: a in [{a_lo:.6g}, {a_hi:.6g}] log x {n_points}",
    )


def refine_grid_min(
    c: float,
    sigma: float,
    kind: MomentKind,
    coarse_points: int = 10_000,
    refine_points: int = 1_000,
) -> GridMinResult:
    """Two-stage minimization: coarse sweep over (0, ~sigma^2 * 100), then a
    fine sweep across a +/- 2-cell window around the coarse argmin."""
    sigma2 = sigma * sigma
    a_lo, a_hi = sigma2 * 1e-8, sigma2 * 1e2
    coarse_grid = np.geomspace(a_lo, a_hi, coarse_points)
    coarse = two_point_moment_grid(kind, c, sigma, coarse_grid)
    idx = int(np.argmin(coarse))
    lo = coarse_grid[max(idx - 2, 0)]
    hi = coarse_grid[min(idx + 2, coarse_points - 1)]
    fine = grid_min_two_point(c, sigma, kind, lo, hi, refine_points)
    return GridMinResult(
        argmin_a=fine.argmin_a,
        argmin_c=c,
        min_value=fine.min_value,
        cell_ratio=fine.cell_ratio,
        grid_spec=(
            f"{kind.value}: coarse {coarse_points} log pts on "
            f"[{a_lo:.3g}, {a_hi:.3g}], refined {refine_points} pts on "
            f"[{lo:.6g}, {hi:.6g}]"
        ),
    )


def universal_grid_min(
    sigma: float,
    coarse_a: int = 2_000,
    coarse_c: int = 200,
    refine_a: int = 300,
    refine_c: int = 300,
    refine_rounds: int = 2,
    window_cells: int = 12,
) -> GridMinResult:
    """Joint minimization of the Winsorized moment over (a, c).

    A broad log-log scan followed by repeated window refinements.  The
    objective has a curved shallow valley in the (a, c) plane, so the
    refinement window must span many coarse cells to keep the true minimum
    inside.  Flat argmin resolves row-major, i.e. to the smaller a first,
    then the smaller c.
    """
    sigma2 = sigma * sigma

    def scan(a_lo, a_hi, c_lo, c_hi, na, nc):
        a = np.geomspace(a_lo, a_hi, na)[:, None]
        c = np.geomspace(c_lo, c_hi, nc)[None, :]
        values = two_point_moment_grid(MomentKind.WINSOR, c, sigma, a)
        flat = int(np.argmin(values))
        i, j = divmod(flat, nc)
        return a[:, 0], c[0, :], i, j, float(values[i, j])

    a_lo, a_hi = sigma2 * 1e-5, sigma2 * (1.0 - 1e-9)
    c_lo, c_hi = 0.05, 20.0
    a_grid, c_grid, i, j, value = scan(a_lo, a_hi, c_lo, c_hi, coarse_a, coarse_c)
    for _ in range(refine_rounds):
        a2_lo = a_grid[max(i - window_cells, 0)]
        a2_hi = a_grid[min(i + window_cells, a_grid.size - 1)]
        c2_lo = c_grid[max(j - window_cells, 0)]
        c2_hi = c_grid[min(j + window_cells, c_grid.size - 1)]
        a_grid, c_grid, i, j, value = scan(a2_lo, a2_hi, c2_lo, c2_hi, refine_a, refine_c)
    return GridMinResult(
        argmin_a=float(a_grid[i]),
        argmin_c=float(c_grid[j]),
        min_value=value,
        cell_ratio=float(a_grid[1] / a_grid[0]),
        cell_ratio_c=float(c_grid[1] / c_grid[0]),
        grid_spec=(
            f"winsor joint: coarse {coarse_a}x{coarse_c} on "
            f"a[{a_lo:.3g},{a_hi:.3g}] x c[{c_lo},{c_hi}], then "
            f"{refine_rounds} x {refine_a}x{refine_c} window refinements"
        ),
    )


@dataclass(frozen=True)
class ThreePointProbe:
    """Randomized zero-mean three-point laws with second moment <= sigma^2."""

    support: np.ndarray  # (n, 3)
    masses: np.ndarray   # (n, 3)
    tilts: np.ndarray    # (n,)


def sample_three_point(
    sigma: float, n_samples: int, seed: int, tilt_range: tuple[float, float] = (0.05, 10.0)
) -> ThreePointProbe:
    """Deterministic (seeded) sample of admissible three-point laws.

    Support points are centered to zero mean, then scaled so the second
    moment is a uniform fraction of sigma^2; tilts are sampled uniformly for
    probing bounds that optimize over the tilt.
    """
    rng = np.random.default_rng(seed)
    points = rng.normal(0.0, 2.0 * sigma, size=(n_samples, 3))
    masses = rng.dirichlet((1.0, 1.0, 1.0), size=n_samples)
    mean = np.sum(points * masses, axis=1, keepdims=True)
    centered = points - mean
    raw_second = np.sum(centered * centered * masses, axis=1, keepdims=True)
    raw_second = np.maximum(raw_second, 1e-300)
    target = (sigma * rng.uniform(0.05, 1.0, size=(n_samples, 1))) ** 2
    support = centered * np.sqrt(target / raw_second)
    tilts = rng.uniform(*tilt_range, size=n_samples)
    return ThreePointProbe(support=support, masses=masses, tilts=tilts)


def probe_moments(probe: ThreePointProbe, kind: MomentKind, c) -> np.ndarray:
    """E exp(c * capped(X)) for each sampled law; c may be scalar or (n,)."""
    x = probe.support
    c = np.asarray(c, dtype=float)
    if c.ndim == 1:
        c = c[:, None]
    if kind is MomentKind.WINSOR:
        capped = np.minimum(x, 1.0)
    else:
        capped = np.where(x < 1.0, x, 0.0)
    with np.errstate(under="ignore"):
        return np.sum(probe.masses * np.exp(c * capped), axis=1)


@dataclass(frozen=True)
class CollapsePoint:
    a: float
    c: float
    moment: float


def trunc_collapse_sequence(sigma: float, a_values) -> list[CollapsePoint]:
    """Truncated moments along the collapse path b = sigma^2/a, c = 1/a^2.

    The moments fall to 0 once a decreases below min(1, sigma^2), which is
    where the positive support point clears the cut (b >= 1); exact
    underflow of e^{-c a} to 0 is reported as 0.  Points with a > sigma^2
    sit outside the collapse regime and may evaluate to huge values or
    infinity, reported as data.
    """
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise ParameterError(f"sigma must be a positive real, got {sigma!r}")
    a_values = list(a_values)
    if not a_values or any(a <= 0.0 or not math.isfinite(a) for a in a_values):
        raise ParameterError("a_values must be a non-empty list of positive reals")
    if any(later >= earlier for earlier, later in zip(a_values, a_values[1:])):
        raise ParameterError("a_values must be strictly decreasing")

    sigma2 = sigma * sigma
    out = []
    for a in a_values:
        b = sigma2 / a
        c = 1.0 / (a * a)
        upper = b if b < 1.0 else 0.0
        pos_arg = c * upper
        pos = math.exp(pos_arg) if pos_arg < 700.0 else math.inf
        moment = (a * pos + b * math.exp(-c * a)) / (a + b)
        out.append(CollapsePoint(a=a, c=c, moment=moment))
    return out
