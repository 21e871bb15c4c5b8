"""Parameter sweeps over sigma, serialized as CSV.

These reproduce the package's reference figures: the universal Winsorized
bound as a function of sigma, and the two ratio panels
(universal/fixed-tilt and truncated/Winsorized) across a tilt list.
Files are written atomically (temp file + rename) with every value at full
double precision, so emitted CSVs diff cleanly and round-trip bitwise.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
from dataclasses import dataclass
from enum import Enum

from .distributions import BoundQuery
from .errors import ParameterError
from .trunc import lower_bound_trunc
from .winsor import lower_bound_fixed_c, lower_bound_universal


class SweepKind(str, Enum):
    UNIVERSAL_WINSOR = "universal-winsor"
    FIXED_C_WINSOR = "fixed-winsor"
    TRUNC = "trunc"
    RATIO_UNIVERSAL_OVER_FIXED = "ratio-universal-over-fixed"
    RATIO_TRUNC_OVER_WINSOR = "ratio-trunc-over-winsor"


_NEEDS_C = {
    SweepKind.FIXED_C_WINSOR,
    SweepKind.TRUNC,
    SweepKind.RATIO_UNIVERSAL_OVER_FIXED,
    SweepKind.RATIO_TRUNC_OVER_WINSOR,
}


@dataclass(frozen=True)
class SweepTable:
    """Grid of bound (or ratio) values: one row per sigma, one value column
    per tilt (a single column for the universal kind)."""

    kind: SweepKind
    c_values: tuple[float, ...]
    sigma_values: tuple[float, ...]
    rows: tuple[tuple[float, ...], ...]  # (sigma, value per column)

    @property
    def column_labels(self) -> tuple[str, ...]:
        if self.kind is SweepKind.UNIVERSAL_WINSOR:
            return ("bound",)
        return tuple(f"c={c!r}" for c in self.c_values)


def sigma_grid(sigma_min: float, sigma_max: float, points: int, scale: str = "log") -> tuple[float, ...]:
    """Sweep grid over sigma; log spacing by default since the bounds are
    governed by ln(sigma)."""
    if not (math.isfinite(sigma_min) and math.isfinite(sigma_max) and 0.0 < sigma_min < sigma_max):
        raise ParameterError(
            f"need 0 < sigma_min < sigma_max, got [{sigma_min!r}, {sigma_max!r}]"
        )
    if points < 2:
        raise ParameterError(f"points must be >= 2, got {points!r}")
    if scale == "log":
        lo, hi = math.log(sigma_min), math.log(sigma_max)
        return tuple(math.exp(lo + (hi - lo) * i / (points - 1)) for i in range(points))
    if scale == "linear":
        return tuple(
            sigma_min + (sigma_max - sigma_min) * i / (points - 1) for i in range(points)
        )
    raise ParameterError(f"scale must be 'log' or 'linear', got {scale!r}")


def compute_sweep(
    kind: SweepKind,
    sigma_values,
    c_values=(),
    cut: float = 1.0,
) -> SweepTable:
    """Evaluate the requested bound or ratio over the sigma grid."""
    kind = SweepKind(kind)
    c_values = tuple(float(c) for c in c_values)
    sigma_values = tuple(float(s) for s in sigma_values)
    if any(right <= left for left, right in zip(sigma_values, sigma_values[1:])):
        raise ParameterError("sigma_values must be strictly increasing")
    if kind in _NEEDS_C and not c_values:
        raise ParameterError(f"sweep kind {kind.value!r} requires a tilt list")
    if kind is SweepKind.UNIVERSAL_WINSOR and c_values:
        raise ParameterError("universal-winsor sweeps take no tilt list")

    rows = []
    for sigma in sigma_values:
        if kind is SweepKind.UNIVERSAL_WINSOR:
            values = (lower_bound_universal(sigma, cut).bound,)
        elif kind is SweepKind.FIXED_C_WINSOR:
            values = tuple(
                lower_bound_fixed_c(BoundQuery(c, sigma, cut)).bound for c in c_values
            )
        elif kind is SweepKind.TRUNC:
            values = tuple(
                lower_bound_trunc(BoundQuery(c, sigma, cut)).bound for c in c_values
            )
        elif kind is SweepKind.RATIO_UNIVERSAL_OVER_FIXED:
            universal = lower_bound_universal(sigma, cut).bound
            values = tuple(
                universal / lower_bound_fixed_c(BoundQuery(c, sigma, cut)).bound
                for c in c_values
            )
        else:  # RATIO_TRUNC_OVER_WINSOR
            values = tuple(
                lower_bound_trunc(BoundQuery(c, sigma, cut)).bound
                / lower_bound_fixed_c(BoundQuery(c, sigma, cut)).bound
                for c in c_values
            )
        rows.append((sigma, *values))
    return SweepTable(
        kind=kind, c_values=c_values, sigma_values=sigma_values, rows=tuple(rows)
    )


def write_csv(table: SweepTable, path: str) -> None:
    """Write the sweep atomically: UTF-8, header row, LF line endings,
    shortest round-tripping decimal for every value."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".csv.tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(("sigma", *table.column_labels))
            for row in table.rows:
                writer.writerow(tuple(repr(value) for value in row))
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def read_csv(path: str) -> tuple[tuple[str, ...], tuple[tuple[float, ...], ...]]:
    """Parse an emitted sweep back into (column names, numeric rows)."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = tuple(next(reader))
        rows = tuple(tuple(float(cell) for cell in row) for row in reader if row)
    return header, rows
