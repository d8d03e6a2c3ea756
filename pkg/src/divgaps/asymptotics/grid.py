"""Uniformly sampled functions with kinks at integers.

# AICODE-NOTE: Both ω and d are smooth on each unit interval [k, k+1] and may
# lose smoothness at integers. Interpolation stencils therefore never straddle
# an integer, and the grid always ends on an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Literal, overload

import numpy as np
import numpy.typing as npt
from scipy.special import rgamma

from divgaps.errors import InvalidParameterError
from divgaps.utils.serialization import write_csv

FloatArray = npt.NDArray[np.float64]
TailKind = Literal["constant", "hyperbolic"]


def steps_per_unit(step: float) -> int:
    """N with step = 1/N; rejects steps that do not divide 1."""
    inverse = 1.0 / step
    n = round(inverse)
    if n < 4 or abs(inverse - n) > 1e-9:
        raise InvalidParameterError("h", step, "h = 1/N for an integer N >= 4")
    return n


def lagrange_weights(t: FloatArray) -> FloatArray:
    """Cubic Lagrange weights for nodes 0, 1, 2, 3 at offsets t (shape (..., 4))."""
    t = np.asarray(t, dtype=np.float64)
    return np.stack(
        [
            -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0,
            t * (t - 2.0) * (t - 3.0) / 2.0,
            -t * (t - 1.0) * (t - 3.0) / 2.0,
            t * (t - 1.0) * (t - 2.0) / 6.0,
        ],
        axis=-1,
    )


def interpolate_unit(
    values: FloatArray, origin: float, step: float, u: FloatArray
) -> tuple[FloatArray, npt.NDArray[np.intp]]:
    """
    Cubic interpolation of grid values at points inside the grid.

    Returns the interpolated values and the first stencil index of every point.
    Only grid entries of the unit interval containing each point are read.
    """
    per_unit = steps_per_unit(step)
    last = len(values) - 1
    x = (np.asarray(u, dtype=np.float64) - origin) / step
    cell = np.clip(np.floor(x).astype(np.intp), 0, last - 1)
    unit = cell // per_unit
    low = unit * per_unit
    high = np.minimum(low + per_unit, last)
    start = np.clip(cell - 1, low, high - 3)
    weights = lagrange_weights(x - start)
    stencil = start[..., None] + np.arange(4)
    return np.sum(weights * values[stencil], axis=-1), start


def unit_quadrature_weights(per_unit: int) -> FloatArray:
    """
    Weights w[i, :] for ∫_{x_i}^{x_{i+1}} over one unit interval of per_unit cells.

    Row i holds the 4-point rule on the stencil kept inside the interval:
    (9, 19, -5, 1)/24 at the left edge, (-1, 13, 13, -1)/24 inside and
    (1, -5, 19, 9)/24 at the right edge (times h).
    """
    rows = np.zeros((per_unit, per_unit + 1))
    rows[0, 0:4] = [9.0, 19.0, -5.0, 1.0]
    for i in range(1, per_unit - 1):
        rows[i, i - 1 : i + 3] = [-1.0, 13.0, 13.0, -1.0]
    rows[per_unit - 1, per_unit - 3 : per_unit + 1] = [1.0, -5.0, 19.0, 9.0]
    return rows / 24.0


def cumulative_unit_integral(samples: FloatArray, step: float, weights: FloatArray) -> FloatArray:
    """∫ from the left end of a unit interval to each of its grid points."""
    pieces = step * (weights @ samples)
    return np.concatenate(([0.0], np.cumsum(pieces)))


def integrate_grid(samples: FloatArray, step: float) -> float:
    """Integral over a grid spanning whole unit intervals, 4-point rule per interval."""
    per_unit = steps_per_unit(step)
    if (len(samples) - 1) % per_unit:
        raise InvalidParameterError("samples", len(samples), "whole unit intervals")
    weights = unit_quadrature_weights(per_unit)
    column = weights.sum(axis=0)
    total = 0.0
    for start in range(0, len(samples) - 1, per_unit):
        total += step * float(column @ samples[start : start + per_unit + 1])
    return total


@dataclass(frozen=True)
class GridFunction:
    """
    A function sampled on origin + i·step with a closed-form tail.

    Attributes:
        name: "omega" or "d"
        origin: First grid point (an integer)
        step: Grid step h = 1/N
        values: Read-only samples
        error_bounds: Per-point absolute error estimates
        order: Interpolation and quadrature order
        tail_start: Beyond this point the tail model is used
        tail_kind: "constant" (tail_value) or "hyperbolic" (tail_value / (u + 1))
        tail_value: Constant of the tail model
        tail_error_bound: Bound on |f - tail| at tail_start
        below_value: Value left of origin
    """

    name: str
    origin: float
    step: float
    values: FloatArray = field(repr=False)
    error_bounds: FloatArray = field(repr=False)
    tail_start: float
    tail_kind: TailKind
    tail_value: float
    tail_error_bound: float
    order: int = 4
    below_value: float = 0.0

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.values)):
            raise InvalidParameterError("values", self.name, "finite samples")
        if len(self.values) != len(self.error_bounds):
            raise InvalidParameterError("error_bounds", len(self.error_bounds), "one per sample")
        self.values.setflags(write=False)
        self.error_bounds.setflags(write=False)

    @property
    def end(self) -> float:
        return self.origin + (len(self.values) - 1) * self.step

    def points(self) -> FloatArray:
        return self.origin + self.step * np.arange(len(self.values), dtype=np.float64)

    def tail(self, u: FloatArray) -> FloatArray:
        u = np.asarray(u, dtype=np.float64)
        if self.tail_kind == "constant":
            return np.full_like(u, self.tail_value)
        return self.tail_value / (u + 1.0)

    def tail_bound(self, u: FloatArray) -> FloatArray:
        """
        Error bound of the tail model at u.

        The constant tail of ω carries 1/Γ(u+1); the hyperbolic tail of d a
        relative bound frozen at its value where the grid ends.
        """
        u = np.asarray(u, dtype=np.float64)
        if self.tail_kind == "constant":
            return rgamma(u + 1.0)
        return self.tail_error_bound * self.tail(u)

    @overload
    def __call__(self, u: float) -> float: ...

    @overload
    def __call__(self, u: FloatArray) -> FloatArray: ...

    def __call__(self, u: float | FloatArray) -> float | FloatArray:
        """Evaluate at scalar or array arguments."""
        scalar = np.ndim(u) == 0
        arr = np.atleast_1d(np.asarray(u, dtype=np.float64))
        out = np.empty_like(arr)

        below = arr < self.origin
        in_tail = arr >= self.tail_start
        inside = ~(below | in_tail)

        out[below] = self.below_value
        out[in_tail] = self.tail(arr[in_tail])
        if np.any(inside):
            out[inside], _ = interpolate_unit(self.values, self.origin, self.step, arr[inside])
        return float(out[0]) if scalar else out

    def error_at(self, u: float) -> float:
        """Error estimate at u: stencil maximum inside the grid, tail bound beyond."""
        if u < self.origin:
            return 0.0
        if u >= self.tail_start:
            return float(self.tail_bound(np.asarray(u)))
        _, start = interpolate_unit(self.values, self.origin, self.step, np.asarray([u]))
        first = int(start[0])
        return float(np.max(self.error_bounds[first : first + 4]))

    def sample(self, func: Callable[[FloatArray], FloatArray], start: float, stop: float) -> float:
        """Max |self - func| over grid points in [start, stop]."""
        u = self.points()
        mask = (u >= start - 1e-12) & (u <= stop + 1e-12)
        if not np.any(mask):
            return 0.0
        return float(np.max(np.abs(self.values[mask] - func(u[mask]))))


def richardson_bounds(fine: FloatArray, coarse: FloatArray) -> FloatArray:
    """
    Per-point error bounds of an order-4 solution from its step-doubled twin.

    |v_h - v_2h| / 15 at shared points, spread to the odd points and made
    nondecreasing along the grid, floored at a few ulps of the value.
    """
    raw = np.zeros_like(fine)
    raw[0::2] = np.abs(fine[0::2] - coarse) / 15.0
    raw[1::2] = np.maximum(raw[0:-1:2], raw[2::2]) if len(fine) > 2 else raw[1::2]
    floor = 8.0 * np.finfo(np.float64).eps * np.maximum(np.abs(fine), 1.0)
    return np.maximum(np.maximum.accumulate(raw), floor)


def dump_grid(
    grid: GridFunction,
    path: Path,
    comparison: Callable[[FloatArray], FloatArray] | None = None,
    comparison_name: str = "comparison",
) -> None:
    """
    Write the grid as CSV with header u,value,error_bound (plus one comparison column).

    For d the comparison column is C/(u+1).
    """
    u = grid.points()
    header = ["u", "value", "error_bound"]
    extra = None
    if comparison is not None:
        header.append(comparison_name)
        extra = comparison(u)
    rows = []
    for i, point in enumerate(u):
        row: list[float] = [float(point), float(grid.values[i]), float(grid.error_bounds[i])]
        if extra is not None:
            row.append(float(extra[i]))
        rows.append(row)
    write_csv(path, header, rows)


def ceil_to_unit(value: float) -> int:
    return int(math.ceil(value - 1e-12))
