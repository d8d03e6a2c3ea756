"""The density d(u) of gap-free divisor-degree sets.

d(u) = 0 for u < 0, d(u) = 1 on [0, 1] and for u >= 1

    d(u) = 1 - ∫_0^{(u-1)/2} d(v)/(v+1) · ω((u-v)/(v+1)) dv.

The integrand at u only reads d on [0, (u-1)/2], so d is marched forward.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.special import roots_legendre

from divgaps.asymptotics.grid import (
    FloatArray,
    GridFunction,
    ceil_to_unit,
    interpolate_unit,
    richardson_bounds,
    steps_per_unit,
)
from divgaps.errors import InvalidParameterError, QuadratureError
from divgaps.utils.logging import get_logger, log_operation

logger = get_logger(__name__)

MAX_PIECE = 0.25
QUADRATURE_TOLERANCE = 1e-9
MAX_REFINEMENTS = 4

_NODES_HIGH, _WEIGHTS_HIGH = roots_legendre(8)
_NODES_LOW, _WEIGHTS_LOW = roots_legendre(4)
_NODES = np.concatenate([_NODES_HIGH, _NODES_LOW])


def _breakpoints(u: float, omega_tail: float) -> FloatArray:
    """
    Points of [0, (u-1)/2] where the integrand loses smoothness.

    d has kinks at integer v; ω at integer arguments y = (u-v)/(v+1), i.e. at
    v = (u-y)/(y+1); the ω tail switch at y = omega_tail is one more.
    """
    upper = (u - 1.0) / 2.0
    points = [0.0, upper]
    points.extend(float(v) for v in range(1, int(math.floor(upper)) + 1))
    for y in range(2, int(math.floor(u)) + 1):
        points.append((u - y) / (y + 1.0))
    if omega_tail <= u:
        points.append((u - omega_tail) / (omega_tail + 1.0))
    cuts = np.unique(np.clip(np.asarray(points), 0.0, upper))
    return cuts


def _pieces(cuts: FloatArray, max_piece: float) -> tuple[FloatArray, FloatArray]:
    """Split every [cut_i, cut_{i+1}] into equal pieces no longer than max_piece."""
    a = cuts[:-1]
    b = cuts[1:]
    keep = b - a > 1e-15
    a, b = a[keep], b[keep]
    counts = np.maximum(1, np.ceil((b - a) / max_piece).astype(np.intp))
    owner = np.repeat(np.arange(len(a)), counts)
    offset = np.arange(owner.size) - np.repeat(np.cumsum(counts) - counts, counts)
    width = ((b - a) / counts)[owner]
    lows = a[owner] + offset * width
    return lows, lows + width


def _gauss_pair(
    integrand: Callable[[FloatArray], FloatArray], lows: FloatArray, highs: FloatArray
) -> tuple[float, float]:
    """8-node and 4-node Gauss-Legendre sums over the same pieces, one integrand call."""
    half = 0.5 * (highs - lows)
    mid = 0.5 * (highs + lows)
    v = mid[:, None] + half[:, None] * _NODES[None, :]
    values = integrand(v.ravel()).reshape(v.shape)
    high = float(np.sum(half * (values[:, :8] @ _WEIGHTS_HIGH)))
    low = float(np.sum(half * (values[:, 8:] @ _WEIGHTS_LOW)))
    return high, low


def _march(units: int, step: float, omega: GridFunction) -> FloatArray:
    per_unit = steps_per_unit(step)
    total = units * per_unit + 1
    d = np.zeros(total)
    d[: per_unit + 1] = 1.0

    def density(v: FloatArray) -> FloatArray:
        values, _ = interpolate_unit(d, 0.0, step, v)
        return values

    for i in range(per_unit + 1, total):
        u = i * step

        def integrand(v: FloatArray, u: float = u) -> FloatArray:
            return density(v) / (v + 1.0) * omega((u - v) / (v + 1.0))

        cuts = _breakpoints(u, omega.tail_start)
        max_piece = MAX_PIECE
        for _ in range(MAX_REFINEMENTS + 1):
            lows, highs = _pieces(cuts, max_piece)
            high, low = _gauss_pair(integrand, lows, highs)
            estimate = abs(high - low)
            if estimate <= QUADRATURE_TOLERANCE:
                break
            max_piece /= 2.0
        else:
            raise QuadratureError(u, estimate, QUADRATURE_TOLERANCE)
        d[i] = 1.0 - high
    return d


def solve_d(
    u_max: float,
    h: float,
    omega: GridFunction,
    tail_constant: float,
) -> GridFunction:
    """
    Solve for d on [0, ceil(u_max)] by forward marching.

    Each grid value is one Gauss-Legendre integral (8 nodes per piece, pieces of
    length <= 0.25 split at every kink); the 4-node rule on the same pieces is the
    error estimate, and pieces are halved until it drops below 1e-9.

    Args:
        u_max: Right end of the grid (rounded up to an integer)
        h: Grid step (1/N)
        omega: Buchstab grid; arguments beyond its tail_start use e^{-γ}
        tail_constant: C, for the C/(u+1) tail beyond the grid

    Raises:
        QuadratureError: If refinement does not reach the tolerance
    """
    if u_max < 2.0:
        raise InvalidParameterError("u_max", u_max, "u_max >= 2")
    per_unit = steps_per_unit(h)
    end = ceil_to_unit(u_max)

    fine = _march(end, h, omega)
    if per_unit % 2 == 0 and per_unit >= 8:
        coarse = _march(end, 2.0 * h, omega)
        bounds = richardson_bounds(fine, coarse)
    else:
        bounds = np.full_like(fine, h**4)
    bounds = np.maximum(bounds, QUADRATURE_TOLERANCE)
    bounds[: per_unit + 1] = 0.0

    relative_tail = abs(fine[-1] * (end + 1.0) / tail_constant - 1.0)
    grid = GridFunction(
        name="d",
        origin=0.0,
        step=h,
        values=fine,
        error_bounds=bounds,
        tail_start=float(end),
        tail_kind="hyperbolic",
        tail_value=tail_constant,
        tail_error_bound=relative_tail,
        below_value=0.0,
    )
    log_operation(logger, "grid_solved", solver="dfunc", h=h, u_max=end, d_end=f"{fine[-1]:.10f}")
    return grid


def asymptote_deviation(grid: GridFunction, u: float) -> float:
    """|d(u)·(u+1)/C - 1|."""
    return abs(grid(u) * (u + 1.0) / grid.tail_value - 1.0)
