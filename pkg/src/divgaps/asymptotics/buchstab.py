"""Buchstab's function ω(u) on a uniform grid.

ω(u) = 0 for u < 1, ω(u) = 1/u on [1, 2], and (uω(u))' = ω(u - 1) beyond.
Integrated once: u·ω(u) = 1 + ∫_1^{u-1} ω(t) dt for u >= 2.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

from divgaps.asymptotics.grid import (
    FloatArray,
    GridFunction,
    ceil_to_unit,
    cumulative_unit_integral,
    richardson_bounds,
    steps_per_unit,
    unit_quadrature_weights,
)
from divgaps.errors import InvalidParameterError, SolverError
from divgaps.utils.logging import get_logger, log_operation

logger = get_logger(__name__)

EXP_NEG_GAMMA = float(mpmath.exp(-mpmath.euler))
CLOSED_FORM_FACTOR = 10.0


def _march(units: int, step: float) -> FloatArray:
    """ω at 1 + i·step for i = 0..units·N, one unit interval at a time."""
    per_unit = steps_per_unit(step)
    weights = unit_quadrature_weights(per_unit)
    total = units * per_unit + 1
    u = 1.0 + step * np.arange(total, dtype=np.float64)
    omega = np.zeros(total)
    integral = np.zeros(total)  # ∫_1^{u_i} ω

    omega[: per_unit + 1] = 1.0 / u[: per_unit + 1]
    integral[: per_unit + 1] = cumulative_unit_integral(omega[: per_unit + 1], step, weights)

    for k in range(1, units):
        low = k * per_unit
        high = low + per_unit
        # u·ω(u) = 1 + W(u - 1): the shifted W lives one unit interval to the left.
        omega[low + 1 : high + 1] = (1.0 + integral[low + 1 - per_unit : high + 1 - per_unit]) / u[
            low + 1 : high + 1
        ]
        segment = cumulative_unit_integral(omega[low : high + 1], step, weights)
        integral[low : high + 1] = integral[low] + segment
    return omega


def solve_buchstab(
    u_max: float = 12.0,
    h: float = 2.0**-10,
    tail_start: float | None = None,
) -> GridFunction:
    """
    Solve for ω on [1, ceil(u_max)] with step h.

    Args:
        u_max: Right end (rounded up to an integer), at least 2
        h: Step, 1/N with N >= 4 and h <= 2^-8
        tail_start: Where the constant e^{-γ} tail takes over (default u_max)

    Returns:
        GridFunction with origin 1, constant tail e^{-γ} and tail bound 1/Γ(u+1)

    Raises:
        InvalidParameterError: If u_max < 2 or h is not an admissible step
        SolverError: If the [2, 3] closed form is missed by more than 10·h^4
    """
    if u_max < 2.0:
        raise InvalidParameterError("u_max", u_max, "u_max >= 2")
    if h > 2.0**-8:
        raise InvalidParameterError("h", h, "h <= 2^-8")
    per_unit = steps_per_unit(h)
    end = ceil_to_unit(max(u_max, 3.0))
    units = end - 1
    tail_at = float(tail_start) if tail_start is not None else float(end)
    if tail_at > end:
        raise InvalidParameterError("tail_start", tail_at, f"tail_start <= {end}")

    fine = _march(units, h)
    coarse = _march(units, 2.0 * h) if per_unit % 2 == 0 and per_unit >= 8 else None
    if coarse is not None:
        bounds = richardson_bounds(fine, coarse)
    else:
        bounds = np.full_like(fine, h**4)
    bounds[: per_unit + 1] = 8.0 * np.finfo(np.float64).eps

    grid = GridFunction(
        name="omega",
        origin=1.0,
        step=h,
        values=fine,
        error_bounds=bounds,
        tail_start=tail_at,
        tail_kind="constant",
        tail_value=EXP_NEG_GAMMA,
        tail_error_bound=float(1.0 / math.gamma(tail_at + 1.0)),
        below_value=0.0,
    )

    errors = omega_grid_error(grid)
    limit = CLOSED_FORM_FACTOR * h**4
    if errors["interval_2_3"] > limit:
        raise SolverError(
            "buchstab",
            f"closed form on [2, 3] missed by more than 10·h^4 = {limit:.3e}",
            errors["interval_2_3"],
        )
    log_operation(
        logger,
        "grid_solved",
        solver="buchstab",
        h=h,
        u_max=end,
        error_2_3=f"{errors['interval_2_3']:.3e}",
    )
    return grid


def omega_closed_form(u: FloatArray) -> FloatArray:
    """1/u on [1, 2] and (1 + log(u - 1))/u on [2, 3]."""
    u = np.asarray(u, dtype=np.float64)
    return np.where(u <= 2.0, 1.0 / u, (1.0 + np.log(np.maximum(u - 1.0, 1.0))) / u)


def omega_grid_error(grid: GridFunction) -> dict[str, float]:
    """Max pointwise deviation from the closed forms on [1, 2] and [2, 3]."""
    return {
        "interval_1_2": grid.sample(omega_closed_form, 1.0, 2.0),
        "interval_2_3": grid.sample(omega_closed_form, 2.0, 3.0),
    }


def gamma_bound_violations(grid: GridFunction, u_from: float = 10.0) -> list[float]:
    """Grid points u >= u_from where |ω(u) - e^{-γ}| >= 1/Γ(u+1)."""
    u = grid.points()
    mask = u >= u_from
    deviation = np.abs(grid.values[mask] - grid.tail_value)
    bound = grid.tail_bound(u[mask])
    return [float(x) for x in u[mask][deviation >= bound]]
