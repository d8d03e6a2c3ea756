"""Buchstab's ω, the density d, the constants C, κ, τ and closed-form predictors."""

from divgaps.asymptotics.buchstab import (
    gamma_bound_violations,
    omega_closed_form,
    omega_grid_error,
    solve_buchstab,
)
from divgaps.asymptotics.constants import ConstantsBundle, KappaEquation, constants, solve_kappa
from divgaps.asymptotics.context import AsymptoticContext, get_context
from divgaps.asymptotics.dfunc import asymptote_deviation, solve_d
from divgaps.asymptotics.grid import GridFunction, dump_grid
from divgaps.asymptotics.predictors import PredictorRegistry, get_default_registry, predict

__all__ = [
    "AsymptoticContext",
    "ConstantsBundle",
    "GridFunction",
    "KappaEquation",
    "PredictorRegistry",
    "asymptote_deviation",
    "constants",
    "dump_grid",
    "gamma_bound_violations",
    "get_context",
    "get_default_registry",
    "omega_closed_form",
    "omega_grid_error",
    "predict",
    "solve_buchstab",
    "solve_d",
    "solve_kappa",
]
