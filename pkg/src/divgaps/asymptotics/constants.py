"""The constants γ, C = 1/(1 - e^{-γ}), κ and τ = 1/(4 + 2κ)."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.optimize import brentq
from scipy.special import rgamma

from divgaps.asymptotics.grid import GridFunction, integrate_grid
from divgaps.errors import RootNotBracketedError
from divgaps.utils.logging import get_logger, log_operation

logger = get_logger(__name__)

KAPPA_BRACKET = (0.1, 0.9)


@dataclass(frozen=True)
class ConstantsBundle:
    """
    High-precision constants with the radius of the κ computation.

    Attributes:
        euler_gamma: γ
        exp_neg_gamma: e^{-γ}
        C: 1/(1 - e^{-γ})
        kappa: Root of ∫_1^∞ ω(y)(y+1)^{-1-κ} dy = 1
        tau: 1/(4 + 2κ)
        kappa_radius: Estimated absolute error of kappa
        precision: Mantissa bits of the mpmath values
    """

    euler_gamma: mpmath.mpf
    exp_neg_gamma: mpmath.mpf
    C: mpmath.mpf
    kappa: mpmath.mpf
    tau: mpmath.mpf
    kappa_radius: float
    precision: int

    def as_dict(self, digits: int = 20) -> dict[str, object]:
        return {
            "euler_gamma": mpmath.nstr(self.euler_gamma, digits),
            "exp_neg_gamma": mpmath.nstr(self.exp_neg_gamma, digits),
            "C": mpmath.nstr(self.C, digits),
            "kappa": mpmath.nstr(self.kappa, digits),
            "tau": mpmath.nstr(self.tau, digits),
            "kappa_radius": self.kappa_radius,
            "precision": self.precision,
        }


class KappaEquation:
    """
    K(κ) = ∫_1^Y ω(y)(y+1)^{-1-κ} dy + e^{-γ}(Y+1)^{-κ}/κ - 1, Y = tail_start.

    The head integral uses the 4-point composite rule on the ω grid; the tail
    replaces ω by e^{-γ}, whose error is bounded through 1/Γ(y+1).
    """

    def __init__(self, omega: GridFunction) -> None:
        self.omega = omega
        self.tail_start = float(omega.tail_start)
        u = omega.points()
        mask = u <= self.tail_start + 1e-12
        self._u = u[mask]
        self._values = np.asarray(omega.values)[mask]
        self._errors = np.asarray(omega.error_bounds)[mask]

    def head(self, kappa: float, stride: int = 1) -> float:
        weights = (self._u[::stride] + 1.0) ** (-1.0 - kappa)
        return integrate_grid(self._values[::stride] * weights, self.omega.step * stride)

    def tail(self, kappa: float) -> float:
        return self.omega.tail_value * (self.tail_start + 1.0) ** (-kappa) / kappa

    def __call__(self, kappa: float) -> float:
        return self.head(kappa) + self.tail(kappa) - 1.0

    def derivative(self, kappa: float, delta: float = 1e-6) -> float:
        return (self(kappa + delta) - self(kappa - delta)) / (2.0 * delta)

    def error_bound(self, kappa: float) -> float:
        """Bound on |K_computed(κ) - K(κ)| from quadrature, grid and tail errors."""
        quadrature = abs(self.head(kappa) - self.head(kappa, stride=2)) / 15.0
        weights = (self._u + 1.0) ** (-1.0 - kappa)
        grid = integrate_grid(self._errors * weights, self.omega.step)
        # ∫_Y^∞ 1/Γ(y+1) dy <= Σ_j 1/Γ(Y+1+j) <= 2/Γ(Y+1)
        tail = 2.0 * float(rgamma(self.tail_start + 1.0))
        return quadrature + grid + tail


def solve_kappa(omega: GridFunction) -> tuple[float, float]:
    """
    Root of K on [0.1, 0.9] and its radius.

    Raises:
        RootNotBracketedError: If K does not change sign on the bracket
    """
    equation = KappaEquation(omega)
    lower, upper = KAPPA_BRACKET
    f_lower, f_upper = equation(lower), equation(upper)
    if not (f_lower > 0.0 > f_upper):
        raise RootNotBracketedError(lower, upper, f_lower, f_upper)
    kappa = float(brentq(equation, lower, upper, xtol=1e-15, rtol=4 * np.finfo(float).eps))
    slope = abs(equation.derivative(kappa))
    radius = equation.error_bound(kappa) / slope + 1e-15
    return kappa, radius


def constants(omega: GridFunction, precision: int = 256) -> ConstantsBundle:
    """
    Compute the constants bundle.

    γ and C come from mpmath at the requested precision; κ from the ω grid.

    Example:
        >>> bundle = constants(solve_buchstab(12.0, 2**-10, 12.0))
        >>> round(float(bundle.C), 6)
        2.280291
    """
    kappa, radius = solve_kappa(omega)
    with mpmath.workprec(precision):
        gamma = +mpmath.euler
        exp_neg = mpmath.exp(-gamma)
        big_c = 1 / (1 - exp_neg)
        kappa_mp = mpmath.mpf(kappa)
        tau = 1 / (4 + 2 * kappa_mp)
    log_operation(
        logger,
        "constants_computed",
        C=mpmath.nstr(big_c, 10),
        kappa=f"{kappa:.10f}",
        kappa_radius=f"{radius:.2e}",
        tau=mpmath.nstr(tau, 10),
    )
    return ConstantsBundle(
        euler_gamma=gamma,
        exp_neg_gamma=exp_neg,
        C=big_c,
        kappa=kappa_mp,
        tau=tau,
        kappa_radius=radius,
        precision=precision,
    )
