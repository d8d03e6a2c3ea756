"""Closed-form asymptotic predictors of r, p, f, g and d."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from divgaps.asymptotics.context import AsymptoticContext, get_context
from divgaps.errors import InvalidParameterError, UnknownKindError
from divgaps.exact.models import require_field_size
from divgaps.exact.products import exp_neg_harmonic, lambda_q

PredictorFunc = Callable[[AsymptoticContext, "int | None", int, int], float]


@dataclass(frozen=True)
class Predictor:
    """
    A named closed form.

    Attributes:
        kind: Registry key
        func: (context, q, n, m) -> predicted value
        needs_q: Whether q must be a field size
        strict_n: Whether n > m is required
        description: The predicted relation
    """

    kind: str
    func: PredictorFunc
    needs_q: bool
    strict_n: bool
    description: str


class PredictorRegistry:
    """Registry of predictor kinds.

    # AICODE-NOTE: Kinds are registered on first access to the default registry,
    # so importing this module does not solve any grid.
    """

    def __init__(self) -> None:
        self._predictors: dict[str, Predictor] = {}
        self._aliases: dict[str, str] = {}

    def register(self, predictor: Predictor) -> None:
        self._predictors[predictor.kind] = predictor
        self._aliases.pop(predictor.kind, None)

    def register_alias(self, alias: str, target: str) -> None:
        """
        Expose a registered closed form under a second kind.

        The alias resolves to the target at lookup time, so re-registering the
        target also changes what the alias predicts.

        Raises:
            UnknownKindError: If target is not registered
        """
        self.get(target)
        self._aliases[alias] = target

    def canonical(self, kind: str) -> str:
        """Kind that actually holds the closed form for `kind`."""
        return self._aliases.get(kind, kind)

    def kinds(self) -> list[str]:
        return sorted([*self._predictors, *self._aliases])

    def get(self, kind: str) -> Predictor:
        """
        Get predictor for a kind.

        Raises:
            UnknownKindError: If kind is not registered
        """
        target = self.canonical(kind)
        if target not in self._predictors:
            raise UnknownKindError(kind, self.kinds())
        return self._predictors[target]


def _u(n: int, m: int) -> float:
    return n / m


def _lambda(q: int | None, m: int, ctx: AsymptoticContext) -> float:
    return float(lambda_q(require_field_size(q, "lambda"), m, ctx.config.precision_bits).value)


def _r_thm2(ctx: AsymptoticContext, q: int | None, n: int, m: int) -> float:
    gamma = float(ctx.constants.euler_gamma)
    return _lambda(q, m, ctx) * math.exp(gamma) * ctx.omega_value(_u(n, m))


def _p_fullp(ctx: AsymptoticContext, q: int | None, n: int, m: int) -> float:
    gamma = float(ctx.constants.euler_gamma)
    decay = float(exp_neg_harmonic(m, ctx.config.precision_bits).value)
    return math.exp(gamma) * decay * ctx.omega_value(_u(n, m))


def _omega_over_m(ctx: AsymptoticContext, q: int | None, n: int, m: int) -> float:
    return ctx.omega_value(_u(n, m)) / m


def _d_of_u(ctx: AsymptoticContext, q: int | None, n: int, m: int) -> float:
    return ctx.d_value(_u(n, m))


def _hyperbolic(ctx: AsymptoticContext, q: int | None, n: int, m: int) -> float:
    return ctx.big_c * m / (n + m)


def _r_corb(ctx: AsymptoticContext, q: int | None, n: int, m: int) -> float:
    return _lambda(q, m, ctx)


def _p_psm(ctx: AsymptoticContext, q: int | None, n: int, m: int) -> float:
    return float(exp_neg_harmonic(m, ctx.config.precision_bits).value)


_DEFAULTS = (
    Predictor("r_thm2", _r_thm2, True, True, "r(n,m) ~ λ_q(m) e^γ ω(n/m)"),
    Predictor("r_cora", _omega_over_m, True, True, "r(n,m) ~ ω(n/m)/m"),
    Predictor("r_corb", _r_corb, True, True, "r(n,m) ~ λ_q(m)"),
    Predictor("p_fullp", _p_fullp, False, True, "p(n,m) ~ e^{γ-H_m} ω(n/m)"),
    Predictor("p_pub", _omega_over_m, False, True, "p(n,m) ~ ω(n/m)/m"),
    Predictor("p_psm", _p_psm, False, True, "p(n,m) ~ e^{-H_m}"),
    Predictor("f_thm3", _d_of_u, True, False, "f(n,m) ~ d(n/m) with η_q(m) = 1"),
    Predictor("f_cor2", _hyperbolic, True, False, "f(n,m) ~ C m/(n+m)"),
    Predictor("g_thm5", _d_of_u, False, False, "g(n,m) ~ d(n/m)"),
    Predictor("g_cor1P", _hyperbolic, False, False, "g(n,m) ~ C m/(n+m)"),
    Predictor("d_asym", _hyperbolic, False, False, "d(u) ~ C/(u+1), u = n/m"),
)

# Same closed form, different error terms: f_thm3 carries the 1/(n+m) term
# alone, f_cor3 adds the η_q(m) deviation to it.
_ALIASES = {"f_cor3": "f_thm3"}

_default_registry: PredictorRegistry | None = None


def get_default_registry() -> PredictorRegistry:
    global _default_registry
    if _default_registry is None:
        _default_registry = PredictorRegistry()
        for predictor in _DEFAULTS:
            _default_registry.register(predictor)
        for alias, target in _ALIASES.items():
            _default_registry.register_alias(alias, target)
    return _default_registry


def predict(
    kind: str,
    q: int | None,
    n: int,
    m: int,
    context: AsymptoticContext | None = None,
) -> float:
    """
    Evaluate the named closed-form predictor at (q, n, m).

    Args:
        kind: One of r_thm2, r_cora, r_corb, p_fullp, p_pub, p_psm, f_thm3,
            f_cor2, f_cor3, g_thm5, g_cor1P, d_asym
        q: Field size for r and f kinds (ignored otherwise)
        n: Degree or permutation size
        m: Second argument (m >= 1)
        context: Solved grids; the shared default context when omitted

    Returns:
        Predicted value

    Raises:
        UnknownKindError: If kind is not registered
        InvalidParameterError: If m < 1, n < 0, or n <= m for r/p kinds

    Example:
        >>> round(predict("d_asym", None, 1, 1), 6)
        1.140145
    """
    predictor = get_default_registry().get(kind)
    if m < 1:
        raise InvalidParameterError("m", m, "m >= 1")
    if n < 0:
        raise InvalidParameterError("n", n, "n >= 0")
    if predictor.strict_n and n <= m:
        raise InvalidParameterError("n", n, f"n > m for kind '{kind}'")
    if predictor.needs_q and (q is None or q < 2):
        raise InvalidParameterError("q", q, f"a field size q >= 2 for kind '{kind}'")
    ctx = context or get_context()
    return predictor.func(ctx, q, n, m)
