"""Estimates of η_q(m) = lim f(n,m)/d(n/m) and c_q = C·η_q(1).

No reference values exist for these limits; every result is an Estimate with
a stability indicator |η̂(n) - η̂(n/2)|.
"""

from __future__ import annotations

import math

from divgaps.asymptotics.context import AsymptoticContext, get_context
from divgaps.config import EngineConfig
from divgaps.errors import InvalidParameterError
from divgaps.exact.gaps import f_table, g_table
from divgaps.exact.models import Estimate, check_field_size
from divgaps.exact.numeric import numeric_tables
from divgaps.utils.logging import get_logger, log_operation
from divgaps.utils.serialization import ratio_to_float

logger = get_logger(__name__)

DEFAULT_SCALE = 1000


def _gap_values(
    q: int | None, m: int, n: int, config: EngineConfig
) -> tuple[float, float]:
    """(h(n), h(n // 2)) for h = f (q given) or g (q None), exact when n is small."""
    half = n // 2
    if n <= config.exact_threshold:
        exact = f_table(q, m, n) if q is not None else g_table(m, n)
        return ratio_to_float(exact[n]), ratio_to_float(exact[half])
    table = numeric_tables("f" if q is not None else "g", q, m, n, config)
    return table[n], table[half]


def _estimate(
    q: int | None,
    m: int,
    n: int | None,
    config: EngineConfig | None,
    context: AsymptoticContext | None,
    scale: float = 1.0,
) -> Estimate:
    if m < 1:
        raise InvalidParameterError("m", m, "m >= 1")
    n = DEFAULT_SCALE * m if n is None else n
    if n < 2:
        raise InvalidParameterError("n", n, "n >= 2")
    config = config or EngineConfig()
    ctx = context or get_context(config)

    current, earlier = _gap_values(q, m, n, config)
    value = scale * current / ctx.d_value(n / m)
    previous = scale * earlier / ctx.d_value((n // 2) / m)
    stability = abs(value - previous)
    converged = stability <= config.eta_nonconvergence
    if not converged:
        log_operation(
            logger,
            "eta_nonconvergence",
            q=q,
            m=m,
            n=n,
            stability=f"{stability:.3e}",
            threshold=config.eta_nonconvergence,
        )
    return Estimate(
        value=value,
        previous=previous,
        stability=stability,
        converged=converged,
        q=q,
        m=m,
        n=n,
    )


def eta_estimate(
    q: int,
    m: int,
    n: int | None = None,
    config: EngineConfig | None = None,
    context: AsymptoticContext | None = None,
) -> Estimate:
    """
    η̂_q(m) = f(n, m) / d(n/m), by default at n = 1000·m.

    Args:
        q: Field size
        m: Gap bound (m >= 1)
        n: Degree; f comes from numeric tables beyond the exact threshold
        config: Engine configuration
        context: Solved grids (shared default context when omitted)

    Returns:
        Estimate, flagged as not converged when the stability indicator exceeds
        config.eta_nonconvergence
    """
    check_field_size(q)
    return _estimate(q, m, n, config, context)


def cq_estimate(
    q: int,
    n: int = DEFAULT_SCALE,
    config: EngineConfig | None = None,
    context: AsymptoticContext | None = None,
) -> Estimate:
    """ĉ_q = C·η̂_q(1) at degree n."""
    check_field_size(q)
    config = config or EngineConfig()
    ctx = context or get_context(config)
    return _estimate(q, 1, n, config, ctx, scale=ctx.big_c)


def perm_eta_estimate(
    m: int,
    n: int | None = None,
    config: EngineConfig | None = None,
    context: AsymptoticContext | None = None,
) -> Estimate:
    """g(n, m) / d(n/m); tends to 1 since permutations carry no η factor."""
    return _estimate(None, m, n, config, context)


def balancing_degree(q: int, m: int, tau: float) -> int:
    """⌊m q^{(m+1)τ}⌋, at least m + 1."""
    return max(m + 1, math.floor(m * q ** ((m + 1) * tau)))


def eta_at_balanced_degree(
    q: int,
    m: int,
    config: EngineConfig | None = None,
    context: AsymptoticContext | None = None,
) -> Estimate:
    """η̂ at the degree where the η_q(m) - 1 error and the 1/(n+m) error balance."""
    check_field_size(q)
    config = config or EngineConfig()
    ctx = context or get_context(config)
    tau = float(ctx.constants.tau)
    return _estimate(q, m, balancing_degree(q, m, tau), config, ctx)
