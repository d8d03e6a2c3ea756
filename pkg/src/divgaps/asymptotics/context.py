"""Lazily solved ω and d grids plus constants, shared per configuration.

# AICODE-NOTE: Solving d takes far longer than anything else in the engine, so
# the d grid is only solved when a value inside [0, d_u_max] is requested.
# Beyond the grid d is C/(u+1), available from the constants alone.
"""

from __future__ import annotations

import threading

from divgaps.asymptotics.buchstab import solve_buchstab
from divgaps.asymptotics.constants import ConstantsBundle, constants
from divgaps.asymptotics.dfunc import solve_d
from divgaps.asymptotics.grid import GridFunction, ceil_to_unit
from divgaps.config import EngineConfig


class AsymptoticContext:
    """Holds the solved grids for one EngineConfig."""

    def __init__(self, config: EngineConfig) -> None:
        self.config = config
        self._lock = threading.Lock()
        self._omega: GridFunction | None = None
        self._d: GridFunction | None = None
        self._constants: ConstantsBundle | None = None

    @property
    def omega(self) -> GridFunction:
        with self._lock:
            if self._omega is None:
                self._omega = solve_buchstab(
                    self.config.omega_u_max, self.config.grid_step, self.config.tail_start
                )
            return self._omega

    @property
    def constants(self) -> ConstantsBundle:
        omega = self.omega
        with self._lock:
            if self._constants is None:
                self._constants = constants(omega, self.config.precision_bits)
            return self._constants

    @property
    def big_c(self) -> float:
        return float(self.constants.C)

    @property
    def d(self) -> GridFunction:
        omega = self.omega
        big_c = self.big_c
        with self._lock:
            if self._d is None:
                self._d = solve_d(self.config.d_u_max, self.config.grid_step, omega, big_c)
            return self._d

    @property
    def d_end(self) -> int:
        return ceil_to_unit(self.config.d_u_max)

    def omega_value(self, u: float) -> float:
        return float(self.omega(u))

    def d_value(self, u: float) -> float:
        """d(u); on [0, 1] and past the grid end no grid is solved."""
        if u < 0.0:
            return 0.0
        if u <= 1.0:
            return 1.0
        if u >= self.d_end:
            return self.big_c / (u + 1.0)
        return float(self.d(u))


_contexts: dict[tuple[float, float, float, float, int], AsymptoticContext] = {}
_contexts_lock = threading.Lock()


def get_context(config: EngineConfig | None = None) -> AsymptoticContext:
    """Context for a configuration; configs with equal grid settings share solved grids."""
    config = config or EngineConfig()
    key = (
        config.grid_step,
        config.omega_u_max,
        config.tail_start,
        config.d_u_max,
        config.precision_bits,
    )
    with _contexts_lock:
        if key not in _contexts:
            _contexts[key] = AsymptoticContext(config)
        return _contexts[key]
