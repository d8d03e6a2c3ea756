"""divgaps: gap-free divisor degrees of polynomials over F_q and cycle sums of permutations.

# AICODE-NOTE: The top level re-exports the entry points a caller needs for
# one-off values; tables, grids and censuses live in the subpackages
# (divgaps.exact, divgaps.asymptotics, divgaps.oracle, divgaps.verify).
"""

from importlib.metadata import PackageNotFoundError, version

from divgaps.config import EngineConfig, load_config
from divgaps.exact import f_value, g_value, irr_count, lambda_q, perm_rough, r_ratio

try:  # pragma: no cover - best effort for local development
    __version__ = version("divgaps")
except PackageNotFoundError:
    __version__ = "0.0.0"

__all__ = [
    "EngineConfig",
    "__version__",
    "f_value",
    "g_value",
    "irr_count",
    "lambda_q",
    "load_config",
    "perm_rough",
    "r_ratio",
]
