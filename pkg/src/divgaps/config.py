"""Engine configuration models.

# AICODE-NOTE: EngineConfig is a BaseModel (not BaseSettings) so library callers
# get deterministic defaults. DivgapsSettings extends BaseSettings for the CLI,
# which wants DIVGAPS_* environment overrides.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

if TYPE_CHECKING:
    from typing import Self


class EngineConfig(BaseModel):
    """
    Numerical and enumeration settings shared by every engine.

    Attributes:
        precision_bits: Mantissa bits for high-precision reals (mpmath)
        grid_step: Uniform step h of the ω and d grids (1/h must be an integer)
        omega_u_max: Right end of the ω grid
        tail_start: Point beyond which ω is represented by e^{-γ}
        d_u_max: Right end of the d grid; beyond it d uses the C/(u+1) tail
        enumeration_budget: Maximal number of monic polynomials per census
        perm_census_max_n: Largest n accepted by the cycle-type census
        coefficient_bit_cap: Abort series expansion past this coefficient size
        exact_threshold: Largest n computed with exact rationals by default
        overlap_window: Width of the exact/numeric overlap validated below the threshold
        output_dir: Where CLI artifacts are written
        cache_enabled: Whether tables are cached on disk
        cache_dir: Cache location (defaults to output_dir / "cache")
        census_degrees: Per-q maximal degree of the default oracle campaign

    Example:
        >>> config = EngineConfig(grid_step=2**-8, exact_threshold=120)
        >>> config.cache_path
        PosixPath('divgaps-out/cache')
    """

    model_config = ConfigDict(frozen=True)

    # High-precision reals
    precision_bits: int = Field(default=256, ge=64)

    # Grid solvers
    grid_step: float = Field(default=2.0**-10, gt=0.0, le=2.0**-8)
    omega_u_max: float = Field(default=12.0, ge=2.0)
    tail_start: float = Field(default=12.0, ge=3.0)
    d_u_max: float = Field(default=25.0, ge=2.0)

    # Resource caps
    enumeration_budget: int = Field(default=10**7, ge=1)
    perm_census_max_n: int = Field(default=60, ge=1)
    coefficient_bit_cap: int = Field(default=2**22, ge=64)

    # Exact / numeric split
    exact_threshold: int = Field(default=200, ge=1)
    overlap_window: int = Field(default=50, ge=1)

    # Verification thresholds (engineering choices, not derived bounds)
    thm4_tolerance: float = 0.02
    cq_stability: float = 0.005
    eta_nonconvergence: float = 1e-2
    precision_warning: float = 1e-8
    numeric_overlap_tolerance: float = 1e-10

    # Output
    output_dir: Path = Path("divgaps-out")
    cache_enabled: bool = True
    cache_dir: Path | None = None

    census_degrees: dict[int, int] = {2: 16, 3: 12, 4: 10, 5: 9}

    @field_validator("grid_step")
    @classmethod
    def validate_grid_step(cls, v: float) -> float:
        """Grid points must land on every integer."""
        inverse = 1.0 / v
        if abs(inverse - round(inverse)) > 1e-9 or round(inverse) < 4:
            raise ValueError(f"grid_step must be 1/N for an integer N >= 4, got {v}")
        return v

    @model_validator(mode="after")
    def validate_consistency(self) -> Self:
        """Cross-field checks: tail after grid start, overlap inside exact range, budgets."""
        if abs(self.tail_start - round(self.tail_start)) > 1e-12:
            raise ValueError(f"tail_start must be an integer, got {self.tail_start}")
        if self.tail_start > self.omega_u_max + 1e-12:
            raise ValueError(
                f"tail_start ({self.tail_start}) must not exceed omega_u_max ({self.omega_u_max})"
            )
        if self.overlap_window > self.exact_threshold:
            raise ValueError("overlap_window must not exceed exact_threshold")
        for q, n in self.census_degrees.items():
            if q < 2 or n < 1:
                raise ValueError(f"census_degrees entry {q}: {n} is not a valid (q, n) pair")
            if q**n > self.enumeration_budget:
                raise ValueError(
                    f"census_degrees entry {q}: {n} exceeds the enumeration budget "
                    f"({q**n} > {self.enumeration_budget})"
                )
        return self

    @property
    def cache_path(self) -> Path:
        """Resolved cache directory."""
        return self.cache_dir if self.cache_dir is not None else self.output_dir / "cache"


class DivgapsSettings(EngineConfig, BaseSettings):
    """
    Engine configuration with environment variable resolution.

    # AICODE-NOTE: Opt-in. Library entry points take EngineConfig; the CLI
    # instantiates this class so DIVGAPS_OUTPUT_DIR and friends apply.

    Environment variables:
        DIVGAPS_OUTPUT_DIR: output directory override
        DIVGAPS_PRECISION_BITS: mantissa bits
        DIVGAPS_CACHE_ENABLED: "true" | "false"
    """

    model_config = SettingsConfigDict(
        env_prefix="DIVGAPS_",
        env_nested_delimiter="__",
        frozen=True,
    )


def load_config(path: str | Path | None = None, **overrides: Any) -> EngineConfig:
    """
    Build the effective configuration: YAML file, then environment, then overrides.

    Args:
        path: Optional YAML file with EngineConfig fields at top level
        **overrides: Explicit values (e.g. from CLI flags); None values are ignored

    Returns:
        Validated EngineConfig

    Raises:
        FileNotFoundError: If path is given but missing
        pydantic.ValidationError: If any value violates a constraint
    """
    data: dict[str, Any] = {}
    if path is not None:
        with open(path, encoding="utf-8") as handle:
            loaded = yaml.safe_load(handle)
        if loaded is not None:
            if not isinstance(loaded, dict):
                raise ValueError(f"Config file {path} must contain a mapping")
            data.update(loaded)

    # Init kwargs would shadow the environment, so read env-set fields separately
    # to keep the order file < environment < flags.
    env_settings = DivgapsSettings()
    data.update({key: getattr(env_settings, key) for key in env_settings.model_fields_set})
    data.update({key: value for key, value in overrides.items() if value is not None})
    return EngineConfig(**data)
