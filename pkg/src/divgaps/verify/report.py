"""Check and campaign report models."""

from __future__ import annotations

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, computed_field

CONVERGENCE_HEADER = ("kind", "q", "n", "m", "computed", "predicted", "rel_err")


class ConvergenceRow(BaseModel):
    """One (n, computed, predicted) sample of a convergence series."""

    model_config = ConfigDict(frozen=True)

    kind: str
    q: int | None = None
    n: int
    m: int
    computed: float
    predicted: float

    @computed_field  # type: ignore[prop-decorator]
    @property
    def rel_err(self) -> float:
        if self.predicted == 0.0:
            return abs(self.computed)
        return abs(self.computed / self.predicted - 1.0)

    def as_row(self) -> tuple[Any, ...]:
        q = "-" if self.q is None else self.q
        return (self.kind, q, self.n, self.m, self.computed, self.predicted, self.rel_err)


class CheckReport(BaseModel):
    """
    Outcome of one verification check.

    # AICODE-NOTE: `passed` is derived, never stored: a report passes exactly
    # when its worst deviation is a number not above the threshold.

    Attributes:
        check_id: Registry key of the check
        anchor: The verified statement in words
        parameter_range: Ranges of q, n, m (and training/extension split) covered
        worst_deviation: Largest observed deviation in the check's own metric
        threshold: Largest admissible deviation
        runtime_seconds: Wall-clock time of the check
        details: Check-specific diagnostics (fitted constants, mismatches, ...)
        rows: Convergence series samples
    """

    model_config = ConfigDict(frozen=True)

    check_id: str
    anchor: str = ""
    parameter_range: dict[str, Any] = Field(default_factory=dict)
    worst_deviation: float
    threshold: float
    runtime_seconds: float = 0.0
    details: dict[str, Any] = Field(default_factory=dict)
    rows: list[ConvergenceRow] = Field(default_factory=list, repr=False)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not math.isnan(self.worst_deviation) and self.worst_deviation <= self.threshold

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.check_id}: worst={self.worst_deviation:.3e} "
            f"threshold={self.threshold:.3e} ({self.runtime_seconds:.2f}s)"
        )


class CampaignReport(BaseModel):
    """Reports of one campaign, ordered by check id."""

    model_config = ConfigDict(frozen=True)

    suite: str
    engine_version: str
    config: dict[str, Any] = Field(default_factory=dict)
    checks: list[CheckReport] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> list[str]:
        return [check.check_id for check in self.checks if not check.passed]

    def convergence_rows(self) -> list[tuple[Any, ...]]:
        return [row.as_row() for check in self.checks for row in check.rows]
