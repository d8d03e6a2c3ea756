"""Error types for divgaps computations."""

from __future__ import annotations

from typing import Any


class InvalidParameterError(ValueError):
    """Raised when an argument lies outside the domain of an operation.

    # AICODE-NOTE: Subclasses ValueError so callers that only know the stdlib
    # contract (e.g. irr_count(q, 0)) still catch it.
    """

    def __init__(
        self,
        parameter: str,
        value: Any,
        constraint: str,
        message: str | None = None,
    ) -> None:
        """
        Initialize InvalidParameterError.

        Args:
            parameter: Name of the offending parameter (e.g. "n")
            value: Value that was passed
            constraint: Human-readable constraint (e.g. "n >= 1")
            message: Custom error message
        """
        self.parameter = parameter
        self.value = value
        self.constraint = constraint
        if message is None:
            message = f"Invalid {parameter}={value!r}: requires {constraint}"
        self.message = message
        super().__init__(self.message)


class ResourceLimitExceededError(Exception):
    """Raised when a declared resource cap would be exceeded.

    Limit types: "coefficient_bits", "enumeration_budget", "partition_budget".
    """

    def __init__(
        self,
        limit_type: str,
        current_value: int,
        max_value: int,
        message: str | None = None,
    ) -> None:
        """
        Initialize ResourceLimitExceededError.

        Args:
            limit_type: Which cap was hit
            current_value: Requested or observed size
            max_value: Configured cap
            message: Custom error message
        """
        self.limit_type = limit_type
        self.current_value = current_value
        self.max_value = max_value
        if message is None:
            message = f"Resource limit '{limit_type}' exceeded: {current_value} > {max_value}"
        self.message = message
        super().__init__(self.message)


class InvalidFieldError(Exception):
    """Raised when a finite field cannot be constructed (composite p, k < 1)."""

    def __init__(self, p: int, k: int, message: str | None = None) -> None:
        self.p = p
        self.k = k
        if message is None:
            message = f"Cannot build F_{{{p}^{k}}}: characteristic must be prime and k >= 1"
        self.message = message
        super().__init__(self.message)


class SolverError(Exception):
    """Raised when a grid solver fails its own order validation."""

    def __init__(self, solver: str, reason: str, max_error: float | None = None) -> None:
        """
        Initialize SolverError.

        Args:
            solver: Solver name ("buchstab", "dfunc")
            reason: Why the solution was rejected
            max_error: Observed error that triggered the rejection
        """
        self.solver = solver
        self.reason = reason
        self.max_error = max_error
        message = f"{solver} solver rejected: {reason}"
        if max_error is not None:
            message += f" (max_error={max_error:.3e})"
        self.message = message
        super().__init__(self.message)


class QuadratureError(Exception):
    """Raised when a quadrature error estimate stays above tolerance after refinement."""

    def __init__(self, u: float, estimate: float, tolerance: float) -> None:
        self.u = u
        self.estimate = estimate
        self.tolerance = tolerance
        self.message = (
            f"Quadrature at u={u:.6f} did not reach tolerance: "
            f"estimate {estimate:.3e} > {tolerance:.3e}"
        )
        super().__init__(self.message)


class RootNotBracketedError(Exception):
    """Raised when a root-find bracket does not change sign."""

    def __init__(self, lower: float, upper: float, f_lower: float, f_upper: float) -> None:
        self.lower = lower
        self.upper = upper
        self.f_lower = f_lower
        self.f_upper = f_upper
        self.message = (
            f"Root not bracketed in [{lower}, {upper}]: "
            f"f(lower)={f_lower:.6e}, f(upper)={f_upper:.6e}"
        )
        super().__init__(self.message)


class UnknownKindError(KeyError):
    """Raised when a predictor, table or check kind is not registered."""

    def __init__(self, kind: str, available: list[str] | None = None) -> None:
        self.kind = kind
        self.available = sorted(available or [])
        available_str = ", ".join(self.available) if self.available else "none"
        self.message = f"Unknown kind '{kind}'. Available: {available_str}"
        super().__init__(self.message)

    def __str__(self) -> str:
        return self.message


class CacheIntegrityError(Exception):
    """Raised in strict mode when a cache entry fails checksum verification."""

    def __init__(self, key: str, expected: str, actual: str) -> None:
        self.key = key
        self.expected = expected
        self.actual = actual
        self.message = f"Cache entry '{key}' checksum mismatch: {actual} != {expected}"
        super().__init__(self.message)


class IntegralityError(ArithmeticError):
    """Raised when a count that must be an integer comes out fractional.

    Exact recurrences divide by n at every step; a nonzero remainder means a
    corrupted input table, never a rounding effect.
    """

    def __init__(self, quantity: str, total: int, divisor: int) -> None:
        """
        Initialize IntegralityError.

        Args:
            quantity: What was being counted (e.g. "I_6(q=2)")
            total: Dividend of the failed exact division
            divisor: Divisor that left a remainder
        """
        self.quantity = quantity
        self.total = total
        self.divisor = divisor
        self.message = f"{quantity} is not integral: {total} is not divisible by {divisor}"
        super().__init__(self.message)
