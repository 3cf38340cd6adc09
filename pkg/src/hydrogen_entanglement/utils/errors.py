"""Custom exception classes for hydrogen-entanglement.

Error classification follows these rules:
- ValidationError: the input breaks a documented invariant (CLI exit code 2)
- NumericalFailure: valid input, but a computation could not meet its own
  guarantees (CLI exit code 3)
"""

from __future__ import annotations

from typing import Any


class EntanglementError(Exception):
    """Base exception for all library errors."""

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        *,
        category: str = "unknown",
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.category = category
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        """Convert error to dictionary for serialization."""
        return {
            "type": self.__class__.__name__,
            "message": self.message,
            "category": self.category,
            "exit_code": self.exit_code,
            "details": self.details,
        }


class ValidationError(EntanglementError):
    """Input violates an invariant of the type it is meant to become.

    Examples:
    - Coefficient matrix whose norm is not 1
    - Non-Hermitian matrix handed to the eigensolver
    - Correlation function with L*C(0) != 1
    - Malformed JSON state file
    """

    exit_code = 2

    def __init__(
        self,
        message: str,
        *,
        invariant: str | None = None,
        category: str = "validation",
        details: dict[str, Any] | None = None,
    ) -> None:
        details = details or {}
        if invariant:
            details["invariant"] = invariant
        super().__init__(message, category=category, details=details)
        self.invariant = invariant


class ConfigurationError(ValidationError):
    """Configuration error - missing or out-of-range setting."""

    def __init__(
        self,
        message: str,
        *,
        config_key: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        details = details or {}
        if config_key:
            details["config_key"] = config_key
        super().__init__(message, category="configuration", details=details)


class PeriodicityError(ValidationError):
    """Centre-of-mass momentum that cannot be represented in the periodic box.

    The phase exp(iK(m_e x_e + m_p x_p)/M) is only box-periodic when both
    (m_e/M)*com_index and (m_p/M)*com_index are integers.
    """

    def __init__(
        self,
        message: str,
        *,
        com_index: int | None = None,
        mass_ratio: float | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        details = details or {}
        if com_index is not None:
            details["com_index"] = com_index
        if mass_ratio is not None:
            details["mass_ratio"] = mass_ratio
        super().__init__(
            message,
            invariant="periodic_com_phase",
            category="periodicity",
            details=details,
        )


class NumericalFailure(EntanglementError):
    """A computation could not meet its accuracy or convergence guarantee.

    Examples:
    - Jacobi sweeps exhausted before the off-diagonal norm converged
    - Eigenvalue more negative than the clamp tolerance
    - Imaginary residue in a spectrum that must be real
    - Reduced density that is not translation invariant
    """

    exit_code = 3

    def __init__(
        self,
        message: str,
        *,
        invariant: str | None = None,
        details: dict[str, Any] | None = None,
    ) -> None:
        details = details or {}
        if invariant:
            details["invariant"] = invariant
        super().__init__(message, category="numerical", details=details)
        self.invariant = invariant
