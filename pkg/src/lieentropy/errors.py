"""Exception types shared across the package.

Every error carries a stable ``code`` string so the CLI can map it to an
exit status and tests can assert on it without matching messages.
"""

from __future__ import annotations


class LieEntropyError(Exception):
    """Base class; ``code`` is one of the documented error codes."""

    code = "ERROR"

    def __init__(self, message: str = "", code: str | None = None):
        if code is not None:
            self.code = code
        super().__init__(f"{self.code}: {message}" if message else self.code)


class InputError(LieEntropyError):
    """Malformed or inconsistent input (CLI exit 2)."""

    code = "INVALID_INPUT"


class NumericError(LieEntropyError):
    """A numeric routine failed on otherwise valid input (CLI exit 3)."""

    code = "NUMERIC_FAILURE"


class ValidationFailed(InputError):
    code = "VALIDATION_FAILED"

    def __init__(self, report, message: str = ""):
        self.report = report
        errors = [f.code for f in report.findings if f.severity == "ERROR"]
        super().__init__(message or ", ".join(errors))


class BudgetExceeded(LieEntropyError):
    """Raised only when a caller asks for strict budgets; carries the partial result."""

    code = "BUDGET_EXCEEDED"

    def __init__(self, partial, message: str = ""):
        self.partial = partial
        super().__init__(message)


def singular(message: str) -> NumericError:
    return NumericError(message, code="SINGULAR_MATRIX")


def non_convergence(message: str) -> NumericError:
    return NumericError(message, code="NON_CONVERGENCE")


def dimension_mismatch(message: str) -> InputError:
    return InputError(message, code="DIMENSION_MISMATCH")
