"""Custom exception classes for function-points"""

from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .domain import Violation
    from .parser import ParseDiagnostic


class FunctionPointError(Exception):
    """Base exception class for function-points"""

    pass


class SheetParseError(FunctionPointError):
    """Raised when a sheet or override file contains syntax errors"""

    def __init__(self, message: str, diagnostics: Sequence["ParseDiagnostic"] = ()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class SheetValidationError(FunctionPointError):
    """Raised when a well-formed sheet carries invalid content"""

    def __init__(self, message: str, diagnostics: Sequence["ParseDiagnostic"] = ()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class ConfigurationError(FunctionPointError):
    """Raised when a weight or classification matrix is invalid"""

    def __init__(self, message: str, violations: Sequence["Violation"] = ()):
        super().__init__(message)
        self.violations = tuple(violations)


class ClassificationError(FunctionPointError):
    """Raised when an item cannot be classified from its measures"""

    pass


class AdjustmentError(FunctionPointError):
    """Raised when a what-if adjustment leaves a value out of range"""

    def __init__(self, message: str, flag: str = ""):
        super().__init__(message)
        self.flag = flag
