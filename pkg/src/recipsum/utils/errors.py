from typing import Any, Dict, Optional


class RecipSumError(Exception):
    """Base class for all errors raised by recipsum"""


class DomainError(RecipSumError, ValueError):
    """Raised when an operation is called outside its domain"""

    def __init__(self, operation: str, argument: str, value: Any, message: str):
        self.operation = operation
        self.argument = argument
        self.value = value
        self.message = message
        super().__init__(f"{operation}: {argument}={value!r}: {message}")


class NumericalError(RecipSumError, ArithmeticError):
    """Raised when a numerical method fails to reach its tolerance"""

    def __init__(
        self,
        operation: str,
        message: str,
        diagnostics: Optional[Dict[str, Any]] = None,
    ):
        self.operation = operation
        self.message = message
        self.diagnostics = diagnostics or {}
        details = ", ".join(f"{key}={value}" for key, value in self.diagnostics.items())
        super().__init__(f"{operation}: {message}" + (f" ({details})" if details else ""))


def require(condition: bool, operation: str, argument: str, value: Any, message: str) -> None:
    """Raise DomainError unless condition holds"""
    if not condition:
        raise DomainError(operation, argument, value, message)
