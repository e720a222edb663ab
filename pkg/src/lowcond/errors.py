"""Exception hierarchy. The CLI maps these onto its exit codes."""

from __future__ import annotations


class LowcondError(Exception):
    """Base class for every error raised by this package."""


class ParseError(LowcondError, ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ValidationError(LowcondError, ValueError):
    """Well-formed input that violates a structural invariant (e.g. a loop)."""


class DomainError(LowcondError, ValueError):
    """Arguments outside an operation's domain."""


class UnknownVertexError(LowcondError, KeyError):
    def __str__(self) -> str:
        return f"unknown vertex {self.args[0]!r}"


class NumericError(LowcondError, ArithmeticError):
    pass


class GenerationError(LowcondError, RuntimeError):
    pass


class BudgetExceeded(LowcondError, RuntimeError):
    """Oracle query budget ran out; ``partial`` holds whatever was built."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
