"""Exception hierarchy shared by the kernel, frontend and CLI."""

from __future__ import annotations

from typing import Any, Optional


class CattError(Exception):
    """Base class for every error raised by this package."""


class TypingError(CattError):
    """A failed typing judgement; ``kind`` names the primary cause."""

    kind = "TypingError"

    def __init__(self, message: str, location: Optional[Any] = None) -> None:
        super().__init__(message)
        self.message = message
        self.location = location

    def __str__(self) -> str:
        if self.location is None:
            return f"{self.kind}: {self.message}"
        return f"{self.kind} at {self.location}: {self.message}"


class NotPasting(TypingError):
    kind = "NotPasting"

    def __init__(self, position: int, message: str = "", location: Optional[Any] = None) -> None:
        super().__init__(message or f"context entry {position} breaks the pasting shape", location)
        self.position = position


class SupportViolation(TypingError):
    kind = "SupportViolation"


class TypeMismatch(TypingError):
    kind = "TypeMismatch"

    def __init__(self, expected: Any, got: Any, message: str = "", location: Optional[Any] = None) -> None:
        super().__init__(message or f"expected {expected!r}, got {got!r}", location)
        self.expected = expected
        self.got = got


class UnboundVariable(TypingError, LookupError):
    kind = "UnboundVariable"

    def __init__(self, index: Any, ctx_len: Optional[int] = None, location: Optional[Any] = None) -> None:
        if ctx_len is None:
            msg = f"unbound variable {index}"
        else:
            msg = f"variable #{index} is not bound in a context of length {ctx_len}"
        super().__init__(msg, location)
        self.index = index
        self.ctx_len = ctx_len


class ArityMismatch(TypingError):
    kind = "ArityMismatch"


class BaseTypeCoherence(TypingError):
    kind = "BaseTypeCoherence"


class DimensionLimit(TypingError):
    kind = "DimensionLimit"


class BoundaryMismatch(TypingError):
    kind = "BoundaryMismatch"


class FuelExhausted(CattError):
    def __init__(self, fuel: int) -> None:
        super().__init__(f"normalization did not finish within {fuel} standard steps")
        self.fuel = fuel


class RehydrationError(CattError):
    """Internal-consistency failure in the rehydration pipeline (a bug signal)."""


class ParseError(CattError):
    def __init__(self, message: str, line: int, column: int, expected: Optional[set] = None) -> None:
        self.message = message
        self.line = line
        self.column = column
        self.expected = set(expected or ())
        super().__init__(str(self))

    def __str__(self) -> str:
        s = f"{self.line}:{self.column}: {self.message}"
        if self.expected:
            s += " (expected " + ", ".join(sorted(self.expected)) + ")"
        return s


class ElaborationError(CattError):
    """Name resolution or surface-level failure (unknown name, duplicate declaration)."""

    def __init__(self, message: str, location: Optional[Any] = None) -> None:
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location
