"""Exception hierarchy. Every error can carry a source span for diagnostics."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class SourceSpan:
    line: int
    column: int

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError(f"invalid span {self.line}:{self.column}")

    def __str__(self):
        return f"{self.line}:{self.column}"


class DftaError(Exception):
    span: SourceSpan | None = None
    source: str | None = None   # file name, filled in by callers that know it

    def at(self, span: SourceSpan | None) -> DftaError:
        if span is not None and self.span is None:
            self.span = span
        return self

    @property
    def message(self) -> str:
        return super().__str__()

    def __str__(self):
        return f"{self.span}: {self.message}" if self.span else self.message


class ValidationError(DftaError):
    pass


class DuplicateLhs(ValidationError):
    def __init__(self, state: str, symbol: str):
        super().__init__(f"duplicate rule left-hand side: ({state}, {symbol})")
        self.state, self.symbol = state, symbol


class ArityMismatch(ValidationError):
    def __init__(self, symbol: str, expected: int, got: int):
        super().__init__(f"arity mismatch: {symbol} expects {expected} children, got {got}")
        self.symbol, self.expected, self.got = symbol, expected, got


class UnknownState(ValidationError):
    def __init__(self, state: str):
        super().__init__(f"unknown state: {state}")
        self.state = state


class UnknownSymbol(ValidationError):
    def __init__(self, symbol: str):
        super().__init__(f"unknown symbol: {symbol}")
        self.symbol = symbol


class InitialNotAState(ValidationError):
    def __init__(self, state: str):
        super().__init__(f"initial state is not a declared state: {state}")
        self.state = state


class DuplicateSymbol(ValidationError):
    def __init__(self, symbol: str):
        super().__init__(f"duplicate symbol: {symbol}")
        self.symbol = symbol


class DuplicateState(ValidationError):
    def __init__(self, state: str):
        super().__init__(f"duplicate state: {state}")
        self.state = state


class ParseError(DftaError):
    """Malformed input text."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        super().__init__(message)
        self.span = span
