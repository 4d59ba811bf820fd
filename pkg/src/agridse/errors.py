"""Exception hierarchy shared by every module."""

from __future__ import annotations


class AgriDSEError(Exception):
    """Base class for all package errors."""


class SchemaError(AgriDSEError):
    """A catalog, scenario or design file does not parse against its schema."""

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ValidationError(AgriDSEError):
    """A parsed object violates a type invariant."""

    def __init__(self, message: str, *, option_id: str | None = None):
        self.option_id = option_id
        super().__init__(message)


class InfeasibleError(AgriDSEError):
    """No design can satisfy the scenario; ``rule`` names the binding constraint."""

    def __init__(self, message: str, *, rule: str | None = None, diagnostics: dict | None = None):
        self.rule = rule
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class EncodingError(AgriDSEError):
    """A design cannot be encoded (e.g. a unit count beyond its declared bound)."""


class ScoreError(AgriDSEError):
    """A score is undefined for the given input (e.g. an empty pool)."""
