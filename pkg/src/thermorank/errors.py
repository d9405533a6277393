"""Exception hierarchy shared by every thermorank module.

All failures raised on purpose derive from :class:`ThermoRankError` so callers
(and the CLI) can distinguish "bad input" from genuine bugs.  Subclasses of
:class:`ValidationError` mean the input was structurally readable but violates
a documented constraint; :class:`ParseError` means the bytes themselves could
not be understood.
"""

from __future__ import annotations

__all__ = [
    "ThermoRankError",
    "ValidationError",
    "AllZeroColumn",
    "UnknownLabel",
    "UnknownFixture",
    "BadEdit",
    "MissingReference",
    "ParseError",
    "DivisionByZero",
    "ZeroReferenceMean",
    "WeightSumWarning",
    "DegeneratePanel",
]


class ThermoRankError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ThermoRankError):
    """A well-formed input violates a documented constraint."""


class AllZeroColumn(ValidationError):
    """A benefit column is identically zero, so no normalizer exists."""


class UnknownLabel(ValidationError):
    """A linguistic label is not present in the scale used to resolve it."""

    def __init__(self, label: str, scale_kind: str) -> None:
        super().__init__(f"unknown {scale_kind} label {label!r}")
        self.label = label
        self.scale_kind = scale_kind


class UnknownFixture(ValidationError):
    """Requested bundled dataset does not exist."""


class BadEdit(ValidationError):
    """A what-if edit token does not reference an existing cell or value."""

    def __init__(self, token: str, reason: str) -> None:
        super().__init__(f"bad edit {token!r}: {reason}")
        self.token = token
        self.reason = reason


class MissingReference(ValidationError):
    """A comparison was requested but there is nothing to compare against."""


class ParseError(ThermoRankError):
    """Input document is malformed; carries the offending position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        elif line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line
        self.column = column


class DivisionByZero(ThermoRankError):
    """Componentwise division by a triplet containing a zero component."""


class ZeroReferenceMean(ThermoRankError):
    """Quality is undefined because a reference mean rating is zero."""


class WeightSumWarning(UserWarning):
    """weighted-sum aggregation requested although weights do not sum to 1."""


class DegeneratePanel(UserWarning):
    """Positive and negative ideals coincide on every column.

    Closeness is undefined, so the result reports NaN coefficients and
    input-order ranks instead of failing outright.
    """
