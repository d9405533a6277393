"""Triangular fuzzy numbers and the componentwise arithmetic built on them.

A triangular fuzzy number is an ``(a, b, c)`` triplet: left support, mode,
right support.  Ratings and weights entered by users always satisfy
``a <= b <= c``; triplets *derived* by the indicator pipeline (quality,
exergy, entropy) can lose that ordering, which :attr:`TriangularFuzzyNumber.is_ordered`
reports instead of silently re-sorting — downstream products are positional,
so re-sorting would change results.

All binary operations here are componentwise.  In particular subtraction and
division are NOT the interval-arithmetic rules; the indicator algebra pairs
components positionally.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from .errors import DivisionByZero, UnknownLabel

__all__ = [
    "TriangularFuzzyNumber",
    "LinguisticScale",
    "RATING_SCALE",
    "WEIGHT_SCALE",
    "membership",
    "cw_add",
    "cw_sub",
    "cw_mul",
    "cw_div",
    "scale",
    "distance",
    "defuzzify",
    "from_linguistic",
]

_COMPONENT_NAMES = ("a", "b", "c")


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Immutable ``(a, b, c)`` triplet with componentwise operator support."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "c", float(self.c))

    @property
    def is_ordered(self) -> bool:
        """Whether ``a <= b <= c`` holds (guaranteed for inputs, not derived values)."""
        return self.a <= self.b <= self.c

    def __iter__(self) -> Iterator[float]:
        yield self.a
        yield self.b
        yield self.c

    def __len__(self) -> int:
        return 3

    def __getitem__(self, index: int) -> float:
        return (self.a, self.b, self.c)[index]

    def __add__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        return cw_add(self, other)

    def __sub__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        return cw_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, TriangularFuzzyNumber):
            return cw_mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TriangularFuzzyNumber):
            return cw_div(self, other)
        return scale(self, 1.0 / other)

    def __repr__(self) -> str:  # compact, table-friendly
        return f"TFN({self.a:g}, {self.b:g}, {self.c:g})"


_TFN = TriangularFuzzyNumber


def membership(x_tilde: _TFN, x: float) -> float:
    """Degree to which the real number ``x`` belongs to ``x_tilde``.

    Piecewise linear: ramps from 0 at ``a`` up to 1 at the mode ``b`` and back
    down to 0 at ``c``; 0 outside the support.  Degenerate legs (``a == b`` or
    ``b == c``) evaluate to 1 at the shared point, the limit of the ramp.
    Assumes an ordered triplet; total (never raises).
    """
    a, b, c = x_tilde.a, x_tilde.b, x_tilde.c
    if x < a or x > c:
        return 0.0
    if x == b:
        return 1.0
    if x < b:
        return (x - a) / (b - a)
    return (x - c) / (b - c)


def cw_add(x: _TFN, y: _TFN) -> _TFN:
    return _TFN(x.a + y.a, x.b + y.b, x.c + y.c)


def cw_sub(x: _TFN, y: _TFN) -> _TFN:
    """Componentwise difference (positional, not interval subtraction)."""
    return _TFN(x.a - y.a, x.b - y.b, x.c - y.c)


def cw_mul(x: _TFN, y: _TFN) -> _TFN:
    return _TFN(x.a * y.a, x.b * y.b, x.c * y.c)


def cw_div(x: _TFN, y: _TFN) -> _TFN:
    """Componentwise quotient; the divisor must have no zero component."""
    for name, component in zip(_COMPONENT_NAMES, y):
        if component == 0.0:
            raise DivisionByZero(f"divisor component {name!r} of {y!r} is zero")
    return _TFN(x.a / y.a, x.b / y.b, x.c / y.c)


def scale(x: _TFN, k: float) -> _TFN:
    """Multiply every component by the scalar ``k``."""
    return _TFN(x.a * k, x.b * k, x.c * k)


def distance(x: _TFN, y: _TFN) -> _TFN:
    """Componentwise absolute difference between two triplets."""
    return _TFN(abs(x.a - y.a), abs(x.b - y.b), abs(x.c - y.c))


def defuzzify(x: _TFN) -> float:
    """Root-mean-square score ``sqrt((a^2 + b^2 + c^2) / 3)``.

    Order-insensitive, so triplets that lost their ordering along the way need
    no special handling here.  Collapses a constant triplet ``(x, x, x)`` to
    ``|x|``.
    """
    return math.sqrt((x.a * x.a + x.b * x.b + x.c * x.c) / 3.0)


@dataclass(frozen=True)
class LinguisticScale:
    """Ordered mapping from verbal labels to triangular fuzzy numbers.

    ``kind`` says what the scale rates ("rating" or "weight") and is used in
    error messages.  Entry order is meaningful: it is the strength order of
    the labels, exposed through :meth:`position`.
    """

    kind: str
    entries: Mapping[str, TriangularFuzzyNumber]

    def __post_init__(self) -> None:
        fixed = {}
        for label, value in self.entries.items():
            if not isinstance(value, TriangularFuzzyNumber):
                value = TriangularFuzzyNumber(*value)
            if not value.is_ordered:
                raise ValueError(f"scale entry {label!r} is not ordered: {value!r}")
            fixed[str(label)] = value
        object.__setattr__(self, "entries", fixed)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.entries)

    def resolve(self, label: str) -> TriangularFuzzyNumber:
        try:
            return self.entries[label]
        except KeyError:
            raise UnknownLabel(label, self.kind) from None

    def position(self, label: str) -> int:
        """Index of ``label`` in the scale's strength order (0 = weakest)."""
        try:
            return self.labels().index(label)
        except ValueError:
            raise UnknownLabel(label, self.kind) from None

    def __contains__(self, label: object) -> bool:
        return label in self.entries


def from_linguistic(label: str, scale: LinguisticScale) -> TriangularFuzzyNumber:
    """Resolve a verbal label against a scale; raises UnknownLabel otherwise."""
    return scale.resolve(label)


#: Seven-step rating vocabulary on the 0–10 range.
RATING_SCALE = LinguisticScale(
    "rating",
    {
        "VP": TriangularFuzzyNumber(0, 0, 1),  # very poor
        "P": TriangularFuzzyNumber(0, 1, 3),  # poor
        "MP": TriangularFuzzyNumber(1, 3, 5),  # medium poor
        "F": TriangularFuzzyNumber(3, 5, 7),  # fair
        "MG": TriangularFuzzyNumber(5, 7, 9),  # medium good
        "G": TriangularFuzzyNumber(7, 9, 10),  # good
        "VG": TriangularFuzzyNumber(9, 10, 10),  # very good
    },
)

#: Seven-step importance vocabulary on the 0–1 range.
WEIGHT_SCALE = LinguisticScale(
    "weight",
    {
        "VL": TriangularFuzzyNumber(0, 0, 0.1),  # very low
        "L": TriangularFuzzyNumber(0, 0.1, 0.3),  # low
        "ML": TriangularFuzzyNumber(0.1, 0.3, 0.5),  # medium low
        "M": TriangularFuzzyNumber(0.3, 0.5, 0.7),  # medium
        "MH": TriangularFuzzyNumber(0.5, 0.7, 0.9),  # medium high
        "H": TriangularFuzzyNumber(0.7, 0.9, 1.0),  # high
        "VH": TriangularFuzzyNumber(0.9, 1.0, 1.0),  # very high
    },
)
