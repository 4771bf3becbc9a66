"""Totally ordered value groups.

Values live in Q^rank under lexicographic order, with a formal ``inf``
adjoined on top.  Finite values support addition, negation, integer scaling
and exact division by a nonzero integer (the divisible hull is needed for
Newton polygon slopes).  Mixing ranks is an error, not a coercion.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _coords(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in values)


@dataclass(frozen=True, slots=True)
class ValueVector:
    """A finite value: a vector of rationals compared lexicographically."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if not isinstance(self.coords, tuple):
            object.__setattr__(self, "coords", _coords(self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "ValueVector") -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "ValueVector") -> "ValueVector":
        self._check(other)
        return ValueVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ValueVector") -> "ValueVector":
        self._check(other)
        return ValueVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ValueVector":
        return ValueVector(tuple(-a for a in self.coords))

    def scaled(self, n: int) -> "ValueVector":
        return ValueVector(tuple(a * n for a in self.coords))

    def div_by_int(self, n: int) -> "ValueVector":
        if n == 0:
            raise ZeroDivisionError("division of a value vector by zero")
        return ValueVector(tuple(a / n for a in self.coords))

    def __lt__(self, other: "ValueVector") -> bool:
        self._check(other)
        return self.coords < other.coords

    def __le__(self, other: "ValueVector") -> bool:
        self._check(other)
        return self.coords <= other.coords

    def __gt__(self, other: "ValueVector") -> bool:
        return other < self

    def __ge__(self, other: "ValueVector") -> bool:
        return other <= self

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


def vec(*values) -> ValueVector:
    return ValueVector(_coords(values))


@dataclass(frozen=True, slots=True)
class ExtendedValue:
    """A value vector or ``inf``; ``inf`` is absorbing for + and maximal."""

    vector: ValueVector | None  # None encodes inf

    @staticmethod
    def finite(*values) -> "ExtendedValue":
        return ExtendedValue(ValueVector(_coords(values)))

    @staticmethod
    def of(v: ValueVector) -> "ExtendedValue":
        return ExtendedValue(v)

    @property
    def is_infinite(self) -> bool:
        return self.vector is None

    @property
    def is_finite(self) -> bool:
        return self.vector is not None

    def __add__(self, other: "ExtendedValue") -> "ExtendedValue":
        if self.vector is None or other.vector is None:
            return INF
        return ExtendedValue(self.vector + other.vector)

    def scaled(self, n: int) -> "ExtendedValue":
        if self.vector is None:
            if n <= 0:
                raise ValueError("cannot scale inf by a non-positive integer")
            return INF
        return ExtendedValue(self.vector.scaled(n))

    def __lt__(self, other: "ExtendedValue") -> bool:
        if self.vector is None:
            return False
        if other.vector is None:
            return True
        return self.vector < other.vector

    def __le__(self, other: "ExtendedValue") -> bool:
        return self == other or self < other

    def __gt__(self, other: "ExtendedValue") -> bool:
        return other < self

    def __ge__(self, other: "ExtendedValue") -> bool:
        return other <= self

    def is_positive(self) -> bool:
        """v > 0 (inf counts as positive)."""
        if self.vector is None:
            return True
        return self.vector.coords > tuple(Fraction(0) for _ in self.vector.coords)

    def is_nonnegative(self) -> bool:
        return self.vector is None or self.vector.coords >= tuple(Fraction(0) for _ in self.vector.coords)

    def is_zero(self) -> bool:
        return self.vector is not None and all(c == 0 for c in self.vector.coords)

    def is_integral(self) -> bool:
        """Finite with integer coordinates; inf is vacuously integral."""
        return self.vector is None or self.vector.is_integral()

    def __str__(self) -> str:
        return "inf" if self.vector is None else str(self.vector)


INF = ExtendedValue(None)


def finite(*values) -> ExtendedValue:
    return ExtendedValue.finite(*values)


def zero_value(rank: int) -> ExtendedValue:
    return ExtendedValue.finite(*([0] * rank))
