"""Exact arithmetic in the Eisenstein integers Z[zeta], zeta = (-1 + sqrt(-3))/2.

A point ``a + b*zeta`` is stored as the integer pair ``(a, b)``.  Multiplication
uses ``zeta**2 = -1 - zeta``; conjugation uses ``conj(zeta) = zeta**2``.

``QZeta`` is the rational extension Q(zeta) with ``Fraction`` coordinates.  It
carries the denominators of 3 that appear in the Ito coefficients and in the
martingale-representation coefficients.
"""

from __future__ import annotations

import math
from enum import IntEnum
from fractions import Fraction
from typing import Union

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

Rational = Union[int, Fraction]


def _checked(v: int) -> int:
    if v < INT64_MIN or v > INT64_MAX:
        raise OverflowError(f"Eisenstein component {v} exceeds 64-bit range")
    return v


class Eisenstein:
    """Immutable lattice point ``a + b*zeta`` with 64-bit-checked components."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        if not (INT64_MIN <= a <= INT64_MAX and INT64_MIN <= b <= INT64_MAX):
            _checked(a)
            _checked(b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("Eisenstein is immutable")

    @classmethod
    def coerce(cls, x: Eisenstein | int | tuple[int, int]) -> Eisenstein:
        if isinstance(x, Eisenstein):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        a, b = x
        return cls(int(a), int(b))

    def __iter__(self):
        yield self.a
        yield self.b

    def __repr__(self) -> str:
        return f"Eisenstein({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}ζ"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Eisenstein):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __add__(self, other):
        if isinstance(other, int):
            other = Eisenstein(other)
        if not isinstance(other, Eisenstein):
            return NotImplemented
        return Eisenstein(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = Eisenstein(other)
        if not isinstance(other, Eisenstein):
            return NotImplemented
        return Eisenstein(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        if isinstance(other, int):
            return Eisenstein(other) - self
        return NotImplemented

    def __neg__(self) -> Eisenstein:
        return Eisenstein(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, int):
            return Eisenstein(self.a * other, self.b * other)
        if not isinstance(other, Eisenstein):
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        bb = b1 * b2
        return Eisenstein(a1 * a2 - bb, a1 * b2 + a2 * b1 - bb)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Eisenstein:
        if n < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> Eisenstein:
        return Eisenstein(self.a - self.b, -self.b)

    def norm_sq(self) -> int:
        """Field norm |z|^2 = a^2 - ab + b^2."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def to_cartesian(self) -> tuple[float, float]:
        return (self.a - self.b / 2, self.b * math.sqrt(3) / 2)


def add(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x + y


def sub(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x - y


def mul(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x * y


def conj(x: Eisenstein) -> Eisenstein:
    return x.conj()


def to_cartesian(x: Eisenstein) -> tuple[float, float]:
    return x.to_cartesian()


ZERO = Eisenstein(0, 0)
ONE = Eisenstein(1, 0)
ZETA = Eisenstein(0, 1)
ZETA2 = Eisenstein(-1, -1)


class Step(IntEnum):
    """A walk step zeta**j; the enum value is the exponent j."""

    ONE = 0
    ZETA = 1
    ZETA2 = 2

    @property
    def point(self) -> Eisenstein:
        return _STEP_POINTS[self]

    @property
    def label(self) -> str:
        return ("1", "ζ", "ζ²")[self]

    @classmethod
    def from_point(cls, d: Eisenstein) -> Step:
        try:
            return cls(_STEP_POINTS.index(d))
        except ValueError:
            raise ValueError(f"{d!r} is not a walk step") from None


_STEP_POINTS = (ONE, ZETA, ZETA2)
STEPS = (Step.ONE, Step.ZETA, Step.ZETA2)

# undirected lattice neighbours: +-1, +-zeta, +-zeta^2
NEIGHBOURS = (ONE, ZETA, ZETA2, -ONE, -ZETA, -ZETA2)


class QZeta:
    """Element ``a + b*zeta`` of Q(zeta) with exact rational coordinates."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def coerce(cls, x) -> QZeta:
        if isinstance(x, QZeta):
            return x
        if isinstance(x, Eisenstein):
            return cls(x.a, x.b)
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to QZeta")

    def __repr__(self) -> str:
        return f"QZeta({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"({self.a})+({self.b})ζ"

    def __eq__(self, other: object) -> bool:
        try:
            o = QZeta.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        try:
            o = QZeta.coerce(other)
        except TypeError:
            return NotImplemented
        return QZeta(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = QZeta.coerce(other)
        except TypeError:
            return NotImplemented
        return QZeta(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QZeta.coerce(other) - self

    def __neg__(self) -> QZeta:
        return QZeta(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QZeta(self.a * other, self.b * other)
        try:
            o = QZeta.coerce(other)
        except TypeError:
            return NotImplemented
        bb = self.b * o.b
        return QZeta(self.a * o.a - bb, self.a * o.b + o.a * self.b - bb)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return QZeta(self.a / k, self.b / k)

    def conj(self) -> QZeta:
        return QZeta(self.a - self.b, -self.b)

    def rotate(self, k: int) -> QZeta:
        """Multiply by zeta**k without general multiplication."""
        k %= 3
        if k == 0:
            return self
        if k == 1:
            return QZeta(-self.b, self.a - self.b)
        return QZeta(self.b - self.a, -self.a)

    def abs_sq(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def re(self) -> Fraction:
        """Real part under zeta = (-1 + i*sqrt(3))/2; always rational."""
        return self.a - self.b / 2

    def im_over_sqrt3(self) -> Fraction:
        """Imaginary part divided by sqrt(3); always rational."""
        return self.b / 2

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def to_eisenstein(self) -> Eisenstein:
        if not self.is_integral():
            raise ValueError(f"{self!r} is not in Z[zeta]")
        return Eisenstein(int(self.a), int(self.b))

    def to_complex(self) -> complex:
        return complex(float(self.re()), float(self.im_over_sqrt3()) * math.sqrt(3))
