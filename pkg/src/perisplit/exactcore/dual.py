"""Rationals and dual numbers over the rationals (eps**2 = 0)."""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

Rat = Fraction


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class DualRat:
    """``value + slope*eps`` with ``eps**2 = 0``."""

    __slots__ = ("value", "slope")

    def __init__(self, value=0, slope=0):
        object.__setattr__(self, "value", as_rat(value))
        object.__setattr__(self, "slope", as_rat(slope))

    def __setattr__(self, name, val):
        raise AttributeError("DualRat is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, DualRat):
            return other
        if isinstance(other, (int, Fraction)):
            return DualRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualRat(self.value + o.value, self.slope + o.slope)

    __radd__ = __add__

    def __neg__(self):
        return DualRat(-self.value, -self.slope)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualRat(self.value - o.value, self.slope - o.slope)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualRat(self.value * o.value, self.value * o.slope + self.slope * o.value)

    __rmul__ = __mul__

    def inverse(self) -> "DualRat":
        if self.value == 0:
            raise ZeroDivisionError("dual number with zero value part is not invertible")
        inv = 1 / self.value
        return DualRat(inv, -self.slope * inv * inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        # (v + s eps)^k = v^k + k v^(k-1) s eps
        if k == 0:
            return DualRat(1)
        return DualRat(self.value**k, k * self.value ** (k - 1) * self.slope)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value and self.slope == o.slope

    def __hash__(self):
        if self.slope == 0:
            return hash(self.value)
        return hash((self.value, self.slope))

    def __bool__(self):
        return self.value != 0 or self.slope != 0

    def __str__(self):
        if self.slope == 0:
            return str(self.value)
        if self.value == 0:
            return f"{self.slope}*eps"
        sign = "-" if self.slope < 0 else "+"
        return f"{self.value} {sign} {abs(self.slope)}*eps"

    def __repr__(self):
        return f"DualRat({self.value!s}, {self.slope!s})"

    _PAT = re.compile(r"^\s*(?:([+-]?\d+(?:/\d+)?)\s*)?(?:([+-])\s*(\d+(?:/\d+)?)\s*\*\s*eps)?\s*$")

    @classmethod
    def parse(cls, text: str) -> "DualRat":
        t = text.strip()
        m = re.fullmatch(r"([+-]?\d+(?:/\d+)?)\*eps", t)
        if m:
            return cls(0, m.group(1))
        m = cls._PAT.match(t)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"not a dual number: {text!r}")
        value = Fraction(m.group(1)) if m.group(1) else Fraction(0)
        slope = Fraction(0)
        if m.group(2):
            slope = Fraction(m.group(3)) * (-1 if m.group(2) == "-" else 1)
        return cls(value, slope)


EPS = DualRat(0, 1)
