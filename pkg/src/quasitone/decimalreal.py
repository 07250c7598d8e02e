"""Reals known only to a declared number of decimal digits.

A :class:`DecimalReal` is a closed rational interval ``[lo, hi]`` that is
guaranteed to contain the true value. Arithmetic propagates the enclosure;
any question the enclosure cannot answer (a sign, a floor) raises
:class:`~quasitone.errors.PrecisionExhausted` instead of guessing.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import PrecisionExhausted
from .golden import GoldenReal

# 50 decimal places, truncated.
PI_DIGITS = "3.14159265358979323846264338327950288419716939937510"

_GOLDEN_ENCLOSURE_DIGITS = 80
_DECIMAL_RE = re.compile(r"^([+-]?)(\d+)(?:\.(\d*))?$")


class DecimalReal:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if hi < lo:
            raise ValueError("empty enclosure")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("DecimalReal is immutable")

    @classmethod
    def parse(cls, text: str, digits: int | None = None) -> DecimalReal:
        """Parse a decimal string whose last stated digit may be off by one unit.

        ``digits`` overrides the number of trustworthy fractional digits; by
        default every written fractional digit counts.
        """
        m = _DECIMAL_RE.match(text.strip())
        if not m:
            raise ValueError(f"not a decimal literal: {text!r}")
        sign, whole, frac = m.group(1), m.group(2), m.group(3) or ""
        value = Fraction(int(whole + frac), 10 ** len(frac))
        if sign == "-":
            value = -value
        places = len(frac) if digits is None else digits
        ulp = Fraction(1, 10**places)
        return cls(value - ulp, value + ulp)

    @classmethod
    def enclose(cls, value, digits: int = _GOLDEN_ENCLOSURE_DIGITS) -> DecimalReal:
        if isinstance(value, DecimalReal):
            return value
        if isinstance(value, GoldenReal):
            if value.is_rational:
                return cls(value.rational_part)
            scale = 10**digits
            k = value.floor_scaled(scale)
            return cls(Fraction(k, scale), Fraction(k + 1, scale))
        if isinstance(value, (int, Rational)):
            return cls(value)
        raise TypeError(f"cannot enclose {type(value).__name__}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, DecimalReal):
            return other
        if isinstance(other, (int, Rational, GoldenReal)):
            return DecimalReal.enclose(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DecimalReal(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return DecimalReal(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DecimalReal(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return DecimalReal(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> DecimalReal:
        if self.lo <= 0 <= self.hi:
            if self.lo == self.hi == 0:
                raise ZeroDivisionError("DecimalReal division by zero")
            raise PrecisionExhausted("divisor enclosure contains zero")
        return DecimalReal(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __abs__(self):
        s = self.sign()
        return -self if s < 0 else self

    # certified queries ----------------------------------------------------

    def sign(self) -> int:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        raise PrecisionExhausted(f"sign undecided within [{float(self.lo)}, {float(self.hi)}]")

    def __floor__(self) -> int:
        f = math.floor(self.lo)
        if math.floor(self.hi) != f:
            raise PrecisionExhausted("floor undecided at declared precision")
        return f

    def floor_scaled(self, scale: int) -> int:
        return math.floor(self * scale)

    def _cmp(self, other):
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"DecimalReal(~{float(self):.17g}, width={float(self.width):.3g})"


PI = DecimalReal.parse(PI_DIGITS)
