"""Exact arithmetic in the quadratic field Q(phi), phi = (1 + sqrt 5) / 2."""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

_DEC_PREC = 110


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


class GoldenReal:
    """An element ``rational_part + golden_part * phi`` of Q(phi).

    Values are immutable and hashable; a GoldenReal whose golden part is zero
    hashes and compares equal to the corresponding :class:`Fraction`, so mixed
    sets of onsets behave as expected. Sign, comparison and floor are decided
    exactly with integer square roots, never with floating point.
    """

    __slots__ = ("rational_part", "golden_part")

    def __init__(self, rational_part=0, golden_part=0):
        object.__setattr__(self, "rational_part", _as_fraction(rational_part))
        object.__setattr__(self, "golden_part", _as_fraction(golden_part))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenReal is immutable")

    @classmethod
    def coerce(cls, value) -> GoldenReal:
        if isinstance(value, GoldenReal):
            return value
        return cls(_as_fraction(value), 0)

    @property
    def is_rational(self) -> bool:
        return self.golden_part == 0

    def conjugate(self) -> GoldenReal:
        # phi -> 1 - phi
        return GoldenReal(self.rational_part + self.golden_part, -self.golden_part)

    def norm(self) -> Fraction:
        a, b = self.rational_part, self.golden_part
        return a * a + a * b - b * b

    # arithmetic ---------------------------------------------------------

    def _other(self, other):
        if isinstance(other, GoldenReal):
            return other
        if isinstance(other, (int, Rational)):
            return GoldenReal(other, 0)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GoldenReal(self.rational_part + o.rational_part, self.golden_part + o.golden_part)

    __radd__ = __add__

    def __neg__(self):
        return GoldenReal(-self.rational_part, -self.golden_part)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GoldenReal(self.rational_part - o.rational_part, self.golden_part - o.golden_part)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.rational_part, self.golden_part
        c, d = o.rational_part, o.golden_part
        bd = b * d
        # phi^2 = phi + 1
        return GoldenReal(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def reciprocal(self) -> GoldenReal:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GoldenReal division by zero")
        c = self.conjugate()
        return GoldenReal(c.rational_part / n, c.golden_part / n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** -exponent
        result, base = GoldenReal(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # exact order ----------------------------------------------------------

    def sign(self) -> int:
        u = 2 * self.rational_part + self.golden_part  # 2x = u + b*sqrt(5)
        v = self.golden_part
        su = (u > 0) - (u < 0)
        sv = (v > 0) - (v < 0)
        if sv == 0:
            return su
        if su == 0 or su == sv:
            return sv
        return su if u * u > 5 * v * v else sv

    def __floor__(self) -> int:
        # 2x = u + b*sqrt5 ; bring to a common integer denominator
        u = 2 * self.rational_part + self.golden_part
        v = self.golden_part
        den = math.lcm(u.denominator, v.denominator)
        U = u.numerator * (den // u.denominator)
        V = v.numerator * (den // v.denominator)
        D = 2 * den  # x == (U + V*sqrt5) / D
        if V == 0:
            return U // D
        r = math.isqrt(5 * V * V)  # sqrt(5V^2) lies strictly inside (r, r + 1)
        if V > 0:
            return (U + r) // D
        return (U - r - 1) // D

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def _cmp(self, other):
        if isinstance(other, float):
            other = _as_fraction(other)
        o = self._other(other)
        if o is None:
            return None
        return (self - o).sign()

    def __eq__(self, other):
        if isinstance(other, GoldenReal):
            return self.rational_part == other.rational_part and self.golden_part == other.golden_part
        if isinstance(other, (int, Rational)):
            return self.golden_part == 0 and self.rational_part == other
        if isinstance(other, float):
            return self.golden_part == 0 and math.isfinite(other) and self.rational_part == Fraction(other)
        return NotImplemented

    def __hash__(self):
        if self.golden_part == 0:
            return hash(self.rational_part)
        return hash((self.rational_part, self.golden_part))

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

    def __bool__(self):
        return self.rational_part != 0 or self.golden_part != 0

    # conversions ----------------------------------------------------------

    def to_decimal(self, digits: int = 50) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + _DEC_PREC
            sqrt5 = Decimal(5).sqrt()
            phi = (1 + sqrt5) / 2
            a, b = self.rational_part, self.golden_part
            value = Decimal(a.numerator) / Decimal(a.denominator) + Decimal(b.numerator) / Decimal(b.denominator) * phi
            return +value

    def floor_scaled(self, scale: int) -> int:
        """Exact ``floor(self * scale)``."""
        return math.floor(self * scale)

    def __float__(self):
        if self.golden_part == 0:
            return float(self.rational_part)
        return float(self.to_decimal(30))

    def __repr__(self):
        return f"GoldenReal({self.rational_part!s}, {self.golden_part!s})"

    def __str__(self):
        return format_golden(self)


def format_golden(x: GoldenReal) -> str:
    """Render as ``a+b*phi`` (terms omitted when zero)."""
    a, b = x.rational_part, x.golden_part
    if b == 0:
        return str(a)
    bstr = "phi" if b == 1 else "-phi" if b == -1 else f"{b}*phi"
    if a == 0:
        return bstr
    if bstr.startswith("-"):
        return f"{a}{bstr}"
    return f"{a}+{bstr}"


PHI = GoldenReal(0, 1)
