"""Parsing and printing of exact numeric expressions.

Grammar: a sum of terms, each a rational (``3``, ``-3/2``, ``0.25``), a
rational times ``phi`` or ``pi`` (``3/2*phi``), or a bare ``phi`` / ``pi``.
A decimal ending in ``...`` (``3.14159...``) is a truncated expansion and
becomes a :class:`DecimalReal` rather than an exact rational.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

from .decimalreal import PI, DecimalReal
from .golden import GoldenReal, format_golden

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad number {text!r}") from None


def parse_exact(text: str, allow_pi: bool = True):
    """Parse to ``Fraction``, ``GoldenReal`` or (with pi or ``...``) ``DecimalReal``."""
    s = text.replace(" ", "").lower()
    if not s:
        raise ValueError("empty expression")
    pos = 0
    rational = Fraction(0)
    phi = Fraction(0)
    pi = Fraction(0)
    inexact = []
    for m in _TERM_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        term = m.group(2)
        coef_txt, _, symbol = term.rpartition("*") if "*" in term else ("", "", term)
        if symbol in ("phi", "pi"):
            coef = _rational(coef_txt) if coef_txt else Fraction(1)
            if symbol == "pi":
                if not allow_pi:
                    raise ValueError("pi is not allowed here")
                pi += sign * coef
            else:
                phi += sign * coef
        elif coef_txt:
            raise ValueError(f"unknown symbol {symbol!r}")
        elif term.endswith("..."):
            d = DecimalReal.parse(term[:-3])
            inexact.append(d if sign > 0 else -d)
        else:
            rational += sign * _rational(term)
    if pos != len(s):
        raise ValueError(f"cannot parse {text!r}")
    if pi or inexact:
        value = DecimalReal.enclose(GoldenReal(rational, phi)) + pi * PI
        for d in inexact:
            value = value + d
        return value
    if phi:
        return GoldenReal(rational, phi)
    return rational


def format_exact(x) -> str:
    if isinstance(x, GoldenReal):
        return format_golden(x)
    if isinstance(x, (int, Rational)):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)
    if isinstance(x, DecimalReal):
        return format_real(x)
    raise TypeError(f"not an exact value: {x!r}")


def format_fraction(f: Fraction) -> str:
    """Always ``a/b``, including integers (``3/1``)."""
    return f"{f.numerator}/{f.denominator}"


def format_real(x, places: int = 10) -> str:
    """Fixed-point text, rounded half away from zero.

    Exact values are rounded exactly; a DecimalReal rounds its midpoint.
    """
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite value")
        x = Fraction(Decimal(repr(x)))
    scale = 10**places
    if isinstance(x, DecimalReal):
        x = x.mid
    negative = x < 0
    mag = -x if negative else x
    n = math.floor(mag * scale + Fraction(1, 2))
    whole, frac = divmod(n, scale)
    sign = "-" if negative and n else ""
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"
