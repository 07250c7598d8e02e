"""Continued fractions and best rational approximants.

Inputs are exact (``int``, :class:`~fractions.Fraction`,
:class:`~quasitone.golden.GoldenReal`) or carry a declared precision
(:class:`~quasitone.decimalreal.DecimalReal`). Plain floats are refused:
their continued fraction stops meaning anything after ~15 digits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator

from .decimalreal import DecimalReal
from .errors import PrecisionExhausted
from .golden import GoldenReal

__all__ = [
    "Kind",
    "ContinuedFraction",
    "expand_cf",
    "convergents",
    "best_approximants",
    "farey_neighbors",
    "as_real",
]


class Kind(enum.Enum):
    """Which inequality defines "best".

    FIRST compares ``|y - c/d|``; SECOND compares ``|d*y - c|``.
    """

    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class ContinuedFraction:
    coefficients: tuple[int, ...]
    terminated: bool = False

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coefficients)
        if not coeffs:
            raise ValueError("continued fraction needs at least one coefficient")
        if any(a < 1 for a in coeffs[1:]):
            raise ValueError("partial quotients after the first must be >= 1")
        object.__setattr__(self, "coefficients", coeffs)

    def __str__(self):
        head, *tail = self.coefficients
        return f"[{head}; {', '.join(map(str, tail))}]" if tail else f"[{head}]"


def as_real(x):
    """Validate an approximant input and normalise ints to Fractions."""
    if isinstance(x, bool):
        raise TypeError("bool is not a real value")
    if isinstance(x, (GoldenReal, DecimalReal, Fraction)):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(
            "floats are not accepted; pass a Fraction, GoldenReal, or DecimalReal with declared precision"
        )
    raise TypeError(f"unsupported value type {type(x).__name__}")


def _cf_terms(x) -> Iterator[int]:
    """Yield partial quotients; PrecisionExhausted is raised lazily."""
    x = as_real(x)
    if isinstance(x, DecimalReal):
        lo, hi = x.lo, x.hi
        while True:
            a = math.floor(lo)
            if math.floor(hi) != a:
                raise PrecisionExhausted("next partial quotient not certified by declared precision")
            yield a
            flo, fhi = lo - a, hi - a
            if flo == 0:
                if fhi == 0:
                    return
                raise PrecisionExhausted("cannot tell whether the expansion terminates here")
            lo, hi = 1 / fhi, 1 / flo
    else:
        while True:
            a = math.floor(x)
            yield a
            frac = x - a
            if not frac:
                return
            x = 1 / frac


def expand_cf(x, max_terms: int) -> ContinuedFraction:
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    coeffs = []
    terms = _cf_terms(x)
    for a in terms:
        coeffs.append(a)
        if len(coeffs) == max_terms:
            break
    else:
        return ContinuedFraction(tuple(coeffs), terminated=True)
    # filled max_terms; it terminated only if nothing follows
    if isinstance(as_real(x), DecimalReal):
        return ContinuedFraction(tuple(coeffs), terminated=False)
    try:
        next(terms)
    except StopIteration:
        return ContinuedFraction(tuple(coeffs), terminated=True)
    return ContinuedFraction(tuple(coeffs), terminated=False)


def _convergent_pairs(coeffs) -> Iterator[tuple[int, int]]:
    p_prev, q_prev, p, q = 0, 1, 1, 0
    for a in coeffs:
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        yield p, q


def convergents(cf: ContinuedFraction) -> list[Fraction]:
    return [Fraction(p, q) for p, q in _convergent_pairs(cf.coefficients)]


class _Expansion:
    """Lazily extended table of convergents ``p[k]/q[k]`` of one real.

    Index ``k`` is stored at position ``k + 2`` so that the seeds
    ``p[-2]/q[-2] = 0/1`` and ``p[-1]/q[-1] = 1/0`` sit at 0 and 1.
    """

    def __init__(self, x):
        self.x = x
        self._terms = _cf_terms(x)
        self.a: list[int] = []
        self.p = [0, 1]
        self.q = [1, 0]
        self.terminated = False

    def _extend(self) -> bool:
        if self.terminated:
            return False
        try:
            a = next(self._terms)
        except StopIteration:
            self.terminated = True
            return False
        self.a.append(a)
        self.p.append(a * self.p[-1] + self.p[-2])
        self.q.append(a * self.q[-1] + self.q[-2])
        return True

    def cover(self, max_den: int) -> None:
        """Extend until some convergent denominator exceeds ``max_den``."""
        while self.q[-1] <= max_den and self._extend():
            pass

    def last_index_within(self, max_den: int) -> int:
        self.cover(max_den)
        k = len(self.a) - 1
        while self.q[k + 2] > max_den:
            k -= 1
        return k


def farey_neighbors(x, max_den: int, _expansion: _Expansion | None = None) -> tuple[Fraction, Fraction]:
    """The fractions with denominator <= ``max_den`` closest to ``x`` from each side.

    Both entries equal ``x`` when ``x`` itself has such a denominator.
    """
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    exp = _expansion or _Expansion(as_real(x))
    k = exp.last_index_within(max_den)
    pk, qk = exp.p[k + 2], exp.q[k + 2]
    if exp.terminated and k == len(exp.a) - 1:
        v = Fraction(pk, qk)
        return v, v
    pm, qm = exp.p[k + 1], exp.q[k + 1]
    t = (max_den - qm) // qk
    other = Fraction(pm + t * pk, qm + t * qk)
    conv = Fraction(pk, qk)
    return (conv, other) if conv < other else (other, conv)


def _candidates(exp: _Expansion, max_den: int) -> set[Fraction]:
    # Convergents plus the upper half of each run of intermediate fractions;
    # every best approximant of either kind lies in this set.
    exp.cover(max_den)
    out = {Fraction(exp.a[0] + 1)}
    for k in range(len(exp.a)):
        pk, qk = exp.p[k + 2], exp.q[k + 2]
        if qk > max_den:
            break
        out.add(Fraction(pk, qk))
        if k + 1 == len(exp.a):
            break
        pm, qm = exp.p[k + 1], exp.q[k + 1]
        a_next = exp.a[k + 1]
        for t in range(max(1, a_next // 2), a_next):
            den = qm + t * qk
            if den > max_den:
                break
            out.add(Fraction(pm + t * pk, den))
    return out


def _error(x, f: Fraction, kind: Kind):
    if kind is Kind.FIRST:
        return abs(x - f)
    return abs(f.denominator * x - f.numerator)


def _sign(v) -> int:
    if isinstance(v, (GoldenReal, DecimalReal)):
        return v.sign()
    return (v > 0) - (v < 0)


def _strictly_better(x, f: Fraction, g: Fraction, kind: Kind) -> bool:
    """True iff ``f`` beats ``g`` strictly under ``kind`` (ties lose)."""
    return _sign(_error(x, g, kind) - _error(x, f, kind)) > 0


def is_best_approximant(x, f: Fraction, kind: Kind = Kind.SECOND, _expansion=None) -> bool:
    """Check the defining inequality for ``f`` against every ``c/d`` with ``d <= f.denominator``.

    The competitors that matter are the Farey neighbours of ``x`` among
    denominators below ``f.denominator`` and the adjacent numerators over
    the same denominator; every other fraction is provably farther.
    """
    x = as_real(x)
    b = f.denominator
    for c in (f.numerator - 1, f.numerator + 1):
        if not _strictly_better(x, f, Fraction(c, b), kind):
            return False
    if b > 1:
        exp = _expansion or _Expansion(x)
        for g in set(farey_neighbors(x, b - 1, exp)):
            if g != f and not _strictly_better(x, f, g, kind):
                return False
    return True


def best_approximants(x, max_denominator: int, kind: Kind = Kind.SECOND) -> list[Fraction]:
    """All best rational approximants of ``x`` with denominator <= ``max_denominator``.

    Sorted by denominator. Ties are resolved by exclusion.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    kind = Kind(kind)
    x = as_real(x)
    exp = _Expansion(x)
    found = [f for f in _candidates(exp, max_denominator) if is_best_approximant(x, f, kind, exp)]
    found.sort(key=lambda f: f.denominator)
    return found
