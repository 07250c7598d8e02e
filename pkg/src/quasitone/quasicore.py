"""Quasiperiodic functions on the n-torus and their near-coincidences.

Frequencies and periods live in Q(phi) so that independence questions are
decided exactly; values that involve pi are handled as
:class:`~quasitone.decimalreal.DecimalReal` enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

import numpy as np

from .decimalreal import DecimalReal
from .envelope import EnvelopeSpec, DEFAULT_ENVELOPE
from .errors import DimensionMismatch, ZeroPeriod
from .golden import PHI, GoldenReal
from .numbertheory import Kind, as_real, best_approximants

__all__ = [
    "GoldenReal",
    "PHI",
    "Independence",
    "rationally_independent",
    "FrequencyVector",
    "SineComponent",
    "BellComponent",
    "TorusFunction",
    "evaluate",
    "QuasiperiodReport",
    "quasiperiods",
    "verify_near_coincidence",
]

TWO_PI = 2.0 * math.pi


# rational independence ------------------------------------------------------


@dataclass(frozen=True)
class Independence:
    independent: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.independent


def _embed(value) -> tuple[Fraction, Fraction]:
    if isinstance(value, GoldenReal):
        return value.rational_part, value.golden_part
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return Fraction(value), Fraction(0)
    raise TypeError(
        f"rational independence is decided exactly only inside Q(phi); got {type(value).__name__}"
    )


def _kernel_vector(rows: list[list[Fraction]], n: int) -> list[Fraction] | None:
    """One nonzero rational vector y with rows @ y == 0, or None if the kernel is trivial."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    y = [Fraction(0)] * n
    y[fc] = Fraction(1)
    for i, pc in enumerate(pivots):
        y[pc] = -rows[i][fc]
    return y


def _integer_witness(y: list[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(v.denominator for v in y))
    ints = [int(v * den) for v in y]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def rationally_independent(values: Sequence) -> Independence:
    """Decide rational independence of elements of Q(phi).

    Each value is a vector over the basis {1, phi}; the values are
    independent iff those vectors are linearly independent over Q. A
    dependence comes with a primitive integer witness ``y`` with
    ``sum(y_i * value_i) == 0``.
    """
    values = list(values)
    if not values:
        raise ValueError("need at least one value")
    coords = [_embed(v) for v in values]
    if any(a == 0 and b == 0 for a, b in coords):
        raise ValueError("values must be nonzero")
    rows = [[a for a, _ in coords], [b for _, b in coords]]
    y = _kernel_vector(rows, len(values))
    if y is None:
        return Independence(True)
    return Independence(False, _integer_witness(y))


# torus functions ----------------------------------------------------------------


@dataclass(frozen=True)
class FrequencyVector:
    """Frequencies as exact values; ``units`` is ``"rad"`` (radians per unit x) or ``"hz"``."""

    entries: tuple
    units: str = "rad"

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ValueError("frequency vector is empty")
        if self.units not in ("rad", "hz"):
            raise ValueError(f"units must be 'rad' or 'hz', got {self.units!r}")
        for w in entries:
            if not isinstance(w, (GoldenReal, DecimalReal, Rational)) or isinstance(w, bool):
                raise TypeError(f"frequency {w!r} is not an exact value")
            if w == 0:
                raise ValueError("frequencies must be nonzero")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def angles(self, x) -> np.ndarray:
        """Torus coordinates reduced to [0, 2 pi), shape ``x.shape + (n,)``."""
        x = np.asarray(x, dtype=np.float64)[..., None]
        w = np.array([float(v) for v in self.entries])
        if self.units == "hz":
            return TWO_PI * np.mod(x * w, 1.0)
        return np.mod(x * w, TWO_PI)

    @classmethod
    def from_periods(cls, periods) -> FrequencyVector:
        return cls(tuple(1 / as_real(p) for p in periods), units="hz")


class SineComponent:
    """``theta -> weights * sin(theta)``."""

    def __init__(self, weights=(1.0,)):
        self.weights = np.asarray(weights, dtype=np.float64)
        self.output_dimension = len(self.weights)
        self.lipschitz = float(np.abs(self.weights).sum())

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=np.float64)
        return np.sin(theta)[..., None] * self.weights


class BellComponent:
    """Steady-state bell envelopes of one endlessly repeated measure.

    ``strikes`` holds ``(onset_fraction, velocity, channel)``; the torus
    angle is read as the position inside the measure. Each channel carries
    the summed amplitude envelope of its strikes, so the output is the
    envelope vector rather than audio.
    """

    def __init__(self, period_seconds: float, strikes, output_dimension: int,
                 envelope: EnvelopeSpec = DEFAULT_ENVELOPE):
        self.period = float(period_seconds)
        self.strikes = [(float(o), float(v), int(ch)) for o, v, ch in strikes]
        self.output_dimension = output_dimension
        self.envelope = envelope
        for _, _, ch in self.strikes:
            if not 0 <= ch < output_dimension:
                raise DimensionMismatch(f"channel {ch} outside 0..{output_dimension - 1}")
        r = math.exp(-self.period / envelope.decay_time_constant)
        per_second = envelope.lipschitz() + r / (1 - r) / envelope.decay_time_constant
        # d/dtheta = (period / 2pi) d/dt
        self.lipschitz = per_second * self.period / TWO_PI * sum(v for _, v, _ in self.strikes)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=np.float64)
        phase = np.mod(theta / TWO_PI, 1.0)
        out = np.zeros(theta.shape + (self.output_dimension,))
        for onset, vel, ch in self.strikes:
            u = np.mod(phase - onset, 1.0) * self.period
            out[..., ch] += vel * self.envelope.periodic(u, self.period)
        return out


@dataclass
class TorusFunction:
    """Separable ``Q(v1..vn) = sum_i Q_i(v_i)`` with every ``Q_i`` 2pi-periodic."""

    components: list[Callable]
    output_dimension: int

    def __post_init__(self):
        if not self.components:
            raise ValueError("torus function needs at least one component")
        for c in self.components:
            dim = getattr(c, "output_dimension", self.output_dimension)
            if dim != self.output_dimension:
                raise DimensionMismatch(f"component output {dim} != {self.output_dimension}")

    def __call__(self, angles):
        angles = np.asarray(angles, dtype=np.float64)
        if angles.shape[-1] != len(self.components):
            raise DimensionMismatch(f"{angles.shape[-1]} angles for {len(self.components)} components")
        total = np.zeros(angles.shape[:-1] + (self.output_dimension,))
        for i, comp in enumerate(self.components):
            total = total + comp(np.mod(angles[..., i], TWO_PI))
        return total

    def lipschitz(self, omega: FrequencyVector) -> float:
        """Bound on |d f / dx| per component, maximised over components."""
        scale = TWO_PI if omega.units == "hz" else 1.0
        return max(getattr(c, "lipschitz", math.inf) * abs(float(w)) * scale
                   for c, w in zip(self.components, omega.entries))


def evaluate(Q: TorusFunction, omega: FrequencyVector, x):
    """``f(x) = Q(x * omega_1, ..., x * omega_n)``; vectorised over ``x``."""
    if len(omega) != len(Q.components):
        raise DimensionMismatch(f"{len(omega)} frequencies for {len(Q.components)} components")
    return Q(omega.angles(x))


# quasiperiods -------------------------------------------------------------------


@dataclass(frozen=True)
class QuasiperiodReport:
    approximant: Fraction
    coincidence_pair: tuple
    gap: object
    quasiperiod: object

    @property
    def gap_float(self) -> float:
        return float(self.gap)

    @property
    def pair_floats(self) -> tuple[float, float]:
        return float(self.coincidence_pair[0]), float(self.coincidence_pair[1])

    @property
    def quasiperiod_float(self) -> float:
        return float(self.quasiperiod)


def _check_period(p):
    p = as_real(p)
    s = p.sign() if isinstance(p, (GoldenReal, DecimalReal)) else (p > 0) - (p < 0)
    if s == 0:
        raise ZeroPeriod("period is zero")
    if s < 0:
        raise ZeroPeriod("period must be positive")
    return p


def _min(x, y):
    return x if x <= y else y


def quasiperiods(p1, p2, max_denominator: int, kind: Kind = Kind.SECOND) -> list[QuasiperiodReport]:
    """Near-coincidences of two period grids from best approximants of ``p2 / p1``.

    An approximant ``a/b`` pairs ``a`` repetitions of ``p1`` with ``b``
    repetitions of ``p2``. The quasiperiod is the smaller of the two times;
    both are kept in the report. Approximants with ``a <= 0`` give no
    positive coincidence and are skipped.
    """
    p1, p2 = _check_period(p1), _check_period(p2)
    kind = Kind(kind)
    if isinstance(p1, DecimalReal) or isinstance(p2, DecimalReal):
        p1, p2 = DecimalReal.enclose(p1), DecimalReal.enclose(p2)
    ratio = p2 / p1
    reports = []
    for f in best_approximants(ratio, max_denominator, kind):
        a, b = f.numerator, f.denominator
        if a <= 0:
            continue
        t1, t2 = a * p1, b * p2
        reports.append(QuasiperiodReport(f, (t1, t2), abs(t1 - t2), _min(t1, t2)))
    return reports


def verify_near_coincidence(p1, p2, report: QuasiperiodReport, scan_resolution: float = 1e-9) -> bool:
    """Scan period starts ``(i*p1, j*p2)``, ``i, j >= 1``, up to the report's horizon.

    Returns False if the report's own pair or gap does not check out, or if
    any pair comes closer than the reported gap by more than
    ``scan_resolution``. Runs in floating point, independently of the exact
    arithmetic that produced the report.
    """
    if scan_resolution <= 0:
        raise ValueError("scan_resolution must be positive")
    f1, f2 = float(p1), float(p2)
    gap = float(report.gap)
    a, b = report.approximant.numerator, report.approximant.denominator
    t1, t2 = report.pair_floats
    if abs(t1 - a * f1) > scan_resolution or abs(t2 - b * f2) > scan_resolution:
        return False
    if abs(abs(a * f1 - b * f2) - gap) > scan_resolution:
        return False
    horizon = float(report.quasiperiod) + gap + scan_resolution
    for i in range(1, int(horizon / f1) + 1):
        x = i * f1
        # the nearest start of the other grid is the only contender for this i
        for j in (math.floor(x / f2), math.ceil(x / f2)):
            if j < 1 or j * f2 > horizon:
                continue
            if abs(x - j * f2) < gap - scan_resolution:
                return False
    return True
