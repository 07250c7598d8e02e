"""Bell amplitude envelope.

A struck tone: linear attack over ``attack_seconds`` multiplied by
``exp(-t / decay_time_constant)``, held until the note's duration and then
faded out linearly over ``release_seconds``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EnvelopeSpec:
    attack_seconds: float = 0.002
    decay_time_constant: float = 0.6
    release_seconds: float = 0.01
    family: str = "bell"

    def __post_init__(self):
        if self.family != "bell":
            raise ValueError(f"unknown envelope family {self.family!r}")
        if self.attack_seconds < 0 or self.release_seconds < 0:
            raise ValueError("attack and release must be >= 0")
        if not self.decay_time_constant > 0:
            raise ValueError("decay_time_constant must be > 0")

    def strike(self, t):
        """Envelope of an undamped strike at t = 0 (no duration gate)."""
        t = np.asarray(t, dtype=np.float64)
        if self.attack_seconds > 0:
            ramp = np.clip(t / self.attack_seconds, 0.0, 1.0)
        else:
            ramp = (t >= 0).astype(np.float64)
        return np.where(t >= 0, ramp * np.exp(-np.maximum(t, 0.0) / self.decay_time_constant), 0.0)

    def gate(self, t, duration: float):
        t = np.asarray(t, dtype=np.float64)
        if self.release_seconds > 0:
            return np.clip(1.0 - (t - duration) / self.release_seconds, 0.0, 1.0)
        return (t < duration).astype(np.float64)

    def __call__(self, t, duration: float = math.inf):
        env = self.strike(t)
        if math.isfinite(duration):
            env = env * self.gate(t, duration)
        return env

    def length(self, duration: float) -> float:
        """Seconds after onset beyond which the envelope is identically zero."""
        return duration + self.release_seconds

    def lipschitz(self) -> float:
        """A bound on |d envelope / dt| for an ungated strike."""
        slope = 1.0 / self.attack_seconds if self.attack_seconds > 0 else math.inf
        return slope + 1.0 / self.decay_time_constant

    def periodic(self, u, period: float):
        """Steady-state envelope of a strike repeated every ``period`` seconds forever.

        ``u`` is the time since the most recent strike, in ``[0, period)``.
        All earlier strikes have finished their attack when
        ``period >= attack_seconds``, so their tails sum to a geometric series.
        """
        if period < self.attack_seconds:
            raise ValueError("period shorter than the attack")
        u = np.asarray(u, dtype=np.float64)
        r = math.exp(-period / self.decay_time_constant)
        tails = np.exp(-u / self.decay_time_constant) * (r / (1.0 - r))
        return self.strike(u) + tails


DEFAULT_ENVELOPE = EnvelopeSpec()
