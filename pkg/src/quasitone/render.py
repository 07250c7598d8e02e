"""Deterministic PCM rendering of an event timeline."""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .envelope import DEFAULT_ENVELOPE, EnvelopeSpec
from .errors import BufferTooLarge, ClippingError, IoFailure, OutOfRange
from .score import EventTimeline

MAX_SAMPLES = 2**31
CLIP_LIMIT = 0.999
FULL_SCALE = 32767


@dataclass(frozen=True)
class RenderConfig:
    sample_rate: int = 44100
    bit_depth: int = 16
    channels: int = 1
    master_gain: float = 0.25
    envelope: EnvelopeSpec = field(default_factory=lambda: DEFAULT_ENVELOPE)

    def __post_init__(self):
        if not isinstance(self.sample_rate, int) or self.sample_rate < 8000:
            raise ValueError("sample_rate must be an integer >= 8000")
        if self.bit_depth != 16 or self.channels != 1:
            raise ValueError("only 16-bit mono output is supported")
        if not 0 < self.master_gain <= 1:
            raise ValueError("master_gain must be in (0, 1]")


def pitch_to_frequency(pitch) -> float:
    """12-TET with A4 (MIDI 69) at 440 Hz."""
    if isinstance(pitch, bool) or not isinstance(pitch, int) or not 0 <= pitch <= 127:
        raise OutOfRange(f"pitch {pitch!r} outside 0..127")
    return 440.0 * 2.0 ** ((pitch - 69) / 12)


def sample_count(horizon, sample_rate: int) -> int:
    return math.ceil(_exact(horizon) * sample_rate)


def _exact(x):
    return Fraction(x) if isinstance(x, float) else x


def _onset_index(onset, sample_rate: int) -> tuple[int, float]:
    """First grid index ``floor(onset * sr)`` and the exact fractional offset as a float."""
    scaled = onset * sample_rate
    idx = math.floor(scaled)
    return idx, float(scaled - idx)


class _Accumulator:
    """Neumaier-compensated running sum, so merge order changes results by < 1 ulp."""

    def __init__(self, n):
        self.total = np.zeros(n)
        self.comp = np.zeros(n)

    def add(self, start, values):
        stop = start + len(values)
        s = self.total[start:stop]
        t = s + values
        self.comp[start:stop] += np.where(np.abs(s) >= np.abs(values), (s - t) + values, (values - t) + s)
        self.total[start:stop] = t

    def result(self):
        return self.total + self.comp


def mix(timeline: EventTimeline, config: RenderConfig = RenderConfig(), split: bool = False):
    """Sum of all tones, before gain; tones are added in timeline order.

    With ``split=True`` the compensated sum is returned unrounded as a
    ``(high, low)`` pair of arrays.
    """
    sr = config.sample_rate
    n = sample_count(timeline.horizon, sr)
    if n > MAX_SAMPLES:
        raise BufferTooLarge(f"{n} samples exceeds {MAX_SAMPLES}")
    acc = _Accumulator(n)
    env = config.envelope
    for ev in timeline.events:
        freq = pitch_to_frequency(ev.pitch)
        duration = float(ev.duration_seconds)
        start, offset = _onset_index(ev.onset, sr)
        if start >= n:
            continue
        length = min(n - start, math.ceil(env.length(duration) * sr) + 2)
        t = (np.arange(length) - offset) / sr
        tone = np.sin(2.0 * math.pi * freq * t) * env(t, duration) * ev.velocity
        acc.add(start, tone)
    if split:
        return acc.total, acc.comp
    return acc.result()


def render(timeline: EventTimeline, config: RenderConfig = RenderConfig()) -> np.ndarray:
    """Float samples in [-1, 1] at ``config.master_gain``.

    Raises ClippingError rather than limiting: a silent limiter would make
    the output depend non-linearly on the mix.
    """
    samples = mix(timeline, config) * config.master_gain
    if samples.size:
        peak = float(np.max(np.abs(samples)))
        if peak > CLIP_LIMIT:
            raise ClippingError(f"peak {peak:.4f} exceeds {CLIP_LIMIT}; lower master_gain")
    return samples


def quantize(samples: np.ndarray) -> np.ndarray:
    """To int16, rounding half away from zero."""
    samples = np.asarray(samples, dtype=np.float64)
    if not np.all(np.isfinite(samples)):
        raise ValueError("samples must be finite")
    scaled = samples * FULL_SCALE
    rounded = np.where(scaled >= 0, np.floor(scaled + 0.5), np.ceil(scaled - 0.5))
    return np.clip(rounded, -FULL_SCALE, FULL_SCALE).astype("<i2")


def wav_bytes(samples, config: RenderConfig = RenderConfig()) -> bytes:
    pcm = quantize(samples).tobytes()
    block_align = config.channels * config.bit_depth // 8
    header = b"".join([
        b"RIFF", struct.pack("<I", 36 + len(pcm)), b"WAVE",
        b"fmt ", struct.pack("<IHHIIHH", 16, 1, config.channels, config.sample_rate,
                             config.sample_rate * block_align, block_align, config.bit_depth),
        b"data", struct.pack("<I", len(pcm)),
    ])
    return header + pcm


def write_wav(samples, config: RenderConfig = RenderConfig(), destination=None) -> bytes:
    """Encode canonical 44-byte-header PCM WAV; write it if ``destination`` is given.

    ``destination`` may be a path or a binary file object.
    """
    data = wav_bytes(samples, config)
    if destination is None:
        return data
    try:
        if hasattr(destination, "write"):
            destination.write(data)
        else:
            with open(os.fspath(destination), "wb") as fh:
                fh.write(data)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return data


def write_samples_text(samples, destination) -> None:
    """One quantized integer sample per line."""
    text = "".join(f"{v}\n" for v in quantize(samples).tolist())
    try:
        with open(os.fspath(destination), "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
