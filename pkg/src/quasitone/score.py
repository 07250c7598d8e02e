"""Repeating measures and their exact event timeline."""

from __future__ import annotations

import io
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .envelope import DEFAULT_ENVELOPE, EnvelopeSpec
from .errors import EmptyScore, InvalidPeriod, ParseError, UnknownPitchName
from .exprs import format_exact, format_real, parse_exact
from .golden import PHI, GoldenReal
from .quasicore import BellComponent, FrequencyVector, TorusFunction, rationally_independent

TIMELINE_HEADER = "# quasitone timeline v1"

_NOTE_OFFSETS = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_PITCH_RE = re.compile(r"^([A-Ga-g])([#b]*)(-?\d+)$")
_NAMES = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"]


def pitch_number(name) -> int:
    """MIDI number from scientific pitch notation (``A4`` -> 69) or a raw number."""
    text = str(name).strip()
    if re.fullmatch(r"\d+", text):
        n = int(text)
    else:
        m = _PITCH_RE.match(text)
        if not m:
            raise UnknownPitchName(f"unknown pitch {text!r}")
        letter, accidentals, octave = m.groups()
        n = 12 * (int(octave) + 1) + _NOTE_OFFSETS[letter.upper()]
        n += accidentals.count("#") - accidentals.count("b")
    if not 0 <= n <= 127:
        raise UnknownPitchName(f"pitch {text!r} outside MIDI range 0..127")
    return n


def pitch_name(n: int) -> str:
    return f"{_NAMES[n % 12]}{n // 12 - 1}"


@dataclass(frozen=True)
class NoteEvent:
    onset_in_measure: Fraction
    pitch: int
    velocity: float = 0.8
    duration: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "onset_in_measure", Fraction(self.onset_in_measure))
        object.__setattr__(self, "duration", Fraction(self.duration))
        if not 0 <= self.onset_in_measure < 1:
            raise ValueError(f"onset {self.onset_in_measure} outside [0, 1)")
        if not 0 < self.velocity <= 1:
            raise ValueError(f"velocity {self.velocity} outside (0, 1]")
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if not 0 <= self.pitch <= 127:
            raise ValueError(f"pitch {self.pitch} outside 0..127")


@dataclass(frozen=True)
class Part:
    name: str
    measure_period: object
    events: tuple[NoteEvent, ...]

    def __post_init__(self):
        period = self.measure_period
        if isinstance(period, int):
            period = Fraction(period)
        if not isinstance(period, (Fraction, GoldenReal)):
            raise InvalidPeriod(f"period of {self.name!r} must be exact (Fraction or GoldenReal)")
        if not period > 0:
            raise InvalidPeriod(f"period of {self.name!r} must be > 0, got {format_exact(period)}")
        if not self.events:
            raise ValueError(f"part {self.name!r} has no events")
        object.__setattr__(self, "measure_period", period)
        object.__setattr__(self, "events", tuple(self.events))


@dataclass(frozen=True)
class Score:
    parts: tuple[Part, ...]
    independence_checked: bool = False
    horizon: float | None = None
    warnings: tuple[str, ...] = ()

    @property
    def periods(self):
        return [p.measure_period for p in self.parts]


def check_independence(parts, horizon=None) -> Score:
    """Build a Score, recording whether its periods are rationally independent."""
    parts = tuple(parts)
    if not parts:
        raise EmptyScore("score has no parts")
    if len(parts) == 1:
        return Score(parts, True, horizon)
    verdict = rationally_independent([p.measure_period for p in parts])
    if verdict:
        return Score(parts, True, horizon)
    witness = ", ".join(map(str, verdict.witness))
    warning = f"periods are rationally dependent; witness ({witness})"
    return Score(parts, False, horizon, (warning,))


def raindrops_preset() -> Score:
    """Two bell parts with measures of 1 s and phi s.

    Part 1 is 4/4 at 240 bpm, part 2 is 6/4 at 360/phi bpm. Each measure
    strikes its lower note on the downbeat and its upper note halfway
    through; pitches follow the A4/E5 and C5/G5 split of the two
    components. The within-measure rhythm is an editorial choice.
    """
    def measure(low, high):
        return (NoteEvent(Fraction(0), low, 0.8, Fraction(1)),
                NoteEvent(Fraction(1, 2), high, 0.8, Fraction(1)))

    beats1, bpm1 = 4, Fraction(240)
    beats2, bpm2 = 6, 360 / PHI
    period1 = beats1 * 60 / bpm1
    period2 = beats2 * 60 / bpm2
    parts = (
        Part("raindrops-1", period1, measure(pitch_number("A4"), pitch_number("E5"))),
        Part("raindrops-2", period2, measure(pitch_number("C5"), pitch_number("G5"))),
    )
    return check_independence(parts)


def part_tempo_bpm(beats_per_measure: int, period):
    return beats_per_measure * 60 / period


def combined_period(cycle_lengths) -> int:
    """Steps before cycles of the given lengths all realign: their lcm."""
    cycle_lengths = [int(c) for c in cycle_lengths]
    if not cycle_lengths:
        raise ValueError("need at least one cycle length")
    if any(c < 1 for c in cycle_lengths):
        raise ValueError("cycle lengths must be positive")
    return math.lcm(*cycle_lengths)


# scheduling ---------------------------------------------------------------------


@dataclass(frozen=True)
class TimelineEvent:
    onset: object
    part_index: int
    pitch: int
    velocity: float
    duration_seconds: object

    def sort_key(self):
        return (GoldenReal.coerce(self.onset), self.part_index, self.pitch)


@dataclass(frozen=True)
class EventTimeline:
    events: tuple[TimelineEvent, ...]
    horizon: object

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def onsets(self, part_index: int | None = None):
        return [e.onset for e in self.events if part_index is None or e.part_index == part_index]

    def select(self, part_indices) -> EventTimeline:
        keep = set(part_indices)
        return EventTimeline(tuple(e for e in self.events if e.part_index in keep), self.horizon)


def _exact_horizon(horizon):
    if isinstance(horizon, (Fraction, GoldenReal, int)):
        h = horizon
    elif isinstance(horizon, float):
        if not math.isfinite(horizon):
            raise ValueError("horizon must be finite")
        h = Fraction(horizon)
    else:
        h = parse_exact(str(horizon))
    if not h > 0:
        raise ValueError("horizon must be positive")
    return h


def schedule(score: Score, horizon) -> EventTimeline:
    """Repeat every part from t = 0 until ``horizon``; onsets stay exact."""
    if not score.parts:
        raise EmptyScore("score has no parts")
    h = _exact_horizon(horizon)
    events = []
    for index, part in enumerate(score.parts):
        period = part.measure_period
        n_measures = math.ceil(h / period)  # exact for Fraction and GoldenReal
        for ev in part.events:
            duration = ev.duration * period
            for k in range(n_measures + 1):
                onset = (ev.onset_in_measure + k) * period
                if not onset < h:
                    break
                events.append(TimelineEvent(onset, index, ev.pitch, ev.velocity, duration))
    events.sort(key=TimelineEvent.sort_key)
    return EventTimeline(tuple(events), h)


def torus_function(score: Score, envelope: EnvelopeSpec = DEFAULT_ENVELOPE):
    """The score as a separable torus function of its amplitude envelopes.

    One component per part, one output channel per distinct pitch (in order
    of first appearance). Returns ``(Q, omega, pitches)`` with ``omega`` in Hz.
    """
    pitches = []
    for part in score.parts:
        for ev in part.events:
            if ev.pitch not in pitches:
                pitches.append(ev.pitch)
    components = []
    for part in score.parts:
        strikes = [(ev.onset_in_measure, ev.velocity, pitches.index(ev.pitch)) for ev in part.events]
        components.append(BellComponent(float(part.measure_period), strikes, len(pitches), envelope))
    omega = FrequencyVector.from_periods(score.periods)
    return TorusFunction(components, len(pitches)), omega, pitches


# config grammar ---------------------------------------------------------------

_PART_RE = re.compile(r"^part\s+(\S+)\s+period\s+(\S+)$")
_NOTE_RE = re.compile(r"^note\s+(\S+)\s+at\s+(\S+)\s+vel\s+(\S+)\s+dur\s+(\S+)$")
_HORIZON_RE = re.compile(r"^horizon\s+(\S+)$")


def parse_score(config_text: str) -> Score:
    """Parse the line-oriented score format.

    ::

        horizon 60
        part bells period phi
        note C5 at 0 vel 0.8 dur 1
    """
    horizon = None
    parts = []
    current = None

    def close():
        if current is None:
            return
        name, period, events, start = current
        if not events:
            raise ParseError(f"part {name!r} has no notes", start)
        parts.append(Part(name, period, tuple(events)))

    for lineno, raw in enumerate(config_text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _HORIZON_RE.match(line):
            try:
                horizon = float(m.group(1))
            except ValueError:
                raise ParseError(f"bad horizon {m.group(1)!r}", lineno) from None
            if not (math.isfinite(horizon) and horizon > 0):
                raise ParseError("horizon must be a positive number", lineno)
        elif m := _PART_RE.match(line):
            close()
            name, expr = m.groups()
            try:
                period = parse_exact(expr, allow_pi=False)
            except ValueError as exc:
                raise ParseError(f"bad period {expr!r}: {exc}", lineno) from None
            if not period > 0:
                raise InvalidPeriod(f"period must be > 0, got {expr!r}", lineno)
            current = (name, period, [], lineno)
        elif m := _NOTE_RE.match(line):
            if current is None:
                raise ParseError("note before any part", lineno)
            pitch_txt, at_txt, vel_txt, dur_txt = m.groups()
            try:
                pitch = pitch_number(pitch_txt)
            except UnknownPitchName as exc:
                raise UnknownPitchName(str(exc), lineno) from None
            try:
                event = NoteEvent(Fraction(at_txt), pitch, float(vel_txt), Fraction(dur_txt))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), lineno) from None
            current[2].append(event)
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    close()
    if not parts:
        raise EmptyScore("score has no parts")
    return check_independence(parts, horizon)


def format_score(score: Score) -> str:
    lines = []
    if score.horizon is not None:
        lines.append(f"horizon {score.horizon}")
    for part in score.parts:
        lines.append(f"part {part.name} period {format_exact(part.measure_period)}")
        for ev in part.events:
            lines.append(f"note {pitch_name(ev.pitch)} at {ev.onset_in_measure} vel {ev.velocity} dur {ev.duration}")
    return "\n".join(lines) + "\n"


# timeline export ----------------------------------------------------------------


def write_timeline(timeline: EventTimeline, stream=None) -> str:
    """Tab-separated export, one event per line, 10 decimal places."""
    out = io.StringIO()
    out.write(TIMELINE_HEADER + "\n")
    out.write("# onset\tpart\tpitch\tvelocity\tduration\n")
    for e in timeline.events:
        out.write(
            f"{format_real(e.onset)}\t{e.part_index}\t{e.pitch}\t"
            f"{format_real(e.velocity)}\t{format_real(e.duration_seconds)}\n"
        )
    text = out.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def read_timeline(text: str) -> list[tuple[float, int, int, float, float]]:
    """Parse an exported timeline back into float rows."""
    lines = text.splitlines()
    if not lines or lines[0] != TIMELINE_HEADER:
        raise ParseError("missing timeline header", 1)
    rows = []
    for lineno, line in enumerate(lines[1:], 2):
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise ParseError(f"expected 5 fields, got {len(fields)}", lineno)
        onset, part, pitch, vel, dur = fields
        rows.append((float(onset), int(part), int(pitch), float(vel), float(dur)))
    return rows
