"""Quasiperiodic music: exact scheduling of rationally independent measures.

Also the supporting number theory: continued fractions, best rational
approximants, golden-field arithmetic, substitution words.
"""

__version__ = "0.1.0"

from .decimalreal import PI, DecimalReal
from .errors import QuasitoneError
from .golden import PHI, GoldenReal
from .numbertheory import ContinuedFraction, Kind, best_approximants, convergents, expand_cf
from .quasicore import (
    FrequencyVector,
    QuasiperiodReport,
    TorusFunction,
    evaluate,
    quasiperiods,
    rationally_independent,
    verify_near_coincidence,
)
from .render import RenderConfig, pitch_to_frequency, render, write_wav
from .score import (
    EventTimeline,
    NoteEvent,
    Part,
    Score,
    combined_period,
    parse_score,
    raindrops_preset,
    schedule,
)
from .words import SubstitutionRule, Word, classify_morse_hedlund, complexity, expand, fibonacci_word
