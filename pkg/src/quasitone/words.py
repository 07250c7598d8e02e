"""Substitution (Lindenmayer) words and subword complexity."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidRule, LengthExceeded, UnknownSymbol

DEFAULT_MAX_LENGTH = 1_000_000
MAX_ALPHABET = 16

FIBONACCI_RULE_TEXT = "0:01,1:0"


@dataclass(frozen=True)
class Word:
    symbols: str
    provenance: str = ""

    def __str__(self):
        return self.symbols

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.symbols == other.symbols
        if isinstance(other, str):
            return self.symbols == other
        return NotImplemented

    def __hash__(self):
        return hash(self.symbols)


def _symbols(word) -> str:
    return word.symbols if isinstance(word, Word) else str(word)


@dataclass(frozen=True)
class SubstitutionRule:
    """A parallel rewriting map, one single-character symbol to one non-empty string."""

    rules: dict[str, str]
    alphabet: tuple[str, ...] = field(default=())

    def __post_init__(self):
        alphabet = tuple(self.alphabet) or tuple(self.rules)
        if len(set(alphabet)) != len(alphabet):
            raise InvalidRule("alphabet symbols must be distinct")
        if not 2 <= len(alphabet) <= MAX_ALPHABET:
            raise InvalidRule(f"alphabet must have 2..{MAX_ALPHABET} symbols, got {len(alphabet)}")
        for s in alphabet:
            if len(s) != 1:
                raise InvalidRule(f"symbols must be single characters, got {s!r}")
        if set(self.rules) != set(alphabet):
            raise InvalidRule("every alphabet symbol needs exactly one rule")
        for s, image in self.rules.items():
            if not image:
                raise InvalidRule(f"replacement for {s!r} is empty")
            stray = set(image) - set(alphabet)
            if stray:
                raise UnknownSymbol(f"replacement for {s!r} uses {''.join(sorted(stray))!r}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "rules", dict(self.rules))

    @classmethod
    def parse(cls, text: str) -> SubstitutionRule:
        """Parse ``"A:AB,B:A"``."""
        rules = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            src, sep, image = item.partition(":")
            if not sep:
                raise InvalidRule(f"expected symbol:replacement, got {item!r}")
            src = src.strip()
            if src in rules:
                raise InvalidRule(f"duplicate rule for {src!r}")
            rules[src] = image.strip()
        return cls(rules)

    def apply(self, word: str) -> str:
        return word.translate(str.maketrans(self.rules))

    def __str__(self):
        return ",".join(f"{s}:{self.rules[s]}" for s in self.alphabet)


FIBONACCI_RULE = SubstitutionRule.parse(FIBONACCI_RULE_TEXT)


def expand(rule: SubstitutionRule, axiom, iterations: int, max_length: int = DEFAULT_MAX_LENGTH) -> Word:
    """Apply ``rule`` to every symbol of ``axiom``, ``iterations`` times.

    Growth past ``max_length`` is cut off after each round. Because every
    image is non-empty, a prefix of the input determines the same-length
    prefix of the output, so the truncated word is an exact prefix of the
    untruncated one.
    """
    word = _symbols(axiom)
    if not word:
        raise UnknownSymbol("axiom is empty")
    stray = set(word) - set(rule.alphabet)
    if stray:
        raise UnknownSymbol(f"axiom uses symbols outside the alphabet: {''.join(sorted(stray))!r}")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    if max_length < 1:
        raise ValueError("max_length must be >= 1")

    truncated = len(word) > max_length
    word = word[:max_length]
    for _ in range(iterations):
        word = rule.apply(word)
        if len(word) > max_length:
            word = word[:max_length]
            truncated = True
    provenance = f"expand rule={rule} axiom={_symbols(axiom)} iterations={iterations}"
    if truncated:
        provenance += f" truncated_to={max_length}"
    return Word(word, provenance)


def fibonacci_word(length: int) -> Word:
    """Prefix of the Fibonacci word via S(n+2) = S(n+1) + S(n), S0 = "0", S1 = "01"."""
    if length < 1:
        raise ValueError("length must be >= 1")
    prev, cur = "0", "01"
    if length == 1:
        return Word("0", "fibonacci recurrence length=1")
    while len(cur) < length:
        prev, cur = cur, cur + prev
    return Word(cur[:length], f"fibonacci recurrence length={length}")


def fibonacci_strings(count: int) -> list[str]:
    """S0 .. S(count-1) of the concatenation recurrence."""
    out = ["0", "01"][:count]
    while len(out) < count:
        out.append(out[-1] + out[-2])
    return out


def complexity(word, n: int) -> int:
    """Number of distinct length-``n`` factors of ``word``."""
    s = _symbols(word)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > len(s):
        raise LengthExceeded(f"n={n} exceeds word length {len(s)}")
    return len({s[i : i + n] for i in range(len(s) - n + 1)})


@dataclass(frozen=True)
class ComplexityReport:
    sigma: dict[int, int]
    first_flag: int | None
    verdict: str
    note: str = "finite-prefix heuristic: an observed prefix cannot prove (a)periodicity of an infinite word"

    @property
    def aperiodic_consistent(self) -> bool:
        return self.first_flag is None

    def rows(self):
        for n, s in self.sigma.items():
            yield n, s, s >= n + 1


def classify_morse_hedlund(word, max_n: int) -> ComplexityReport:
    """Tabulate sigma(n) for n <= max_n and flag the first n with sigma(n) <= n.

    An aperiodic infinite word has sigma(n) >= n + 1 for every n; a
    violation on a well-sampled prefix is evidence of eventual periodicity.
    """
    s = _symbols(word)
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if max_n > len(s) - max_n:
        raise LengthExceeded(f"max_n={max_n} needs a word of length >= {2 * max_n}, got {len(s)}")
    sigma = {n: complexity(s, n) for n in range(1, max_n + 1)}
    flag = next((n for n, v in sigma.items() if v <= n), None)
    verdict = "aperiodic-consistent" if flag is None else "periodic-consistent"
    return ComplexityReport(sigma, flag, verdict)
