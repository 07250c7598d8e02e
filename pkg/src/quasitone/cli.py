"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on domain errors. Tables go
to stdout, tab-separated with ``#`` header lines; errors go to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path

from . import __version__
from .decimalreal import DecimalReal
from .errors import IoFailure, QuasitoneError
from .exprs import format_exact, format_fraction, format_real, parse_exact
from .numbertheory import Kind, best_approximants
from .quasicore import quasiperiods, rationally_independent, verify_near_coincidence
from .render import RenderConfig, render, write_samples_text, write_wav
from .score import combined_period, parse_score, raindrops_preset, schedule, write_timeline
from .words import SubstitutionRule, classify_morse_hedlund, complexity, expand, fibonacci_word


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _non_negative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0 or value != value or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive number: {text!r}")
    return value


def _expr(text):
    try:
        return parse_exact(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exact_expr(text):
    value = _expr(text)
    if isinstance(value, DecimalReal):
        raise argparse.ArgumentTypeError(f"{text!r} is not exact; only rationals and a+b*phi are allowed")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quasitone", description="Quasiperiodic music and its number theory.")
    parser.add_argument("--version", action="version", version=f"quasitone {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("approx", help="best rational approximants")
    p.add_argument("value", type=_expr, help="e.g. pi, phi, 2*pi, 7/3, 3.14159...")
    p.add_argument("--max-den", type=_positive_int, required=True)
    p.add_argument("--kind", choices=["first", "second"], default="second")

    p = sub.add_parser("word", help="substitution words and subword complexity")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--rule", help='e.g. "A:AB,B:A"')
    src.add_argument("--fibonacci", action="store_true")
    p.add_argument("--axiom")
    p.add_argument("--iters", type=_non_negative_int, default=0)
    p.add_argument("--length", type=_positive_int)
    p.add_argument("--max-length", type=_positive_int, default=1_000_000)
    p.add_argument("--complexity", type=_positive_int, metavar="N", help="print sigma(n) for n = 1..N")

    p = sub.add_parser("quasiperiod", help="near-coincidences of two periods")
    p.add_argument("--p1", type=_expr, required=True)
    p.add_argument("--p2", type=_expr, required=True)
    p.add_argument("--max-den", type=_positive_int, required=True)
    p.add_argument("--kind", choices=["first", "second"], default="second")

    p = sub.add_parser("independent", help="rational independence over Q(phi)")
    p.add_argument("values", nargs="+", type=_exact_expr)

    p = sub.add_parser("period", help="realignment period of stacked cycles (lcm)")
    p.add_argument("cycles", nargs="+", type=_positive_int)

    p = sub.add_parser("compose", help="schedule and render a score to WAV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=["raindrops"])
    src.add_argument("--score", type=Path)
    p.add_argument("--horizon", type=_positive_float)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--events", type=Path, help="also write the event timeline (TSV)")
    p.add_argument("--samples", type=Path, help="also write integer samples, one per line")
    p.add_argument("--sample-rate", type=int, default=44100)
    p.add_argument("--gain", type=float, default=0.25)
    return parser


def _cmd_approx(args, out, err):
    kind = Kind(args.kind)
    found = best_approximants(args.value, args.max_den, kind)
    out.write(f"# best approximants kind={kind.value} max_den={args.max_den}\n")
    out.write("# fraction\tvalue\tabs_error\n")
    for f in found:
        out.write(f"{format_fraction(f)}\t{format_real(f)}\t{format_real(abs(args.value - f))}\n")


def _cmd_word(args, out, err):
    if args.fibonacci:
        if args.length is None:
            raise UsageError("word --fibonacci requires --length")
        word = fibonacci_word(args.length)
    else:
        if args.axiom is None:
            raise UsageError("word --rule requires --axiom")
        rule = SubstitutionRule.parse(args.rule)
        max_length = args.length or args.max_length
        word = expand(rule, args.axiom, args.iters, max_length)
    out.write(word.symbols + "\n")
    if args.complexity:
        if args.complexity > len(word):
            raise UsageError(f"--complexity {args.complexity} exceeds word length {len(word)}")
        out.write("# n\tsigma\n")
        if 2 * args.complexity <= len(word):
            report = classify_morse_hedlund(word, args.complexity)
            for n, s in report.sigma.items():
                out.write(f"{n}\t{s}\n")
            flag = "none" if report.first_flag is None else str(report.first_flag)
            out.write(f"# verdict {report.verdict} first_flag={flag} ({report.note})\n")
        else:
            for n in range(1, args.complexity + 1):
                out.write(f"{n}\t{complexity(word, n)}\n")


def _cmd_quasiperiod(args, out, err):
    kind = Kind(args.kind)
    reports = quasiperiods(args.p1, args.p2, args.max_den, kind)
    out.write(f"# quasiperiods kind={kind.value} max_den={args.max_den}\n")
    out.write("# quasiperiod is the smaller time of the coincidence pair (a convention)\n")
    out.write("# approximant\tt1\tt2\tgap\tquasiperiod\tverified\n")
    for r in reports:
        ok = verify_near_coincidence(args.p1, args.p2, r)
        t1, t2 = r.coincidence_pair
        out.write(
            f"{format_fraction(r.approximant)}\t{format_real(t1)}\t{format_real(t2)}\t"
            f"{format_real(r.gap)}\t{format_real(r.quasiperiod)}\t{str(ok).lower()}\n"
        )


def _cmd_independent(args, out, err):
    verdict = rationally_independent(args.values)
    out.write("# values\t" + "\t".join(format_exact(v) for v in args.values) + "\n")
    out.write(f"independent\t{str(verdict.independent).lower()}\n")
    if verdict.witness is not None:
        out.write("witness\t" + "\t".join(map(str, verdict.witness)) + "\n")


def _cmd_period(args, out, err):
    out.write(f"{combined_period(args.cycles)}\n")


def _cmd_compose(args, out, err):
    if args.preset:
        score = raindrops_preset()
    else:
        try:
            text = args.score.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read score: {exc}") from None
        score = parse_score(text)
    for warning in score.warnings:
        err.write(f"warning: {warning}\n")
    horizon = args.horizon if args.horizon is not None else score.horizon
    if horizon is None:
        raise UsageError("compose needs --horizon (or a horizon line in the score)")
    try:
        config = RenderConfig(sample_rate=args.sample_rate, master_gain=args.gain)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    timeline = schedule(score, horizon)
    samples = render(timeline, config)
    write_wav(samples, config, args.out)
    if args.events:
        try:
            args.events.write_text(write_timeline(timeline))
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
    if args.samples:
        write_samples_text(samples, args.samples)
    out.write(f"# wrote {args.out} samples={len(samples)} events={len(timeline)}\n")


_COMMANDS = {
    "approx": _cmd_approx,
    "word": _cmd_word,
    "quasiperiod": _cmd_quasiperiod,
    "independent": _cmd_independent,
    "period": _cmd_period,
    "compose": _cmd_compose,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        try:
            with contextlib.redirect_stdout(out):
                args = parser.parse_args(argv)
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        _COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except QuasitoneError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())
