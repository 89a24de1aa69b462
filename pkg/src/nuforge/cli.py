"""Command-line front end: ``nu-forge "a->ab;b->ba" --terms 8``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict, dataclass
from typing import Sequence

from .errors import InadmissibleInput, NuForgeError
from .language import DEFAULT_DELAY_CAP
from .oracle import PrefixUniverse, run_checks
from .pipeline import Analysis, analyze, sequences
from .report import build_report, render_json, render_text
from .words import parse_morphism

log = logging.getLogger("nuforge")

ORACLE_PREFIX = 100_000


@dataclass(frozen=True)
class RunConfig:
    morphism: str
    terms: int = 16
    fixed_point: str = "both"
    digits: int = 12
    format: str = "text"
    delay_cap: int = DEFAULT_DELAY_CAP
    check: bool = False
    force_extend: bool = False
    verbose: bool = False

    def __post_init__(self):
        if self.terms < 0:
            raise ValueError("--terms must be >= 0")
        if self.digits < 1:
            raise ValueError("--digits must be >= 1")
        if self.delay_cap < 1:
            raise ValueError("--delay-cap must be >= 1")


def _letters(analysis: Analysis, choice: str) -> list[int]:
    fixed = analysis.fixed_letters
    if choice == "both":
        return fixed
    x = analysis.original.labels.index(choice)
    if x not in fixed:
        raise InadmissibleInput(f"there is no fixed point starting with {choice!r}", "sequence")
    return [x]


def _oracle(analysis: Analysis, seqs) -> dict:
    out = {}
    for x, seq in seqs.items():
        pu = PrefixUniverse.of_fixed_point(analysis.original, x, ORACLE_PREFIX)
        out[x] = run_checks(seq.terms, pu, analysis.frequencies, analysis.binary_frequencies)
    return out


def run(config: RunConfig) -> tuple[int, str, str]:
    """Run the pipeline; return (exit status, report, error message)."""
    try:
        m = parse_morphism(config.morphism)
        log.info("parsed %s", m)
        analysis = analyze(m, config.delay_cap, config.force_extend)
        log.info("delay %d, separable %s", analysis.typing.delay, analysis.typing.separable)
        seqs = sequences(analysis, _letters(analysis, config.fixed_point), config.terms)
        oracle = _oracle(analysis, seqs) if config.check else None
        fields = {k: v for k, v in asdict(config).items() if k not in ("morphism", "verbose", "format")}
        report = build_report(analysis, seqs, fields, config.digits, analysis.recurrence(), oracle)
    except NuForgeError as exc:
        return exc.exit_code, "", f"error: {exc}\n"
    text = render_json(report) if config.format == "json" else render_text(report, config.verbose)
    if oracle is not None and not all(v.passed for vs in oracle.values() for v in vs):
        return 2, text, "error: [oracle] brute-force checks failed\n"
    return 0, text, ""


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nu-forge",
        description="Equidistributed sequences of binary morphic fixed points, computed exactly.",
    )
    p.add_argument("morphism", help='binary morphism such as "a->ab;b->ba"')
    p.add_argument("--terms", "-n", type=int, default=16, help="number of sequence terms (default 16)")
    p.add_argument("--fixed-point", choices=("a", "b", "both"), default="both")
    p.add_argument("--digits", type=int, default=12, help="decimal digits in term output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--delay-cap", type=int, default=DEFAULT_DELAY_CAP, help="largest synchronization delay tried")
    p.add_argument("--check", action="store_true", help="compare the terms with brute-force shift ordering")
    p.add_argument("--force-extend", action="store_true", help="recode over length-D factors even when not needed")
    p.add_argument("--verbose", "-v", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        config = RunConfig(
            args.morphism, args.terms, args.fixed_point, args.digits, args.format,
            args.delay_cap, args.check, args.force_extend, args.verbose,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    status, out, err = run(config)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
