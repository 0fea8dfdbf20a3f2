"""Command line entry point: ``scored-ap {compile,run,compare,bench,stats}``.

Exit codes: 0 success, 1 usage error, 2 validation or constraint failure,
3 engine/oracle disagreement in ``compare``.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence

from .compiler import FULL, CompileOptions, compile_pattern
from .engine import RunMode, best_global, best_streaming, new_engine, throughput_bench
from .errors import NoAlignment, ScoredApError
from .oracle import glocal, nw_global
from .overlay import OverlayConfig, place
from .scoring import ScoreModel, ScoreWidth
from .seqio import SequenceRecord, dump_automata, load_automata, parse_fasta, write_reports, TSV_HEADER

log = logging.getLogger("scored_ap")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _dmax(text: str):
    if text.lower() == FULL:
        return FULL
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'full', got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("--dmax must be >= 0")
    return value


def _add_model_args(p):
    g = p.add_argument_group("scoring")
    g.add_argument("--match", type=int, default=2)
    g.add_argument("--mismatch", type=int, default=-1)
    g.add_argument("--gap", type=int, default=-2)
    g.add_argument("--dmax", type=_dmax, default=FULL, help="deletion band: integer or 'full'")
    g.add_argument("--no-mismatch-states", action="store_true")


def _add_overlay_args(p):
    defaults = OverlayConfig()
    g = p.add_argument_group("overlay")
    g.add_argument("--array-size", type=int, default=defaults.array_size)
    g.add_argument("--max-fanout", type=int, default=defaults.max_fanout)
    g.add_argument("--max-wires", type=int, default=defaults.max_global_wires)
    g.add_argument("--score-width", type=int, default=defaults.score_width.bits)


def _add_mode_arg(p, default="streaming"):
    p.add_argument("--mode", choices=[m.value for m in RunMode], default=default)


def _add_output_args(p, formats=("tsv", "jsonl")):
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--output", "-o", type=Path, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scored-ap", description="Scored NFA overlay simulator")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="compile FASTA patterns into an automaton file")
    p.add_argument("--patterns", type=Path, required=True)
    _add_model_args(p)
    p.add_argument("--output", "-o", type=Path)

    p = sub.add_parser("run", help="execute patterns over input sequences and emit reports")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--patterns", type=Path)
    src.add_argument("--automaton", type=Path)
    p.add_argument("--inputs", type=Path, required=True)
    p.add_argument("--jobs", type=int, default=1, help="engines run in parallel, one per input")
    _add_model_args(p)
    _add_overlay_args(p)
    _add_mode_arg(p)
    _add_output_args(p)

    p = sub.add_parser("compare", help="check engine best scores against the DP oracle")
    p.add_argument("--patterns", type=Path, required=True)
    p.add_argument("--inputs", type=Path, required=True)
    _add_model_args(p)
    _add_overlay_args(p)
    _add_mode_arg(p, default="global")
    p.add_argument("--output", "-o", type=Path)

    p = sub.add_parser("bench", help="measure throughput in input symbols per second")
    p.add_argument("--patterns", type=Path)
    p.add_argument("--inputs", type=Path)
    p.add_argument("--random-patterns", type=int, default=100)
    p.add_argument("--pattern-length", type=int, default=8)
    p.add_argument("--random-bytes", type=int, default=1 << 20)
    p.add_argument("--alphabet", default="ACGT")
    p.add_argument("--seed", type=int, default=0)
    _add_model_args(p)
    _add_overlay_args(p)
    _add_mode_arg(p)
    p.add_argument("--output", "-o", type=Path)

    p = sub.add_parser("stats", help="placement occupancy, fan-out histogram and wire totals")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--patterns", type=Path)
    src.add_argument("--automaton", type=Path)
    _add_model_args(p)
    _add_overlay_args(p)
    p.add_argument("--output", "-o", type=Path)
    return parser


def _model(args) -> ScoreModel:
    return ScoreModel(args.match, args.mismatch, args.gap)


def _options(args) -> CompileOptions:
    return CompileOptions(d_max=args.dmax, allow_mismatch=not args.no_mismatch_states)


def _config(args) -> OverlayConfig:
    try:
        return OverlayConfig(
            array_size=args.array_size,
            max_fanout=args.max_fanout,
            max_global_wires=args.max_wires,
            score_width=ScoreWidth(args.score_width),
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _read_fasta(path: Path) -> List[SequenceRecord]:
    return parse_fasta(path.read_bytes())


def _compile_all(args, records: Sequence[SequenceRecord]):
    model, opts = _model(args), _options(args)
    return [compile_pattern(r.data, model, opts, pattern_id=r.name) for r in records]


def _load_automata(args):
    if getattr(args, "automaton", None) is not None:
        return load_automata(args.automaton.read_text())
    return _compile_all(args, _read_fasta(args.patterns))


def _emit(args, payload: bytes):
    if args.output is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        args.output.write_bytes(payload)


def cmd_compile(args) -> int:
    records = _read_fasta(args.patterns)
    automata = _compile_all(args, records)
    _emit(args, dump_automata(automata).encode("utf-8"))
    log.info("compiled %d automata", len(automata))
    return EXIT_OK


def cmd_run(args) -> int:
    placement = place(_load_automata(args), _config(args))
    inputs = _read_fasta(args.inputs)
    mode = RunMode(args.mode)

    def one(record):
        return new_engine(placement, mode).run(record.data)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(one, inputs))

    multi = len(inputs) > 1
    parts = []
    if args.format == "tsv":
        parts.append(("\t".join(TSV_HEADER) + "\n").encode())
    for record, reports in zip(inputs, results):
        if args.format == "tsv":
            if multi:
                parts.append(f"#input\t{record.name}\n".encode("utf-8"))
            parts.append(write_reports(reports, "tsv", header=False))
        else:
            for r in reports:
                row = r._asdict()
                if multi:
                    row = {"input": record.name, **row}
                parts.append((json.dumps(row) + "\n").encode("utf-8"))
    _emit(args, b"".join(parts))
    return EXIT_OK


def _engine_best(nfa, placement, data: bytes, mode: RunMode):
    reports = new_engine(placement, mode).run(data)
    try:
        if mode is RunMode.GLOBAL:
            return best_global(reports, len(data), nfa)
        return best_streaming(reports, nfa)
    except NoAlignment:
        return None


def _oracle_best(nfa, data: bytes, mode: RunMode):
    if mode is RunMode.GLOBAL:
        return nw_global(nfa.pattern, data, nfa.model)
    if not data:
        return None
    return glocal(nfa.pattern, data, nfa.model)


def cmd_compare(args) -> int:
    automata = _compile_all(args, _read_fasta(args.patterns))
    inputs = _read_fasta(args.inputs)
    config = _config(args)
    mode = RunMode(args.mode)
    lines = ["pattern\tinput\tengine\toracle\tstatus"]
    mismatches = 0
    for nfa in automata:
        placement = place([nfa], config)
        for record in inputs:
            got = _engine_best(nfa, placement, record.data, mode)
            want = _oracle_best(nfa, record.data, mode)
            ok = got == want
            mismatches += not ok
            lines.append(
                f"{nfa.pattern_id}\t{record.name}\t{_fmt(got)}\t{_fmt(want)}\t{'ok' if ok else 'MISMATCH'}"
            )
    _emit(args, ("\n".join(lines) + "\n").encode("utf-8"))
    if mismatches:
        log.error("%d engine/oracle mismatches", mismatches)
        return EXIT_MISMATCH
    return EXIT_OK


def _fmt(score) -> str:
    return "none" if score is None else str(score)


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    alphabet = args.alphabet.encode("latin-1")
    if args.patterns is not None:
        records = _read_fasta(args.patterns)
    else:
        records = [
            SequenceRecord(f"p{k}", bytes(rng.choices(alphabet, k=args.pattern_length)))
            for k in range(args.random_patterns)
        ]
    if args.inputs is not None:
        data = b"".join(r.data for r in _read_fasta(args.inputs))
    else:
        data = bytes(rng.choices(alphabet, k=args.random_bytes))
    placement = place(_compile_all(args, records), _config(args))
    stats = throughput_bench(placement, data, RunMode(args.mode))
    out = {"patterns": len(records), "mode": args.mode, **stats.as_dict()}
    out["placement"] = placement.stats.as_dict()
    _emit(args, (json.dumps(out, indent=1) + "\n").encode("utf-8"))
    return EXIT_OK


def cmd_stats(args) -> int:
    placement = place(_load_automata(args), _config(args))
    _emit(args, (json.dumps(placement.stats.as_dict(), indent=1) + "\n").encode("utf-8"))
    return EXIT_OK


COMMANDS = {
    "compile": cmd_compile,
    "run": cmd_run,
    "compare": cmd_compare,
    "bench": cmd_bench,
    "stats": cmd_stats,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"scored-ap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScoredApError, OSError, ValueError) as exc:
        print(f"scored-ap: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
