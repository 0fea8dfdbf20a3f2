"""FASTA ingestion, report writers and the automaton file format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, List, Sequence

from .engine import Report
from .errors import AutomatonFormatError, EmptyFile, MalformedFasta
from .scoring import ALPHABET_SIZE, Role, ScoredNfa, ScoreModel, StePlus, SymbolClass

AUTOMATON_FORMAT_VERSION = 1
TSV_HEADER = ("pattern_id", "ste_id", "role", "input_offset", "score")
_WS = b" \t\r\n\v\f"


@dataclass(frozen=True)
class SequenceRecord:
    name: str
    data: bytes


def parse_fasta(text: bytes) -> List[SequenceRecord]:
    if isinstance(text, str):
        text = text.encode("latin-1")
    if not text.strip(_WS):
        raise EmptyFile("no FASTA records found")
    records = []
    name = None
    chunks: List[bytes] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith(b">"):
            if name is not None:
                records.append(SequenceRecord(name, b"".join(chunks)))
            name = line[1:].strip().decode("utf-8", errors="replace")
            chunks = []
            continue
        seq = line.translate(None, _WS)
        if not seq:
            continue
        if name is None:
            raise MalformedFasta(f"line {lineno}: sequence data before any '>' header")
        chunks.append(seq.upper())
    if name is not None:
        records.append(SequenceRecord(name, b"".join(chunks)))
    return records


def write_fasta(records: Iterable[SequenceRecord], width: int = 60) -> bytes:
    out = []
    for r in records:
        out.append(b">" + r.name.encode("utf-8") + b"\n")
        for i in range(0, len(r.data), width):
            out.append(r.data[i : i + width] + b"\n")
    return b"".join(out)


def write_reports(reports: Iterable[Report], fmt: str = "tsv", header: bool = True) -> bytes:
    if fmt == "tsv":
        lines = ["\t".join(TSV_HEADER)] if header else []
        lines += [
            f"{r.pattern_id}\t{r.ste_id}\t{r.role}\t{r.input_offset}\t{r.score}" for r in reports
        ]
        return "".join(line + "\n" for line in lines).encode("utf-8")
    if fmt == "jsonl":
        return "".join(json.dumps(r._asdict()) + "\n" for r in reports).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def _class_to_json(c: SymbolClass):
    members = list(c)
    if len(members) == ALPHABET_SIZE:
        return "ANY"
    if len(members) == ALPHABET_SIZE - 1:
        (missing,) = set(range(ALPHABET_SIZE)) - set(members)
        return f"NOT {missing}"
    return members


def _class_from_json(value) -> SymbolClass:
    if value == "ANY":
        return SymbolClass.any()
    if isinstance(value, str) and value.startswith("NOT "):
        return SymbolClass.excluding(int(value[4:]))
    if isinstance(value, list):
        return SymbolClass(value)
    raise AutomatonFormatError(f"bad symbol class {value!r}")


def automaton_to_dict(nfa: ScoredNfa) -> dict:
    m = nfa.model
    return {
        "format_version": AUTOMATON_FORMAT_VERSION,
        "pattern_id": nfa.pattern_id,
        "pattern": nfa.pattern.decode("latin-1"),
        "model": {"match": m.match_bonus, "mismatch": m.mismatch_penalty, "gap": m.gap_penalty},
        "options": {"d_max": nfa.d_max, "allow_mismatch": nfa.allow_mismatch},
        "states": [
            {
                "id": s.id,
                "role": str(s.role),
                "class": _class_to_json(s.symbol_class),
                "start": s.start_edge_score,
                "accepting": s.accepting,
                "adjust": s.accept_adjustment,
                "edges": [list(e) for e in s.out_edges],
            }
            for s in nfa.states
        ],
    }


def automaton_from_dict(d: dict) -> ScoredNfa:
    try:
        if d["format_version"] != AUTOMATON_FORMAT_VERSION:
            raise AutomatonFormatError(f"unsupported format_version {d['format_version']!r}")
        m = d["model"]
        states = tuple(
            StePlus(
                id=s["id"],
                symbol_class=_class_from_json(s["class"]),
                role=Role.parse(s["role"]),
                out_edges=tuple((int(t), int(w)) for t, w in s["edges"]),
                start_edge_score=s["start"],
                accepting=bool(s["accepting"]),
                accept_adjustment=s["adjust"],
            )
            for s in d["states"]
        )
        return ScoredNfa(
            pattern_id=d["pattern_id"],
            pattern=d["pattern"].encode("latin-1"),
            states=states,
            model=ScoreModel(m["match"], m["mismatch"], m["gap"]),
            d_max=d["options"]["d_max"],
            allow_mismatch=d["options"]["allow_mismatch"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, AutomatonFormatError):
            raise
        raise AutomatonFormatError(f"malformed automaton record: {exc}") from exc


def dump_automata(automata: Sequence[ScoredNfa]) -> str:
    doc = {
        "format_version": AUTOMATON_FORMAT_VERSION,
        "automata": [automaton_to_dict(n) for n in automata],
    }
    return json.dumps(doc, indent=1) + "\n"


def load_automata(text: str) -> List[ScoredNfa]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AutomatonFormatError(f"not a JSON automaton file: {exc}") from exc
    if doc.get("format_version") != AUTOMATON_FORMAT_VERSION:
        raise AutomatonFormatError(f"unsupported format_version {doc.get('format_version')!r}")
    return [automaton_from_dict(d) for d in doc.get("automata", [])]
