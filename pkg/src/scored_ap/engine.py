"""Cycle-accurate execution of a placement.

Each cycle consumes one byte. A state fires when its symbol class matches
the byte and at least one contribution reaches it: an active predecessor
(previous-cycle score plus edge score) or the start source (zero plus the
start edge score). Simultaneous contributions combine by max. Every
accepting activation emits a :class:`Report`.

In ``STREAMING`` mode the start source fires on every cycle, so
alignments may begin anywhere in the input. In ``GLOBAL`` mode it fires
on cycle 0 only, so surviving paths cover the whole input.
"""

from __future__ import annotations

import enum
import time
import weakref
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from . import _kernel
from .errors import EngineFinalized, NoAlignment
from .overlay import Placement
from .scoring import ALPHABET_SIZE, ScoredNfa, ScoreWidth


class RunMode(enum.Enum):
    STREAMING = "streaming"
    GLOBAL = "global"


class Report(NamedTuple):
    pattern_id: object
    ste_id: int
    role: str
    input_offset: int
    score: int


@dataclass(frozen=True)
class _Program:
    """A placement flattened into the arrays the kernel consumes."""

    class_tab: np.ndarray  # uint8 [256, n_states]
    ptr: np.ndarray
    dst: np.ndarray
    weight: np.ndarray
    start_dst: np.ndarray
    start_weight: np.ndarray
    accepting: np.ndarray
    adjust: np.ndarray
    # in-edge view for the dense kernel
    iptr: np.ndarray
    isrc: np.ndarray
    iweight: np.ndarray
    start_score: np.ndarray  # per slot, NEG where no start edge
    owner: np.ndarray  # automaton index per slot
    roles: List[str]
    pattern_ids: list
    lo: int
    hi: int

    @property
    def n_states(self) -> int:
        return self.accepting.shape[0]


_programs: "weakref.WeakKeyDictionary[Placement, _Program]" = weakref.WeakKeyDictionary()


def _lower(p: Placement) -> _Program:
    prog = _programs.get(p)
    if prog is not None:
        return prog
    width: ScoreWidth = p.config.score_width
    n = p.total_states
    class_tab = np.zeros((ALPHABET_SIZE, n), dtype=np.uint8)
    ptr = np.zeros(n + 1, dtype=np.int64)
    dst, weight, start_dst, start_weight = [], [], [], []
    accepting = np.zeros(n, dtype=np.uint8)
    adjust = np.zeros(n, dtype=np.int64)
    owner = np.zeros(n, dtype=np.int64)
    roles = []
    for k, (nfa, off) in enumerate(zip(p.automata, p.slot_offsets)):
        for s in nfa.states:
            slot = off + s.id
            class_tab[:, slot] = np.frombuffer(s.symbol_class.table, dtype=np.uint8)
            for target, score in s.out_edges:
                dst.append(off + target)
                # registers hold the clamped value when an edge score overflows the width
                weight.append(width.clamp(score))
            ptr[slot + 1] = len(dst)
            if s.start_edge_score is not None:
                start_dst.append(slot)
                start_weight.append(width.clamp(s.start_edge_score))
            accepting[slot] = s.accepting
            adjust[slot] = width.clamp(s.accept_adjustment)
            owner[slot] = k
            roles.append(str(s.role))
    dst_arr = np.asarray(dst, dtype=np.int64)
    weight_arr = np.asarray(weight, dtype=np.int64)
    src_arr = np.repeat(np.arange(n, dtype=np.int64), np.diff(ptr))
    order = np.argsort(dst_arr, kind="stable")
    iptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(dst_arr, minlength=n), out=iptr[1:])
    start_score = np.full(n, _kernel.NEG, dtype=np.int64)
    start_score[start_dst] = start_weight
    prog = _Program(
        class_tab=class_tab,
        ptr=ptr,
        dst=dst_arr,
        weight=weight_arr,
        start_dst=np.asarray(start_dst, dtype=np.int64),
        start_weight=np.asarray(start_weight, dtype=np.int64),
        accepting=accepting,
        adjust=adjust,
        iptr=iptr,
        isrc=src_arr[order],
        iweight=weight_arr[order],
        start_score=start_score,
        owner=owner,
        roles=roles,
        pattern_ids=[nfa.pattern_id for nfa in p.automata],
        lo=width.lo,
        hi=width.hi,
    )
    _programs[p] = prog
    return prog


def _as_bytes(data) -> np.ndarray:
    if isinstance(data, str):
        data = data.encode("latin-1")
    return np.frombuffer(bytes(data), dtype=np.uint8)


class Engine:
    """Mutable execution state over an immutable placement.

    Activation and score registers are double-buffered inside the kernel:
    cycle ``t + 1`` only ever reads what cycle ``t`` wrote.

    Widths up to 60 bits run on the dense kernel, wider ones on the sparse
    frontier kernel; ``kernel`` forces one or the other (``"dense"`` is
    rejected for widths it cannot represent).
    """

    def __init__(
        self,
        placement: Placement,
        mode: RunMode = RunMode.STREAMING,
        kernel: Optional[str] = None,
    ):
        self.placement = placement
        self.mode = RunMode(mode)
        self.config = placement.config
        self._prog = _lower(placement)
        bits = self.config.score_width.bits
        if kernel is None:
            kernel = "dense" if bits <= _kernel.DENSE_MAX_BITS else "sparse"
        if kernel not in ("dense", "sparse"):
            raise ValueError(f"unknown kernel {kernel!r}")
        if kernel == "dense" and bits > _kernel.DENSE_MAX_BITS:
            raise ValueError(f"dense kernel supports at most {_kernel.DENSE_MAX_BITS}-bit scores")
        self.kernel = kernel
        n = self._prog.n_states
        if kernel == "dense":
            self._score = np.full(n, _kernel.NEG, dtype=np.int64)
            self._spare = np.empty(n, dtype=np.int64)
        else:
            (self._cur_list, self._cur_score, self._nxt_flag,
             self._nxt_list, self._nxt_score) = _kernel.empty_buffers(n)
            self._n_cur = 0
        self.cycle = 0
        self.finalized = False

    @property
    def n_states(self) -> int:
        return self._prog.n_states

    def active(self) -> Dict[int, int]:
        """Currently active slots and their score registers."""
        if self.kernel == "dense":
            ids = np.flatnonzero(self._score != _kernel.NEG)
            return {int(s): int(self._score[s]) for s in ids}
        ids = self._cur_list[: self._n_cur]
        return {int(s): int(self._cur_score[s]) for s in sorted(ids)}

    def _advance(self, data, pos, global_mode, collect, offsets, stes, scores):
        prog = self._prog
        if self.kernel == "dense":
            pos, self.cycle, n_rep, counted = _kernel.advance_dense(
                data, pos, len(data),
                prog.class_tab, prog.iptr, prog.isrc, prog.iweight, prog.start_score,
                prog.accepting, prog.adjust, prog.lo, prog.hi,
                self._score, self._spare,
                self.cycle, global_mode, collect,
                offsets, stes, scores, 0,
            )
        else:
            pos, self._n_cur, self.cycle, n_rep, counted = _kernel.advance(
                data, pos, len(data),
                prog.class_tab, prog.ptr, prog.dst, prog.weight,
                prog.start_dst, prog.start_weight, prog.accepting, prog.adjust,
                prog.lo, prog.hi,
                self._cur_list, self._n_cur, self._cur_score,
                self._nxt_flag, self._nxt_list, self._nxt_score,
                self.cycle, global_mode, collect,
                offsets, stes, scores, 0,
            )
        return pos, n_rep, counted

    def _execute(self, data: np.ndarray, collect: bool):
        prog = self._prog
        n = prog.n_states
        cap = n * max(1, min(len(data), 4096)) if collect else 0
        offsets = np.empty(cap, dtype=np.int64)
        stes = np.empty(cap, dtype=np.int64)
        scores = np.empty(cap, dtype=np.int64)
        chunks = []
        counted = 0
        pos = 0
        global_mode = 1 if self.mode is RunMode.GLOBAL else 0
        while True:
            pos, n_rep, c = self._advance(data, pos, global_mode, collect, offsets, stes, scores)
            counted += c
            if collect:
                counted += n_rep
                chunks.append((offsets[:n_rep].copy(), stes[:n_rep].copy(), scores[:n_rep].copy()))
            if pos >= len(data):
                break
        return chunks, counted

    def _to_reports(self, chunks) -> List[Report]:
        prog = self._prog
        out = []
        for offsets, stes, scores in chunks:
            for off, ste, score in zip(offsets.tolist(), stes.tolist(), scores.tolist()):
                out.append(Report(prog.pattern_ids[prog.owner[ste]], ste, prog.roles[ste], off, score))
        return out

    def step(self, b: int) -> List[Report]:
        if self.finalized:
            raise EngineFinalized("engine already consumed its input")
        chunks, _ = self._execute(np.array([b], dtype=np.uint8), collect=True)
        return self._to_reports(chunks)

    def run(self, data) -> List[Report]:
        if self.finalized:
            raise EngineFinalized("engine already consumed its input")
        chunks, _ = self._execute(_as_bytes(data), collect=True)
        self.finalized = True
        return self._to_reports(chunks)

    def count(self, data) -> int:
        """Like :meth:`run` but only counts reports instead of materializing them."""
        if self.finalized:
            raise EngineFinalized("engine already consumed its input")
        _, counted = self._execute(_as_bytes(data), collect=False)
        self.finalized = True
        return counted


def new_engine(p: Placement, mode: RunMode = RunMode.STREAMING, kernel: Optional[str] = None) -> Engine:
    return Engine(p, mode, kernel)


def step(e: Engine, b: int) -> List[Report]:
    return e.step(b)


def run(e: Engine, data) -> List[Report]:
    return e.run(data)


def _for_pattern(reports: Sequence[Report], nfa: Optional[ScoredNfa]):
    if nfa is None:
        return reports
    return [r for r in reports if r.pattern_id == nfa.pattern_id]


def best_global(reports: Sequence[Report], input_len: int, nfa: ScoredNfa) -> int:
    """Best whole-input score for ``nfa`` from a GLOBAL-mode report stream.

    An empty input is scored as pure deletion of the pattern; the array
    cannot report without consuming a symbol, so this is answered here.
    """
    if input_len == 0:
        return len(nfa.pattern) * nfa.model.gap_penalty
    last = [r.score for r in _for_pattern(reports, nfa) if r.input_offset == input_len - 1]
    if not last:
        raise NoAlignment(f"no accepted path for pattern {nfa.pattern_id!r} covers the whole input")
    return max(last)


def best_streaming(reports: Sequence[Report], nfa: Optional[ScoredNfa] = None) -> int:
    """Best score over a STREAMING-mode report stream.

    With ``nfa`` given, only that pattern's reports count, and the
    empty-window alignment (every pattern position deleted, scoring
    ``m * gap``) is included whenever the stream is non-empty. The array
    never reports it because it consumes no symbol.
    """
    scores = [r.score for r in _for_pattern(reports, nfa)]
    if not scores:
        raise NoAlignment("empty report stream")
    best = max(scores)
    if nfa is not None:
        best = max(best, len(nfa.pattern) * nfa.model.gap_penalty)
    return best


@dataclass(frozen=True)
class BenchStats:
    symbols_processed: int
    cycles: int
    reports_emitted: int
    seconds: float

    @property
    def symbols_per_sec(self) -> float:
        return self.symbols_processed / self.seconds if self.seconds > 0 else float("inf")

    def as_dict(self) -> dict:
        return {
            "symbols_processed": self.symbols_processed,
            "cycles": self.cycles,
            "reports_emitted": self.reports_emitted,
            "seconds": self.seconds,
            "symbols_per_sec": self.symbols_per_sec,
        }


def throughput_bench(p: Placement, data, mode: RunMode = RunMode.STREAMING) -> BenchStats:
    """Time the array over ``data``; loading and report output are excluded.

    Reports are counted, not materialized.
    """
    buf = _as_bytes(data)
    # warm the JIT outside the timed region
    Engine(p, mode).count(buf[:1])
    e = Engine(p, mode)
    t0 = time.perf_counter()
    n_reports = e.count(buf)
    elapsed = time.perf_counter() - t0
    return BenchStats(
        symbols_processed=len(buf),
        cycles=e.cycle,
        reports_emitted=n_reports,
        seconds=elapsed,
    )
