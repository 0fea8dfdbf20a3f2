"""Hardware envelope of the STE+ array and first-fit placement onto it."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

from .compiler import start_fanout, state_count
from .errors import CapacityExceeded, FanoutExceeded, WireBudgetExceeded
from .scoring import ScoredNfa, ScoreWidth

MIN_ARRAY_SIZE = 1024
MAX_ARRAY_SIZE = 65536

# Evaluation board resources, kept for reference only; nothing is sized from them.
ZCU104_LUTS = 225_000
ZCU104_REGISTERS = 445_000
ZCU104_DISTRIBUTED_MEMORY = 64_000


@dataclass(frozen=True)
class OverlayConfig:
    array_size: int = 8192
    max_fanout: int = 64
    # the global (horizontal) bus; modeled as a cap on total point-to-point edges
    max_global_wires: int = 1_000_000
    score_width: ScoreWidth = field(default_factory=ScoreWidth)

    def __post_init__(self):
        if not MIN_ARRAY_SIZE <= self.array_size <= MAX_ARRAY_SIZE:
            raise ValueError(
                f"array_size must be in [{MIN_ARRAY_SIZE}, {MAX_ARRAY_SIZE}], got {self.array_size}"
            )
        if self.max_fanout < 1:
            raise ValueError("max_fanout must be >= 1")
        if self.max_global_wires < 1:
            raise ValueError("max_global_wires must be >= 1")


@dataclass(frozen=True)
class PlacementStats:
    states_used: int
    array_size: int
    total_wires: int
    max_fanout_observed: int
    # out-degree -> count, over every state and every automaton's start source
    fanout_histogram: Dict[int, int]

    @property
    def utilization(self) -> float:
        return self.states_used / self.array_size

    def as_dict(self) -> dict:
        return {
            "states_used": self.states_used,
            "array_size": self.array_size,
            "utilization": self.utilization,
            "total_wires": self.total_wires,
            "max_fanout_observed": self.max_fanout_observed,
            "fanout_histogram": {str(k): v for k, v in sorted(self.fanout_histogram.items())},
        }


@dataclass(frozen=True, eq=False)
class Placement:
    automata: Tuple[ScoredNfa, ...]
    slot_offsets: Tuple[int, ...]
    config: OverlayConfig
    stats: PlacementStats

    @property
    def total_states(self) -> int:
        return self.stats.states_used

    def locate(self, slot: int) -> Tuple[int, int]:
        """Map a global slot to ``(automaton index, local state id)``."""
        for k in range(len(self.automata) - 1, -1, -1):
            if slot >= self.slot_offsets[k]:
                local = slot - self.slot_offsets[k]
                if local < len(self.automata[k].states):
                    return k, local
                break
        raise IndexError(f"slot {slot} is not occupied")


def _compute_stats(automata: Sequence[ScoredNfa], array_size: int) -> PlacementStats:
    hist: Counter = Counter()
    for nfa in automata:
        hist[start_fanout(nfa)] += 1
        hist.update(s.fanout for s in nfa.states)
    return PlacementStats(
        states_used=sum(state_count(nfa) for nfa in automata),
        array_size=array_size,
        total_wires=sum(nfa.edge_count for nfa in automata),
        max_fanout_observed=max(hist),
        fanout_histogram=dict(sorted(hist.items())),
    )


def place(automata: Sequence[ScoredNfa], config: OverlayConfig = OverlayConfig()) -> Placement:
    """Pack automata into consecutive slot ranges, in order, from slot 0.

    Checks capacity, then fan-out, then the wire budget. The fan-out error
    names the worst offender (start sources are checked before states, so
    a start source wins ties).
    """
    automata = tuple(automata)
    if not automata:
        raise ValueError("place() needs at least one automaton")
    for nfa in automata:
        nfa.model.check_width(config.score_width)

    stats = _compute_stats(automata, config.array_size)
    if stats.states_used > config.array_size:
        raise CapacityExceeded(
            f"{stats.states_used} states do not fit in a {config.array_size}-slot array",
            observed=stats.states_used,
            limit=config.array_size,
        )

    offsets = []
    base = 0
    for nfa in automata:
        offsets.append(base)
        base += state_count(nfa)

    if stats.max_fanout_observed > config.max_fanout:
        worst = None
        for nfa, off in zip(automata, offsets):
            candidates = [("start", "start", start_fanout(nfa))]
            candidates += [(off + s.id, str(s.role), s.fanout) for s in nfa.states]
            for slot, role, deg in candidates:
                if worst is None or deg > worst[3]:
                    worst = (nfa.pattern_id, slot, role, deg)
        pid, slot, role, deg = worst
        where = "start source" if slot == "start" else f"state {slot} ({role})"
        raise FanoutExceeded(
            f"{where} of pattern {pid!r} has fan-out {deg} > limit {config.max_fanout}",
            observed=deg,
            limit=config.max_fanout,
            pattern_id=pid,
            state=slot,
            role=role,
        )

    if stats.total_wires > config.max_global_wires:
        raise WireBudgetExceeded(
            f"{stats.total_wires} wires exceed the global budget of {config.max_global_wires}",
            observed=stats.total_wires,
            limit=config.max_global_wires,
        )

    return Placement(automata=automata, slot_offsets=tuple(offsets), config=config, stats=stats)


def utilization_report(p: Placement) -> PlacementStats:
    return p.stats
