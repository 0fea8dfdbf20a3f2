"""Core types: scoring model, symbol classes, scored homogeneous automata.

Scores are plain Python ints everywhere outside the engine. Fixed-width
behaviour is opt-in through :class:`ScoreWidth` and :func:`saturating_add`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

from .errors import ModelInvariantViolation

ALPHABET_SIZE = 256
PatternId = Union[int, str]


@dataclass(frozen=True)
class ScoreWidth:
    """Signed saturating register width in bits."""

    bits: int = 16

    def __post_init__(self):
        if not 8 <= self.bits <= 64:
            raise ValueError(f"score width must be in [8, 64] bits, got {self.bits}")

    @property
    def lo(self) -> int:
        return -(1 << (self.bits - 1))

    @property
    def hi(self) -> int:
        return (1 << (self.bits - 1)) - 1

    def clamp(self, value: int) -> int:
        return min(max(value, self.lo), self.hi)

    def representable(self, value: int) -> bool:
        return self.lo <= value <= self.hi


def saturating_add(a: int, b: int, width: ScoreWidth) -> int:
    return width.clamp(a + b)


@dataclass(frozen=True)
class ScoreModel:
    """Additive alignment scores: ``(match_bonus, mismatch_penalty, gap_penalty)``."""

    match_bonus: int = 2
    mismatch_penalty: int = -1
    gap_penalty: int = -2

    def __post_init__(self):
        for name in ("match_bonus", "mismatch_penalty", "gap_penalty"):
            if not isinstance(getattr(self, name), int):
                raise ModelInvariantViolation(f"{name} must be an integer")
        if self.gap_penalty > 0:
            raise ModelInvariantViolation(f"gap penalty must be <= 0, got {self.gap_penalty}")
        if self.mismatch_penalty > self.match_bonus:
            raise ModelInvariantViolation(
                f"mismatch penalty {self.mismatch_penalty} exceeds match bonus {self.match_bonus}"
            )

    def check_width(self, width: ScoreWidth) -> None:
        for value in (self.match_bonus, self.mismatch_penalty, self.gap_penalty):
            if not width.representable(value):
                raise ModelInvariantViolation(
                    f"score {value} is not representable in {width.bits}-bit registers"
                )

    def substitution(self, p: int, s: int) -> int:
        return self.match_bonus if p == s else self.mismatch_penalty


class SymbolClass:
    """A set of byte values stored as a 256-entry membership table."""

    __slots__ = ("table",)

    def __init__(self, members: Iterable[int] = ()):
        table = bytearray(ALPHABET_SIZE)
        for b in members:
            if not 0 <= b < ALPHABET_SIZE:
                raise ValueError(f"symbol {b!r} outside byte range")
            table[b] = 1
        self.table = bytes(table)

    @classmethod
    def any(cls) -> "SymbolClass":
        return cls(range(ALPHABET_SIZE))

    @classmethod
    def single(cls, symbol: int) -> "SymbolClass":
        return cls((symbol,))

    @classmethod
    def excluding(cls, symbol: int) -> "SymbolClass":
        return cls(b for b in range(ALPHABET_SIZE) if b != symbol)

    def __contains__(self, b: int) -> bool:
        return bool(self.table[b])

    def __len__(self) -> int:
        return sum(self.table)

    def __iter__(self):
        return (b for b in range(ALPHABET_SIZE) if self.table[b])

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolClass) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        n = len(self)
        if n == ALPHABET_SIZE:
            return "SymbolClass(ANY)"
        if n == ALPHABET_SIZE - 1:
            missing = next(b for b in range(ALPHABET_SIZE) if not self.table[b])
            return f"SymbolClass(NOT {missing})"
        return f"SymbolClass({sorted(self)})"


def class_matches(c: SymbolClass, b: int) -> bool:
    return c.table[b] != 0


@dataclass(frozen=True)
class Role:
    """Debug/report metadata: which pattern position a state stands for.

    ``kind`` is ``"M"`` (match), ``"X"`` (mismatch) or ``"I"`` (insertion).
    """

    kind: str
    position: int

    def __post_init__(self):
        if self.kind not in ("M", "X", "I"):
            raise ValueError(f"unknown role kind {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.kind}{self.position}"

    @classmethod
    def parse(cls, text: str) -> "Role":
        return cls(text[0], int(text[1:]))


@dataclass(frozen=True)
class StePlus:
    id: int
    symbol_class: SymbolClass
    role: Role
    out_edges: Tuple[Tuple[int, int], ...] = ()
    start_edge_score: Optional[int] = None
    accepting: bool = False
    accept_adjustment: int = 0

    @property
    def fanout(self) -> int:
        return len(self.out_edges)


@dataclass(frozen=True)
class ScoredNfa:
    """A compiled homogeneous automaton.

    The start source is implicit: it owns no slot, consumes nothing and
    is visible only through each state's ``start_edge_score``.
    """

    pattern_id: PatternId
    pattern: bytes
    states: Tuple[StePlus, ...]
    model: ScoreModel
    d_max: int
    allow_mismatch: bool = True

    def __post_init__(self):
        n = len(self.states)
        for i, s in enumerate(self.states):
            if s.id != i:
                raise ValueError(f"state at index {i} has id {s.id}")
            for target, _ in s.out_edges:
                if not 0 <= target < n:
                    raise ValueError(f"state {i} has edge to invalid id {target}")
            if not s.accepting and s.accept_adjustment != 0:
                raise ValueError(f"non-accepting state {i} carries an accept adjustment")

    def __len__(self) -> int:
        return len(self.states)

    @property
    def start_edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(
            (s.id, s.start_edge_score) for s in self.states if s.start_edge_score is not None
        )

    @property
    def edge_count(self) -> int:
        """Point-to-point wires, start edges included."""
        return len(self.start_edges) + sum(s.fanout for s in self.states)
