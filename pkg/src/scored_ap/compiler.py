"""Lower a pattern and a score model into a scored homogeneous automaton.

For a pattern ``P[1..m]`` the automaton has, in id order, ``I_0`` and then
``M_i, X_i, I_i`` for each position ``i``:

* ``M_i`` matches ``P[i]``, ``X_i`` matches every other byte (substitution),
  ``I_i`` matches any byte (an input symbol inserted after position ``i``).
* Entering ``M_j``/``X_j`` from position ``i`` skips ``j - i - 1`` pattern
  positions, so the edge score pre-charges one gap per skipped position.
  The hardware has no epsilon moves, so deletions only exist as these
  skip edges, at most ``d_max`` positions per edge.
* Every state accepts, with the trailing deletions ``(m - i) * gap`` folded
  into its accept adjustment.

The reference DNA example uses pattern ``AGC``; that choice is inferred, as
``AGC`` is the 3-mer giving both reference scores (6 for ``AGC``, -1 for
``AGATG``) under (+2, -1, -2) global alignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Union

from .errors import EmptyPattern, ModelInvariantViolation
from .scoring import Role, ScoredNfa, ScoreModel, StePlus, SymbolClass

FULL = "full"


@dataclass(frozen=True)
class CompileOptions:
    d_max: Union[int, str] = FULL
    allow_mismatch: bool = True

    def __post_init__(self):
        if self.d_max != FULL and (not isinstance(self.d_max, int) or self.d_max < 0):
            raise ValueError(f"d_max must be a non-negative integer or {FULL!r}, got {self.d_max!r}")

    def resolve_d_max(self, m: int) -> int:
        if self.d_max == FULL:
            return m - 1
        return min(self.d_max, m - 1)


def compile_pattern(
    pattern: bytes,
    model: ScoreModel = ScoreModel(),
    opts: CompileOptions = CompileOptions(),
    pattern_id=0,
) -> ScoredNfa:
    if isinstance(pattern, str):
        pattern = pattern.encode("latin-1")
    pattern = bytes(pattern)
    m = len(pattern)
    if m == 0:
        raise EmptyPattern("cannot compile an empty pattern")
    if not isinstance(model, ScoreModel):
        raise ModelInvariantViolation(f"expected a ScoreModel, got {type(model).__name__}")
    d = opts.resolve_d_max(m)
    a, x, g = model.match_bonus, model.mismatch_penalty, model.gap_penalty
    mism = opts.allow_mismatch

    # id layout: I_0, then (M_i, X_i, I_i) or (M_i, I_i) per position
    stride = 3 if mism else 2

    def m_id(i):
        return 1 + (i - 1) * stride

    def x_id(i):
        return m_id(i) + 1

    def i_id(i):
        return 0 if i == 0 else m_id(i) + stride - 1

    def advance_edges(i: int) -> List[tuple]:
        # from a state at position i into positions i+1 .. i+1+d
        edges = []
        for j in range(i + 1, min(i + 1 + d, m) + 1):
            skip = (j - i - 1) * g
            edges.append((m_id(j), skip + a))
            if mism:
                edges.append((x_id(j), skip + x))
        return edges

    start_scores = {i_id(0): g}
    for j in range(1, min(1 + d, m) + 1):
        start_scores[m_id(j)] = (j - 1) * g + a
        if mism:
            start_scores[x_id(j)] = (j - 1) * g + x

    specs = [(i_id(0), SymbolClass.any(), Role("I", 0), [(i_id(0), g)] + advance_edges(0))]
    for i in range(1, m + 1):
        sym = pattern[i - 1]
        consume = advance_edges(i) + [(i_id(i), g)]
        specs.append((m_id(i), SymbolClass.single(sym), Role("M", i), consume))
        if mism:
            specs.append((x_id(i), SymbolClass.excluding(sym), Role("X", i), consume))
        specs.append((i_id(i), SymbolClass.any(), Role("I", i), [(i_id(i), g)] + advance_edges(i)))

    states = []
    for expected_id, (sid, cls, role, edges) in enumerate(specs):
        assert sid == expected_id
        states.append(
            StePlus(
                id=sid,
                symbol_class=cls,
                role=role,
                out_edges=tuple(edges),
                start_edge_score=start_scores.get(sid),
                accepting=True,
                accept_adjustment=(m - role.position) * g,
            )
        )
    return ScoredNfa(
        pattern_id=pattern_id,
        pattern=pattern,
        states=tuple(states),
        model=model,
        d_max=d,
        allow_mismatch=mism,
    )


def start_fanout(nfa: ScoredNfa) -> int:
    return len(nfa.start_edges)


def max_fanout(nfa: ScoredNfa) -> int:
    return max(start_fanout(nfa), max(s.fanout for s in nfa.states))


def state_count(nfa: ScoredNfa) -> int:
    return len(nfa.states)


def find_state(nfa: ScoredNfa, role: str) -> Optional[StePlus]:
    """Look up a state by its role label, e.g. ``"M3"``."""
    for s in nfa.states:
        if str(s.role) == role:
            return s
    return None
