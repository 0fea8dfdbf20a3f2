"""Ground truth that shares no code with the engine.

``nw_global`` and ``glocal`` are textbook dynamic programs over unbounded
Python ints. ``enumerate_paths`` walks every symbol-consuming path of a
compiled automaton one by one, which checks the compiler and the engine
together on tiny instances.
"""

from __future__ import annotations

from typing import List, Optional

from .engine import RunMode
from .errors import EmptyInput, EmptyPattern, InstanceTooLarge, NoAlignment
from .scoring import ScoredNfa, ScoreModel

MAX_ENUM_INPUT = 8
MAX_ENUM_STATES = 16


def _bytes(s) -> bytes:
    return s.encode("latin-1") if isinstance(s, str) else bytes(s)


def dp_matrix(P, S, model: ScoreModel, free_input_prefix: bool = False) -> List[List[int]]:
    """Fill ``H`` with ``H[i][j]`` = best score of ``P[:i]`` against ``S[:j]``."""
    P, S = _bytes(P), _bytes(S)
    m, n = len(P), len(S)
    a, x, g = model.match_bonus, model.mismatch_penalty, model.gap_penalty
    H = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        H[i][0] = i * g
    if not free_input_prefix:
        for j in range(1, n + 1):
            H[0][j] = j * g
    for i in range(1, m + 1):
        p = P[i - 1]
        prev, row = H[i - 1], H[i]
        for j in range(1, n + 1):
            row[j] = max(
                prev[j - 1] + (a if p == S[j - 1] else x),
                prev[j] + g,
                row[j - 1] + g,
            )
    return H


def nw_global(P, S, model: ScoreModel) -> int:
    if len(P) == 0:
        raise EmptyPattern("pattern must be non-empty")
    H = dp_matrix(P, S, model)
    return H[-1][-1]


def glocal(P, S, model: ScoreModel) -> int:
    """Whole pattern against the best window of ``S`` (input ends are free)."""
    if len(P) == 0:
        raise EmptyPattern("pattern must be non-empty")
    if len(S) == 0:
        raise EmptyInput("input must be non-empty")
    H = dp_matrix(P, S, model, free_input_prefix=True)
    return max(H[-1])


def _anchored_walk(nfa: ScoredNfa, T: bytes):
    """Walk every path whose first symbol is ``T[0]``.

    Returns ``(best ending anywhere, best ending on T[-1])``, either ``None``
    when no accepting path exists.
    """
    states = nfa.states
    symbols = set(T)
    succ = [
        {b: [(t, w) for t, w in s.out_edges if b in states[t].symbol_class] for b in symbols}
        for s in states
    ]
    last = len(T) - 1
    best_any = best_full = None
    stack = [
        (s.id, 0, s.start_edge_score)
        for s in states
        if s.start_edge_score is not None and T[0] in s.symbol_class
    ]
    while stack:
        sid, off, score = stack.pop()
        s = states[sid]
        if s.accepting:
            total = score + s.accept_adjustment
            if best_any is None or total > best_any:
                best_any = total
            if off == last and (best_full is None or total > best_full):
                best_full = total
        if off < last:
            nxt = off + 1
            for target, edge in succ[sid][T[nxt]]:
                stack.append((target, nxt, score + edge))
    return best_any, best_full


def enumerate_paths(nfa: ScoredNfa, S, mode: RunMode, memo: Optional[dict] = None) -> int:
    """Maximum score over every accepted path, found by exhaustive walking.

    GLOBAL: paths start at offset 0 and must consume all of ``S``.
    STREAMING: paths may start at any offset and end anywhere; a path
    starting at offset ``k`` is a walk over ``S[k:]``.

    Alignments that consume no input score ``m * gap``. They are counted
    the way the DP counts them: in GLOBAL mode only when ``S`` is empty,
    and in STREAMING mode (the empty window) whenever ``S`` is non-empty.

    ``memo`` may be shared between calls on the same automaton; it caches
    the walk result per input suffix.
    """
    S = _bytes(S)
    if len(S) > MAX_ENUM_INPUT or len(nfa.states) > MAX_ENUM_STATES:
        raise InstanceTooLarge(
            f"enumeration limited to |S| <= {MAX_ENUM_INPUT} and <= {MAX_ENUM_STATES} states"
        )
    mode = RunMode(mode)
    empty_alignment = len(nfa.pattern) * nfa.model.gap_penalty
    if not S:
        if mode is RunMode.GLOBAL:
            return empty_alignment
        raise NoAlignment("no symbol-consuming path on empty input")
    if memo is None:
        memo = {}

    def walk(T):
        if T not in memo:
            memo[T] = _anchored_walk(nfa, T)
        return memo[T]

    if mode is RunMode.GLOBAL:
        best = walk(S)[1]
    else:
        found = [walk(S[k:])[0] for k in range(len(S))]
        best = max([v for v in found if v is not None] + [empty_alignment])
    if best is None:
        raise NoAlignment("no accepted path")
    return best
