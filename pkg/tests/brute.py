"""Exhaustive oracles for tests; deliberately share no code with the package."""

from functools import lru_cache


def alignment_scores(P: bytes, S: bytes, a: int, x: int, g: int) -> frozenset:
    """Scores of every global alignment of P against S (substitute, delete, insert)."""
    m, n = len(P), len(S)

    @lru_cache(maxsize=None)
    def rec(i, j):
        if i == m and j == n:
            return frozenset({0})
        out = set()
        if i < m and j < n:
            sub = a if P[i] == S[j] else x
            out.update(sub + s for s in rec(i + 1, j + 1))
        if i < m:
            out.update(g + s for s in rec(i + 1, j))
        if j < n:
            out.update(g + s for s in rec(i, j + 1))
        return frozenset(out)

    return rec(0, 0)


def best_global(P, S, a, x, g) -> int:
    return max(alignment_scores(P, S, a, x, g))


def best_glocal(P, S, a, x, g) -> int:
    """Best global alignment of P over every window of S, the empty window included."""
    return max(
        max(alignment_scores(P, S[i:j], a, x, g))
        for i in range(len(S) + 1)
        for j in range(i, len(S) + 1)
    )


def path_scores(nfa, S: bytes, anchored_end: bool = True) -> set:
    """Score + adjustment of every accepted path consuming S from offset 0.

    With ``anchored_end`` the path must consume all of S.
    """
    out = set()
    if not S:
        return out

    def walk(sid, off, score):
        st = nfa.states[sid]
        if st.accepting and (off == len(S) - 1 or not anchored_end):
            out.add(score + st.accept_adjustment)
        if off + 1 < len(S):
            for t, w in st.out_edges:
                if nfa.states[t].symbol_class.table[S[off + 1]]:
                    walk(t, off + 1, score + w)

    for st in nfa.states:
        if st.start_edge_score is not None and st.symbol_class.table[S[0]]:
            walk(st.id, 0, st.start_edge_score)
    return out
