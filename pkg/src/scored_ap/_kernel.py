"""Numba kernels advancing the STE+ array one input byte per cycle.

``advance`` walks out-edges of the active frontier and saturates every
addition, so it is exact for any width up to 64 bits. ``advance_dense``
gathers over in-edges of every matching state without branches: inactive
states hold ``NEG`` and each state clamps once after taking the max, which
equals max-of-clamped because clamping is monotone. The sentinel arithmetic
needs headroom, so the dense kernel is only valid up to ``DENSE_MAX_BITS``.
"""

import numba
import numpy as np

DENSE_MAX_BITS = 60
NEG = -(1 << 62)


@numba.njit(inline="always")
def _sat(a, b, lo, hi):
    # a, b are in range; compare before adding so int64 never overflows
    if b > 0 and a > hi - b:
        return hi
    if b < 0 and a < lo - b:
        return lo
    return a + b


@numba.njit(cache=True, nogil=True)
def advance(
    data, pos, stop,
    class_tab, ptr, dst, weight, start_dst, start_weight, accepting, adjust, lo, hi,
    cur_list, n_cur, cur_score, nxt_flag, nxt_list, nxt_score,
    cycle, global_mode, collect,
    rep_offset, rep_ste, rep_score, n_rep,
):
    """Run cycles for ``data[pos:stop]``.

    Stops early when ``collect`` is set and the report buffers could
    overflow on the next cycle. Returns
    ``(pos, n_cur, cycle, n_rep, reports_counted)``.
    """
    n_states = cur_score.shape[0]
    cap = rep_offset.shape[0]
    counted = 0
    while pos < stop:
        if collect and n_rep + n_states > cap:
            break
        b = data[pos]
        row = class_tab[b]
        n_nxt = 0
        for k in range(n_cur):
            s = cur_list[k]
            sc = cur_score[s]
            for e in range(ptr[s], ptr[s + 1]):
                t = dst[e]
                if row[t]:
                    v = _sat(sc, weight[e], lo, hi)
                    if nxt_flag[t] == 0:
                        nxt_flag[t] = 1
                        nxt_score[t] = v
                        nxt_list[n_nxt] = t
                        n_nxt += 1
                    elif v > nxt_score[t]:
                        nxt_score[t] = v
        if global_mode == 0 or cycle == 0:
            # start source: zero incoming score plus the start edge score
            for e in range(start_dst.shape[0]):
                t = start_dst[e]
                if row[t]:
                    v = _sat(0, start_weight[e], lo, hi)
                    if nxt_flag[t] == 0:
                        nxt_flag[t] = 1
                        nxt_score[t] = v
                        nxt_list[n_nxt] = t
                        n_nxt += 1
                    elif v > nxt_score[t]:
                        nxt_score[t] = v
        if collect:
            nxt_list[:n_nxt].sort()
            for k in range(n_nxt):
                t = nxt_list[k]
                if accepting[t]:
                    rep_offset[n_rep] = cycle
                    rep_ste[n_rep] = t
                    rep_score[n_rep] = _sat(nxt_score[t], adjust[t], lo, hi)
                    n_rep += 1
        else:
            for k in range(n_nxt):
                if accepting[nxt_list[k]]:
                    counted += 1
        for k in range(n_nxt):
            t = nxt_list[k]
            cur_list[k] = t
            cur_score[t] = nxt_score[t]
            nxt_flag[t] = 0
        n_cur = n_nxt
        cycle += 1
        pos += 1
    return pos, n_cur, cycle, n_rep, counted


def empty_buffers(n_states):
    return (
        np.zeros(n_states, dtype=np.int64),  # cur_list
        np.zeros(n_states, dtype=np.int64),  # cur_score
        np.zeros(n_states, dtype=np.uint8),  # nxt_flag
        np.zeros(n_states, dtype=np.int64),  # nxt_list
        np.zeros(n_states, dtype=np.int64),  # nxt_score
    )


@numba.njit(cache=True, nogil=True)
def advance_dense(
    data, pos, stop,
    class_tab, iptr, isrc, iweight, start_score, accepting, adjust, lo, hi,
    score, spare,
    cycle, global_mode, collect,
    rep_offset, rep_ste, rep_score, n_rep,
):
    """Dense counterpart of :func:`advance`; ``score`` holds NEG for inactive slots.

    ``score`` is updated in place. Returns ``(pos, cycle, n_rep, reports_counted)``.
    """
    n_states = score.shape[0]
    cap = rep_offset.shape[0]
    floor = 2 * lo  # every real contribution is >= 2*lo; inactive ones are far below
    cur = score
    nxt = spare
    counted = 0
    flipped = False
    while pos < stop:
        if collect and n_rep + n_states > cap:
            break
        row = class_tab[data[pos]]
        use_start = global_mode == 0 or cycle == 0
        for t in range(n_states):
            best = NEG
            if row[t]:
                if use_start:
                    best = start_score[t]
                for e in range(iptr[t], iptr[t + 1]):
                    v = cur[isrc[e]] + iweight[e]
                    if v > best:
                        best = v
            if best >= floor:
                if best > hi:
                    best = hi
                elif best < lo:
                    best = lo
                if accepting[t]:
                    if collect:
                        rep_offset[n_rep] = cycle
                        rep_ste[n_rep] = t
                        r = best + adjust[t]
                        rep_score[n_rep] = hi if r > hi else (lo if r < lo else r)
                        n_rep += 1
                    else:
                        counted += 1
            else:
                best = NEG
            nxt[t] = best
        cur, nxt = nxt, cur
        flipped = not flipped
        cycle += 1
        pos += 1
    if flipped:
        score[:] = cur
    return pos, cycle, n_rep, counted
