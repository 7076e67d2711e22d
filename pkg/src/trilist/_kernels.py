"""Compiled listing loops.

Every kernel processes pivot vertices ``lo <= u < hi``, adds its counts into
``counters`` (layout below) and, when ``collect`` is set, returns the
emitted triangles as a (k, 3) array in emission role order. With ``collect``
off nothing is allocated beyond an empty array.
"""

import numba
import numpy as np

from .bitmap import bit_clear, bit_set, bit_test

TRIANGLES = 0
PROBES = 1
MERGE_COMPARISONS = 2
TABLE_BUILDS = 3
POSITIVE = 4
NEGATIVE = 5
N_COUNTERS = 6

_jit = numba.njit(cache=True, nogil=True)


@numba.njit(cache=True, nogil=True)
def _push(buf, k, a, b, c):
    if k == buf.shape[0]:
        grown = np.empty((max(64, 2 * k), 3), dtype=np.int64)
        grown[:k] = buf[:k]
        buf = grown
    buf[k, 0] = a
    buf[k, 1] = b
    buf[k, 2] = c
    return buf


@numba.njit(cache=True, nogil=True)
def _new_buffer(collect):
    return np.empty((64 if collect else 0, 3), dtype=np.int64)


@numba.njit(cache=True, nogil=True)
def _assert_clear(words):
    for i in range(words.shape[0]):
        if words[i] != np.uint64(0):
            raise AssertionError("bitmap not clear after pivot")


@_jit
def cf_merge_kernel(out_off, out_nb, rank, lo, hi, counters, collect, debug):
    buf = _new_buffer(collect)
    k = 0
    comparisons = 0
    for u in range(lo, hi):
        su, eu = out_off[u], out_off[u + 1]
        if debug:
            for i in range(su + 1, eu):
                if rank[out_nb[i - 1]] >= rank[out_nb[i]]:
                    raise ValueError("out-adjacency not sorted by ascending rank")
        for p in range(su, eu):
            v = out_nb[p]
            i = su
            j = out_off[v]
            ej = out_off[v + 1]
            while i < eu and j < ej:
                comparisons += 1
                ri = rank[out_nb[i]]
                rj = rank[out_nb[j]]
                if ri < rj:
                    i += 1
                elif ri > rj:
                    j += 1
                else:
                    if collect:
                        buf = _push(buf, k, u, v, out_nb[i])
                    k += 1
                    i += 1
                    j += 1
    counters[TRIANGLES] += k
    counters[MERGE_COMPARISONS] += comparisons
    return buf[:k]


@numba.njit(cache=True, nogil=True, inline="always")
def _slot(v, mask):
    return ((v + 1) * np.int64(2654435761)) & mask


@_jit
def cf_hash_kernel(out_off, out_nb, lo, hi, table, slots, counters, collect, reuse_last):
    """Per-edge hash join: build an open-addressing set over the larger out-list,
    probe with the smaller one. ``table`` holds vertex+1 (0 = empty); ``slots``
    remembers occupied positions so clearing costs O(build size)."""
    mask = table.shape[0] - 1
    buf = _new_buffer(collect)
    k = 0
    probes = 0
    builds = 0
    held = -1  # vertex whose out-list currently fills the table
    held_size = 0
    for u in range(lo, hi):
        su, eu = out_off[u], out_off[u + 1]
        du = eu - su
        for p in range(su, eu):
            v = out_nb[p]
            sv, ev = out_off[v], out_off[v + 1]
            dv = ev - sv
            if du >= dv:
                big, bs, be, ss, se = u, su, eu, sv, ev
            else:
                big, bs, be, ss, se = v, sv, ev, su, eu
            if not (reuse_last and held == big):
                for t in range(held_size):
                    table[slots[t]] = 0
                held_size = 0
                for t in range(bs, be):
                    x = out_nb[t]
                    h = _slot(x, mask)
                    while table[h] != 0:
                        h = (h + 1) & mask
                    table[h] = x + 1
                    slots[held_size] = h
                    held_size += 1
                builds += be - bs
                held = big
            for t in range(ss, se):
                y = out_nb[t]
                probes += 1
                h = _slot(y, mask)
                while table[h] != 0:
                    if table[h] == y + 1:
                        if collect:
                            buf = _push(buf, k, u, v, y)
                        k += 1
                        break
                    h = (h + 1) & mask
    for t in range(held_size):
        table[slots[t]] = 0
    counters[TRIANGLES] += k
    counters[PROBES] += probes
    counters[TABLE_BUILDS] += builds
    return buf[:k]


@_jit
def kclist_kernel(out_off, out_nb, lo, hi, words, counters, collect, debug):
    buf = _new_buffer(collect)
    k = 0
    probes = 0
    builds = 0
    for u in range(lo, hi):
        su, eu = out_off[u], out_off[u + 1]
        for p in range(su, eu):
            bit_set(words, out_nb[p])
        builds += eu - su
        for p in range(su, eu):
            v = out_nb[p]
            for q in range(out_off[v], out_off[v + 1]):
                w = out_nb[q]
                probes += 1
                if bit_test(words, w):
                    if collect:
                        buf = _push(buf, k, u, v, w)
                    k += 1
        for p in range(su, eu):
            bit_clear(words, out_nb[p])
        if debug:
            _assert_clear(words)
    counters[TRIANGLES] += k
    counters[PROBES] += probes
    counters[TABLE_BUILDS] += builds
    return buf[:k]


@_jit
def aot_kernel(out_off, out_nb, in_off, in_nb, out_deg, lo, hi, words, counters, collect, debug):
    buf = _new_buffer(collect)
    k = 0
    probes = 0
    builds = 0
    positive = 0
    for u in range(lo, hi):
        su, eu = out_off[u], out_off[u + 1]
        du = out_deg[u]
        for p in range(su, eu):
            bit_set(words, out_nb[p])
        builds += eu - su
        # out-neighbours that precede u by (out-degree, ID)
        for p in range(su, eu):
            v = out_nb[p]
            dv = out_deg[v]
            if dv < du or (dv == du and v < u):
                for q in range(out_off[v], out_off[v + 1]):
                    w = out_nb[q]
                    probes += 1
                    if bit_test(words, w):
                        if collect:
                            buf = _push(buf, k, u, v, w)
                        k += 1
                        positive += 1
        # in-neighbours that precede u by (out-degree, ID)
        for p in range(in_off[u], in_off[u + 1]):
            x = in_nb[p]
            dx = out_deg[x]
            if dx < du or (dx == du and x < u):
                for q in range(out_off[x], out_off[x + 1]):
                    y = out_nb[q]
                    probes += 1
                    if bit_test(words, y):
                        if collect:
                            buf = _push(buf, k, u, x, y)
                        k += 1
        for p in range(su, eu):
            bit_clear(words, out_nb[p])
        if debug:
            _assert_clear(words)
    counters[TRIANGLES] += k
    counters[PROBES] += probes
    counters[TABLE_BUILDS] += builds
    counters[POSITIVE] += positive
    counters[NEGATIVE] += k - positive
    return buf[:k]
