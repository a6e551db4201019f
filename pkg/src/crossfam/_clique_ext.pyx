# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled maximum clique kernel; same algorithm as ``_clique_py``."""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy
from libc.stdint cimport uint64_t

import time

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef struct State:
    int n
    int W
    uint64_t* adj
    uint64_t* sets
    uint64_t* scratch_u
    uint64_t* scratch_q
    int* order
    int* colors
    int* R
    int rsize
    int* best
    int best_size
    int stop_at
    long long nodes
    int timed_out
    int stopped


cdef int _any(uint64_t* a, int W):
    cdef int w
    for w in range(W):
        if a[w]:
            return 1
    return 0


cdef void _expand(State* s, int depth, double deadline, int has_deadline, int check_every):
    cdef int n = s.n
    cdef int W = s.W
    cdef uint64_t* P = s.sets + depth * W
    cdef uint64_t* NP = s.sets + (depth + 1) * W
    cdef int* order = s.order + depth * n
    cdef int* col = s.colors + depth * n
    cdef uint64_t* U = s.scratch_u
    cdef uint64_t* Qm = s.scratch_q
    cdef int m = 0, k = 0, w, w2, v, bit, i, nonempty
    cdef uint64_t low

    s.nodes += 1
    if has_deadline and s.nodes % check_every == 0:
        if time.monotonic() > deadline:
            s.timed_out = 1
            s.stopped = 1
            return

    memcpy(U, P, W * sizeof(uint64_t))
    while _any(U, W):
        k += 1
        memcpy(Qm, U, W * sizeof(uint64_t))
        for w in range(W):
            while Qm[w]:
                low = Qm[w] & (~Qm[w] + 1)
                bit = __builtin_ctzll(Qm[w])
                v = w * 64 + bit
                Qm[w] &= ~low
                for w2 in range(w, W):
                    Qm[w2] &= ~s.adj[v * W + w2]
                U[w] &= ~low
                order[m] = v
                col[m] = k
                m += 1

    i = m - 1
    while i >= 0:
        if s.rsize + col[i] <= s.best_size:
            return
        v = order[i]
        s.R[s.rsize] = v
        s.rsize += 1
        nonempty = 0
        for w in range(W):
            NP[w] = P[w] & s.adj[v * W + w]
            if NP[w]:
                nonempty = 1
        if nonempty:
            _expand(s, depth + 1, deadline, has_deadline, check_every)
        elif s.rsize > s.best_size:
            memcpy(s.best, s.R, s.rsize * sizeof(int))
            s.best_size = s.rsize
        s.rsize -= 1
        P[v // 64] &= ~((<uint64_t>1) << (v % 64))
        if s.stopped:
            return
        if s.best_size >= s.stop_at:
            s.stopped = 1
            return
        i -= 1


def clique_search(adj, int lower=0, stop_at=None, deadline=None, int check_every=2048):
    """Return ``(best, complete, nodes)``; see ``_clique_py.clique_search``."""
    cdef int n = len(adj)
    cdef int W = (n + 63) // 64 if n else 1
    cdef State s
    cdef int v, w
    cdef uint64_t mask64 = 0xFFFFFFFFFFFFFFFF
    if n == 0:
        return [], True, 0
    s.n = n
    s.W = W
    s.adj = <uint64_t*> calloc(n * W, sizeof(uint64_t))
    s.sets = <uint64_t*> calloc((n + 2) * W, sizeof(uint64_t))
    s.scratch_u = <uint64_t*> calloc(W, sizeof(uint64_t))
    s.scratch_q = <uint64_t*> calloc(W, sizeof(uint64_t))
    s.order = <int*> malloc((n + 1) * n * sizeof(int))
    s.colors = <int*> malloc((n + 1) * n * sizeof(int))
    s.R = <int*> malloc((n + 1) * sizeof(int))
    s.best = <int*> malloc((n + 1) * sizeof(int))
    if not (s.adj and s.sets and s.scratch_u and s.scratch_q and s.order and s.colors and s.R and s.best):
        raise MemoryError()
    try:
        for v in range(n):
            a = int(adj[v])
            for w in range(W):
                s.adj[v * W + w] = <uint64_t>((a >> (64 * w)) & mask64)
        for v in range(n):
            s.sets[v // 64] |= (<uint64_t>1) << (v % 64)
        s.rsize = 0
        s.best_size = lower
        s.stop_at = n if stop_at is None else stop_at
        s.nodes = 0
        s.timed_out = 0
        s.stopped = 0
        _expand(&s, 0, 0.0 if deadline is None else deadline, deadline is not None, check_every)
        if s.best_size > lower:
            best = [s.best[v] for v in range(s.best_size)]
        else:
            best = []
        return best, not s.timed_out, s.nodes
    finally:
        free(s.adj)
        free(s.sets)
        free(s.scratch_u)
        free(s.scratch_q)
        free(s.order)
        free(s.colors)
        free(s.R)
        free(s.best)
