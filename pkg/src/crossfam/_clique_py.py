"""Pure-Python maximum clique (bitset colouring branch and bound).

Mirrors ``_clique_ext.pyx`` step for step so both return the same witness.
Vertices are expected pre-sorted; the caller handles relabelling.
"""
from __future__ import annotations

import time


class _Stop(Exception):
    pass


def clique_search(adj, lower=0, stop_at=None, deadline=None, check_every=2048):
    """Return ``(best, complete, nodes)``.

    ``adj`` is a list of int bitmasks.  ``lower`` is a size the caller already
    has a witness for (only strictly larger cliques are recorded).  The search
    stops once a clique of size ``stop_at`` is found.
    """
    n = len(adj)
    if stop_at is None:
        stop_at = n
    best: list[int] = []
    best_size = lower
    R: list[int] = []
    nodes = 0
    timed_out = False

    def expand(P):
        nonlocal best, best_size, nodes, timed_out
        nodes += 1
        if deadline is not None and nodes % check_every == 0 and time.monotonic() > deadline:
            timed_out = True
            raise _Stop
        order = []
        colors = []
        U = P
        k = 0
        while U:
            k += 1
            Qm = U
            while Qm:
                low = Qm & -Qm
                v = low.bit_length() - 1
                Qm &= ~low
                Qm &= ~adj[v]
                U &= ~low
                order.append(v)
                colors.append(k)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + colors[i] <= best_size:
                return
            v = order[i]
            R.append(v)
            NP = P & adj[v]
            if NP:
                expand(NP)
            elif len(R) > best_size:
                best = list(R)
                best_size = len(R)
            R.pop()
            P &= ~(1 << v)
            if best_size >= stop_at:
                raise _Stop

    if n:
        try:
            expand((1 << n) - 1)
        except _Stop:
            pass
    return best, not timed_out, nodes
