"""Exact maximum segment families and the square-root crossing family.

A family is a set of endpoint-disjoint segments in which every pair stands in
a prescribed relation (crossing, parallel, or "stab or cross").  The maximum
is found as a maximum clique of the compatibility graph.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import _kernels
from .geom import PairRelation, PointSet, Segment, classify_xy, integer_coords, is_general_position

DEFAULT_TIMEOUT_S = 300.0


class Relation(enum.Enum):
    CROSSING = "crossing"
    PARALLEL = "parallel"
    STAB_OR_CROSS = "stab_or_cross"

    @classmethod
    def parse(cls, value) -> "Relation":
        if isinstance(value, Relation):
            return value
        v = str(value).lower().replace("-", "_")
        aliases = {"stabbing": "stab_or_cross", "stab": "stab_or_cross", "cross": "crossing"}
        return cls(aliases.get(v, v))

    def accepts(self, rel: PairRelation) -> bool:
        if rel is PairRelation.DEGENERATE:
            return False
        if self is Relation.CROSSING:
            return rel is PairRelation.CROSSING
        if self is Relation.PARALLEL:
            return rel is PairRelation.PARALLEL
        return rel is not PairRelation.PARALLEL


class SegmentFilter(enum.Enum):
    ALL = "all"
    BICOLORED = "bicolored"


@dataclass(frozen=True)
class Family:
    segments: tuple[Segment, ...]
    relation: Relation
    base: PointSet = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.segments)


@dataclass(frozen=True)
class SolveResult:
    family: Family
    complete: bool
    upper_bound: int
    nodes: int
    elapsed_s: float

    @property
    def size(self) -> int:
        return len(self.family)


def verify_family(F: Family) -> tuple[bool, tuple[Segment, Segment] | None]:
    """Re-check endpoint disjointness and the pairwise relation exactly."""
    P = F.base
    segs = [Segment.of(*s) for s in F.segments]
    for s in segs:
        if not (0 <= s.i < len(P) and 0 <= s.j < len(P)):
            return False, (s, s)
    for s, t in combinations(segs, 2):
        if len({s.i, s.j, t.i, t.j}) < 4:
            return False, (s, t)
        rel = classify_xy(P[s.i].xy(), P[s.j].xy(), P[t.i].xy(), P[t.j].xy())
        if not F.relation.accepts(rel):
            return False, (s, t)
    return True, None


def orientation_table(P: PointSet) -> list[list[list[int]]]:
    """``o[i][j][k]`` for all triples, computed once on scaled integer coordinates."""
    c = integer_coords(P)
    n = len(c)
    o = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        xi, yi = c[i]
        for j in range(n):
            if j == i:
                continue
            dx, dy = c[j][0] - xi, c[j][1] - yi
            row = o[i][j]
            for k in range(n):
                d = dx * (c[k][1] - yi) - dy * (c[k][0] - xi)
                row[k] = (d > 0) - (d < 0)
    return o


def _relation_from_table(o, s, t) -> PairRelation:
    a = o[s[0]][s[1]][t[0]]
    b = o[s[0]][s[1]][t[1]]
    c = o[t[0]][t[1]][s[0]]
    d = o[t[0]][t[1]][s[1]]
    if not (a and b and c and d):
        return PairRelation.DEGENERATE
    l1 = a != b
    l2 = c != d
    if l1 and l2:
        return PairRelation.CROSSING
    if l1:
        return PairRelation.FIRST_STABS_SECOND
    if l2:
        return PairRelation.SECOND_STABS_FIRST
    return PairRelation.PARALLEL


def candidate_segments(P: PointSet, segment_filter=SegmentFilter.ALL, allowed=None) -> list[Segment]:
    segment_filter = SegmentFilter(segment_filter)
    out = []
    for i, j in combinations(range(len(P)), 2):
        if segment_filter is SegmentFilter.BICOLORED:
            ci, cj = P[i].color, P[j].color
            if ci == cj or "none" in (ci.value, cj.value):
                continue
        if allowed is not None and not allowed(i, j):
            continue
        out.append(Segment(i, j))
    return out


def compatibility_graph(P: PointSet, segs: Sequence[Segment], relation: Relation) -> list[int]:
    o = orientation_table(P)
    m = len(segs)
    adj = [0] * m
    for u in range(m):
        s = segs[u]
        for v in range(u + 1, m):
            t = segs[v]
            if s[0] in t or s[1] in t:
                continue
            if relation.accepts(_relation_from_table(o, s, t)):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return adj


def _coloring_bound(adj: list[int]) -> int:
    """Number of colours of a greedy colouring: an upper bound on the clique number."""
    U = (1 << len(adj)) - 1
    k = 0
    while U:
        k += 1
        Qm = U
        while Qm:
            low = Qm & -Qm
            v = low.bit_length() - 1
            Qm &= ~low & ~adj[v]
            U &= ~low
    return k


def max_clique(adj: list[int], stop_at=None, timeout_s=None, lower_witness=()):
    """Degree-ordered branch and bound.  Returns ``(clique, complete, nodes)``."""
    n = len(adj)
    order = sorted(range(n), key=lambda v: (-bin(adj[v]).count("1"), v))
    pos = {v: i for i, v in enumerate(order)}
    radj = []
    for v in order:
        m = 0
        a = adj[v]
        while a:
            low = a & -a
            m |= 1 << pos[low.bit_length() - 1]
            a &= ~low
        radj.append(m)
    deadline = None if timeout_s is None else time.monotonic() + timeout_s
    best, complete, nodes = _kernels.clique_search(radj, len(lower_witness), stop_at, deadline)
    if not best:
        return list(lower_witness), complete, nodes
    return sorted(order[i] for i in best), complete, nodes


def max_pairwise_family(
    P: PointSet,
    relation=Relation.CROSSING,
    segment_filter=SegmentFilter.ALL,
    upper_hint: int | None = None,
    timeout_s: float | None = DEFAULT_TIMEOUT_S,
    require_general_position: bool = True,
) -> SolveResult:
    """Exact maximum family under ``relation``.

    ``upper_hint`` is a known upper bound; reaching it ends the search early
    and does not change the optimum.
    """
    relation = Relation.parse(relation)
    if require_general_position:
        ok, triple = is_general_position(P)
        if not ok:
            raise ValueError(f"points {triple} are collinear")
    t0 = time.monotonic()
    segs = candidate_segments(P, segment_filter)
    adj = compatibility_graph(P, segs, relation)
    bound = min(len(P) // 2, _coloring_bound(adj)) if segs else 0
    if upper_hint is not None:
        bound = min(bound, upper_hint)
    clique, complete, nodes = max_clique(adj, stop_at=bound, timeout_s=timeout_s)
    fam = Family(tuple(segs[i] for i in clique), relation, P)
    ub = len(fam) if complete else bound
    return SolveResult(fam, complete, ub, nodes, time.monotonic() - t0)


def crf(P: PointSet, timeout_s=DEFAULT_TIMEOUT_S) -> int:
    res = max_pairwise_family(P, Relation.CROSSING, timeout_s=timeout_s)
    if not res.complete:
        raise TimeoutError(f"crossing family search incomplete (best {res.size}, bound {res.upper_bound})")
    return res.size


def can_be_crossed(A, B) -> Family | None:
    """Perfect A-B crossing family exhausting both sets, or None.

    Searched directly on the geometry (not through rank labelings), so it can
    serve as an independent check of the rank characterisation.
    """
    from .geom import Color, Point
    from .separation import is_separable, _coords

    if len(A) != len(B):
        raise ValueError("A and B must have equal size")
    ok, _ = is_separable(A, B)
    if not ok:
        raise ValueError("A and B are not separable")
    pts = [Point(x, y, Color.BLUE) for x, y in _coords(A)] + [Point(x, y, Color.RED) for x, y in _coords(B)]
    P = PointSet(pts)
    s = len(A)
    segs = candidate_segments(P, SegmentFilter.BICOLORED)
    adj = compatibility_graph(P, segs, Relation.CROSSING)
    clique, complete, _ = max_clique(adj, stop_at=s, timeout_s=None)
    if len(clique) < s:
        return None
    fam = Family(tuple(segs[i] for i in clique), Relation.CROSSING, P)
    ok, bad = verify_family(fam)
    assert ok, bad
    return fam


def family_from_labeling(A, B, labeling) -> Family:
    """Segments a_i b_i of a rank labeling, over the point set A + B."""
    from .geom import Color, Point
    from .separation import _coords

    pts = [Point(x, y, Color.BLUE) for x, y in _coords(A)] + [Point(x, y, Color.RED) for x, y in _coords(B)]
    P = PointSet(pts)
    s = len(A)
    segs = tuple(Segment.of(a, s + b) for a, b in zip(labeling.a_order, labeling.b_order))
    return Family(segs, Relation.CROSSING, P)


def longest_monotone_subsequence(seq: Sequence[int], increasing: bool = True) -> list[int]:
    """Positions of a longest strictly monotone subsequence.

    Patience sorting with predecessor links; among optimal answers the
    lexicographically smallest position list is returned.
    """
    vals = list(seq) if increasing else [-v for v in seq]
    n = len(vals)
    # lengths of longest increasing subsequence starting at each position (right to left)
    best_from = [1] * n
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            if vals[j] > vals[i] and best_from[j] + 1 > best_from[i]:
                best_from[i] = best_from[j] + 1
    if n == 0:
        return []
    L = max(best_from)
    out = []
    need = L
    last = None
    for i in range(n):
        if best_from[i] == need and (last is None or vals[i] > last):
            out.append(i)
            last = vals[i]
            need -= 1
            if need == 0:
                break
    return out


def sqrt_family_one_avoiding(P: PointSet, partition) -> Family:
    """Crossing family of size at least ceil(sqrt(n)) in a 1-avoiding set, n >= 3 per side.

    Reads a longest monotone subsequence off the middle row of the dual
    table.  If it is increasing, the chosen red lines keep that order in
    every row above the middle; if decreasing, in every row below it.  Either
    way the subtable has a distinct diagonal, which yields the segments.
    """
    from .tables import build_table

    T = build_table(P, partition)
    n = len(T.rows)
    if n == 0:
        return Family((), Relation.CROSSING, P)
    mid = (n + 1) // 2 - 1  # 0-based index of row ceil(n/2)
    row = T.rows[mid]
    inc = longest_monotone_subsequence(row, True)
    dec = longest_monotone_subsequence(row, False)
    if len(inc) >= len(dec):
        chosen = [row[p] for p in inc]
        rows = list(range(0, mid + 1))
    else:
        chosen = [row[p] for p in dec]
        rows = list(range(mid, n))
    k = min(len(chosen), len(rows))
    chosen = chosen[:k]
    rows = rows[:k]
    segs = []
    for i, r in enumerate(rows):
        restricted = [e for e in T.rows[r] if e in chosen]
        d = restricted[i]
        segs.append(Segment.of(T.blue_ids[r], T.red_ids[d - 1]))
    fam = Family(tuple(segs), Relation.CROSSING, P)
    ok, bad = verify_family(fam)
    if not ok:
        raise AssertionError(f"table-derived family failed verification at {bad}")
    return fam
