"""Permutation tables of 1-avoiding arrangements and allowable sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .duality import Line, point_to_dual_line
from .geom import Point, PointSet


@dataclass(frozen=True)
class PermTable:
    """Row ``i`` lists red labels (1-based) in the order blue line ``i`` meets them.

    ``blue_ids[i]`` / ``red_ids[label - 1]`` map rows and labels back to the
    source (point indices, or line indices for :func:`build_table_from_lines`).
    """

    rows: tuple[tuple[int, ...], ...]
    blue_ids: tuple[int, ...] = ()
    red_ids: tuple[int, ...] = ()

    def reduce(self, row_idx: Sequence[int], elements) -> list[list[int]]:
        keep = set(elements)
        return [[e for e in self.rows[r] if e in keep] for r in row_idx]


def _meet_x(l1: Line, l2: Line) -> Fraction:
    if l1.vertical or l2.vertical or l1.a == l2.a:
        raise ValueError("lines must be non-vertical with distinct slopes")
    return (l2.b - l1.b) / (l1.a - l2.a)


def build_table_from_lines(blue: Sequence[Line], red: Sequence[Line]) -> PermTable:
    """Table of a two-coloured arrangement read left to right.

    Blue rows are ordered as the red lines meet them (every red line must
    agree); red labels follow the first blue row.
    """
    if not blue or not red:
        raise ValueError("need at least one line of each colour")
    orders = []
    for r in red:
        xs = [_meet_x(b, r) for b in blue]
        if len(set(xs)) < len(xs):
            raise ValueError("three lines through one point")
        orders.append(tuple(sorted(range(len(blue)), key=xs.__getitem__)))
    if any(o != orders[0] for o in orders):
        raise ValueError("red lines see the blue lines in different orders (not 1-avoiding)")
    blue_order = orders[0]
    raw_rows = []
    for bi in blue_order:
        xs = [_meet_x(blue[bi], r) for r in red]
        if len(set(xs)) < len(xs):
            raise ValueError("three lines through one point")
        raw_rows.append(sorted(range(len(red)), key=xs.__getitem__))
    red_order = raw_rows[0]
    label = {r: k + 1 for k, r in enumerate(red_order)}
    rows = tuple(tuple(label[r] for r in row) for row in raw_rows)
    return PermTable(rows, tuple(blue_order), tuple(red_order))


def normalize_frame(P: PointSet, partition) -> list[tuple[Fraction, Fraction]]:
    """Coordinates after an orientation-preserving linear map putting set_b left of set_a."""
    from .separation import is_separable

    A = [P[i] for i in partition.set_a]
    B = [P[i] for i in partition.set_b]
    ok, line = is_separable(A, B)
    if not ok:
        raise ValueError("partition classes are not separable")
    coords = [p.xy() for p in P]
    if not line.vertical:
        a = line.a
        # (x, y) -> (a x - y, x) has determinant 1 and makes the witness vertical
        coords = [(a * x - y, x) for x, y in coords]
    bx = max(coords[i][0] for i in partition.set_b)
    ax = min(coords[i][0] for i in partition.set_a)
    if bx < ax:
        return coords
    coords = [(-x, -y) for x, y in coords]
    bx = max(coords[i][0] for i in partition.set_b)
    ax = min(coords[i][0] for i in partition.set_a)
    assert bx < ax
    return coords


def build_table(P: PointSet, partition) -> PermTable:
    """T(B*, R*) for a 1-avoiding split; set_a is blue (the avoiding side)."""
    from .separation import is_one_avoiding

    if not is_one_avoiding(P, partition):
        raise ValueError("partition is not 1-avoiding")
    coords = normalize_frame(P, partition)
    blue = [point_to_dual_line(Point(*coords[i])) for i in partition.set_a]
    red = [point_to_dual_line(Point(*coords[i])) for i in partition.set_b]
    T = build_table_from_lines(blue, red)
    return PermTable(
        T.rows,
        tuple(partition.set_a[i] for i in T.blue_ids),
        tuple(partition.set_b[i] for i in T.red_ids),
    )


def find_distinct_diagonal(rows: Sequence[Sequence[int]] | PermTable, k: int, elements=None):
    """A k x k subtable with pairwise distinct diagonal, or None.

    Returns ``(row_indices, element_subset, diagonal)``.  Element subsets are
    enumerated outermost.  Inside, rows are chosen in increasing order.  When
    no pair of elements reverses order twice (every table built from lines or
    pseudolines), the entries before the i-th diagonal entry of row i must be
    exactly the earlier diagonal entries, which prunes almost every branch.
    Other inputs get the plain exhaustive search.
    """
    if isinstance(rows, PermTable):
        rows = rows.rows
    rows = [tuple(r) for r in rows]
    if elements is None:
        elements = sorted({e for r in rows for e in r})
    if k <= 0:
        return (), (), ()
    if k > min(len(rows), len(elements)):
        raise ValueError("k exceeds table dimensions")
    tab = len({frozenset(r) for r in rows}) == 1 and no_pair_flips_twice(rows)
    for E in combinations(elements, k):
        keep = set(E)
        red = [tuple(e for e in r if e in keep) for r in rows]
        found = _diag_search(red, k, tab)
        if found is not None:
            chosen, diag = found
            return tuple(chosen), E, tuple(diag)
    return None


def _diag_search(red, k, tab=True):
    L = len(red)
    dead = set()
    chosen: list[int] = []
    diag: list[int] = []

    def go(start, D):
        i = len(chosen)
        if i == k:
            return True
        key = (start, D)
        if key in dead:
            return False
        for r in range(start, L - (k - i) + 1):
            row = red[r]
            if tab:
                if frozenset(row[:i]) != D:
                    continue
            elif row[i] in D:
                continue
            d = row[i]
            chosen.append(r)
            diag.append(d)
            if go(r + 1, D | {d}):
                return True
            chosen.pop()
            diag.pop()
        dead.add(key)
        return False

    if go(0, frozenset()):
        return chosen, diag
    return None


def has_distinct_diagonal(rows: Sequence[Sequence[int]]) -> bool:
    diag = [row[i] for i, row in enumerate(rows)]
    return len(set(diag)) == len(diag)


@dataclass
class AllowableSequence:
    perms: list[tuple[int, ...]]
    moves: list[list[tuple[int, int]]] = field(default_factory=list)
    labels: tuple[int, ...] = ()

    @property
    def simple(self) -> bool:
        return all(len(m) == 1 and m[0][1] - m[0][0] == 1 for m in self.moves)


def allowable_sequence_of(P: PointSet) -> AllowableSequence:
    """Circular sequence of projections of ``P`` under a half-turn of the direction.

    Points are labelled 1..n by the initial projection order.  Pairs swap in
    order of the slope of their connecting line, vertical first; equal slopes
    swap in one grouped move.
    """
    n = len(P)
    pts = [p.xy() for p in P]
    order0 = sorted(range(n), key=lambda i: (pts[i][0], -pts[i][1]))
    label_of = {idx: k + 1 for k, idx in enumerate(order0)}

    def slope_key(pair):
        (x1, y1), (x2, y2) = pts[pair[0]], pts[pair[1]]
        if x1 == x2:
            return (0, Fraction(0))
        return (1, Fraction(y2 - y1) / (x2 - x1))

    pairs = sorted(combinations(range(n), 2), key=slope_key)
    groups: list[list[tuple[int, int]]] = []
    for pr in pairs:
        if groups and slope_key(groups[-1][0]) == slope_key(pr):
            groups[-1].append(pr)
        else:
            groups.append([pr])

    cur = [label_of[i] for i in order0]
    perms = [tuple(cur)]
    moves = []
    for g in groups:
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        for a, b in g:
            parent[find(label_of[a])] = find(label_of[b])
        blocks: dict[int, list[int]] = {}
        for a, b in g:
            for v in (label_of[a], label_of[b]):
                blocks.setdefault(find(v), [])
                if v not in blocks[find(v)]:
                    blocks[find(v)].append(v)
        pos = {v: k for k, v in enumerate(cur)}
        spans = []
        for members in blocks.values():
            ps = sorted(pos[v] for v in members)
            if ps[-1] - ps[0] + 1 != len(ps):
                raise AssertionError("swap block not contiguous")
            spans.append((ps[0], ps[-1]))
        spans.sort()
        for s, e in spans:
            cur[s:e + 1] = cur[s:e + 1][::-1]
        perms.append(tuple(cur))
        moves.append(spans)
    return AllowableSequence(perms, moves, tuple(order0))


def validate_allowable(seq) -> tuple[bool, str | None]:
    perms = seq.perms if isinstance(seq, AllowableSequence) else [tuple(p) for p in seq]
    if not perms:
        return False, "empty sequence"
    n = len(perms[0])
    ident = tuple(range(1, n + 1))
    if tuple(perms[0]) != ident:
        return False, "first permutation is not the identity"
    flipped = set()
    for t in range(len(perms) - 1):
        p, q = list(perms[t]), list(perms[t + 1])
        if sorted(q) != list(ident):
            return False, f"step {t + 1}: not a permutation"
        if p == q:
            return False, f"step {t + 1}: empty move"
        i = 0
        while i < n:
            if p[i] == q[i]:
                i += 1
                continue
            j = p.index(q[i])
            if j <= i or q[i:j + 1] != p[i:j + 1][::-1]:
                return False, f"step {t + 1}: change at position {i} is not a substring reversal"
            for a, b in combinations(p[i:j + 1], 2):
                key = (min(a, b), max(a, b))
                if key in flipped:
                    return False, f"step {t + 1}: pair {key} reverses twice"
                flipped.add(key)
            i = j + 1
    if tuple(perms[-1]) != ident[::-1]:
        return False, "last permutation is not the reverse"
    return True, None


def is_simple(seq) -> bool:
    perms = seq.perms if isinstance(seq, AllowableSequence) else seq
    for p, q in zip(perms, perms[1:]):
        diff = [i for i in range(len(p)) if p[i] != q[i]]
        if len(diff) != 2 or diff[1] != diff[0] + 1:
            return False
    return True


@dataclass(frozen=True)
class DiagonalCertificate:
    rows: tuple[int, ...]  # 1-based permutation indices
    table: tuple[tuple[int, ...], ...]
    diagonal: tuple[int, ...]
    distinct: bool


def diagonal_from_simple_allowable(seq) -> DiagonalCertificate:
    """Rows where 1 swaps with its right neighbour give a distinct diagonal on 2..n."""
    perms = seq.perms if isinstance(seq, AllowableSequence) else [tuple(p) for p in seq]
    n = len(perms[0])
    if tuple(perms[0]) != tuple(range(1, n + 1)):
        raise ValueError("first permutation must be the identity")
    if not is_simple(perms):
        raise ValueError("sequence is not simple")
    S = []
    for i in range(len(perms) - 1):
        p, q = perms[i], perms[i + 1]
        k = p.index(1)
        if k + 1 < n and q[k] == p[k + 1] and q[k + 1] == 1:
            S.append(i)
    table = tuple(tuple(e for e in perms[s] if e != 1) for s in S)
    diag = tuple(row[i] for i, row in enumerate(table))
    return DiagonalCertificate(tuple(s + 1 for s in S), table, diag, len(set(diag)) == len(diag))


def build_theta_n2_sequence(n: int) -> list[tuple[int, ...]]:
    """Sequence of length floor(n/2)^2 + n - 1 with no distinct-diagonal n-row table.

    Two flip rules, with i 1-based and h = n // 2:
    at i = ceil(n/2) + k(n+1) swap h-k and h+1+k (k < ceil((n-1)/4));
    at i = n + k(n+1) swap 1+k and n-k (k < floor(n/4)).
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    h = n // 2
    L = h * h + n - 1
    flips: dict[int, tuple[int, int]] = {}
    for k in range(-(-(n - 1) // 4)):
        flips[-(-n // 2) + k * (n + 1)] = (h - k, h + 1 + k)
    for k in range(n // 4):
        flips[n + k * (n + 1)] = (1 + k, n - k)
    cur = list(range(1, n + 1))
    out = [tuple(cur)]
    for i in range(1, L):
        if i in flips:
            a, b = flips[i]
            ia, ib = cur.index(a), cur.index(b)
            cur[ia], cur[ib] = cur[ib], cur[ia]
        out.append(tuple(cur))
    return out


def theta_flip_events(n: int) -> dict[int, tuple[int, int]]:
    seq = build_theta_n2_sequence(n)
    ev = {}
    for i in range(len(seq) - 1):
        if seq[i] != seq[i + 1]:
            moved = tuple(sorted(e for k, e in enumerate(seq[i]) if seq[i + 1][k] != e))
            ev[i + 1] = moved
    return ev


def no_pair_flips_twice(perms: Sequence[Sequence[int]]) -> bool:
    """Each pair changes relative order at most once along the sequence."""
    labels = sorted(perms[0]) if perms else []
    changes = {}
    prev = None
    for p in perms:
        pos = {e: k for k, e in enumerate(p)}
        rel = {(a, b): pos[a] < pos[b] for a, b in combinations(labels, 2)}
        if prev is not None:
            for key, v in rel.items():
                if v != prev[key]:
                    changes[key] = changes.get(key, 0) + 1
        prev = rel
    return all(c <= 1 for c in changes.values())
