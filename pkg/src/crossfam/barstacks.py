"""Bar stacks, wires and side-compatible marblings.

A bar stack on ``n`` pillars is a list of intervals ``(a, b)``, ``1 <= a < b <= n``;
the bar at list position ``i`` sits at height ``i + 1``.  A wire at level ``w``
runs between the bars at heights ``w`` and ``w + 1``.  A marbling puts at
most one marble on each pillar and each wire slot; slots with equal levels
are still distinct slots, stacked in index order: the ordered variant
compares wire positions ``(level, slot)``, so two marbles on one level are
still one above the other.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .duality import Line


@dataclass(frozen=True)
class BarStack:
    n: int
    bars: tuple[tuple[int, int], ...]

    def __post_init__(self):
        bars = tuple((int(a), int(b)) for a, b in self.bars)
        object.__setattr__(self, "bars", bars)
        seen = set()
        for h, (a, b) in enumerate(bars, start=1):
            if not 1 <= a < b <= self.n:
                raise ValueError(f"bar at height {h} has invalid interval [{a},{b}]")
            if (a, b) in seen:
                raise ValueError(f"bar at height {h} repeats interval [{a},{b}]")
            seen.add((a, b))

    @property
    def height(self) -> int:
        return len(self.bars)

    def bar_at(self) -> dict[tuple[int, int], int]:
        return {ab: h for h, ab in enumerate(self.bars, start=1)}

    def endpoint_heights(self) -> list[list[int]]:
        """Sorted bar heights touching each pillar (index 0 unused)."""
        out: list[list[int]] = [[] for _ in range(self.n + 1)]
        for h, (a, b) in enumerate(self.bars, start=1):
            out[a].append(h)
            out[b].append(h)
        return out


@dataclass(frozen=True)
class SideResult:
    C: tuple[int, ...]
    f: dict  # pillar -> wire slot index
    complete: bool = True
    upper_bound: int = 0

    @property
    def size(self) -> int:
        return len(self.C)


def bar_representation(lines: Sequence[Line], relabel_bottom: bool = False) -> BarStack:
    """One bar per intersection, in order of increasing y.

    Pillar ``k`` is ``lines[k-1]``; with ``relabel_bottom`` the pillars are
    instead numbered by the left-to-right order of the lines far below all
    intersections.
    """
    L = list(lines)
    if any(l.vertical for l in L):
        raise ValueError("vertical lines are not supported")
    for l1, l2 in combinations(L, 2):
        if l1.a == l2.a:
            raise ValueError("parallel lines have no intersection")
    pts = []
    for i, j in combinations(range(len(L)), 2):
        x, y = L[i].intersect(L[j])
        pts.append((y, i, j))
    ys = [p[0] for p in pts]
    if len(set(ys)) < len(ys):
        raise ValueError("two intersections share a y-coordinate; rotate the arrangement first")
    pts.sort()
    if relabel_bottom:
        y0 = min(ys) - 1 if ys else Fraction(0)
        order = sorted(range(len(L)), key=lambda k: (y0 - L[k].b) / L[k].a if L[k].a else Fraction(0))
        label = {k: r + 1 for r, k in enumerate(order)}
    else:
        label = {k: k + 1 for k in range(len(L))}
    bars = []
    for _, i, j in pts:
        a, b = sorted((label[i], label[j]))
        bars.append((a, b))
    return BarStack(len(L), tuple(bars))


def bottom_order(lines: Sequence[Line]) -> list[int]:
    """Indices of ``lines`` left to right along a horizontal line below every intersection."""
    L = list(lines)
    ys = [L[i].intersect(L[j])[1] for i, j in combinations(range(len(L)), 2)]
    y0 = (min(ys) if ys else Fraction(0)) - 1
    return sorted(range(len(L)), key=lambda k: (y0 - L[k].b) / L[k].a)


def validate_side_compatible(B: BarStack, W: Sequence[int], C, f, ordered: bool = False):
    """Return ``(ok, first violating bar height or None)``.

    Slot problems (non-injective or out-of-range) are reported with height 0.
    """
    C = set(C)
    slots = [f[c] for c in C]
    if len(set(slots)) != len(slots) or any(not 0 <= s < len(W) for s in slots):
        return False, 0
    for h, (a, b) in enumerate(B.bars, start=1):
        if a in C and b in C:
            la, lb = W[f[a]], W[f[b]]
            pa, pb = (la, f[a]), (lb, f[b])
            if la < h and lb < h:
                if ordered and not pa < pb:
                    return False, h
            elif la >= h and lb >= h:
                if ordered and not pa > pb:
                    return False, h
            else:
                return False, h
    return True, None


def _pair_ok(h, pa, pb, ordered):
    la, lb = pa[0], pb[0]
    if la < h and lb < h:
        return not ordered or pa < pb
    if la >= h and lb >= h:
        return not ordered or pa > pb
    return False


def max_side_compatible(B: BarStack, W: Sequence[int], ordered: bool = False,
                        timeout_s: float | None = None, lower: int = 0) -> SideResult:
    """Exact largest (ordered) side-compatible subset by branch and bound.

    Pillars are decided left to right (take with some wire slot, or skip).
    Without the order refinement equal-level slots are interchangeable, so
    only one representative slot per level is tried.
    """
    n = B.n
    bar = B.bar_at()
    S = len(W)
    levels = sorted(set(W))
    slots_by_level = {lv: [s for s, w in enumerate(W) if w == lv] for lv in levels}
    free = [True] * S
    deadline = None if timeout_s is None else time.monotonic() + timeout_s
    best: list = [None]
    best_size = [lower - 1 if lower > 0 else -1]
    cur_C: list[int] = []
    cur_pos: dict[int, tuple[int, int]] = {}
    timed_out = [False]
    nodes = [0]
    max_take = min(n, S)

    def choices():
        if ordered:
            return [s for s in range(S) if free[s]]
        out = []
        for lv in levels:
            s = next((s for s in slots_by_level[lv] if free[s]), None)
            if s is not None:
                out.append(s)
        return out

    def go(x):
        nodes[0] += 1
        if deadline is not None and nodes[0] % 1024 == 0 and time.monotonic() > deadline:
            timed_out[0] = True
            return True
        if len(cur_C) + min(n - x + 1, max_take - len(cur_C)) <= best_size[0]:
            return False
        if x > n:
            if len(cur_C) > best_size[0]:
                best_size[0] = len(cur_C)
                best[0] = dict(cur_pos)
                if best_size[0] == max_take:
                    return True
            return False
        for s in choices():
            pos = (W[s], s)
            ok = True
            for y in cur_C:
                h = bar.get((y, x))
                if h is not None and not _pair_ok(h, cur_pos[y], pos, ordered):
                    ok = False
                    break
            if not ok:
                continue
            free[s] = False
            cur_C.append(x)
            cur_pos[x] = pos
            stop = go(x + 1)
            cur_C.pop()
            del cur_pos[x]
            free[s] = True
            if stop:
                return True
        return go(x + 1)

    go(1)
    complete = not timed_out[0]
    if best[0] is None:
        return SideResult((), {}, complete, 0 if complete else max_take)
    f = {c: p[1] for c, p in best[0].items()}
    C = tuple(sorted(f))
    return SideResult(C, f, complete, len(C) if complete else max_take)


def wire_intervals(B: BarStack, wy: int) -> list[tuple[int, int]]:
    """Admissible wire levels ``[lo, hi]`` on each pillar for the cut just above height ``wy``.

    Entry 0 is unused.  A marble at a level in the range stays between the
    nearest bar endpoints below and above the cut on its pillar.
    """
    l = B.height
    ends = B.endpoint_heights()
    out = [(0, 0)]
    for x in range(1, B.n + 1):
        below = [h for h in ends[x] if h <= wy]
        above = [h for h in ends[x] if h > wy]
        lo = max(below) if below else 0
        hi = (min(above) - 1) if above else l
        out.append((lo, hi))
    return out


def _interval_assign(intervals, n_levels):
    """Match pillars to distinct integer levels inside their intervals.

    Earliest-deadline greedy, exact for interval-to-point matching.
    Returns ``{pillar: level}`` or None.
    """
    order = sorted(range(1, len(intervals)), key=lambda x: (intervals[x][1], intervals[x][0], x))
    free = [True] * (n_levels + 1)
    out = {}
    for x in order:
        lo, hi = intervals[x]
        lv = next((v for v in range(lo, hi + 1) if free[v]), None)
        if lv is None:
            return None
        free[lv] = False
        out[x] = lv
    return out


@dataclass(frozen=True)
class FullMarbling:
    W: tuple[int, ...]
    f: dict  # pillar -> slot index
    cut: Fraction  # the height y of the separating cut


def full_marbling_wires(B: BarStack) -> FullMarbling:
    """Wires from <0 1 ... n> carrying a side-compatible marbling of all n pillars.

    Tries each cut height y = w + 1/2.  Every bar above the cut gets its
    marbles below it and every bar below the cut gets them above, which is
    side compatible; the remaining question is a pillar-to-level matching.
    """
    n = B.n
    if B.height != n:
        raise ValueError("need exactly n bars on n pillars")
    for wy in range(0, n + 1):
        assign = _interval_assign(wire_intervals(B, wy), n)
        if assign is None:
            continue
        W = tuple(sorted(assign.values()))
        slot = {lv: k for k, lv in enumerate(W)}
        f = {x: slot[assign[x]] for x in range(1, n + 1)}
        ok, bad = validate_side_compatible(B, W, range(1, n + 1), f)
        if not ok:
            raise AssertionError(f"cut {wy} marbling violates bar {bad}")
        return FullMarbling(W, f, Fraction(2 * wy + 1, 2))
    raise AssertionError(f"no cut admits a full marbling for bars {B.bars}")


@dataclass(frozen=True)
class OrderedHalf:
    C: tuple[int, ...]
    f: dict  # pillar -> slot index
    W: tuple[int, ...]
    level: dict  # pillar -> wire level before pruning


def ordered_half_subset(B: BarStack) -> OrderedHalf:
    """Ordered side-compatible subset of size >= floor(n/2) on n pillars, n bars.

    The low half of the stack (heights <= floor(n/2)) forces, for each bar,
    level(a) > level(b) >= height.  Levels come from a reachability order on
    the digraph p_a -> p_b -> h_i; high bars that disagree cost one pillar each.
    """
    n = B.n
    if B.height > n:
        raise ValueError("at most n bars expected")
    half = n // 2
    low = [(h, a, b) for h, (a, b) in enumerate(B.bars, start=1) if h <= half]
    succ: dict[int, set[int]] = {x: set() for x in range(1, n + 1)}
    # union-find over white vertices; black vertex h_i joins the component of p_b
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comp_h: dict[int, int] = {}
    for h, a, b in low:
        succ[a].add(b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    for h, a, b in low:
        r = find(b)
        comp_h[r] = max(comp_h.get(r, 0), h)

    def reach(v):
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in succ[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    r_val = {x: reach(x) for x in range(1, n + 1)}
    comps: dict[int, list[int]] = {}
    for x in range(1, n + 1):
        comps.setdefault(find(x), []).append(x)
    ordered_comps = sorted(comps.items(), key=lambda kv: (-comp_h.get(kv[0], 0), min(kv[1])))
    level = {}
    offset = 0
    for root, members in ordered_comps:
        members.sort(key=lambda x: (-r_val[x], x))
        for j, x in enumerate(members):
            level[x] = -j + n - offset
        offset += len(members)
    for h, a, b in low:
        assert level[a] > level[b] >= h, (h, a, b, level)

    C = set(range(1, n + 1))
    for h, (a, b) in enumerate(B.bars, start=1):
        if h <= half or a not in C or b not in C:
            continue
        la, lb = level[a], level[b]
        if la > lb >= h or la < lb < h:
            continue
        C.discard(b)
    Cs = tuple(sorted(C))
    W = tuple(sorted(level[c] for c in Cs))
    slot = {lv: k for k, lv in enumerate(W)}
    f = {c: slot[level[c]] for c in Cs}
    ok, bad = validate_side_compatible(B, W, Cs, f, ordered=True)
    if not ok:
        raise AssertionError(f"ordered half construction violates bar {bad}")
    return OrderedHalf(Cs, f, W, level)


def sparse_half_subset(B: BarStack) -> tuple[int, ...]:
    """floor(n/2) pillars inducing at most floor(n/2) bars (requires at most n bars)."""
    n = B.n
    h = n // 2
    first = set(range(1, h + 1))

    def induced(S):
        return sum(1 for a, b in B.bars if a in S and b in S)

    if induced(first) <= h:
        return tuple(sorted(first))
    rest = [x for x in range(1, n + 1) if x not in first][:h]
    assert induced(set(rest)) <= h
    return tuple(rest)


def kn_paths(n: int) -> list[list[tuple[int, int]]]:
    """Zig-zag decomposition of K_n (n even) into n/2 Hamiltonian paths.

    Path i visits i, i+1, i-1, i+2, i-2, ... (mod n); vertices are reported 1-based.
    """
    if n % 2:
        raise ValueError("n must be even")
    paths = []
    for i in range(n // 2):
        seq = [i]
        for k in range(1, n):
            step = (k + 1) // 2
            seq.append((i + step) % n if k % 2 else (i - step) % n)
        paths.append([(seq[k] + 1, seq[k + 1] + 1) for k in range(n - 1)])
    return paths


def build_kn_barstack(n: int) -> tuple[BarStack, tuple[int, ...]]:
    """Stack of n/2 blocks (one Hamiltonian path each) and the wires between them.

    n - 1 wires sit below the first block, between consecutive blocks, and
    above the last, so there are (n/2 + 1)(n - 1) wires in total.
    """
    paths = kn_paths(n)
    bars = [tuple(sorted(e)) for p in paths for e in p]
    B = BarStack(n, tuple(bars))
    m = n - 1
    W = []
    for blk in range(n // 2 + 1):
        W.extend([blk * m] * m)
    return B, tuple(W)


def bar_observation_wires(n: int) -> tuple[int, ...]:
    """n/2 wires under every bar and n/2 over every bar (n even)."""
    if n % 2:
        raise ValueError("n must be even")
    top = n * (n - 1) // 2
    return tuple([0] * (n // 2) + [top] * (n // 2))


def wire_permutations(B: BarStack, W: Sequence[int]) -> list[tuple[int, ...]]:
    """Permutation seen by each wire when sweeping down from the top, swapping at bars."""
    out = []
    for w in W:
        perm = list(range(1, B.n + 1))
        for h in range(B.height, w, -1):
            a, b = B.bars[h - 1]
            ia, ib = perm.index(a), perm.index(b)
            perm[ia], perm[ib] = perm[ib], perm[ia]
        out.append(tuple(perm))
    return out


def has_simple_cycle(B: BarStack, max_len: int | None = None) -> list[int] | None:
    """Search for a non-self-intersecting cycle made of bars and pillar pieces.

    A cycle alternates whole bars with vertical pieces on shared pillars.
    Pieces may not cross bars of the cycle, touch their endpoints, or
    overlap each other.  Returns the bar heights of a cycle, or None.
    """
    bars = B.bars
    L = len(bars)
    max_len = L if max_len is None else max_len

    def piece_hits_bar(x, h1, h2, hb):
        lo, hi = min(h1, h2), max(h1, h2)
        a, b = bars[hb - 1]
        return lo < hb < hi and a <= x <= b

    def simple(cyc, pieces):
        for x, h1, h2 in pieces:
            for hb in cyc:
                if piece_hits_bar(x, h1, h2, hb):
                    return False
        for (x1, a1, b1), (x2, a2, b2) in combinations(pieces, 2):
            if x1 == x2 and max(min(a1, b1), min(a2, b2)) <= min(max(a1, b1), max(a2, b2)):
                return False
        return True

    for start in range(1, L + 1):
        a0, b0 = bars[start - 1]
        # walk: enter the start bar at a0, leave at b0
        stack = [(start, b0, [start], [])]
        while stack:
            h, x, cyc, pieces = stack.pop()
            for h2 in range(start + 1, L + 1):
                if h2 in cyc:
                    continue
                a, b = bars[h2 - 1]
                if x not in (a, b):
                    continue
                other = b if x == a else a
                np = pieces + [(x, h, h2)]
                nc = cyc + [h2]
                if not simple(nc, np):
                    continue
                if other == a0 and len(nc) >= 2:
                    closing = np + [(a0, h2, start)]
                    if simple(nc, closing):
                        return nc
                if len(nc) < max_len:
                    stack.append((h2, other, nc, np))
    return None


@dataclass(frozen=True)
class DualStack:
    """Bar stack of the red dual lines plus one wire per blue dual line."""
    stack: BarStack
    W: tuple[int, ...]
    pillar_of: dict  # red point index -> pillar
    slot_of: dict  # blue point index -> wire slot


def _generic_frame(coords, partition):
    """Shear slightly so no two points share an x-coordinate (no parallel dual lines)."""
    k = 1000
    while True:
        if len({x for x, _ in coords}) == len(coords):
            return coords
        eps = Fraction(1, k)
        sheared = [(x + eps * y, y) for x, y in coords]
        if max(sheared[i][0] for i in partition.set_b) < min(sheared[i][0] for i in partition.set_a) \
                and len({x for x, _ in sheared}) == len(sheared):
            return sheared
        k *= 7


def dual_bar_stack(P, partition) -> DualStack:
    """Bars from intersections of red dual lines, swept with the blue dual lines as cuts.

    The blue lines never meet inside the red arrangement, so each one is a
    valid sweep cut.  Red vertices are ordered by how many blue lines lie
    below them, then topologically along the red lines; wire ``i`` counts the
    vertices below blue line ``i``.  With horizontal blue lines this is the
    plain y-order.  Pillars are numbered so the top permutation is the
    identity and the permutation at each wire is the order along that blue
    line.
    """
    import heapq

    from .duality import point_to_dual_line
    from .geom import Point
    from .tables import normalize_frame

    coords = _generic_frame(normalize_frame(P, partition), partition)
    red = [point_to_dual_line(Point(*coords[i])) for i in partition.set_b]
    blue = [point_to_dual_line(Point(*coords[i])) for i in partition.set_a]
    m = len(red)
    if any(r.a >= b.a for r in red for b in blue):
        raise ValueError("expected every red dual slope below every blue dual slope")
    verts = {}
    for i, j in combinations(range(m), 2):
        verts[(i, j)] = red[i].intersect(red[j])
    band = {v: sum(1 for b in blue if b.y_at(x) < y) for v, (x, y) in verts.items()}
    # along a red line, moving towards smaller x crosses every blue line upwards
    succ = {v: [] for v in verts}
    indeg = {v: 0 for v in verts}
    for r in range(m):
        on = sorted((v for v in verts if r in v), key=lambda v: -verts[v][0])
        for u, v in zip(on, on[1:]):
            succ[u].append(v)
            indeg[v] += 1
    heap = [(band[v], verts[v][1], v) for v in verts if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, _, u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, (band[v], verts[v][1], v))
    assert len(order) == len(verts)
    assert all(band[u] <= band[v] for u, v in zip(order, order[1:]))
    # below every vertex the red lines run left to right by increasing slope
    top = sorted(range(m), key=lambda r: red[r].a)
    for u in order:
        i, j = u
        pi, pj = top.index(i), top.index(j)
        assert abs(pi - pj) == 1, "sweep order is not a valid cut sequence"
        top[pi], top[pj] = top[pj], top[pi]
    label = {r: k + 1 for k, r in enumerate(top)}
    pillar_of = {partition.set_b[r]: label[r] for r in range(m)}
    bars = [tuple(sorted((label[i], label[j]))) for i, j in order]
    # blue lines bottom to top inside the red zone: along any red line the
    # lower blue is met first when moving towards smaller x
    if m:
        r0 = red[0]
        border = sorted(range(len(blue)), key=lambda k: -r0.intersect(blue[k])[0])
    else:
        border = list(range(len(blue)))
    counts = [sum(1 for v, (x, y) in verts.items() if y < b.y_at(x)) for b in blue]
    W = tuple(counts[k] for k in border)
    assert list(W) == sorted(W)
    slot_of = {partition.set_a[k]: s for s, k in enumerate(border)}
    return DualStack(BarStack(m, tuple(bars)), W, pillar_of, slot_of)


def marbling_of_family(D: DualStack, segments) -> tuple[tuple[int, ...], dict]:
    """Pillars and slots used by a family of red-blue segments."""
    C, f = [], {}
    for s in segments:
        i, j = s
        r, b = (i, j) if i in D.pillar_of else (j, i)
        C.append(D.pillar_of[r])
        f[D.pillar_of[r]] = D.slot_of[b]
    return tuple(sorted(C)), f
