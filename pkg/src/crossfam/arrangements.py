"""Line arrangements, cell paths, and the pseudoline searches built on them.

Cells are sign vectors: bit ``i`` of a cell mask is set when the cell lies
above line ``i``.  A pseudoline crossing every line of a subarrangement once
is stored combinatorially as a :class:`PathWitness`: the crossing order plus
the side of the starting cell with respect to each crossed line.  Everything
else (cells, levels, crossing directions) is derived from those two tuples.

Search modes differ only in which consecutive crossing pairs they accept:

``spoke``
    one crossing goes up and the other goes down,
``bispoke``
    a spoke pair whose two lines also differ in colour,
``semi``
    the two lines have different colours,
``msemi``
    different colours and the level does not drop,
``parallel``
    different colours and both crossings go up.
"""
from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .duality import Line, point_to_dual_line
from .geom import Color, PointSet


class Mode(enum.Enum):
    SPOKE = "spoke"
    BISPOKE = "bispoke"
    SEMI = "semi"
    MSEMI = "msemi"
    PARALLEL = "parallel"

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, Mode):
            return value
        v = str(value).lower().replace("-", "").replace("_", "")
        aliases = {
            "semialternating": "semi",
            "msemialternating": "msemi",
            "m": "msemi",
            "spokepath": "spoke",
            "abSemialternating".lower(): "spoke",
        }
        return cls(aliases.get(v, v))


class SearchTimeout(Exception):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _side(line: Line, x, y) -> int:
    d = y - (line.a * x + line.b)
    return (d > 0) - (d < 0)


# -- cells -----------------------------------------------------------------


def cell_point(lines: Sequence[Line], signs: Sequence[int]):
    """An exact point strictly inside the cell with the given signs, or None.

    Independent of the vertex enumeration in :class:`LineArrangement`: the
    cell is ``max(lower lines) < y < min(upper lines)`` and the gap between
    the two envelopes is concave in ``x``, so it suffices to look at the
    breakpoints and at both unbounded ends.
    """
    lo = [l for l, s in zip(lines, signs) if s > 0]
    hi = [l for l, s in zip(lines, signs) if s < 0]
    if any(l.vertical for l in lines):
        raise ValueError("vertical lines are not supported")

    def gap(x):
        L = max((l.a * x + l.b for l in lo), default=None)
        U = min((l.a * x + l.b for l in hi), default=None)
        return L, U

    def point_at(x):
        L, U = gap(x)
        if L is None and U is None:
            return (x, Fraction(0))
        if L is None:
            return (x, U - 1)
        if U is None:
            return (x, L + 1)
        if L < U:
            return (x, (L + U) / 2)
        return None

    xs = set()
    for l1, l2 in itertools.combinations(lines, 2):
        if l1.a != l2.a:
            xs.add((l2.b - l1.b) / (l1.a - l2.a))
    xs = sorted(xs) or [Fraction(0)]
    cands = list(xs) + [(u + v) / 2 for u, v in zip(xs, xs[1:])]
    for x in cands:
        p = point_at(x)
        if p is not None:
            return p
    if not lo or not hi:
        return point_at(xs[0] - 1)

    # beyond the breakpoints the gap is linear; follow its slope outwards
    for x0, step in ((xs[-1] + 1, 1), (xs[0] - 1, -1)):
        L, U = gap(x0)
        L1, U1 = gap(x0 + step)
        g0, g1 = U - L, U1 - L1
        if g0 > 0:
            return point_at(x0)
        if g1 > g0:
            t = (-g0) / (g1 - g0) + 1
            p = point_at(x0 + step * t)
            if p is not None:
                return p
    return None


class LineArrangement:
    """Exact cell decomposition of an arrangement of non-vertical lines.

    Requires a simple arrangement: no three lines through one point and no
    two identical lines.  Parallel lines are allowed.
    """

    def __init__(self, lines: Iterable[Line]):
        self.lines = tuple(lines)
        m = len(self.lines)
        for i, l in enumerate(self.lines):
            if l.vertical:
                raise ValueError(f"line {i} is vertical")
        for i, j in itertools.combinations(range(m), 2):
            if self.lines[i].a == self.lines[j].a and self.lines[i].b == self.lines[j].b:
                raise ValueError(f"lines {i} and {j} coincide")
        self.vertices: list[tuple[int, int, tuple]] = []
        cells = set()
        for i, j in itertools.combinations(range(m), 2):
            li, lj = self.lines[i], self.lines[j]
            if li.a == lj.a:
                continue
            v = li.intersect(lj)
            base = 0
            for k, lk in enumerate(self.lines):
                if k in (i, j):
                    continue
                s = _side(lk, *v)
                if s == 0:
                    raise ValueError(f"lines {i}, {j} and {k} are concurrent")
                if s > 0:
                    base |= 1 << k
            self.vertices.append((i, j, v))
            for si in (0, 1):
                for sj in (0, 1):
                    cells.add(base | (si << i) | (sj << j))
        if not self.vertices:
            # all lines parallel (or fewer than two lines): horizontal strips
            order = sorted(range(m), key=lambda k: self.lines[k].b)
            mask = 0
            cells.add(0)
            for k in order:
                mask |= 1 << k
                cells.add(mask)
        self.m = m
        self.full = (1 << m) - 1
        self.cells: list[int] = sorted(cells)
        self.index = {c: n for n, c in enumerate(self.cells)}
        self._points: dict[int, tuple] = {}

    def __len__(self) -> int:
        return len(self.cells)

    def colors(self) -> list[Color]:
        return [l.color for l in self.lines]

    def signs(self, mask: int, ids: Sequence[int] | None = None) -> tuple[int, ...]:
        ids = range(self.m) if ids is None else ids
        return tuple(1 if mask >> i & 1 else -1 for i in ids)

    def level(self, mask: int, sub: int | None = None) -> int:
        """Number of lines (of ``sub``, default all) below the cell."""
        sub = self.full if sub is None else sub
        return bin(mask & sub).count("1")

    def cells_of(self, sub: int) -> set[int]:
        """Cells of the subarrangement ``sub`` as masks restricted to ``sub``."""
        return {c & sub for c in self.cells}

    def unbounded(self, sub: int | None = None) -> list[int]:
        """Unbounded cells of a subarrangement, read off directions at infinity."""
        sub = self.full if sub is None else sub
        ids = _bits(sub)
        slopes = sorted({self.lines[i].a for i in ids})
        if not slopes:
            return [0]
        probes = [slopes[0] - 1] + [(u + v) / 2 for u, v in zip(slopes, slopes[1:])] + [slopes[-1] + 1]
        out = []
        for s in probes:
            # far along (1, s): above exactly the lines of smaller slope
            mask = 0
            for i in ids:
                if self.lines[i].a < s:
                    mask |= 1 << i
            for c in (mask, sub & ~mask):
                if c not in out:
                    out.append(c)
        return out

    def antipode(self, mask: int, sub: int | None = None) -> int:
        sub = self.full if sub is None else sub
        return sub & ~mask

    def sample_point(self, mask: int) -> tuple:
        """Exact interior point of a cell of the full arrangement."""
        if mask not in self._points:
            p = cell_point(self.lines, self.signs(mask))
            if p is None:
                raise ValueError("not a cell of this arrangement")
            self._points[mask] = p
        return self._points[mask]

    def cell_of_point(self, p) -> int:
        mask = 0
        for i, l in enumerate(self.lines):
            s = _side(l, *p)
            if s == 0:
                raise ValueError(f"point lies on line {i}")
            if s > 0:
                mask |= 1 << i
        return mask


def build_arrangement(lines: Iterable[Line]) -> LineArrangement:
    return LineArrangement(lines)


def dual_arrangement(P: PointSet) -> LineArrangement:
    return LineArrangement(point_to_dual_line(p) for p in P)


# -- witnesses -------------------------------------------------------------


@dataclass(frozen=True)
class PathWitness:
    """A pseudoline through a subarrangement, as a crossing order.

    ``start[t]`` is +1 when the first cell lies above line ``order[t]``, so
    that crossing goes downward; -1 means it goes upward.
    """

    order: tuple[int, ...]
    start: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "start", tuple(self.start))
        if len(self.order) != len(self.start):
            raise ValueError("order and start differ in length")
        if len(set(self.order)) != len(self.order):
            raise ValueError("a line is crossed twice")

    def __len__(self) -> int:
        return len(self.order)

    @property
    def size(self) -> int:
        return len(self.order)

    def directions(self) -> tuple[int, ...]:
        """+1 for an upward crossing, -1 for a downward one."""
        return tuple(-s for s in self.start)

    def cells(self) -> list[tuple[int, ...]]:
        """Sign vectors (over ``order``) of C_0 .. C_m."""
        cur = list(self.start)
        out = [tuple(cur)]
        for t in range(len(cur)):
            cur[t] = -cur[t]
            out.append(tuple(cur))
        return out

    def levels(self) -> list[int]:
        return [sum(1 for s in c if s > 0) for c in self.cells()]

    def level_sequence(self) -> list[int]:
        return self.levels()[::2]

    def reversed(self) -> "PathWitness":
        return PathWitness(self.order[::-1], tuple(-s for s in self.start[::-1]))

    def restrict(self, keep: Iterable[int]) -> "PathWitness":
        keep = set(keep)
        pos = [t for t, l in enumerate(self.order) if l in keep]
        return PathWitness(tuple(self.order[t] for t in pos), tuple(self.start[t] for t in pos))

    def cell_path(self, arr: LineArrangement) -> "CellPath":
        sub = 0
        for l in self.order:
            sub |= 1 << l
        masks = []
        for c in self.cells():
            mask = 0
            for l, s in zip(self.order, c):
                if s > 0:
                    mask |= 1 << l
            masks.append(mask)
        return CellPath(tuple(masks), self.order, sub)


@dataclass(frozen=True)
class CellPath:
    """Cells (masks over the subarrangement ``sub``) and the lines crossed between them."""

    cells: tuple[int, ...]
    crossed_lines: tuple[int, ...]
    sub: int

    @property
    def line_monotone(self) -> bool:
        return len(set(self.crossed_lines)) == len(self.crossed_lines)


def _pair_ok(mode: Mode, colors, li, si, lj, sj) -> bool:
    if mode is Mode.SPOKE:
        return si != sj
    if colors[li] == colors[lj]:
        return False
    if mode is Mode.BISPOKE:
        return si != sj
    if mode is Mode.SEMI:
        return True
    if mode is Mode.MSEMI:
        return not (si > 0 and sj > 0)
    return si < 0 and sj < 0


def validate_witness(lines: Sequence[Line], w: PathWitness, mode=Mode.SEMI,
                     level_zero: bool = False) -> tuple[bool, str | None]:
    """Re-check a witness from its crossing order alone.

    Every intermediate sign vector must be realizable by a point (tested
    with :func:`cell_point`), the first cell must be unbounded, and the
    consecutive crossing pairs must satisfy ``mode``.
    """
    mode = Mode.parse(mode)
    sub = [lines[l] for l in w.order]
    if len(w) % 2:
        return False, "odd number of crossings"
    for t, c in enumerate(w.cells()):
        if cell_point(sub, c) is None:
            return False, f"cell {t} is empty"
    # a cell and its antipode both exist only for unbounded cells, so the
    # last check already rules out bounded starts
    colors = [l.color for l in lines]
    for t in range(0, len(w), 2):
        if not _pair_ok(mode, colors, w.order[t], w.start[t], w.order[t + 1], w.start[t + 1]):
            return False, f"pair {t // 2} violates {mode.value}"
    seq = w.level_sequence()
    if mode in (Mode.SPOKE, Mode.BISPOKE) and len(set(seq)) > 1:
        return False, "level sequence not constant"
    if level_zero and seq and seq[0] != 0:
        return False, "does not start at level zero"
    return True, None


# -- exhaustive path search ------------------------------------------------


def _unflipped_pairs(arr, U, colors, mode, cur_mask):
    ids = _bits(U)
    for a in range(len(ids)):
        i = ids[a]
        si = 1 if cur_mask >> i & 1 else -1
        for b in range(a + 1, len(ids)):
            j = ids[b]
            sj = 1 if cur_mask >> j & 1 else -1
            if _pair_ok(mode, colors, i, si, j, sj):
                yield i, j


def _finish(arr, start_mask, steps, sub):
    order, start = [], []
    cells = arr.cells_of(sub)
    cur = start_mask
    for i, j in steps:
        # put first whichever line gives an existing intermediate cell
        if cur ^ (1 << i) not in cells:
            i, j = j, i
        for l in (i, j):
            order.append(l)
            start.append(1 if start_mask >> l & 1 else -1)
        cur ^= (1 << i) | (1 << j)
    return PathWitness(tuple(order), tuple(start))


def full_path_search(arr: LineArrangement, mode, sub: int | None = None,
                     level_zero: bool = False, deadline: float | None = None) -> PathWitness | None:
    """A pseudoline crossing every line of ``sub`` once, or None.

    Depth-first over cells of the subarrangement; since each line is crossed
    exactly once, the lines crossed so far are the ones on which the current
    cell differs from the start, so the cell alone is the search state.
    """
    mode = Mode.parse(mode)
    sub = arr.full if sub is None else sub
    if bin(sub).count("1") % 2:
        return None
    colors = arr.colors()
    cells = arr.cells_of(sub)
    starts = arr.unbounded(sub)
    starts.sort()
    for s0 in starts:
        if level_zero and s0 & sub:
            continue
        goal = sub & ~s0
        seen = {s0}
        stack = [(s0, [])]
        while stack:
            if deadline is not None and time.monotonic() > deadline:
                raise SearchTimeout
            cur, steps = stack.pop()
            if cur == goal:
                return _finish(arr, s0, steps, sub)
            U = sub & ~(cur ^ s0)
            nxt = []
            for i, j in _unflipped_pairs(arr, U, colors, mode, cur):
                t = cur ^ (1 << i) ^ (1 << j)
                if t in seen or t not in cells:
                    continue
                if cur ^ (1 << i) not in cells and cur ^ (1 << j) not in cells:
                    continue
                nxt.append((t, steps + [(i, j)]))
            for t, st in reversed(nxt):
                if t not in seen:
                    seen.add(t)
                    stack.append((t, st))
    return None


@dataclass(frozen=True)
class SearchResult:
    witness: PathWitness | None
    size: int
    complete: bool
    upper_bound: int
    elapsed_s: float


def _bound(mode, colors_mask, U, cur):
    blue, red = colors_mask
    if mode is Mode.SPOKE:
        return min(bin(U & cur).count("1"), bin(U & ~cur).count("1"))
    if mode is Mode.BISPOKE:
        return min(bin(U & cur).count("1"), bin(U & ~cur).count("1"),
                   bin(U & blue).count("1"), bin(U & red).count("1"))
    if mode is Mode.PARALLEL:
        free = U & ~cur
        return min(bin(free & blue).count("1"), bin(free & red).count("1"))
    if mode is Mode.MSEMI:
        # every pair needs a blue, a red, and at least one upward crossing
        return min(bin(U & blue).count("1"), bin(U & red).count("1"), bin(U & ~cur).count("1"))
    return min(bin(U & blue).count("1"), bin(U & red).count("1"))


def sub_path_search(arr: LineArrangement, mode, target_pairs: int | None = None,
                    timeout_s: float | None = None, lower_pairs: int = 0) -> SearchResult:
    """Largest subarrangement admitting a pseudoline of the given mode.

    The state is a cell of the full arrangement together with the chosen
    lines ``F`` (crossed once, never again) and the undecided lines ``U``
    (not yet crossed, so constant along the path so far).  Lines outside
    both are simply not part of the subarrangement.  Each step moves to any
    cell that keeps ``F`` fixed and takes two lines from ``U`` as the next
    crossing pair.
    """
    mode = Mode.parse(mode)
    t0 = time.monotonic()
    deadline = None if timeout_s is None else t0 + timeout_s
    colors = arr.colors()
    blue = sum(1 << i for i, c in enumerate(colors) if c is Color.BLUE)
    red = sum(1 << i for i, c in enumerate(colors) if c is Color.RED)
    cmask = (blue, red)
    cells = arr.cells
    memo: dict[tuple[int, int, int], tuple[int, tuple | None]] = {}
    best = [lower_pairs, None]
    counter = [0]

    def dfs(c, F, U):
        key = (c, F, U)
        hit = memo.get(key)
        if hit is not None:
            return hit
        counter[0] += 1
        if deadline is not None and counter[0] % 256 == 0 and time.monotonic() > deadline:
            raise SearchTimeout
        val, arg = 0, None
        cap = _bound(mode, cmask, U, c)
        if cap == 0:
            memo[key] = (0, None)
            return memo[key]
        for c2 in cells:
            D = c ^ c2
            if D & F:
                continue
            DU = D & U
            if DU & (DU - 1) == 0:
                continue
            U2 = U & ~D
            for i, j in _unflipped_pairs(arr, DU, colors, mode, c):
                F2 = F | (1 << i) | (1 << j)
                if 1 + _bound(mode, cmask, U2, c2) <= val:
                    continue
                sub_val, _ = dfs(c2, F2, U2)
                if 1 + sub_val > val:
                    val, arg = 1 + sub_val, (c2, F2, U2, i, j)
                    if val == cap:
                        break
            if val == cap:
                break
        memo[key] = (val, arg)
        return memo[key]

    complete = True
    best_start = None
    if mode is Mode.SPOKE:
        upper = arr.m // 2
    else:
        upper = min(bin(blue).count("1"), bin(red).count("1"))
    try:
        for c in cells:
            v, _ = dfs(c, 0, arr.full)
            if v > best[0] or (best_start is None and v > 0 and v >= best[0]):
                best[0], best_start = v, c
            if best[0] >= upper or (target_pairs is not None and best[0] >= target_pairs):
                break
    except SearchTimeout:
        complete = False
    if best_start is None:
        return SearchResult(None, 2 * best[0], complete, 2 * (best[0] if complete else upper),
                            time.monotonic() - t0)
    steps = []
    state = (best_start, 0, arr.full)
    while True:
        v, arg = memo[state]
        if arg is None:
            break
        c2, F2, U2, i, j = arg
        steps.append((i, j))
        state = (c2, F2, U2)
    sub = 0
    for i, j in steps:
        sub |= (1 << i) | (1 << j)
    w = _finish(arr, best_start & sub, steps, sub)
    size = len(w)
    ub = size if complete else max(size, 2 * upper)
    return SearchResult(w, size, complete, ub, time.monotonic() - t0)


# -- spoke paths and spoke sets --------------------------------------------


def find_spoke_path(A: LineArrangement, target: int, timeout_s: float | None = None) -> PathWitness | None:
    """A spoke path crossing ``target`` lines, searched over all subarrangements."""
    if target % 2:
        raise ValueError("target must be even")
    if target > 2 * (A.m // 2):
        raise ValueError("target exceeds the number of lines")
    if target == 0:
        return PathWitness((), ())
    deadline = None if timeout_s is None else time.monotonic() + timeout_s
    if target == A.m:
        return full_path_search(A, Mode.SPOKE, deadline=deadline)
    res = sub_path_search(A, Mode.SPOKE, target_pairs=target // 2, timeout_s=timeout_s)
    if res.size >= target:
        return _trim_spoke(res.witness, target)
    if not res.complete:
        raise SearchTimeout(f"spoke path search incomplete at size {res.size}")
    return None


def _trim_spoke(w: PathWitness, target: int) -> PathWitness:
    # dropping whole pairs keeps every pair balanced and every cell realizable
    if len(w) == target:
        return w
    return w.restrict(w.order[:target])


def unbounded_patterns(lines: Sequence[Line]) -> list[tuple[int, ...]]:
    """Side patterns (+1 above) of the open unbounded regions of non-parallel lines."""
    slopes = sorted(l.a for l in lines)
    if len(set(slopes)) != len(slopes):
        raise ValueError("lines must be pairwise non-parallel")
    if not lines:
        return [()]
    probes = [slopes[0] - 1] + [(u + v) / 2 for u, v in zip(slopes, slopes[1:])] + [slopes[-1] + 1]
    out = []
    for s in probes:
        pat = tuple(1 if l.a < s else -1 for l in lines)
        for p in (pat, tuple(-v for v in pat)):
            if p not in out:
                out.append(p)
    return out


def is_spoke_set(P: PointSet, lines: Sequence[Line]) -> bool:
    """Every open unbounded region of ``lines`` contains a point of ``P``."""
    if any(l.vertical for l in lines):
        return False
    try:
        pats = unbounded_patterns(lines)
    except ValueError:
        return False
    seen = set()
    for p in P:
        sig = tuple(_side(l, p.x, p.y) for l in lines)
        if 0 not in sig:
            seen.add(sig)
    return all(p in seen for p in pats)


@dataclass(frozen=True)
class SpokeSetResult:
    size: int
    lines: tuple[Line, ...]
    path: PathWitness | None
    complete: bool


def spoke_lines_from_path(P: PointSet, arr: LineArrangement, w: PathWitness) -> tuple[Line, ...] | None:
    """Recover primal spoke lines from the even cells of a spoke path.

    A point ``q`` of the dual plane is the line ``y = q.x * x - q.y``.  The
    even cells C_2, .., C_{2k} give k lines; the representative point is
    chosen from the full arrangement cell the path passes through, and the
    result is checked against the spoke-set definition directly.
    """
    k = len(w) // 2
    if k == 0:
        return ()
    sub = 0
    for l in w.order:
        sub |= 1 << l
    even = [c for t, c in enumerate(w.cells()) if t % 2 == 0]
    masks = []
    for c in even:
        mask = 0
        for l, s in zip(w.order, c):
            if s > 0:
                mask |= 1 << l
        masks.append(mask)
    # candidate full cells inside each even subarrangement cell
    opts = [[c for c in arr.cells if c & sub == m] for m in masks]
    for skip in range(k + 1):
        pick = [opts[t] for t in range(k + 1) if t != skip]
        for combo in itertools.islice(itertools.product(*pick), 2000):
            pts = [arr.sample_point(c) for c in combo]
            if len({x for x, _ in pts}) < k:
                continue
            lines = tuple(Line(x, -y) for x, y in pts)
            if is_spoke_set(P, lines):
                return lines
    return None


def max_spoke_set(P: PointSet, cap: int = 12, timeout_s: float | None = None,
                  bicolored: bool = False) -> SpokeSetResult:
    """Largest spoke set, found as the longest spoke path in the dual arrangement.

    With ``bicolored`` only spoke paths whose crossing pairs join a blue and
    a red line count.  For colour-separable sets that is the quantity tied
    to parallel sets by the quarter-turn transform; the plain spoke set can
    be larger.
    """
    if len(P) > cap:
        raise ValueError(f"{len(P)} points exceed the cap of {cap}")
    arr = dual_arrangement(P)
    res = sub_path_search(arr, Mode.BISPOKE if bicolored else Mode.SPOKE, timeout_s=timeout_s)
    if res.witness is None:
        return SpokeSetResult(0, (), None, res.complete)
    lines = spoke_lines_from_path(P, arr, res.witness)
    if lines is None:
        raise AssertionError("spoke path found but no spoke lines recovered")
    return SpokeSetResult(len(lines), lines, res.witness, res.complete)


# -- parallel sets ---------------------------------------------------------


def above_sets(P: PointSet) -> list[int]:
    """Every subset of ``P`` that is the set of points strictly above some non-vertical line.

    Canonical lines through two points, perturbed: translation decides both
    endpoints together, rotation about the midpoint puts either one above.
    For a vertical pair only the upper point can be above alone.
    """
    n = len(P)
    xy = [p.xy() for p in P]
    out = {0, (1 << n) - 1}
    for i, j in itertools.combinations(range(n), 2):
        (x1, y1), (x2, y2) = xy[i], xy[j]
        if x1 != x2:
            a = (y2 - y1) / (x2 - x1)
            b = y1 - a * x1
            S = 0
            for k, (x, y) in enumerate(xy):
                if k not in (i, j) and y > a * x + b:
                    S |= 1 << k
            for extra in (0, 1 << i, 1 << j, (1 << i) | (1 << j)):
                out.add(S | extra)
        else:
            up = i if y1 > y2 else j
            left = right = 0
            for k, (x, y) in enumerate(xy):
                if k in (i, j):
                    continue
                if x < x1:
                    left |= 1 << k
                elif x > x1:
                    right |= 1 << k
                elif y > max(y1, y2):
                    left |= 1 << k
                    right |= 1 << k
            for side in (left, right):
                for extra in (0, 1 << up, (1 << i) | (1 << j)):
                    out.add(side | extra)
    return sorted(out)


@dataclass(frozen=True)
class ParallelSetResult:
    size: int
    above: tuple[int, ...]  # above-set masks of L_1..L_k (L_0 is any line above everything)
    blue: tuple[int, ...]
    red: tuple[int, ...]
    complete: bool


def max_parallel_set(P: PointSet, cap: int = 16, timeout_s: float | None = None) -> ParallelSetResult:
    """Largest parallel set by backtracking over canonical above-sets.

    Step ``i`` picks an above-set containing everything chosen so far and a
    new blue and red point that were not above any earlier line.
    """
    if len(P) > cap:
        raise ValueError(f"{len(P)} points exceed the cap of {cap}")
    t0 = time.monotonic()
    deadline = None if timeout_s is None else t0 + timeout_s
    blue = sum(1 << i for i in P.blue())
    red = sum(1 << i for i in P.red())
    sets = above_sets(P)
    memo: dict[tuple[int, int], tuple] = {}
    counter = [0]

    def dfs(C, U):
        key = (C, U)
        if key in memo:
            return memo[key]
        counter[0] += 1
        if deadline is not None and counter[0] % 256 == 0 and time.monotonic() > deadline:
            raise SearchTimeout
        cap_here = min(bin(blue & ~U).count("1"), bin(red & ~U).count("1"))
        best = (0, None)
        if cap_here:
            for S in sets:
                if S & C != C:
                    continue
                nb = _bits(S & blue & ~U)
                nr = _bits(S & red & ~U)
                if not nb or not nr:
                    continue
                U2 = U | S
                if 1 + min(bin(blue & ~U2).count("1"), bin(red & ~U2).count("1")) <= best[0]:
                    continue
                for b in nb:
                    for r in nr:
                        v, _ = dfs(C | (1 << b) | (1 << r), U2)
                        if 1 + v > best[0]:
                            best = (1 + v, (S, b, r))
                        if best[0] == cap_here:
                            break
                    if best[0] == cap_here:
                        break
                if best[0] == cap_here:
                    break
        memo[key] = best
        return best

    complete = True
    try:
        dfs(0, 0)
    except SearchTimeout:
        complete = False
    if (0, 0) not in memo:
        return ParallelSetResult(0, (), (), (), complete)
    above, bs, rs = [], [], []
    C = U = 0
    while True:
        v, arg = memo[(C, U)]
        if arg is None:
            break
        S, b, r = arg
        above.append(S)
        bs.append(b)
        rs.append(r)
        C |= (1 << b) | (1 << r)
        U |= S
    res = ParallelSetResult(len(above), tuple(above), tuple(bs), tuple(rs), complete)
    assert check_parallel_set(P, res)
    return res


def check_parallel_set(P: PointSet, res: ParallelSetResult) -> bool:
    """Re-check the nested above-set condition on the chosen blue and red points."""
    k = res.size
    realizable = set(above_sets(P))
    if any(S not in realizable for S in res.above):
        return False
    for pts in (res.blue, res.red):
        if len(set(pts)) != k:
            return False
        prev = 0
        for S in res.above:
            cur = sum(1 for p in pts if S >> p & 1)
            if cur != prev + 1:
                return False
            prev = cur
        # nestedness: each earlier chosen point stays above
        for t, S in enumerate(res.above):
            if any(not (S >> pts[u] & 1) for u in range(t + 1)):
                return False
            if any(S >> pts[u] & 1 for u in range(t + 1, k)):
                return False
    colors_ok = all(P[b].color is Color.BLUE for b in res.blue) and all(P[r].color is Color.RED for r in res.red)
    return colors_ok


def parallel_set_dual(P: PointSet, timeout_s: float | None = None) -> SearchResult:
    """Largest parallel set through the dual: an M-semialternating path from level zero."""
    return sub_path_search(dual_arrangement(P), Mode.PARALLEL, timeout_s=timeout_s)


# -- semialternating searches ----------------------------------------------


def line_crossing_order(lines: Sequence[Line], a, b) -> tuple[list[int], list[int]] | None:
    """Crossing order of the line y = a x + b (left to right) and the start sides."""
    hits = []
    for i, l in enumerate(lines):
        if l.a == a:
            continue
        x = (b - l.b) / (l.a - a)
        hits.append((x, i))
    xs = [x for x, _ in hits]
    if len(set(xs)) != len(xs):
        return None
    hits.sort()
    order = [i for _, i in hits]
    # far left the line is above l exactly when its slope is smaller
    start = [1 if a < lines[i].a else -1 for i in order]
    return order, start


def _best_pairs(order, start, colors, mode: Mode) -> list[int]:
    """Positions of a longest pair sequence along a fixed crossing order."""
    m = len(order)
    best = [0] * (m + 2)
    choice: list = [None] * (m + 2)
    for p in range(m - 1, -1, -1):
        best[p], choice[p] = best[p + 1], None
        for q in range(p + 1, m):
            if _pair_ok(mode, colors, order[p], start[p], order[q], start[q]) and 1 + best[q + 1] > best[p]:
                best[p], choice[p] = 1 + best[q + 1], q
    pos, p = [], 0
    while p < m:
        if choice[p] is None:
            p += 1
        else:
            pos += [p, choice[p]]
            p = choice[p] + 1
    return pos


def canonical_lines(arr: LineArrangement, eps=Fraction(1, 10**9)) -> list[tuple[Fraction, Fraction]]:
    """Lines through pairs of vertices, shifted by +-eps at either end."""
    verts = [v for _, _, v in arr.vertices]
    out = set()
    for (x1, y1), (x2, y2) in itertools.combinations(verts, 2):
        if x1 == x2:
            continue
        for d1 in (-eps, eps):
            for d2 in (-eps, eps):
                a = (y2 + d2 - y1 - d1) / (x2 - x1)
                out.add((a, y1 + d1 - a * x1))
    for _, _, (x, y) in arr.vertices:
        for a in (Fraction(0), Fraction(1), Fraction(-1)):
            for d in (-eps, eps):
                out.add((a, y + d - a * x))
    return sorted(out)


def best_mline(arr: LineArrangement, mode=Mode.MSEMI, level_zero: bool = False):
    """Longest straight-line witness over canonical lines: (size, (a, b), witness)."""
    mode = Mode.parse(mode)
    if level_zero:
        mode = Mode.PARALLEL
    colors = arr.colors()
    best = (0, None, None)
    for a, b in canonical_lines(arr):
        got = line_crossing_order(arr.lines, a, b)
        if got is None:
            continue
        order, start = got
        for o, s in ((order, start), (order[::-1], [-v for v in start[::-1]])):
            pos = _best_pairs(o, s, colors, mode)
            if len(pos) > best[0]:
                best = (len(pos), (a, b), PathWitness(tuple(o[p] for p in pos), tuple(s[p] for p in pos)))
    return best


def find_semialternating(L: LineArrangement, mode=Mode.SEMI, subarrangement_search: bool = False,
                         timeout_s: float | None = None):
    """Witness of the requested kind, or None.

    Without ``subarrangement_search`` the pseudoline must cross every line;
    with it the largest witness over all subarrangements is returned.  The
    ``mline`` mode restricts witnesses to straight lines.
    """
    if str(mode).lower().replace("_", "") in ("mline", "mode.mline"):
        size, _, w = best_mline(L, Mode.MSEMI)
        if not subarrangement_search:
            return w if w is not None and size == L.m else None
        return w
    mode = Mode.parse(mode)
    blue = sum(1 for c in L.colors() if c is Color.BLUE)
    red = sum(1 for c in L.colors() if c is Color.RED)
    if not subarrangement_search:
        if mode is not Mode.SPOKE and blue != red:
            raise ValueError("colour classes differ in size")
        deadline = None if timeout_s is None else time.monotonic() + timeout_s
        return full_path_search(L, mode, deadline=deadline)
    res = sub_path_search(L, mode, timeout_s=timeout_s)
    if not res.complete:
        raise SearchTimeout(f"incomplete at size {res.size}")
    return res.witness


# -- decompositions --------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    parallel_part: PathWitness
    spoke_part: PathWitness
    start_level: int


def decompose_ssORps(w: PathWitness) -> Decomposition:
    """Split an M-semialternating witness into its rising and its flat pairs."""
    seq = w.level_sequence()
    up, flat = [], []
    for t in range(1, len(seq)):
        d = seq[t] - seq[t - 1]
        pair = w.order[2 * t - 2: 2 * t]
        if d == 2:
            up += pair
        elif d == 0:
            flat += pair
        else:
            raise ValueError("level sequence decreases")
    return Decomposition(w.restrict(up), w.restrict(flat), seq[0] if seq else 0)


def semi_to_M(w: PathWitness) -> PathWitness:
    """Drop the pairs along which the level falls.

    The witness is first reversed if it starts above the median level, so
    at most a quarter of the lines are dropped.
    """
    seq = w.level_sequence()
    if seq and seq[0] > len(w) // 2:
        w = w.reversed()
        seq = w.level_sequence()
    drop = set()
    for t in range(1, len(seq)):
        if seq[t] - seq[t - 1] == -2:
            drop.update(w.order[2 * t - 2: 2 * t])
    return w.restrict([l for l in w.order if l not in drop])


# -- wheels ----------------------------------------------------------------


@dataclass(frozen=True)
class WheelResult:
    size: int
    center: tuple | None
    order: tuple[int, ...]


def _rotation_groups(P: PointSet, q):
    """Points grouped by the time a line rotating clockwise from vertical meets them."""
    qx, qy = q
    items = []
    for i, p in enumerate(P):
        dx, dy = p.x - qx, p.y - qy
        if dx == 0 and dy == 0:
            return None
        if dx == 0:
            return None  # on the starting vertical line
        # direction modulo pi, normalised to dy > 0 or (dy == 0, dx > 0)
        ux, uy = (dx, dy) if (dy > 0 or (dy == 0 and dx > 0)) else (-dx, -dy)
        side = 1 if dx > 0 else -1
        items.append(((ux, uy), side, i))

    # clockwise from straight up: larger ux/uy first ... ordered by angle from the vertical
    def key(it):
        (ux, uy), _, _ = it
        # cot of the angle measured from the positive x-axis; clockwise from vertical
        # visits directions with ux/uy increasing from 0 to +inf, then -inf to 0
        if uy == 0:
            return (1, Fraction(0))
        r = Fraction(ux) / uy
        return (0, r) if r > 0 else (2, r)

    items.sort(key=key)
    groups = []
    for it in items:
        if groups and key(groups[-1][0]) == key(it):
            groups[-1].append(it)
        else:
            groups.append([it])
    return groups


def _longest_alternating(groups, colors, alternating: bool):
    # state: (last side, last colour) -> (length, order); ties within a group can go in any order
    states: dict = {None: (0, ())}
    for g in groups:
        new = dict(states)
        perms = itertools.permutations(g) if len(g) <= 5 else [tuple(g)]
        for perm in perms:
            for st, (ln, od) in states.items():
                cur_st, cur_ln, cur_od = st, ln, od
                for _, side, i in perm:
                    col = colors[i]
                    if cur_st is None or (side != cur_st[0] and (not alternating or col != cur_st[1])):
                        cur_st, cur_ln, cur_od = (side, col), cur_ln + 1, cur_od + (i,)
                if cur_st not in new or new[cur_st][0] < cur_ln:
                    new[cur_st] = (cur_ln, cur_od)
        states = new
    return max(states.values(), key=lambda v: v[0])


def default_wheel_centers(P: PointSet, eps=Fraction(1, 10**7)) -> list[tuple]:
    """Points next to every vertex of the arrangement of point-pair lines."""
    pts = [p.xy() for p in P]
    lines = [Line.through(p, q) for p, q in itertools.combinations(pts, 2)]
    out = set()
    for l1, l2 in itertools.combinations(lines, 2):
        v = l1.intersect(l2)
        if v is None:
            continue
        for dx, dy in ((eps, eps / 3), (-eps, eps / 3), (eps / 3, -eps), (-eps / 3, -eps)):
            out.add((v[0] + dx, v[1] + dy))
    return sorted(out)


def largest_wheel(P: PointSet, alternating: bool = False, candidate_centers=None) -> WheelResult:
    """Best wheel over the candidate centres."""
    if candidate_centers is None:
        candidate_centers = default_wheel_centers(P)
    colors = [p.color for p in P]
    best = WheelResult(0, None, ())
    for q in candidate_centers:
        groups = _rotation_groups(P, q)
        if groups is None:
            continue
        ln, od = _longest_alternating(groups, colors, alternating)
        if ln > best.size:
            best = WheelResult(ln, tuple(q), tuple(od))
    return best


def is_wheel(P: PointSet, q, order: Sequence[int], alternating: bool = False) -> bool:
    """Check that the rotating line meets ``order`` in turn, on alternating sides (and colours)."""
    groups = _rotation_groups(P, q)
    if groups is None:
        return False
    pos = {}
    for g_id, g in enumerate(groups):
        for _, side, i in g:
            pos[i] = (g_id, side)
    for t in range(1, len(order)):
        (g0, s0), (g1, s1) = pos[order[t - 1]], pos[order[t]]
        if g1 < g0 or s1 == s0:
            return False
        if alternating and P[order[t]].color == P[order[t - 1]].color:
            return False
    return True
