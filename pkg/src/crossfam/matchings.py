"""Non-crossing bicoloured matchings, ham-sandwich cuts and size-n stabbing families."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Sequence

from .duality import Line, halving_shift, rotate90_transform, translate
from .geom import (Color, PairRelation, PointSet, Segment, classify_pair,
                   integer_coords, is_general_position, orient_xy)
from .separation import Partition2, is_one_avoiding, is_separable
from .solvers import Family, Relation, verify_family


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]  # (red index, blue index)
    base: PointSet = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.pairs)

    def segments(self) -> tuple[Segment, ...]:
        return tuple(Segment.of(r, b) for r, b in self.pairs)


def crossing_pairs(M: Matching) -> list[tuple[Segment, Segment]]:
    segs = M.segments()
    return [(s, t) for k, s in enumerate(segs) for t in segs[k + 1:]
            if classify_pair(s, t, M.base) is PairRelation.CROSSING]


# -- rotating-line matching ------------------------------------------------


def _upright_frame(A: list, B: list):
    """Orientation-preserving affine image with the separating line vertical, B to the left."""
    ok, sep = is_separable(A, B)
    if not ok:
        raise ValueError("classes are not separable")
    if sep.vertical:
        f = lambda p: (p[0] - sep.c, p[1])
    else:
        # (x, y) -> (a x - y + b, x) has determinant +1 and sends the line to u = 0
        f = lambda p: (sep.a * p[0] - p[1] + sep.b, p[0])
    A2, B2 = [f(p) for p in A], [f(p) for p in B]
    if B2[0][0] > 0:
        A2 = [(-x, -y) for x, y in A2]
        B2 = [(-x, -y) for x, y in B2]
    return A2, B2


def non_crossing_bicolored_matching(P: PointSet, partition: Partition2) -> Matching:
    """Greedy matching by a line rotating about each blue point in turn.

    ``partition.set_a`` is the avoiding class (matched in label order) and
    ``set_b`` the other class; pairs are reported as (set_b index, set_a index).
    """
    A_idx, B_idx = list(partition.set_a), list(partition.set_b)
    if len(A_idx) != len(B_idx):
        raise ValueError("classes must have equal size")
    if not is_one_avoiding(P, partition):
        raise ValueError("partition is not 1-avoiding")
    A, B = _upright_frame([P[i].xy() for i in A_idx], [P[i].xy() for i in B_idx])
    # the other class lies to the right of b_i -> b_j whenever i < j
    r0 = B[0]
    order = sorted(range(len(A)), key=cmp_to_key(lambda i, j: orient_xy(A[i], A[j], r0)))
    free = set(range(len(B)))
    pairs = []
    for i in order:
        a = A[i]
        # first point hit turning counterclockwise from straight up; all of B is to the left
        best = None
        for j in free:
            if best is None or orient_xy(a, B[j], B[best]) > 0:
                best = j
        free.discard(best)
        pairs.append((B_idx[best], A_idx[i]))
    return Matching(tuple(pairs), P)


# -- ham-sandwich cuts -----------------------------------------------------

Orient = Callable[[int, int, int], int]


def _sweep_counts(p: int, others: Sequence[int], o: Orient, is_red: Callable[[int], bool]):
    """For each q in ``others``: (q, reds left of p->q, blues left of p->q), excluding p and q."""
    s = others[0]
    plus = [r for r in others[1:] if o(p, s, r) > 0]
    minus = [r for r in others[1:] if o(p, s, r) < 0]
    key = cmp_to_key(lambda a, b: -o(p, a, b))
    circ = [s] + sorted(plus, key=key) + sorted(minus, key=key)
    m = len(circ)
    pre_r = [0]
    for k in range(2 * m):
        pre_r.append(pre_r[-1] + (1 if is_red(circ[k % m]) else 0))
    out = []
    e = 0
    for t, q in enumerate(circ):
        e = max(e, t)
        while e + 1 < t + m and o(p, q, circ[(e + 1) % m]) > 0:
            e += 1
        left = e - t
        lr = pre_r[e + 1] - pre_r[t + 1]
        out.append((q, lr, left - lr))
    return out


def _ham_pair(reds: Sequence[int], blues: Sequence[int], o: Orient):
    """A red p and blue q whose line bisects both classes, as needed by the recursion.

    Returns (p, q, red_left, blue_left): counts of the others strictly left of p->q.
    With equal odd counts the two sides are exactly balanced; with equal even
    counts each class splits n/2 : n/2 - 1, to be evened out by nudging p, q.
    """
    n = len(reds)
    red = set(reds)
    for p in reds:
        others = [x for x in list(reds) + list(blues) if x != p]
        for q, lr, lb in _sweep_counts(p, others, o, red.__contains__):
            if q in red:
                continue
            if n % 2:
                if lr == (n - 1) // 2 and lb == (n - 1) // 2:
                    return p, q, lr, lb
            elif lr in (n // 2 - 1, n // 2) and lb in (n // 2 - 1, n // 2):
                return p, q, lr, lb
    raise RuntimeError("no ham-sandwich pair found; input not in general position?")


def _match_rec(reds: list[int], blues: list[int], o: Orient, out: list):
    n = len(reds)
    if n == 0:
        return
    if n == 1:
        out.append((reds[0], blues[0]))
        return
    p, q, lr, lb = _ham_pair(reds, blues, o)
    left_r = [r for r in reds if r != p and o(p, q, r) > 0]
    right_r = [r for r in reds if r != p and o(p, q, r) < 0]
    left_b = [b for b in blues if b != q and o(p, q, b) > 0]
    right_b = [b for b in blues if b != q and o(p, q, b) < 0]
    if n % 2:
        out.append((p, q))
    else:
        # nudge p and q into the smaller side of their class
        (left_r if lr < n // 2 else right_r).append(p)
        (left_b if lb < n // 2 else right_b).append(q)
    _match_rec(left_r, left_b, o, out)
    _match_rec(right_r, right_b, o, out)


def ham_sandwich_matching(P: PointSet, reds: Sequence[int], blues: Sequence[int],
                          orient: Orient | None = None) -> Matching:
    """Non-crossing red-blue perfect matching by recursive ham-sandwich cuts."""
    if len(reds) != len(blues):
        raise ValueError("need equally many red and blue points")
    if orient is None:
        xy = integer_coords(P)
        orient = lambda i, j, k: orient_xy(xy[i], xy[j], xy[k])
    out: list = []
    _match_rec(list(reds), list(blues), orient, out)
    return Matching(tuple(out), P)


def _nudged_line(p, q, side_p: int, side_q: int, pts) -> Line:
    """A line near pq with p on side ``side_p`` and q on ``side_q`` (+1 = left of p->q), other sides kept."""
    d = (q[0] - p[0], q[1] - p[1])
    nrm = (-d[1], d[0])  # points to the left of p->q
    keep = [(r, orient_xy(p, q, r)) for r in pts]
    eps = Fraction(1, 4)
    for _ in range(200):
        # moving the line by -eps*nrm at p puts p on the left, and vice versa
        p2 = (p[0] - side_p * eps * nrm[0], p[1] - side_p * eps * nrm[1])
        q2 = (q[0] - side_q * eps * nrm[0], q[1] - side_q * eps * nrm[1])
        if all(orient_xy(p2, q2, r) == s for r, s in keep) \
                and orient_xy(p2, q2, p) == side_p and orient_xy(p2, q2, q) == side_q:
            return Line.through(p2, q2)
        eps /= 2
    raise RuntimeError("could not perturb the cut")


def ham_sandwich_cut(P: PointSet) -> Line:
    """A line with at most floor(r/2) reds and floor(b/2) blues strictly on each side.

    Scans lines through one red and one blue point; when both classes have
    the same even size the line is nudged off its two points so that each
    open side holds exactly half of each class.
    """
    reds, blues = P.red(), P.blue()
    if not reds or not blues:
        raise ValueError("need both colours")
    xy = [p.xy() for p in P]
    r, b = len(reds), len(blues)
    red = set(reds)
    if r == b:
        o = lambda i, j, k: orient_xy(xy[i], xy[j], xy[k])
        p, q, lr, lb = _ham_pair(reds, blues, o)
        if r % 2:
            return Line.through(xy[p], xy[q])
        rest = [xy[i] for i in range(len(P)) if i not in (p, q)]
        return _nudged_line(xy[p], xy[q], 1 if lr < r // 2 else -1, 1 if lb < b // 2 else -1, rest)
    for p in reds:
        for q in blues:
            sides = [(i in red, orient_xy(xy[p], xy[q], xy[i])) for i in range(len(P)) if i not in (p, q)]
            ra = sum(1 for c, s in sides if c and s > 0)
            rb = sum(1 for c, s in sides if c and s < 0)
            ba = sum(1 for c, s in sides if not c and s > 0)
            bb = sum(1 for c, s in sides if not c and s < 0)
            if max(ra, rb) <= r // 2 and max(ba, bb) <= b // 2:
                return Line.through(xy[p], xy[q])
    raise RuntimeError("no ham-sandwich cut found")


def cut_counts(P: PointSet, l: Line) -> dict[str, tuple[int, int]]:
    """Per colour: (strictly above, strictly below)."""
    out = {}
    for c in (Color.RED, Color.BLUE):
        sides = [l.side(p.xy()) for p in P if p.color is c]
        out[c.value] = (sides.count(1), sides.count(-1))
    return out


# -- stabbing families -----------------------------------------------------


@dataclass(frozen=True)
class StabbingResult:
    family: Family
    shift: Fraction
    transformed: PointSet = field(repr=False)
    matching: Matching = field(repr=False)


def _halved(P: PointSet):
    dx = halving_shift(P)
    T = translate(P, dx, 0)
    for i, p in enumerate(T):
        if p.x == 0:
            raise ValueError(f"point {i} lies on the halving axis")
    left = [i for i, p in enumerate(T) if p.x < 0]
    right = [i for i, p in enumerate(T) if p.x > 0]
    return dx, T, left, right


def stabbing_family_general(P: PointSet) -> StabbingResult:
    """n pairwise stab-or-cross segments on any 2n points in general position.

    The y-axis is moved to a vertical halving line, the two halves become the
    colour classes, and a non-crossing matching of the quarter-turned set
    pulls back to a stabbing family.
    """
    if len(P) % 2:
        raise ValueError("need an even number of points")
    if not is_general_position(P)[0]:
        raise ValueError("points are not in general position")
    dx, T, left, right = _halved(P)
    xy = integer_coords(T)
    a = [p.x for p in T]

    def orient_t(i, j, k):
        # orientation in the transformed set, from the original coordinates
        s = (a[i] > 0) ^ (a[j] > 0) ^ (a[k] > 0)
        v = orient_xy(xy[i], xy[j], xy[k])
        return v if s else -v

    Pt = rotate90_transform(T)
    M = ham_sandwich_matching(Pt, left, right, orient_t)
    fam = Family(tuple(Segment.of(r, b) for r, b in M.pairs), Relation.STAB_OR_CROSS, P)
    ok, bad = verify_family(fam)
    if not ok:
        raise AssertionError(f"stabbing family check failed at {bad}")
    return StabbingResult(fam, dx, Pt, M)


def stabbing_family_one_avoiding(P: PointSet, partition: Partition2) -> StabbingResult:
    """Same size-n guarantee for 1-avoiding input, via the rotating-line matching.

    Requires the classes on opposite sides of the y-axis after the halving shift.
    """
    if len(partition.set_a) != len(partition.set_b):
        raise ValueError("classes must have equal size")
    dx, T, left, right = _halved(P)
    if set(left) != set(partition.set_a) and set(left) != set(partition.set_b):
        raise ValueError("the halving axis does not separate the classes")
    Pt = rotate90_transform(T)
    if not is_one_avoiding(Pt, partition):
        raise ValueError("transformed set is not 1-avoiding")
    M = non_crossing_bicolored_matching(Pt, partition)
    fam = Family(M.segments(), Relation.STAB_OR_CROSS, P)
    ok, bad = verify_family(fam)
    if not ok:
        raise AssertionError(f"stabbing family check failed at {bad}")
    return StabbingResult(fam, dx, Pt, M)
