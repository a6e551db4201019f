"""Separability, avoidance and visibility-rank labelings between point sets.

Point arguments may be :class:`~crossfam.geom.Point` objects or plain
``(x, y)`` pairs of rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Sequence

from .duality import Line
from .geom import Point, PointSet, Q, hull_of_coords, orient_xy


def _xy(p):
    return p.xy() if isinstance(p, Point) else (Q(p[0]), Q(p[1]))


def _coords(S) -> list[tuple]:
    return [_xy(p) for p in S]


@dataclass(frozen=True)
class Partition2:
    set_a: tuple[int, ...]
    set_b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "set_a", tuple(self.set_a))
        object.__setattr__(self, "set_b", tuple(self.set_b))
        if set(self.set_a) & set(self.set_b):
            raise ValueError("partition classes overlap")

    @classmethod
    def by_color(cls, P: PointSet) -> "Partition2":
        """Blue points first, red points second."""
        return cls(tuple(P.blue()), tuple(P.red()))


def _axes(A, B):
    hulls = [hull_of_coords(A), hull_of_coords(B)]
    axes = set()
    for S, h in zip((A, B), hulls):
        for k in range(len(h)):
            p, q = S[h[k]], S[h[(k + 1) % len(h)]]
            if p != q:
                axes.add((q[1] - p[1], p[0] - q[0]))
    for i in hulls[0]:
        for j in hulls[1]:
            a, b = A[i], B[j]
            axes.add((b[0] - a[0], b[1] - a[1]))
    return axes


def is_separable(A, B) -> tuple[bool, Line | None]:
    """Strict separability of two finite sets, with an exact separating line.

    Checks the separating-axis candidates: hull edge normals plus vertex
    differences, which covers the closest-pair direction of any disjoint pair
    of hulls.
    """
    A, B = _coords(A), _coords(B)
    if not A or not B:
        raise ValueError("both sets must be nonempty")
    for ux, uy in sorted(_axes(A, B)):
        if ux == 0 and uy == 0:
            continue
        pa = [ux * x + uy * y for x, y in A]
        pb = [ux * x + uy * y for x, y in B]
        if max(pa) < min(pb):
            c = (max(pa) + min(pb)) / 2
        elif max(pb) < min(pa):
            c = (max(pb) + min(pa)) / 2
        else:
            continue
        if uy == 0:
            return True, Line.vertical_at(c / ux)
        return True, Line(-ux / uy, c / uy)
    return False, None


def _strict_side(p, q, S) -> int:
    """Common orientation of all of S w.r.t. the line pq, or 0 if mixed/touching."""
    s = None
    for r in S:
        o = orient_xy(p, q, r)
        if o == 0 or (s is not None and o != s):
            return 0
        s = o
    return s or 0


def separates(A, B, C) -> bool:
    """A is separable from B u C and every line through two A points splits B from C."""
    A, B, C = _coords(A), _coords(B), _coords(C)
    if len(A) < 2:
        raise ValueError("A needs at least two points")
    if not B or not C:
        raise ValueError("B and C must be nonempty")
    ok, _ = is_separable(A, B + C)
    if not ok:
        return False
    for p, q in combinations(A, 2):
        sb = _strict_side(p, q, B)
        sc = _strict_side(p, q, C)
        if sb == 0 or sc == 0 or sb == sc:
            return False
    return True


def _scaled(*sets):
    """Scale several coordinate lists by one common factor to plain integers."""
    L = 1
    for S in sets:
        for x, y in S:
            L = math.lcm(L, Fraction(x).denominator, Fraction(y).denominator)
    return [[(int(x * L), int(y * L)) for x, y in S] for S in sets]


def avoids(A, B) -> bool:
    """No line through two points of A meets the closed hull of B."""
    A, B = _coords(A), _coords(B)
    if not B:
        raise ValueError("B must be nonempty")
    A, B = _scaled(A, B)
    H = [B[i] for i in hull_of_coords(B)]
    for (px, py), (qx, qy) in combinations(A, 2):
        dx, dy = qx - px, qy - py
        vals = [dx * (y - py) - dy * (x - px) for x, y in H]
        if not (min(vals) > 0 or max(vals) < 0):
            return False
    return True


def mutually_avoiding(A, B) -> bool:
    return avoids(A, B) and avoids(B, A)


def is_one_avoiding(P: PointSet, partition: Partition2) -> bool:
    A = [P[i] for i in partition.set_a]
    B = [P[i] for i in partition.set_b]
    ok, _ = is_separable(A, B)
    return ok and avoids(A, B)


@dataclass(frozen=True)
class RankLabeling:
    a_order: tuple[int, ...]
    b_order: tuple[int, ...]


def rank_orders(A, B) -> tuple[list[list[int]], list[list[int]]]:
    """Counterclockwise visibility orders.

    ``ra[i]`` lists the indices of ``B`` in the order ``A[i]`` sees them when
    sweeping counterclockwise from the separating direction; likewise ``rb``.
    Since the other set lies inside an open half-plane, the sweep order is the
    orientation order, so no explicit rotation is needed.
    """
    A, B = _coords(A), _coords(B)

    def order(center, S):
        def cmp(i, j):
            return -orient_xy(center, S[i], S[j])
        return sorted(range(len(S)), key=cmp_to_key(cmp))

    return [order(a, B) for a in A], [order(b, A) for b in B]


def _check_rank_pre(A, B):
    if len(A) != len(B):
        raise ValueError("A and B must have equal size")
    ok, _ = is_separable(A, B)
    if not ok:
        raise ValueError("A and B are not separable")
    pts = _coords(A) + _coords(B)
    for p, q, r in combinations(pts, 3):
        if orient_xy(p, q, r) == 0:
            raise ValueError("A u B is not in general position")


def rank_condition(A, B, strong: bool = False) -> RankLabeling | None:
    """Labeling with a_i seeing b_i at rank i and vice versa (all pairs if strong)."""
    _check_rank_pre(A, B)
    ra, rb = rank_orders(A, B)
    s = len(A)
    if strong:
        if any(r != ra[0] for r in ra) or any(r != rb[0] for r in rb):
            return None
        lab = RankLabeling(tuple(rb[0]), tuple(ra[0]))
        return lab if is_rank_labeling(A, B, lab, strong=True) else None

    rank_a = [{b: k for k, b in enumerate(row)} for row in ra]
    rank_b = [{a: k for k, a in enumerate(row)} for row in rb]
    by_rank: list[list[tuple[int, int]]] = [[] for _ in range(s)]
    for i in range(s):
        for j in range(s):
            if rank_a[i][j] == rank_b[j][i]:
                by_rank[rank_a[i][j]].append((i, j))

    used_a, used_b = [False] * s, [False] * s
    chosen: list[tuple[int, int]] = []

    def search(k):
        if k == s:
            return True
        for i, j in by_rank[k]:
            if not used_a[i] and not used_b[j]:
                used_a[i] = used_b[j] = True
                chosen.append((i, j))
                if search(k + 1):
                    return True
                chosen.pop()
                used_a[i] = used_b[j] = False
        return False

    if not search(0):
        return None
    lab = RankLabeling(tuple(i for i, _ in chosen), tuple(j for _, j in chosen))
    assert is_rank_labeling(A, B, lab)
    return lab


def is_rank_labeling(A, B, lab: RankLabeling, strong: bool = False) -> bool:
    ra, rb = rank_orders(A, B)
    s = len(A)
    if sorted(lab.a_order) != list(range(s)) or sorted(lab.b_order) != list(range(s)):
        return False
    for i in range(s):
        a, b = lab.a_order[i], lab.b_order[i]
        if strong:
            if list(ra[a]) != list(lab.b_order) or list(rb[b]) != list(lab.a_order):
                return False
        elif ra[a][i] != b or rb[b][i] != a:
            return False
    return True


def general_position_joint(S: Sequence) -> bool:
    pts = _coords(S)
    return all(orient_xy(p, q, r) != 0 for p, q, r in combinations(pts, 3))
