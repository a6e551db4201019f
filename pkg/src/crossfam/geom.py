"""Exact planar primitives over rationals.

Every coordinate is a :class:`fractions.Fraction`; no predicate ever touches a
float.  Orientation follows the usual determinant convention: positive means
counterclockwise.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

Rational = Fraction


def Q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a reduced Fraction.

    Floats are refused on purpose: they would smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class Color(str, enum.Enum):
    RED = "red"
    BLUE = "blue"
    NONE = "none"

    @classmethod
    def parse(cls, value) -> "Color":
        if value is None:
            return cls.NONE
        if isinstance(value, Color):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown color {value!r}") from None


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction
    color: Color = Color.NONE

    def __post_init__(self):
        object.__setattr__(self, "x", Q(self.x))
        object.__setattr__(self, "y", Q(self.y))
        object.__setattr__(self, "color", Color.parse(self.color))

    def xy(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def recolor(self, color) -> "Point":
        return Point(self.x, self.y, color)


class PointSet:
    """An immutable, index-stable list of distinct points."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Point]):
        pts = tuple(points)
        seen = set()
        for idx, p in enumerate(pts):
            if not isinstance(p, Point):
                raise TypeError(f"point {idx} is not a Point")
            if p.xy() in seen:
                raise ValueError(f"point {idx} duplicates an earlier point at {p.xy()}")
            seen.add(p.xy())
        self.points = pts

    @classmethod
    def from_coords(cls, coords, colors=None) -> "PointSet":
        if colors is None:
            colors = [Color.NONE] * len(coords)
        return cls(Point(Q(x), Q(y), c) for (x, y), c in zip(coords, colors))

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet({len(self.points)} points)"

    def indices(self, color: Color) -> list[int]:
        return [i for i, p in enumerate(self.points) if p.color == color]

    def red(self) -> list[int]:
        return self.indices(Color.RED)

    def blue(self) -> list[int]:
        return self.indices(Color.BLUE)

    def subset(self, idx: Sequence[int]) -> "PointSet":
        return PointSet(self.points[i] for i in idx)


ColoredPointSet = PointSet


class Segment(NamedTuple):
    i: int
    j: int

    @classmethod
    def of(cls, i: int, j: int) -> "Segment":
        if i == j:
            raise ValueError("segment endpoints must differ")
        return cls(min(i, j), max(i, j))


class PairRelation(enum.Enum):
    CROSSING = "crossing"
    # the supporting line of the first segment cuts the second one only
    FIRST_STABS_SECOND = "first_stabs_second"
    # the supporting line of the second segment cuts the first one only
    SECOND_STABS_FIRST = "second_stabs_first"
    PARALLEL = "parallel"
    DEGENERATE = "degenerate"

    def mirrored(self) -> "PairRelation":
        if self is PairRelation.FIRST_STABS_SECOND:
            return PairRelation.SECOND_STABS_FIRST
        if self is PairRelation.SECOND_STABS_FIRST:
            return PairRelation.FIRST_STABS_SECOND
        return self


def det3(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def sign(v) -> int:
    return (v > 0) - (v < 0)


def orientation(p: Point, q: Point, r: Point) -> int:
    return sign(det3(p.x, p.y, q.x, q.y, r.x, r.y))


def orient_xy(p, q, r) -> int:
    """Orientation on bare coordinate pairs."""
    return sign((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def classify_xy(p1, p2, q1, q2) -> PairRelation:
    a = orient_xy(p1, p2, q1)
    b = orient_xy(p1, p2, q2)
    c = orient_xy(q1, q2, p1)
    d = orient_xy(q1, q2, p2)
    if a == 0 or b == 0 or c == 0 or d == 0:
        return PairRelation.DEGENERATE
    line1_cuts_s2 = a != b
    line2_cuts_s1 = c != d
    if line1_cuts_s2 and line2_cuts_s1:
        return PairRelation.CROSSING
    if line1_cuts_s2:
        return PairRelation.FIRST_STABS_SECOND
    if line2_cuts_s1:
        return PairRelation.SECOND_STABS_FIRST
    return PairRelation.PARALLEL


def classify_pair(s1: Segment, s2: Segment, P: PointSet) -> PairRelation:
    """Relation between two segments of ``P`` by where their lines meet."""
    if len({s1[0], s1[1], s2[0], s2[1]}) < 4:
        return PairRelation.DEGENERATE
    return classify_xy(P[s1[0]].xy(), P[s1[1]].xy(), P[s2[0]].xy(), P[s2[1]].xy())


def hull_of_coords(coords: Sequence[tuple]) -> list[int]:
    """Andrew's monotone chain; strict hull vertices, counterclockwise."""
    order = sorted(range(len(coords)), key=lambda i: coords[i])
    if len(order) <= 2:
        # deduplicate identical coordinates
        out = []
        for i in order:
            if not out or coords[out[-1]] != coords[i]:
                out.append(i)
        return out

    def chain(seq):
        h: list[int] = []
        for i in seq:
            while len(h) >= 2 and orient_xy(coords[h[-2]], coords[h[-1]], coords[i]) <= 0:
                h.pop()
            h.append(i)
        return h

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    if not hull:
        return order[:1]
    return hull


def convex_hull(P: PointSet) -> list[int]:
    """Counterclockwise hull vertex indices, starting at the lexicographic minimum."""
    if len(P) == 0:
        raise ValueError("empty point set")
    return hull_of_coords([p.xy() for p in P])


def integer_coords(P: PointSet) -> list[tuple[int, int]]:
    """Coordinates scaled by the lcm of all denominators (same orientations)."""
    L = 1
    for p in P:
        L = math.lcm(L, p.x.denominator, p.y.denominator)
    return [(int(p.x * L), int(p.y * L)) for p in P]


def is_general_position(P: PointSet) -> tuple[bool, tuple[int, int, int] | None]:
    """No three collinear; otherwise also returns one collinear triple (i < k < j).

    Hashes reduced directions from each point, so it runs in roughly
    quadratic time.
    """
    c = integer_coords(P)
    n = len(c)
    for i in range(n):
        seen: dict[tuple[int, int], int] = {}
        xi, yi = c[i]
        for j in range(i + 1, n):
            dx, dy = c[j][0] - xi, c[j][1] - yi
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in seen:
                return False, (i, seen[(dx, dy)], j)
            seen[(dx, dy)] = j
    return True, None


def segment_endpoints(P: PointSet, s: Segment):
    return P[s[0]].xy(), P[s[1]].xy()
