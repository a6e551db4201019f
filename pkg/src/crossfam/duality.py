"""Point/line duality and the quarter-turn transform of dual arrangements."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geom import Color, Point, PointSet, Q, orient_xy


@dataclass(frozen=True)
class Line:
    """``y = a*x + b``, or the vertical line ``x = c`` when ``vertical`` is set."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    color: Color = Color.NONE
    vertical: bool = False
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Q(self.a))
        object.__setattr__(self, "b", Q(self.b))
        object.__setattr__(self, "c", Q(self.c))
        object.__setattr__(self, "color", Color.parse(self.color))
        if self.vertical:
            # canonical form: slope/intercept fields are meaningless
            object.__setattr__(self, "a", Fraction(0))
            object.__setattr__(self, "b", Fraction(0))
        else:
            object.__setattr__(self, "c", Fraction(0))

    @classmethod
    def vertical_at(cls, c, color=Color.NONE) -> "Line":
        return cls(0, 0, color, True, c)

    @classmethod
    def through(cls, p, q, color=Color.NONE) -> "Line":
        (x1, y1), (x2, y2) = p, q
        if x1 == x2:
            if y1 == y2:
                raise ValueError("need two distinct points")
            return cls.vertical_at(x1, color)
        a = (y2 - y1) / (x2 - x1)
        return cls(a, y1 - a * x1, color)

    def y_at(self, x) -> Fraction:
        if self.vertical:
            raise ValueError("vertical line has no y(x)")
        return self.a * x + self.b

    def side(self, p) -> int:
        """+1 above (or right of a vertical line), -1 below, 0 on."""
        x, y = p
        if self.vertical:
            d = x - self.c
        else:
            d = y - (self.a * x + self.b)
        return (d > 0) - (d < 0)

    def intersect(self, other: "Line") -> tuple[Fraction, Fraction] | None:
        if self.vertical and other.vertical:
            return None
        if self.vertical:
            return (self.c, other.y_at(self.c))
        if other.vertical:
            return (other.c, self.y_at(other.c))
        if self.a == other.a:
            return None
        x = (other.b - self.b) / (self.a - other.a)
        return (x, self.a * x + self.b)

    def recolor(self, color) -> "Line":
        return Line(self.a, self.b, color, self.vertical, self.c)


def point_to_dual_line(p: Point) -> Line:
    return Line(p.x, -p.y, p.color)


def line_to_dual_point(l: Line) -> Point:
    if l.vertical:
        raise ValueError(f"vertical line x = {l.c} has no dual point")
    return Point(l.a, -l.b, l.color)


def dual_lines(P: PointSet) -> list[Line]:
    return [point_to_dual_line(p) for p in P]


def rotate90_point(p: Point) -> Point:
    if p.x == 0:
        raise ValueError("point on the y-axis")
    return Point(-1 / p.x, p.y / p.x, p.color)


def rotate90_transform(P: PointSet) -> PointSet:
    """Map (a, b) to (-1/a, b/a).

    The dual arrangement of the image is the dual arrangement of ``P``
    turned a quarter clockwise.
    """
    for i, p in enumerate(P):
        if p.x == 0:
            raise ValueError(f"point {i} lies on the y-axis; translate first")
    return PointSet(rotate90_point(p) for p in P)


def halving_shift(P: PointSet) -> Fraction:
    """Exact x-shift placing the y-axis midway between the two median x-values.

    Raises when the two middle x-coordinates coincide.
    """
    xs = sorted(p.x for p in P)
    n = len(xs)
    if n % 2:
        raise ValueError("need an even number of points")
    lo, hi = xs[n // 2 - 1], xs[n // 2]
    if lo == hi:
        raise ValueError("median x-coordinates coincide; no vertical halving line")
    return -(lo + hi) / 2


def translate(P: PointSet, dx=0, dy=0) -> PointSet:
    dx, dy = Q(dx), Q(dy)
    return PointSet(Point(p.x + dx, p.y + dy, p.color) for p in P)


def rotate_rational(P: PointSet, cos, sin) -> PointSet:
    """Rotate by an angle with rational cosine and sine (cos^2 + sin^2 = 1)."""
    cos, sin = Q(cos), Q(sin)
    if cos * cos + sin * sin != 1:
        raise ValueError("cos/sin must lie on the unit circle")
    return PointSet(Point(cos * p.x - sin * p.y, sin * p.x + cos * p.y, p.color) for p in P)


def pythagorean_rotation(m: int, n: int) -> tuple[Fraction, Fraction]:
    """Rational (cos, sin) from the triple (m^2 - n^2, 2mn, m^2 + n^2)."""
    h = m * m + n * n
    return Fraction(m * m - n * n, h), Fraction(2 * m * n, h)


def orientation_sign_identity(p, q, r) -> bool:
    """Check o(p,q,r) == sign(a1 a2 a3) * o(p',q',r') for one triple of coordinates."""
    pr = [(-1 / x, y / x) for x, y in (p, q, r)]
    s = p[0] * q[0] * r[0]
    s = (s > 0) - (s < 0)
    return orient_xy(p, q, r) == s * orient_xy(*pr)


def straddle_frame(P: PointSet, partition) -> PointSet:
    """Affine image of ``P`` with set_b left of the y-axis and set_a right of it.

    The map is orientation preserving, so avoidance and every triple
    orientation carry over.
    """
    from .tables import normalize_frame

    coords = normalize_frame(P, partition)
    bx = max(coords[i][0] for i in partition.set_b)
    ax = min(coords[i][0] for i in partition.set_a)
    mid = (ax + bx) / 2
    return PointSet(Point(x - mid, y, p.color) for (x, y), p in zip(coords, P))
