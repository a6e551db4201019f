"""Explicit point configurations, each returned with a checked certificate.

Small parameters ("almost collinear", "tiny disk") are explicit rationals.
Where a certificate fails, the perturbation is halved and the build retried
a bounded number of times; a builder only returns once every check passes.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Sequence

from .duality import Line, pythagorean_rotation
from .geom import Color, Point, PointSet, Q, is_general_position, orient_xy
from .separation import Partition2, is_one_avoiding, is_separable, mutually_avoiding, separates
from .barstacks import build_kn_barstack  # noqa: F401  (re-exported)
from .tables import build_theta_n2_sequence  # noqa: F401  (re-exported)


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class DiskSpec:
    center: tuple[Fraction, Fraction]
    radius: Fraction
    count: int
    near_collinear_direction: Fraction | None = None  # slope of the diameter

    def __post_init__(self):
        object.__setattr__(self, "center", (Q(self.center[0]), Q(self.center[1])))
        object.__setattr__(self, "radius", Q(self.radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.count < 1:
            raise ValueError("count must be positive")

    def contains(self, p) -> bool:
        dx, dy = p[0] - self.center[0], p[1] - self.center[1]
        return dx * dx + dy * dy < self.radius * self.radius

    def in_strip(self, p) -> bool:
        """Within radius/10^6 of the diameter with the given slope."""
        if self.near_collinear_direction is None:
            return True
        s = self.near_collinear_direction
        dx, dy = p[0] - self.center[0], p[1] - self.center[1]
        # squared distance to the line y = s x through the centre
        num = (dy - s * dx) ** 2
        w = self.radius / 10**6
        return num < w * w * (1 + s * s)


@dataclass
class ConstructionCertificate:
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def add(self, name: str, ok: bool) -> bool:
        self.checks.append((name, bool(ok)))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def first_failure(self) -> str | None:
        for name, ok in self.checks:
            if not ok:
                return name
        return None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [{"name": n, "ok": ok} for n, ok in self.checks]}


@dataclass(frozen=True)
class Construction:
    points: PointSet
    certificate: ConstructionCertificate
    groups: dict = field(default_factory=dict)  # named index groups (disks, wings, colours)
    meta: dict = field(default_factory=dict)


def _data(name: str):
    return json.loads(resources.files("crossfam").joinpath("data", name).read_text())


def _bent_points(c, d, n, ts, step, bend):
    """c + t*step*d + t^2*bend*n: almost on the line through c along d."""
    return [
        (c[0] + t * step * d[0] + t * t * bend * n[0], c[1] + t * step * d[1] + t * t * bend * n[1])
        for t in ts
    ]


def _spread(count: int, half_width) -> list[Fraction]:
    """``count`` evenly spaced parameters in [-half_width, half_width]."""
    if count == 1:
        return [Fraction(0)]
    half_width = Q(half_width)
    return [-half_width + 2 * half_width * j / (count - 1) for j in range(count)]


def disk_orientations_inherited(disks: Sequence[Sequence[tuple]], centers: Sequence[tuple]) -> bool:
    """Every triple of points from three distinct disks has the centres' orientation."""
    for x, y, z in itertools.combinations(range(len(disks)), 3):
        o = orient_xy(centers[x], centers[y], centers[z])
        if o == 0:
            return False
        for p in disks[x]:
            for q in disks[y]:
                for r in disks[z]:
                    if orient_xy(p, q, r) != o:
                        return False
    return True


def _meet(l1, l2):
    (x1, y1), (x2, y2) = l1
    (x3, y3), (x4, y4) = l2
    d = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    if d == 0:
        return None
    a = x1 * y2 - y1 * x2
    b = x3 * y4 - y3 * x4
    return ((a * (x3 - x4) - (x1 - x2) * b) / d, (a * (y3 - y4) - (y1 - y2) * b) / d)


def in_core(sets: Sequence[Sequence[tuple]], pts: Sequence[tuple]) -> bool:
    """``pts`` lie inside every triangle cut out by one line from each set's pair lines."""
    L = [list(itertools.combinations(S, 2)) for S in sets]
    # a triangle's vertex opposite line i is where the other two lines meet,
    # so the test splits into one side check per line against those meets
    for i in range(3):
        meets = [_meet(a, b) for a in L[(i + 1) % 3] for b in L[(i + 2) % 3]]
        if None in meets:
            return False
        for ln in L[i]:
            sides = {orient_xy(*ln, v) for v in meets} | {orient_xy(*ln, p) for p in pts}
            if len(sides) != 1 or 0 in sides:
                return False
    return True


def _separates_or_separable(A, B, C) -> bool:
    if len(A) >= 2:
        return separates(A, B, C)
    return is_separable(A, list(B) + list(C))[0]


# -- n/4 configuration -----------------------------------------------------


def build_nover4(k: int, bend=Fraction(1, 10**8)) -> Construction:
    """4k points: three almost-collinear disks around a triangle plus a centre disk.

    Each outer disk's points lie along a direction whose line passes between
    the next disk and the rest, which gives the separating property.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    centers = [(-433, -250), (433, -250), (0, 500)]
    dirs = [(100, 27), (-100, 100), (-27, -100)]
    radius = Fraction(50)
    for _ in range(20):
        cert = ConstructionCertificate()
        ts = _spread(k, 1)
        disks = []
        specs = []
        for c, d in zip(centers, dirs):
            n = (-d[1], d[0])
            disks.append(_bent_points(c, d, n, ts, Fraction(1, 5), bend))
            specs.append(DiskSpec(c, radius, k, Fraction(d[1], d[0])))
        center_pts = [(t * 7, t * t * 3 + t) for t in ts]
        if k == 1:
            center_pts = [(Fraction(0), Fraction(0))]
        specs.append(DiskSpec((0, 0), radius, k))
        groups = disks + [center_pts]
        for g, spec in zip(groups, specs):
            cert.add(f"disk {spec.center} holds its points", all(spec.contains(p) for p in g))
            cert.add(f"disk {spec.center} is almost collinear", all(spec.in_strip(p) for p in g))
        for i in range(3):
            a, b, c = groups[i], groups[(i + 1) % 3], groups[(i + 2) % 3] + groups[3]
            cert.add(f"D{i + 1} separates D{(i + 1) % 3 + 1} from D{(i + 2) % 3 + 1} and Dq",
                     _separates_or_separable(a, b, c))
        if k >= 2:
            cert.add("centre disk inside the core", in_core(groups[:3], groups[3]))
        pts = [p for g in groups for p in g]
        P = PointSet.from_coords(pts)
        cert.add("general position", is_general_position(P)[0])
        if cert.passed:
            idx, groups_idx = 0, {}
            for name, g in zip(("D1", "D2", "D3", "Dq"), groups):
                groups_idx[name] = tuple(range(idx, idx + len(g)))
                idx += len(g)
            return Construction(P, cert, groups_idx, {"construction": "nover4", "k": k})
        bend /= 2
    raise ConstructionError(f"nover4 certificate failed: {cert.first_failure()}")


# -- 24-point configuration ------------------------------------------------


def lattice_turn(p):
    """Order-3 integer map conjugate to a 120 degree rotation (hexagonal lattice coordinates)."""
    return (-p[1], p[0] - p[1])


def hex_norm(p):
    """Squared length in hexagonal coordinates; invariant under :func:`lattice_turn`."""
    return p[0] * p[0] - p[0] * p[1] + p[1] * p[1]


def _wing(p):
    return [p, lattice_turn(p), lattice_turn(lattice_turn(p))]


def _turned(v, i):
    for _ in range(i):
        v = lattice_turn(v)
    return v


def certify_24(groups: dict, centers: dict) -> ConstructionCertificate:
    """All constraints of the 3-fold 24k-point layout, checked exactly."""
    from .solvers import crf

    cert = ConstructionCertificate()
    A, B, C, D = (centers[x] for x in "ABCD")
    o = orient_xy
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        cert.add(f"<D{i},A{j},B{i}> negative", o(D[i], A[j], B[i]) < 0)
        cert.add(f"<D{i},A{j},C{i}> positive", o(D[i], A[j], C[i]) > 0)
        cert.add(f"<B{i},A{j},A{i}> negative", o(B[i], A[j], A[i]) < 0)
        cert.add(f"<C{i},A{j},A{k}> positive", o(C[i], A[j], A[k]) > 0)
        cert.add(f"<D{i},A{i},B{i}> positive", o(D[i], A[i], B[i]) > 0)
        cert.add(f"<D{i},A{k},C{i}> negative", o(D[i], A[k], C[i]) < 0)
        cert.add(f"<C{i},B{j},A{i}> positive", o(C[i], B[j], A[i]) > 0)
    segs = [(D[i], A[(i + 1) % 3]) for i in range(3)]
    cross = all(
        o(*s, t[0]) * o(*s, t[1]) < 0 and o(*t, s[0]) * o(*t, s[1]) < 0
        for s, t in itertools.combinations(segs, 2)
    )
    cert.add("segments c(D_i)c(A_i+1) pairwise cross", cross)
    cert.add("crf of D and B centres is 2", crf(PointSet.from_coords(D + B)) == 2)
    cert.add("crf of D and C centres is 2", crf(PointSet.from_coords(D + C)) == 2)
    cert.add("wing order A, B, C, D by distance",
             all(hex_norm(A[i]) < hex_norm(B[i]) < hex_norm(C[i]) < hex_norm(D[i]) for i in range(3)))

    Dp = [groups[f"D{i}"] for i in range(3)]
    everything = [p for g in groups.values() for p in g]
    for i in range(3):
        S = groups[f"B{i}"] + groups[f"C{i}"]
        rest = [p for p in everything if p not in S and p not in Dp[i]]
        ok = True
        for p, q in itertools.combinations(S, 2):
            sd = {o(p, q, x) for x in Dp[i]}
            sr = {o(p, q, x) for x in rest}
            if len(sd) != 1 or len(sr) != 1 or sd == sr or 0 in sd | sr:
                ok = False
                break
        cert.add(f"every line through two S{i} points separates D{i} from the rest", ok)
    for i in range(3):
        cert.add(f"D{i} separates D{(i + 1) % 3} from D{(i + 2) % 3}",
                 separates(Dp[i], Dp[(i + 1) % 3], Dp[(i + 2) % 3]))
    inner = [p for x in "ABC" for i in range(3) for p in groups[f"{x}{i}"]]
    cert.add("A, B, C disks inside the core of the D disks", in_core(Dp, inner))
    names = [f"{x}{i}" for x in "ABCD" for i in range(3)]
    cert.add("triples from distinct disks keep the centres' orientation",
             disk_orientations_inherited([groups[n] for n in names],
                                         [centers[n[0]][int(n[1])] for n in names]))
    P = PointSet.from_coords(everything)
    cert.add("general position", is_general_position(P)[0])
    turned = {lattice_turn(p) for p in everything}
    cert.add("3-fold symmetric", turned == set(everything))
    return cert


def build_24_config(k: int = 1) -> Construction:
    """24k points with three wings (A, B, C, D disks) related by a 120 degree turn.

    D disks hold 5k almost-collinear points, the others k each.  Coordinates
    are hexagonal-lattice coordinates, in which the 120 degree rotation is
    the integer map :func:`lattice_turn`; the map to the Euclidean plane is
    linear and orientation preserving, so every certificate is unchanged.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    g = _data("config24.json")
    w = {x: tuple(g["wing"][x]) for x in "ABCD"}
    d_dir = tuple(g["d_direction"])
    d_nrm = tuple(g["d_normal"])
    step = Fraction(g["d_step"])
    bend = Fraction(g["d_bend"])
    centers = {x: _wing(w[x]) for x in "ABCD"}
    small = Fraction(1, 200)
    u0 = (centers["C"][0][0] - centers["B"][0][0], centers["C"][0][1] - centers["B"][0][1])
    for _ in range(20):
        groups = {}
        for i in range(3):
            d, n = _turned(d_dir, i), _turned(d_nrm, i)
            groups[f"D{i}"] = _bent_points(centers["D"][i], d, n, _spread(5 * k, 2), step, bend)
            # B and C points run along the segment joining their centres, bent
            # to opposite sides so no line picks up points from both.  Normals
            # are turned with the wing since the lattice turn is not orthogonal.
            u = (centers["C"][i][0] - centers["B"][i][0], centers["C"][i][1] - centers["B"][i][1])
            un = _turned((-u0[1], u0[0]), i)
            groups[f"B{i}"] = _bent_points(centers["B"][i], u, un, _spread(k, 1), small, bend)
            groups[f"C{i}"] = _bent_points(centers["C"][i], u, un, _spread(k, 1), small, -bend)
            a_dir = _turned((1, 2), i)
            a_nrm = _turned((-2, 1), i)
            groups[f"A{i}"] = _bent_points(centers["A"][i], a_dir, a_nrm, _spread(k, 1), small, bend)
        cert = certify_24(groups, centers)
        if cert.passed:
            order = [f"{x}{i}" for i in range(3) for x in "ABCD"]
            pts, idx = [], {}
            for name in order:
                idx[name] = tuple(range(len(pts), len(pts) + len(groups[name])))
                pts += groups[name]
            P = PointSet.from_coords(pts)
            return Construction(P, cert, idx, {"construction": "config24", "k": k})
        small /= 2
        step /= 2
        bend /= 2
    raise ConstructionError(f"24-point certificate failed: {cert.first_failure()}")


def search_24_wings(rng: random.Random, tries: int = 200000, scale: int = 100):
    """Rejection sampling of wing centres satisfying the orientation bullets.

    This is how the frozen wing in ``data/config24.json`` was found; it is
    kept for re-derivation and returns the first hit or None.
    """
    import math

    def to_hex(u):
        x, y = u
        h2 = y / (math.sqrt(3) / 2)
        return (x + h2 / 2, h2)

    D1 = tuple(round(v * scale) for v in to_hex((0, 10)))
    for _ in range(tries):
        ang = [math.radians(90 + rng.uniform(-60, 60)) for _ in range(3)]
        rad = sorted(rng.uniform(0.5, 6) for _ in range(3))
        A1, B1, C1 = [tuple(round(v * scale) for v in to_hex((r * math.cos(a), r * math.sin(a))))
                      for r, a in zip(rad, ang)]
        centers = {x: _wing(p) for x, p in zip("ABCD", (A1, B1, C1, D1))}
        A, B, C, D = (centers[x] for x in "ABCD")
        o = orient_xy
        ok = all(
            o(D[i], A[(i + 1) % 3], B[i]) < 0 and o(D[i], A[(i + 1) % 3], C[i]) > 0
            and o(B[i], A[(i + 1) % 3], A[i]) < 0 and o(C[i], A[(i + 1) % 3], A[(i + 2) % 3]) > 0
            and o(D[i], A[i], B[i]) > 0 and o(D[i], A[(i + 2) % 3], C[i]) < 0
            and o(C[i], B[(i + 1) % 3], A[i]) > 0
            for i in range(3)
        )
        if ok and hex_norm(A1) < hex_norm(B1) < hex_norm(C1) < hex_norm(D1):
            return A1, B1, C1, D1
    return None


# -- blow-up ---------------------------------------------------------------


def blow_up(P: PointSet, n: int, seed: int = 0, max_halvings: int = 60) -> PointSet:
    """Replace each point by floor(n/m) or ceil(n/m) nearby copies.

    Copies sit in a box of half-width eps around the original; eps is halved
    until every triple of copies of three distinct originals keeps the
    original orientation and the whole set is in general position.
    """
    m = len(P)
    if n < m:
        raise ValueError("n must be at least |P|")
    if not is_general_position(P)[0]:
        raise ValueError("base set is not in general position")
    rng = random.Random(seed)
    counts = [n // m + (1 if i < n % m else 0) for i in range(m)]
    offsets = []
    for c in counts:
        seen = set()
        offs = []
        while len(offs) < c:
            u = (rng.randint(-1000, 1000), rng.randint(-1000, 1000))
            if u not in seen:
                seen.add(u)
                offs.append(u)
        offsets.append(offs)
    xs = sorted({p.x for p in P} | {p.y for p in P})
    gaps = [b - a for a, b in zip(xs, xs[1:]) if b != a]
    eps = (min(gaps) if gaps else Fraction(1)) / 10
    base = [p.xy() for p in P]
    for _ in range(max_halvings):
        clusters = [
            [(x + eps * Fraction(u, 1000), y + eps * Fraction(v, 1000)) for u, v in offsets[i]]
            for i, (x, y) in enumerate(base)
        ]
        Pn = PointSet(Point(x, y, P[i].color) for i, cl in enumerate(clusters) for x, y in cl)
        if disk_orientations_inherited(clusters, base) and is_general_position(Pn)[0]:
            return Pn
        eps /= 2
    raise ConstructionError("blow-up perturbation did not stabilise")


def blow_up_clusters(P: PointSet, n: int) -> list[tuple[int, ...]]:
    """Index ranges of the copies of each original point in ``blow_up(P, n)``."""
    m = len(P)
    counts = [n // m + (1 if i < n % m else 0) for i in range(m)]
    out, at = [], 0
    for c in counts:
        out.append(tuple(range(at, at + c)))
        at += c
    return out


# -- parallel-set upper bound ----------------------------------------------


def halves(line_pts, S) -> bool:
    p, q = line_pts
    sides = [orient_xy(p, q, s) for s in S]
    return 0 not in sides and sides.count(1) == sides.count(-1)


def build_parallel_upper(n: int) -> Construction:
    """n/2 red points on a flat arc and n/2 blue points on a steep arc to their right.

    Every red-pair line passes between the two middle blue points.
    """
    if n < 4 or n % 4:
        raise ValueError("n must be a positive multiple of 4")
    m = n // 2
    X = 10 * m
    flat = Fraction(1, 100 * m * m * X)
    steep = Fraction(1, 1000 * m * m)
    for _ in range(20):
        red = [(Fraction(j), flat * j * j) for j in range(1, m + 1)]
        ys = [Fraction(2 * j + 1, 2) for j in range(m // 2)]
        ys = [-y for y in reversed(ys)] + ys
        blue = [(X + steep * y * y, y) for y in ys]
        cert = ConstructionCertificate()
        cert.add("every red-pair line halves the blue points",
                 all(halves(pq, blue) for pq in itertools.combinations(red, 2)))
        P = PointSet([Point(x, y, Color.BLUE) for x, y in blue] + [Point(x, y, Color.RED) for x, y in red])
        part = Partition2(tuple(range(m)), tuple(range(m, n)))
        cert.add("general position", is_general_position(P)[0])
        cert.add("blue avoids red (1-avoiding)", is_one_avoiding(P, part))
        if cert.passed:
            return Construction(P, cert, {"blue": part.set_a, "red": part.set_b},
                                {"construction": "parallel_upper", "n": n})
        flat /= 2
        steep /= 2
    raise ConstructionError(f"parallel-set construction failed: {cert.first_failure()}")


# -- focal parallel sets of constant size ----------------------------------


def focal_red_heights(n: int, lift=None) -> list[Fraction]:
    """Heights of the horizontal red lines before perturbation.

    y_1 = 1, y_2 = 2, and y_{i+1} = y_i' + lift where y_i' is where the line
    through (1, 1) and (2, y_i) meets x = n.
    """
    lift = Fraction(1, 2) if lift is None else Q(lift)
    ys = [Fraction(1), Fraction(2)]
    while len(ys) < n:
        yi = ys[-1]
        ys.append(1 + (n - 1) * (yi - 1) + lift)
    return ys[:n]


def focal_grid_property(n: int, ys: Sequence[Fraction]) -> bool:
    """Lines through two grid points of the first i reds meet every blue line before red i+1.

    Blue lines are x = 1..n, reds y = ys[i].  "Before" is along the line in
    the direction of increasing height, so the check is that the line reaches
    height ys[i] only to the right of x = n (or the left of x = 1).
    """
    for i in range(1, len(ys) - 1):
        grid = [(Fraction(x), ys[r]) for x in range(1, n + 1) for r in range(i + 1)]
        target = ys[i + 1]
        for (x1, y1), (x2, y2) in itertools.combinations(grid, 2):
            if x1 == x2 or y1 == y2:
                continue  # a line of the arrangement itself
            xt = x1 + (target - y1) * (x2 - x1) / (y2 - y1)
            if 1 <= xt <= n:
                return False
    return True


def build_focal_constant(n: int, tilt=Fraction(1, 10**6)) -> Construction:
    """Blue lines x = i and incrementally placed horizontal red lines, then tilted and turned.

    Returns the dual point set; ``meta["lines"]`` holds the final arrangement.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    ys = focal_red_heights(n)
    grid_ok = focal_grid_property(n, ys)
    c, s = pythagorean_rotation(29, 12)  # about 44.97 degrees
    for _ in range(30):
        lines = []
        # blue x = i becomes a steep line through (i, 0); red y = y_j gets a small slope
        steep = 1 / tilt
        for i in range(1, n + 1):
            a = steep + i * tilt
            lines.append((a, -a * i, Color.BLUE))
        for j, y in enumerate(ys):
            lines.append((j * tilt * tilt, y, Color.RED))
        # rotate clockwise: (x, y) -> (c x + s y, -s x + c y)
        rot = []
        for a, b, col in lines:
            p0, p1 = (Fraction(0), b), (Fraction(1), a + b)
            q0 = (c * p0[0] + s * p0[1], -s * p0[0] + c * p0[1])
            q1 = (c * p1[0] + s * p1[1], -s * p1[0] + c * p1[1])
            rot.append(Line.through(q0, q1, col))
        cert = ConstructionCertificate()
        cert.add("grid lines meet all blues before the next red", grid_ok)
        cert.add("no vertical line after rotation", not any(l.vertical for l in rot))
        if cert.passed:
            P = PointSet(Point(l.a, -l.b, l.color) for l in rot)
            blue = tuple(range(n))
            red = tuple(range(n, 2 * n))
            cert.add("general position", is_general_position(P)[0])
            cert.add("dual blue and red are mutually avoiding",
                     mutually_avoiding([P[i] for i in blue], [P[i] for i in red]))
            cert.add("colours on opposite sides of the y-axis",
                     max(P[i].x for i in red) < 0 < min(P[i].x for i in blue)
                     or max(P[i].x for i in blue) < 0 < min(P[i].x for i in red))
            if cert.passed:
                return Construction(P, cert, {"blue": blue, "red": red},
                                    {"construction": "focal_constant", "n": n, "lines": rot,
                                     "red_heights": ys})
        tilt /= 2
    raise ConstructionError(f"focal construction failed: {cert.first_failure()}")


# -- golden reconstructions ------------------------------------------------


def three_bar_instance():
    """Three red lines and three horizontal blue lines as drawn, plus a primal 3+3 set.

    Returns ``(red_lines, wire_heights, P, partition)``.  The primal set has
    the drawn bar stack as its dual bar stack, wires (0, 0, 1), and a
    bicoloured crossing family of size 2.
    """
    g = _data("three_bar.json")
    red = []
    for (p, q) in g["red_lines_drawn"]:
        red.append(Line.through((Q(p[0]), Q(p[1])), (Q(q[0]), Q(q[1])), Color.RED))
    wires = [Q(y) for y in g["blue_lines_drawn"]]
    pts = [Point(x, y, Color.BLUE) for x, y in g["primal_blue"]] + \
          [Point(x, y, Color.RED) for x, y in g["primal_red"]]
    P = PointSet(pts)
    return red, wires, P, Partition2((0, 1, 2), (3, 4, 5))


def spoke_demo_arrangement():
    """The eight drawn lines (six bold) and the drawn path, in the turned frame.

    Returns ``(lines, bold_ids, path_points)``.  The drawing's 35 degree turn
    is replaced by the Pythagorean angle 2*atan(6/19), about 35.05 degrees.
    """
    g = _data("spoke_demo.json")
    c, s = pythagorean_rotation(19, 6)

    def turn(p):
        x, y = Q(p[0]), Q(p[1])
        return (c * x - s * y, s * x + c * y)

    lines = [Line.through(turn(p), turn(q)) for p, q in g["segments"]]
    path = [turn(p) for p in g["path"]]
    return lines, tuple(g["bold"]), path


def build_no_semialternating() -> Construction:
    """11 blue and 11 red lines admitting no semialternating pseudoline.

    The slopes and intercepts are frozen golden data; the certificate runs
    the exhaustive search over all 22 lines.
    """
    from .arrangements import LineArrangement, Mode, full_path_search

    g = _data("no_semialternating.json")
    lines = [Line(Q(a), Q(b), Color.BLUE) for a, b in g["blue"]] + \
            [Line(Q(a), Q(b), Color.RED) for a, b in g["red"]]
    cert = ConstructionCertificate()
    blue, red = lines[:11], lines[11:]
    cert.add("11 blue and 11 red lines", len(blue) == 11 and len(red) == 11)
    cert.add("every blue slope exceeds every red slope", min(l.a for l in blue) > max(l.a for l in red))
    spread = max(l.a for l in blue) - min(l.a for l in blue)
    cert.add("blue lines almost parallel", spread * 100 < min(l.a for l in blue) - max(l.a for l in red))
    P = PointSet(Point(l.a, -l.b, l.color) for l in lines)
    cert.add("dual set is 1-avoiding", is_one_avoiding(P, Partition2(tuple(range(11)), tuple(range(11, 22)))))
    arr = LineArrangement(lines)
    cert.add("no semialternating pseudoline crosses all 22 lines", full_path_search(arr, Mode.SEMI) is None)
    if not cert.passed:
        raise ConstructionError(f"reconstruction failed: {cert.first_failure()}")
    return Construction(P, cert, {"blue": tuple(range(11)), "red": tuple(range(11, 22))},
                        {"construction": "no_semialternating", "lines": lines})


def replicate_lines(lines: Sequence[Line], m: int, gap=Fraction(1, 10**6)) -> list[Line]:
    """Each line replaced by m almost parallel copies of the same colour."""
    out = []
    for l in lines:
        for j in range(m):
            out.append(Line(l.a + j * gap * gap, l.b + j * gap, l.color))
    return out


BUILDERS: dict[str, Callable] = {
    "nover4": build_nover4,
    "config24": build_24_config,
    "parallel_upper": build_parallel_upper,
    "focal_constant": build_focal_constant,
    "no_semialternating": build_no_semialternating,
}
