"""Seeded random instance generators used by tests, benchmarks and the CLI."""
from __future__ import annotations

import random
from fractions import Fraction

from .duality import pythagorean_rotation
from .geom import Color, Point, PointSet, is_general_position
from .separation import Partition2

ROTATIONS = [(1, 0), (2, 1), (3, 2), (4, 1), (5, 2), (7, 4), (3, 1), (1, 2), (1, 3), (2, 5)]


def _rotate(coords, m, n):
    if (m, n) == (1, 0):
        return coords
    c, s = pythagorean_rotation(m, n)
    return [(c * x - s * y, s * x + c * y) for x, y in coords]


def random_points(n: int, rng: random.Random, box: int = 10**6, color=Color.NONE) -> PointSet:
    while True:
        seen = set()
        coords = []
        while len(coords) < n:
            p = (rng.randint(0, box), rng.randint(0, box))
            if p not in seen:
                seen.add(p)
                coords.append(p)
        P = PointSet(Point(x, y, color) for x, y in coords)
        if is_general_position(P)[0]:
            return P


def random_colored(n_blue: int, n_red: int, rng: random.Random, box: int = 10**6) -> PointSet:
    P = random_points(n_blue + n_red, rng, box)
    return PointSet(
        p.recolor(Color.BLUE if i < n_blue else Color.RED) for i, p in enumerate(P)
    )


def random_separable(nb: int, nr: int, rng: random.Random, box: int = 10**4):
    """Two sets on opposite sides of a random line, blue first.  Returns (P, Partition2)."""
    while True:
        rot = rng.choice(ROTATIONS)
        gap = rng.randint(1, box // 4)
        blue = [(rng.randint(gap, box), rng.randint(0, box)) for _ in range(nb)]
        red = [(-rng.randint(gap, box), rng.randint(0, box)) for _ in range(nr)]
        coords = _rotate(blue + red, *rot)
        if len(set(coords)) < len(coords):
            continue
        cols = [Color.BLUE] * nb + [Color.RED] * nr
        P = PointSet(Point(x, y, c) for (x, y), c in zip(coords, cols))
        if is_general_position(P)[0]:
            return P, Partition2(tuple(range(nb)), tuple(range(nb, nb + nr)))


def random_one_avoiding(n: int, rng: random.Random, m: int | None = None, spread: int = 10**4):
    """Blue set (first ``n`` indices) avoiding a red set of ``m`` points.

    Blue points hug a vertical line far to the right with horizontal jitter
    far smaller than their vertical gaps, so every blue-blue line is steep
    enough to miss the red box.  A random rational rotation follows.
    """
    m = n if m is None else m
    while True:
        rot = rng.choice(ROTATIONS)
        H = spread
        ys = rng.sample(range(0, H + 1), n)
        X = 3 * H
        blue = [(X + Fraction(rng.randint(0, 1000), 10**6 * H), Fraction(y)) for y in ys]
        red = [(Fraction(rng.randint(0, H)), Fraction(rng.randint(0, H))) for _ in range(m)]
        coords = _rotate(blue + red, *rot)
        if len(set(coords)) < len(coords):
            continue
        cols = [Color.BLUE] * n + [Color.RED] * m
        P = PointSet(Point(x, y, c) for (x, y), c in zip(coords, cols))
        if not is_general_position(P)[0]:
            continue
        part = Partition2(tuple(range(n)), tuple(range(n, n + m)))
        return P, part


def random_one_avoiding_generic(n: int, rng: random.Random, tries: int = 2000):
    """Rejection-sampled 1-avoiding sets with less rigid blue placement (small n only)."""
    from .separation import is_one_avoiding

    for _ in range(tries):
        H = 1000
        bx = rng.randint(2 * H, 20 * H)
        blue = [(bx + rng.randint(-H // 4, H // 4), rng.randint(-50 * H, 50 * H)) for _ in range(n)]
        red = [(rng.randint(0, H), rng.randint(0, H)) for _ in range(n)]
        coords = _rotate(blue + red, *rng.choice(ROTATIONS))
        if len(set(coords)) < len(coords):
            continue
        cols = [Color.BLUE] * n + [Color.RED] * n
        P = PointSet(Point(x, y, c) for (x, y), c in zip(coords, cols))
        if not is_general_position(P)[0]:
            continue
        part = Partition2(tuple(range(n)), tuple(range(n, 2 * n)))
        if is_one_avoiding(P, part):
            return P, part
    raise RuntimeError("rejection sampling for a 1-avoiding set failed")


def random_barstack(n: int, l: int, rng: random.Random):
    """``l`` bars with distinct (a, b) intervals on ``n`` pillars, heights 1..l."""
    from itertools import combinations

    pairs = list(combinations(range(1, n + 1), 2))
    if l > len(pairs):
        raise ValueError("more bars than distinct intervals")
    return [tuple(p) for p in rng.sample(pairs, l)]
