"""Deterministic SVG drawings of point sets, families, arrangements and bar stacks.

Floats appear only here, when exact coordinates are mapped to the canvas.
"""
from __future__ import annotations

from typing import Sequence

from .geom import Color, PointSet

W = H = 480
PAD = 24
FILL = {Color.RED: "#c0392b", Color.BLUE: "#2e6bd1", Color.NONE: "#222222"}


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Canvas:
    def __init__(self, xs: Sequence[float], ys: Sequence[float]):
        x0, x1 = (min(xs), max(xs)) if xs else (0.0, 1.0)
        y0, y1 = (min(ys), max(ys)) if ys else (0.0, 1.0)
        span = max(x1 - x0, y1 - y0) or 1.0
        self.x0, self.y0, self.s = x0, y0, (W - 2 * PAD) / span
        self.items: list[str] = []

    def xy(self, x, y) -> tuple[str, str]:
        return _fmt(PAD + (float(x) - self.x0) * self.s), _fmt(H - PAD - (float(y) - self.y0) * self.s)

    def add(self, s: str):
        self.items.append(s)

    def text(self) -> str:
        body = "\n".join(self.items)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
                f'viewBox="0 0 {W} {H}">\n<rect width="{W}" height="{H}" fill="white"/>\n{body}\n</svg>\n')


def _points(c: _Canvas, P: PointSet):
    for i, p in enumerate(P):
        x, y = c.xy(p.x, p.y)
        c.add(f'<circle class="point" id="p{i}" cx="{x}" cy="{y}" r="3.5" fill="{FILL[p.color]}"/>')


def render_points(P: PointSet, family=None, groups: dict | None = None) -> str:
    """Points, optional group disks (dashed circles) and family segments."""
    c = _Canvas([float(p.x) for p in P], [float(p.y) for p in P])
    for name, idx in sorted((groups or {}).items()):
        xs = [float(P[i].x) for i in idx]
        ys = [float(P[i].y) for i in idx]
        cx, cy = sum(xs) / len(xs), sum(ys) / len(ys)
        r = max([((x - cx) ** 2 + (y - cy) ** 2) ** 0.5 for x, y in zip(xs, ys)] + [0.0]) * c.s + 10
        x, y = c.xy(cx, cy)
        c.add(f'<circle class="disk" id="{name}" cx="{x}" cy="{y}" r="{_fmt(r)}" '
              f'fill="none" stroke="#888" stroke-dasharray="4 3"/>')
    for s in (family.segments if family is not None else ()):
        (x1, y1), (x2, y2) = c.xy(P[s[0]].x, P[s[0]].y), c.xy(P[s[1]].x, P[s[1]].y)
        c.add(f'<line class="segment" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#444" stroke-width="1.5"/>')
    _points(c, P)
    return c.text()


def render_arrangement(lines, path_points: Sequence[tuple] = (), box=None) -> str:
    """Lines clipped to a box around their vertices, plus an optional cell path."""
    if box is None:
        vs = []
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                v = lines[i].intersect(lines[j])
                if v is not None:
                    vs.append((float(v[0]), float(v[1])))
        vs += [(float(x), float(y)) for x, y in path_points]
        if not vs:
            vs = [(-1.0, -1.0), (1.0, 1.0)]
        xs, ys = [v[0] for v in vs], [v[1] for v in vs]
        m = max(max(xs) - min(xs), max(ys) - min(ys), 1.0) * 0.15
        box = (min(xs) - m, min(ys) - m, max(xs) + m, max(ys) + m)
    x0, y0, x1, y1 = box
    c = _Canvas([x0, x1], [y0, y1])
    for k, l in enumerate(lines):
        if l.vertical:
            a, b = (float(l.c), y0), (float(l.c), y1)
        else:
            a, b = (x0, float(l.a) * x0 + float(l.b)), (x1, float(l.a) * x1 + float(l.b))
        (u1, v1), (u2, v2) = c.xy(*a), c.xy(*b)
        c.add(f'<line class="line" id="l{k}" x1="{u1}" y1="{v1}" x2="{u2}" y2="{v2}" '
              f'stroke="{FILL[l.color]}" stroke-width="1.2"/>')
    if path_points:
        pts = " ".join(",".join(c.xy(x, y)) for x, y in path_points)
        c.add(f'<polyline class="path" points="{pts}" fill="none" stroke="#27ae60" stroke-width="2.5"/>')
    c.add(f'<clipPath id="box"><rect x="{PAD}" y="{PAD}" width="{W - 2 * PAD}" height="{H - 2 * PAD}"/></clipPath>')
    return c.text()


def witness_points(lines, w) -> list[tuple]:
    """Sample points of the cells a witness visits (its first cell taken in the witness' subarrangement)."""
    from .arrangements import cell_point

    pts = []
    for cell in w.cells():
        sub = [lines[i] for i in w.order]
        p = cell_point(sub, list(cell))
        if p is not None:
            pts.append(p)
    return pts


def render_barstack(B, wires: Sequence[int] = (), marbles: dict | None = None) -> str:
    """Bars as horizontal segments, wires as dashed levels, marbles on their wire slots.

    ``marbles`` maps a pillar to a wire slot index (position in ``wires``).
    """
    n, l = B.n, B.height
    c = _Canvas([0.0, n + 1.0], [0.0, l + 1.0])
    for p in range(1, n + 1):
        (x, y1), (_, y2) = c.xy(p, 0), c.xy(p, l + 1)
        c.add(f'<line class="pillar" x1="{x}" y1="{y1}" x2="{x}" y2="{y2}" stroke="#bbb"/>')
    for h, (a, b) in enumerate(B.bars, start=1):
        (u1, v), (u2, _) = c.xy(a, h), c.xy(b, h)
        c.add(f'<line class="bar" x1="{u1}" y1="{v}" x2="{u2}" y2="{v}" stroke="#c0392b" stroke-width="3"/>')
    for k, w in enumerate(wires):
        (u1, v), (u2, _) = c.xy(0.5, w + 0.5), c.xy(n + 0.5, w + 0.5)
        # stagger repeated levels so every wire stays visible
        dv = _fmt(float(v) - 4 * sum(1 for x in wires[:k] if x == w))
        c.add(f'<line class="wire" x1="{u1}" y1="{dv}" x2="{u2}" y2="{dv}" stroke="#2e6bd1" stroke-dasharray="5 3"/>')
    for pillar, slot in sorted((marbles or {}).items()):
        w = wires[slot]
        x, v = c.xy(pillar, w + 0.5)
        dv = _fmt(float(v) - 4 * sum(1 for x2 in wires[:slot] if x2 == w))
        c.add(f'<circle class="marble" cx="{x}" cy="{dv}" r="5" fill="#222"/>')
    return c.text()


def count_elements(svg: str, cls: str) -> int:
    return svg.count(f'class="{cls}"')
