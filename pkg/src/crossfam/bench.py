"""Timing of the compiled clique kernel against the pure-Python one."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import _clique_py
from .geom import PointSet
from .instances import random_points
from .solvers import Relation, candidate_segments, compatibility_graph


@dataclass(frozen=True)
class BenchRow:
    name: str
    vertices: int
    clique: int
    python_s: float
    compiled_s: float | None

    @property
    def speedup(self) -> float | None:
        if self.compiled_s is None or self.compiled_s == 0:
            return None
        return self.python_s / self.compiled_s


def _graph(P: PointSet, relation=Relation.CROSSING):
    segs = candidate_segments(P)
    adj = compatibility_graph(P, segs, relation)
    order = sorted(range(len(adj)), key=lambda v: (-bin(adj[v]).count("1"), v))
    pos = {v: i for i, v in enumerate(order)}
    radj = []
    for v in order:
        m = 0
        for u in range(len(adj)):
            if adj[v] >> u & 1:
                m |= 1 << pos[u]
        radj.append(m)
    return radj


def _time(fn, adj, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(adj, 0, None, None)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return out, best


def default_cases(seed: int = 0) -> list[tuple[str, PointSet]]:
    from .constructions import build_24_config

    rng = random.Random(seed)
    cases = [(f"random-{n}", random_points(n, rng)) for n in (14, 22, 30)]
    cases.append(("config24", build_24_config(1).points))
    return cases


def run(cases=None, repeat: int = 3, seed: int = 0) -> list[BenchRow]:
    try:
        from . import _clique_ext
    except ImportError:
        _clique_ext = None
    rows = []
    for name, P in cases or default_cases(seed):
        adj = _graph(P)
        (bp, _, _), tp = _time(_clique_py.clique_search, adj, repeat)
        tc = None
        if _clique_ext is not None:
            (bc, _, _), tc = _time(_clique_ext.clique_search, adj, repeat)
            if sorted(bc) != sorted(bp):
                raise AssertionError(f"{name}: kernels disagree")
        rows.append(BenchRow(name, len(adj), len(bp), tp, tc))
    return rows


def format_rows(rows: list[BenchRow]) -> str:
    lines = [f"{'case':<12}{'|V|':>6}{'clique':>8}{'python s':>12}{'cython s':>12}{'speedup':>9}"]
    for r in rows:
        c = "n/a" if r.compiled_s is None else f"{r.compiled_s:.4f}"
        s = "n/a" if r.speedup is None else f"{r.speedup:.1f}x"
        lines.append(f"{r.name:<12}{r.vertices:>6}{r.clique:>8}{r.python_s:>12.4f}{c:>12}{s:>9}")
    return "\n".join(lines)


if __name__ == "__main__":
    print(format_rows(run()))
