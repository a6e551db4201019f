import math
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crossfam import _clique_py, _kernels
from crossfam.geom import Color, Point, PointSet, Segment
from crossfam.instances import random_one_avoiding, random_points
from crossfam.separation import Partition2
from crossfam.solvers import (
    Family, Relation, SegmentFilter, crf, longest_monotone_subsequence, max_clique,
    max_pairwise_family, sqrt_family_one_avoiding, verify_family,
)
from oracles import max_crossing_bruteforce


def convex(n):
    # points on the parabola y = x^2 are in convex position
    return PointSet.from_coords([(i, i * i) for i in range(n)])


def test_convex_crf_small():
    assert crf(convex(4)) == 2
    assert crf(convex(6)) == 3


def test_relation_parse():
    assert Relation.parse("stabbing") is Relation.STAB_OR_CROSS
    assert Relation.parse("Crossing") is Relation.CROSSING


def test_random_sets_match_bruteforce():
    rng = random.Random(7)
    for n in (5, 6, 7, 8):
        for _ in range(6):
            P = random_points(n, rng, box=1000)
            assert crf(P) == max_crossing_bruteforce([p.xy() for p in P])


def test_verify_family_detects_bad_pair():
    P = convex(4)
    assert verify_family(Family((Segment(0, 2), Segment(1, 3)), Relation.CROSSING, P))[0]
    ok, bad = verify_family(Family((Segment(0, 1), Segment(2, 3)), Relation.CROSSING, P))
    assert not ok and bad == (Segment(0, 1), Segment(2, 3))
    assert not verify_family(Family((Segment(0, 1), Segment(1, 3)), Relation.CROSSING, P))[0]


def test_parallel_and_stabbing_relations():
    P = convex(6)
    par = max_pairwise_family(P, Relation.PARALLEL)
    assert par.complete and verify_family(par.family)[0]
    stab = max_pairwise_family(P, Relation.STAB_OR_CROSS)
    assert stab.size == 3 and verify_family(stab.family)[0]


def test_bicolored_filter():
    P = PointSet([Point(0, 0, "blue"), Point(0, 1, "blue"), Point(1, 1, "red"), Point(1, 0, "red")])
    res = max_pairwise_family(P, Relation.CROSSING, SegmentFilter.BICOLORED)
    assert res.size == 2
    assert all({P[s.i].color, P[s.j].color} == {Color.BLUE, Color.RED} for s in res.family.segments)


def test_collinear_rejected():
    with pytest.raises(ValueError):
        max_pairwise_family(PointSet.from_coords([(0, 0), (1, 1), (2, 2), (0, 5)]))


def test_timeout_reports_incomplete():
    rng = random.Random(1)
    n = 150
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.6:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    clique, complete, nodes = max_clique(adj, timeout_s=0.0)
    assert not complete
    assert all(adj[u] >> v & 1 for u in clique for v in clique if u != v)


@given(st.lists(st.integers(0, 30), max_size=14))
def test_lms_is_optimal(seq):
    for inc in (True, False):
        pos = longest_monotone_subsequence(seq, inc)
        vals = [seq[p] for p in pos]
        assert pos == sorted(pos)
        assert all((b > a) if inc else (b < a) for a, b in zip(vals, vals[1:]))
        # O(n^2) dynamic programme as the reference
        best = [1] * len(seq)
        for i in range(len(seq)):
            for j in range(i):
                if (seq[j] < seq[i]) if inc else (seq[j] > seq[i]):
                    best[i] = max(best[i], best[j] + 1)
        assert len(pos) == max(best, default=0)


@given(st.integers(0, 2**20), st.integers(6, 14))
@settings(max_examples=40)
def test_kernels_agree(seed, n):
    rng = random.Random(seed)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    order = sorted(range(n), key=lambda v: (-bin(adj[v]).count("1"), v))
    pos = {v: k for k, v in enumerate(order)}
    radj = [sum(1 << pos[u] for u in range(n) if adj[v] >> u & 1) for v in order]
    a = _clique_py.clique_search(radj)
    b = _kernels.clique_search(radj)
    assert len(a[0]) == len(b[0])
    # exhaustive check of the clique number
    best = 0
    for mask in range(1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        if len(vs) > best and all(radj[u] >> v & 1 for u in vs for v in vs if u != v):
            best = len(vs)
    assert len(a[0]) == best


def test_max_clique_lower_witness_kept():
    adj = [0b110, 0b101, 0b011]
    clique, complete, _ = max_clique(adj, lower_witness=(0, 1, 2))
    assert complete and sorted(clique) == [0, 1, 2]


def test_pure_backend_selected_by_env():
    code = "from crossfam import _kernels; print(_kernels.BACKEND)"
    env = dict(os.environ, CROSSFAM_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_sqrt_family_small_cases():
    rng = random.Random(17)
    for n in (3, 4, 9, 16):
        for _ in range(5):
            P, part = random_one_avoiding(n, rng)
            F = sqrt_family_one_avoiding(P, part)
            assert len(F) >= math.isqrt(n - 1) + 1
            assert verify_family(F)[0]


def test_sqrt_family_two_per_side_can_fall_short():
    # two points per side: the middle-row argument can return a single segment
    # although two crossing segments exist
    coords = [
        ("76200000000261/26000000000", "1016562500000783/32500000000", "blue"),
        ("6880200000003/650000000", "22822812500009/812500000", "blue"),
        ("-47783/13", "134224/13", "red"),
        ("-35943/13", "123939/13", "red"),
    ]
    P = PointSet(Point(Fraction(x), Fraction(y), c) for x, y, c in coords)
    part = Partition2((0, 1), (2, 3))
    assert len(sqrt_family_one_avoiding(P, part)) == 1
    assert crf(P) == 2
