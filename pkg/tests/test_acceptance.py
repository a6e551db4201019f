"""End-to-end acceptance checks, one group per criterion.

Run ``pytest tests/test_acceptance.py`` to get the per-criterion PASS/FAIL
summary at the end of the session output.
"""
import math
import random
import time
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from crossfam.arrangements import (
    LineArrangement, Mode, decompose_ssORps, dual_arrangement, full_path_search, max_parallel_set,
    max_spoke_set, semi_to_M, sub_path_search, validate_witness,
)
from crossfam.barstacks import (
    BarStack, bar_observation_wires, bar_representation, build_kn_barstack, dual_bar_stack,
    full_marbling_wires, max_side_compatible, ordered_half_subset, validate_side_compatible,
)
from crossfam.constructions import (
    blow_up, build_24_config, build_no_semialternating, build_nover4, build_parallel_upper, spoke_demo_arrangement,
    three_bar_instance,
)
from crossfam.duality import Line, rotate90_transform, straddle_frame
from crossfam.geom import PairRelation, Point, PointSet, classify_pair
from crossfam.instances import (
    random_barstack, random_one_avoiding, random_one_avoiding_generic, random_points, random_separable,
)
from crossfam.matchings import stabbing_family_general
from crossfam.separation import is_one_avoiding, rank_condition
from crossfam.solvers import (
    Relation, SegmentFilter, can_be_crossed, crf, max_pairwise_family, sqrt_family_one_avoiding, verify_family,
)
from crossfam.tables import build_theta_n2_sequence, find_distinct_diagonal, no_pair_flips_twice
from oracles import max_crossing_bruteforce


def _detail(record_property, text):
    record_property("detail", text)


# -- 1, 2: constructions with small crossing families ----------------------


@pytest.mark.criterion(1)
def test_c01_config24(record_property):
    t0 = time.monotonic()
    c = build_24_config(1)
    assert c.certificate.passed, c.certificate.first_failure()
    r = max_pairwise_family(c.points, Relation.CROSSING, timeout_s=600)
    assert r.complete
    assert r.size == 5
    assert verify_family(r.family)[0]
    assert time.monotonic() - t0 <= 600
    _detail(record_property, f"{len(c.certificate.checks)} checks, crf = 5")


@pytest.mark.criterion(2)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_c02_nover4(k, record_property):
    t0 = time.monotonic()
    c = build_nover4(k)
    assert c.certificate.passed, c.certificate.first_failure()
    r = max_pairwise_family(c.points, timeout_s=60)
    assert r.complete and r.size <= k
    assert time.monotonic() - t0 <= 60
    _detail(record_property, f"k={k}: crf = {r.size}")


# -- 3: blow-up growth -----------------------------------------------------


@pytest.mark.criterion(3)
@pytest.mark.xfail(strict=True, raises=AssertionError,
                   reason="pentagram-shaped bases with f = 2 blow up to families of size 7 > 6")
def test_c03_blow_up_growth(record_property):
    t0 = time.monotonic()
    rng = random.Random(3)
    seen = 0
    over = []
    while seen < 50:
        m = rng.randint(4, 6)
        P = random_points(m, rng, box=1000)
        f = max_crossing_bruteforce([(p.x, p.y) for p in P])
        if f not in (2, 3):
            continue
        seen += 1
        big = blow_up(P, 3 * m, seed=seen)
        assert len(big) == 3 * m
        g = crf(big, timeout_s=None)
        if g > 3 * f:
            over.append(f"{m} points, f={f}, crf={g}")
    assert time.monotonic() - t0 <= 300
    _detail(record_property, f"{len(over)} of 50 base sets exceed 3f" + (f", e.g. {over[0]}" if over else ""))
    assert not over


# -- 4: square-root families -----------------------------------------------


@pytest.mark.criterion(4)
def test_c04_sqrt_families(record_property):
    t0 = time.monotonic()
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(3, 100)
        P, part = random_one_avoiding(n, rng)
        F = sqrt_family_one_avoiding(P, part)
        assert len(F) >= math.isqrt(n - 1) + 1  # ceil(sqrt(n))
        assert verify_family(F)[0]
    assert time.monotonic() - t0 <= 60
    _detail(record_property, f"100 sets in {time.monotonic() - t0:.1f}s")


# -- 5: rank condition -----------------------------------------------------


@pytest.mark.criterion(5)
def test_c05_rank_condition_equivalence(record_property):
    rng = random.Random(5)
    yes = 0
    for _ in range(200):
        s = rng.randint(2, 7)
        P, part = random_separable(s, s, rng)
        A = [P[i] for i in part.set_a]
        B = [P[i] for i in part.set_b]
        has_labeling = rank_condition(A, B) is not None
        assert has_labeling == (can_be_crossed(A, B) is not None)
        yes += has_labeling
    _detail(record_property, f"200 pairs, {yes} crossable")


# -- 6: spoke sets versus parallel sets under the quarter turn --------------


def _c6_instances():
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randint(3, 8)
        P, part = random_one_avoiding_generic(n, rng)
        P = straddle_frame(P, part)
        yield P, part, rotate90_transform(P)


@pytest.mark.criterion(6)
def test_c06_transform_keeps_one_avoiding():
    for P, part, Q in _c6_instances():
        assert is_one_avoiding(P, part)
        assert is_one_avoiding(Q, part)


@pytest.mark.criterion(6)
@pytest.mark.xfail(strict=True, raises=AssertionError,
                   reason="spoke sets whose lines are not two-coloured can outgrow parallel sets")
def test_c06_spoke_equals_parallel(record_property):
    t0 = time.monotonic()
    for i, (P, part, Q) in enumerate(_c6_instances()):
        s = max_spoke_set(P, cap=16)
        p = max_parallel_set(Q, cap=16)
        assert s.complete and p.complete
        if s.size != p.size:
            _detail(record_property, f"instance {i}: spoke(P) = {s.size}, parallel(P') = {p.size}")
        assert s.size == p.size
        s2 = max_spoke_set(Q, cap=16)
        p2 = max_parallel_set(P, cap=16)
        assert s2.complete and p2.complete
        if s2.size != p2.size:
            _detail(record_property, f"instance {i}: spoke(P') = {s2.size}, parallel(P) = {p2.size}")
        assert s2.size == p2.size
    assert time.monotonic() - t0 <= 1800


def test_c06_frozen_counterexample(data_file):
    from crossfam.io import parse_point_set
    from crossfam.arrangements import is_spoke_set

    doc = data_file("spoke_parallel_counterexample.json")
    P, _ = parse_point_set(doc["original"])
    Q, _ = parse_point_set(doc["turned"])
    assert Q == rotate90_transform(P)
    s = max_spoke_set(P, cap=16)
    assert s.size == 6 and is_spoke_set(P, s.lines)
    assert max_parallel_set(Q, cap=16).size == 5
    assert max_spoke_set(P, cap=16, bicolored=True).size == 5


def test_c06_bicoloured_spoke_sets_match(record_property):
    # the restricted equality on the first instances of the criterion's sample
    for i, (P, part, Q) in enumerate(_c6_instances()):
        if i == 12:
            break
        assert max_spoke_set(P, cap=16, bicolored=True).size == max_parallel_set(Q, cap=16).size


# -- 7: parallel-set upper construction ------------------------------------


@pytest.mark.criterion(7)
@pytest.mark.parametrize("n", [8, 12, 16])
def test_c07_parallel_upper(n, record_property):
    c = build_parallel_upper(n)
    assert c.certificate.passed, c.certificate.first_failure()
    r = max_parallel_set(c.points, cap=16)
    assert r.complete
    assert r.size <= n // 4 + 1
    _detail(record_property, f"n={n}: max parallel set {r.size}")


# -- 8: stabbing families --------------------------------------------------


@pytest.mark.criterion(8)
def test_c08_stabbing_families(record_property):
    rng = random.Random(8)
    worst = 0.0
    for _ in range(100):
        n = rng.randint(1, 100)
        P = random_points(2 * n, rng)
        t0 = time.monotonic()
        F = stabbing_family_general(P).family
        worst = max(worst, time.monotonic() - t0)
        assert len(F) == n
        for s, t in combinations(F.segments, 2):
            assert classify_pair(s, t, P) not in (PairRelation.PARALLEL, PairRelation.DEGENERATE)
        assert worst <= 10
    _detail(record_property, f"slowest {worst:.2f}s")


@pytest.mark.criterion(8)
def test_c08_stabbing_upper_bound():
    rng = random.Random(80)
    for _ in range(50):
        n = rng.randint(1, 5)
        P = random_points(2 * n, rng, box=1000)
        r = max_pairwise_family(P, Relation.STAB_OR_CROSS, timeout_s=None)
        assert r.complete and r.size == n


# -- 9, 10: marblings on B_{n,n} -------------------------------------------


@pytest.mark.criterion(9)
def test_c09_full_marbling(record_property):
    def check(B):
        fm = full_marbling_wires(B)
        assert len(fm.W) == B.n and len(set(fm.W)) == B.n
        assert validate_side_compatible(B, fm.W, range(1, B.n + 1), fm.f)[0]

    pairs = list(combinations(range(1, 4), 2))
    stacks = list(permutations(pairs, 3))
    for bars in stacks:
        check(BarStack(3, bars))
    rng = random.Random(9)
    for _ in range(500):
        n = rng.randint(3, 12)
        check(BarStack(n, tuple(random_barstack(n, n, rng))))
    _detail(record_property, f"{len(stacks)} stacks for n=3, 500 random")


@pytest.mark.criterion(10)
def test_c10_ordered_half(record_property):
    rng = random.Random(10)
    for _ in range(500):
        n = rng.randint(3, 50)
        B = BarStack(n, tuple(random_barstack(n, n, rng)))
        oh = ordered_half_subset(B)
        assert len(oh.C) >= n // 2
        assert validate_side_compatible(B, oh.W, oh.C, oh.f, ordered=True)[0]


# -- 11-13: side-compatible subsets ----------------------------------------


@pytest.mark.criterion(11)
def test_c11_bar_observation(record_property):
    rng = random.Random(11)
    done = 0
    while done < 60:
        n = rng.choice([2, 4, 6, 8])
        lines = [Line(s, rng.randint(-50, 50)) for s in rng.sample(range(-30, 31), n)]
        try:
            # resample arrangements with concurrent lines or two vertices at one height
            LineArrangement(lines)
            B = bar_representation(lines)
        except ValueError:
            continue
        done += 1
        r = max_side_compatible(B, bar_observation_wires(n), timeout_s=None)
        assert r.complete
        assert r.size <= n // 2
    _detail(record_property, "60 arrangements")


@pytest.mark.criterion(12)
def test_c12_three_bar_instance(record_property):
    B, W = BarStack(3, ((2, 3), (1, 3), (1, 2))), (0, 0, 1)
    _, _, P, part = three_bar_instance()
    D = dual_bar_stack(P, part)
    assert (D.stack, D.W) == (B, W)
    assert max_side_compatible(B, W).size == 3
    assert max_side_compatible(B, W, ordered=True).size == 2
    r = max_pairwise_family(P, Relation.CROSSING, SegmentFilter.BICOLORED, timeout_s=None)
    assert r.size == 2


@pytest.mark.criterion(13)
@pytest.mark.parametrize("n", [4, 6])
def test_c13_kn_barstack(n, record_property):
    B, W = build_kn_barstack(n)
    r = max_side_compatible(B, W, timeout_s=None)
    assert r.complete
    assert r.size <= n - 1
    _detail(record_property, f"n={n}: {r.size}")


# -- 14: tables without a distinct diagonal --------------------------------


@pytest.mark.criterion(14)
@pytest.mark.parametrize("n", [4, 6, 8])
def test_c14_theta_sequence(n):
    rows = build_theta_n2_sequence(n)
    assert no_pair_flips_twice(rows)
    assert find_distinct_diagonal(rows, n) is None


# -- 15, 16: arrangements without long paths -------------------------------


@pytest.mark.criterion(15)
def test_c15_no_semialternating(record_property):
    t0 = time.monotonic()
    c = build_no_semialternating()
    lines = c.meta["lines"]
    assert len(lines) == 22
    assert full_path_search(LineArrangement(lines), Mode.SEMI) is None
    assert c.certificate.passed
    assert time.monotonic() - t0 <= 1800


@pytest.mark.criterion(16)
def test_c16_spoke_demo():
    lines, bold, _ = spoke_demo_arrangement()
    assert len(lines) == 8 and len(bold) == 6
    assert full_path_search(LineArrangement(lines), Mode.SPOKE) is None
    sub = [lines[i] for i in bold]
    w = full_path_search(LineArrangement(sub), Mode.SPOKE)
    assert w is not None and len(w) == 6
    # a spoke path is a line-monotone AB-semialternating path
    assert validate_witness(sub, w, Mode.SPOKE)[0]


# -- 17: decompositions --------------------------------------------------


@pytest.mark.criterion(17)
def test_c17_decompositions(record_property):
    m_seen = s_seen = 0
    for P, part, Q in _c6_instances():
        for S in (P, Q):
            arr = dual_arrangement(S)
            lines = arr.lines
            m = sub_path_search(arr, Mode.MSEMI).witness
            if m is not None and len(m):
                m_seen += 1
                assert validate_witness(lines, m, Mode.MSEMI)[0]
                d = decompose_ssORps(m)
                assert len(d.parallel_part) + len(d.spoke_part) == len(m)
                if len(d.parallel_part):
                    assert validate_witness(lines, d.parallel_part, Mode.PARALLEL)[0]
                if len(d.spoke_part):
                    assert validate_witness(lines, d.spoke_part, Mode.BISPOKE)[0]
            s = sub_path_search(arr, Mode.SEMI).witness
            if s is not None and len(s):
                s_seen += 1
                sm = semi_to_M(s)
                assert 2 * len(sm) >= len(s)
                if len(sm):
                    assert validate_witness(lines, sm, Mode.MSEMI)[0]
    assert m_seen and s_seen
    _detail(record_property, f"{m_seen} M-semialternating and {s_seen} semialternating witnesses")


# -- 18: convex position ---------------------------------------------------


@pytest.mark.criterion(18)
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_c18_convex(k):
    P = PointSet(Point(Fraction(i), Fraction(i * i)) for i in range(2 * k))
    assert crf(P, timeout_s=None) == k
