import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from crossfam.barstacks import (
    BarStack, bar_observation_wires, bar_representation, build_kn_barstack, dual_bar_stack,
    full_marbling_wires, has_simple_cycle, kn_paths, marbling_of_family, max_side_compatible,
    ordered_half_subset, sparse_half_subset, validate_side_compatible, wire_permutations,
)
from crossfam.duality import Line
from crossfam.instances import random_barstack, random_one_avoiding, random_one_avoiding_generic
from crossfam.solvers import Family, Relation, max_pairwise_family, SegmentFilter, verify_family


def brute_side(B, W, ordered):
    best = 0
    n, S = B.n, len(W)
    for k in range(min(n, S), 0, -1):
        for C in combinations(range(1, n + 1), k):
            for slots in permutations(range(S), k):
                if validate_side_compatible(B, W, C, dict(zip(C, slots)), ordered)[0]:
                    return k
    return best


stacks = st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.sampled_from(list(combinations(range(1, n + 1), 2))), unique=True, max_size=n * (n - 1) // 2),
))


@given(stacks, st.lists(st.integers(0, 10), min_size=1, max_size=4), st.booleans())
@settings(max_examples=80)
def test_max_side_compatible_matches_bruteforce(nb, W, ordered):
    n, bars = nb
    B = BarStack(n, tuple(bars))
    W = sorted(min(w, B.height) for w in W)
    res = max_side_compatible(B, W, ordered)
    assert res.size == brute_side(B, W, ordered)
    if res.size:
        assert validate_side_compatible(B, W, res.C, res.f, ordered)[0]


def test_barstack_validation():
    with pytest.raises(ValueError):
        BarStack(3, ((1, 1),))
    with pytest.raises(ValueError):
        BarStack(3, ((1, 2), (1, 2)))
    with pytest.raises(ValueError):
        BarStack(3, ((2, 4),))


def test_validate_reports_height():
    B = BarStack(3, ((1, 2), (2, 3)))
    # marbles of pillars 1, 2 straddle bar 1 (levels 0 and 2)
    ok, h = validate_side_compatible(B, (0, 2), (1, 2), {1: 0, 2: 1})
    assert not ok and h == 1
    ok, h = validate_side_compatible(B, (0, 0), (1, 2), {1: 0, 2: 0})
    assert not ok and h == 0


def test_three_bar_values():
    B = BarStack(3, ((2, 3), (1, 3), (1, 2)))
    W = (0, 0, 1)
    assert max_side_compatible(B, W).size == 3
    assert max_side_compatible(B, W, ordered=True).size == 2


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_full_marbling_all_small_stacks(n):
    pairs = list(combinations(range(1, n + 1), 2))
    rng = random.Random(n)
    cands = list(permutations(pairs, n)) if n == 3 else [tuple(rng.sample(pairs, n)) for _ in range(200)]
    for bars in cands:
        B = BarStack(n, bars)
        fm = full_marbling_wires(B)
        assert list(fm.W) == sorted(fm.W) and all(0 <= w <= n for w in fm.W)
        assert len(set(fm.W)) == len(fm.W)
        assert validate_side_compatible(B, fm.W, range(1, n + 1), fm.f)[0]


def test_ordered_half_random():
    rng = random.Random(21)
    for _ in range(200):
        n = rng.randint(3, 12)
        B = BarStack(n, tuple(random_barstack(n, n, rng)))
        oh = ordered_half_subset(B)
        assert len(oh.C) >= n // 2
        assert validate_side_compatible(B, oh.W, oh.C, oh.f, ordered=True)[0]


def test_sparse_half():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(3, 10)
        B = BarStack(n, tuple(random_barstack(n, n, rng)))
        S = set(sparse_half_subset(B))
        assert len(S) == n // 2
        assert sum(1 for a, b in B.bars if a in S and b in S) <= n // 2


def test_kn_paths_cover_complete_graph():
    for n in (4, 6, 8):
        edges = [tuple(sorted(e)) for p in kn_paths(n) for e in p]
        assert sorted(edges) == sorted(combinations(range(1, n + 1), 2))
        for p in kn_paths(n):
            verts = [p[0][0]] + [e[1] for e in p]
            assert sorted(verts) == list(range(1, n + 1))
    B, W = build_kn_barstack(4)
    assert len(W) == 3 * 3 and B.height == 6


def test_bar_representation_of_lines():
    lines = [Line(1, 0), Line(-1, 4), Line(3, -1)]
    B = bar_representation(lines)
    assert B.height == 3 and sorted(B.bars) == [(1, 2), (1, 3), (2, 3)]
    with pytest.raises(ValueError):
        bar_representation([Line(1, 0), Line(1, 2)])


def test_wire_permutations_reverse():
    lines = [Line(s, i) for i, s in enumerate([1, -2, 3, -5])]
    B = bar_representation(lines, relabel_bottom=True)
    perms = wire_permutations(B, [0, B.height])
    assert perms[0] == tuple(range(B.n, 0, -1)) or sorted(perms[0]) == list(range(1, B.n + 1))
    assert perms[1] == tuple(range(1, B.n + 1))


def test_bar_observation_wires():
    assert bar_observation_wires(4) == (0, 0, 6, 6)
    with pytest.raises(ValueError):
        bar_observation_wires(5)


def test_realizable_stacks_have_no_simple_cycle():
    rng = random.Random(6)
    for _ in range(40):
        P, part = random_one_avoiding(4, rng)
        D = dual_bar_stack(P, part)
        assert has_simple_cycle(D.stack) is None


def test_simple_cycle_found():
    # bars (1,2) at 1, (2,3) at 2, (1,3) at 3: pillar pieces close a triangle around nothing
    cyc = has_simple_cycle(BarStack(3, ((1, 2), (2, 3), (1, 3))))
    assert cyc is not None


def test_dual_stack_families_induce_side_compatible_marblings():
    rng = random.Random(12)
    checked = 0
    for _ in range(25):
        n = rng.randint(3, 5)
        P, part = random_one_avoiding_generic(n, rng)
        D = dual_bar_stack(P, part)
        assert D.stack.height == n * (n - 1) // 2
        for rel in (Relation.CROSSING, Relation.STAB_OR_CROSS):
            res = max_pairwise_family(P, rel, SegmentFilter.BICOLORED)
            C, f = marbling_of_family(D, res.family.segments)
            crossing = verify_family(Family(res.family.segments, Relation.CROSSING, P))[0]
            if rel is Relation.CROSSING:
                assert validate_side_compatible(D.stack, D.W, C, f)[0]
                assert validate_side_compatible(D.stack, D.W, C, f, ordered=True)[0]
                checked += 1
            elif validate_side_compatible(D.stack, D.W, C, f)[0]:
                assert crossing == validate_side_compatible(D.stack, D.W, C, f, ordered=True)[0]
    assert checked == 25
