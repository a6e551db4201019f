import random

import pytest
from hypothesis import given, settings, strategies as st

from crossfam.geom import Color, PointSet
from crossfam.instances import random_colored, random_one_avoiding, random_points
from crossfam.matchings import (
    crossing_pairs, cut_counts, ham_sandwich_cut, ham_sandwich_matching,
    non_crossing_bicolored_matching, stabbing_family_general, stabbing_family_one_avoiding,
)
from crossfam.duality import straddle_frame
from crossfam.solvers import Relation, max_pairwise_family, verify_family


def _check_perfect(M, reds, blues):
    assert sorted(r for r, _ in M.pairs) == sorted(reds)
    assert sorted(b for _, b in M.pairs) == sorted(blues)
    assert all(M.base[r].color is Color.RED and M.base[b].color is Color.BLUE for r, b in M.pairs)


@given(st.integers(1, 8), st.integers(0, 10**6))
@settings(max_examples=40)
def test_ham_sandwich_matching_non_crossing(n, seed):
    P = random_colored(n, n, random.Random(seed), box=10**4)
    M = ham_sandwich_matching(P, P.red(), P.blue())
    _check_perfect(M, P.red(), P.blue())
    assert crossing_pairs(M) == []


@pytest.mark.parametrize("r,b", [(5, 5), (6, 6), (10, 10), (4, 7), (3, 8)])
def test_ham_sandwich_cut_bounds(r, b):
    rng = random.Random(r * 31 + b)
    for _ in range(10):
        P = random_colored(b, r, rng, box=10**4)
        l = ham_sandwich_cut(P)
        c = cut_counts(P, l)
        assert max(c["red"]) <= r // 2 and max(c["blue"]) <= b // 2
        if r == b and r % 2 == 0:
            assert c["red"] == (r // 2, r // 2) and c["blue"] == (b // 2, b // 2)


def test_ham_sandwich_needs_both_colours():
    with pytest.raises(ValueError):
        ham_sandwich_cut(PointSet.from_coords([(0, 0), (1, 2)], ["red", "red"]))


def test_non_crossing_matching_one_avoiding():
    rng = random.Random(3)
    for n in (2, 4, 7, 10):
        for _ in range(5):
            P, part = random_one_avoiding(n, rng)
            M = non_crossing_bicolored_matching(P, part)
            assert len(M) == n
            assert crossing_pairs(M) == []
            assert sorted(a for _, a in M.pairs) == sorted(part.set_a)


@given(st.integers(1, 12), st.integers(0, 10**6))
@settings(max_examples=30)
def test_stabbing_family_general_size(n, seed):
    P = random_points(2 * n, random.Random(seed), box=10**5)
    res = stabbing_family_general(P)
    assert len(res.family) == n
    assert res.family.relation is Relation.STAB_OR_CROSS
    assert verify_family(res.family)[0]
    assert sorted(i for s in res.family.segments for i in s) == list(range(2 * n))


def test_stabbing_family_rejects_odd_and_collinear():
    with pytest.raises(ValueError):
        stabbing_family_general(random_points(5, random.Random(1)))
    with pytest.raises(ValueError):
        stabbing_family_general(PointSet.from_coords([(0, 0), (1, 1), (2, 2), (5, 0)]))


def test_stabbing_family_one_avoiding():
    rng = random.Random(4)
    for n in (3, 6, 8):
        P, part = random_one_avoiding(n, rng)
        S = straddle_frame(P, part)
        res = stabbing_family_one_avoiding(S, part)
        assert len(res.family) == n
        assert verify_family(res.family)[0]


def test_stabbing_upper_bound_small():
    rng = random.Random(5)
    for _ in range(10):
        P = random_points(8, rng, box=1000)
        assert max_pairwise_family(P, Relation.STAB_OR_CROSS).size <= 4
