import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from crossfam.arrangements import LineArrangement, Mode, PathWitness, validate_witness
from crossfam.barstacks import bar_representation, dual_bar_stack
from crossfam.constructions import (
    BUILDERS, ConstructionCertificate, _data, _wing, DiskSpec, blow_up, blow_up_clusters,
    build_24_config, build_focal_constant, build_no_semialternating, build_nover4,
    build_parallel_upper, certify_24, spoke_demo_arrangement, three_bar_instance, focal_grid_property,
    _meet, focal_red_heights, hex_norm, in_core, lattice_turn, replicate_lines,
)
from crossfam.geom import is_general_position, orient_xy
from crossfam.instances import random_points
from crossfam.separation import is_one_avoiding
from oracles import has_pseudoline


def test_disk_spec():
    d = DiskSpec((0, 0), 10, 3, Fraction(1))
    assert d.contains((Fraction(1), Fraction(1)))
    assert not d.contains((Fraction(10), Fraction(0)))
    assert d.in_strip((Fraction(5), Fraction(5)))
    assert not d.in_strip((Fraction(5), Fraction(6)))
    with pytest.raises(ValueError):
        DiskSpec((0, 0), 0, 3)


def test_certificate_bookkeeping():
    c = ConstructionCertificate()
    c.add("a", True)
    c.add("b", False)
    assert not c.passed and c.first_failure() == "b"
    assert c.to_dict()["checks"][1] == {"name": "b", "ok": False}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_nover4_certificate(k):
    C = build_nover4(k)
    assert C.certificate.passed, C.certificate.first_failure()
    assert len(C.points) == 4 * k
    assert sorted(len(v) for v in C.groups.values()) == [k] * 4


def test_lattice_turn_has_order_three():
    for p in [(3, 5), (-7, 2), (0, 1)]:
        q = lattice_turn(lattice_turn(lattice_turn(p)))
        assert q == p
        assert hex_norm(lattice_turn(p)) == hex_norm(p)


@pytest.mark.parametrize("k", [1, 2])
def test_config24_certificate_and_symmetry(k):
    C = build_24_config(k)
    assert C.certificate.passed, C.certificate.first_failure()
    assert len(C.points) == 24 * k
    pts = {P.xy() for P in C.points}
    assert {lattice_turn(p) for p in pts} == pts


def test_config24_certificate_detects_damage():
    C = build_24_config(1)
    groups = {k: [C.points[i].xy() for i in v] for k, v in C.groups.items()}
    g = _data("config24.json")
    centers = {x: _wing(tuple(g["wing"][x])) for x in "ABCD"}
    assert certify_24(groups, centers).passed
    # swapping two wings breaks the distance order among other things
    bad = dict(centers, A=centers["B"], B=centers["A"])
    cert = certify_24(groups, bad)
    assert not cert.passed
    assert not dict(cert.checks)["wing order A, B, C, D by distance"]


def test_in_core_matches_triangle_enumeration():
    rng = random.Random(4)
    centres = [(0, 100), (-87, -50), (87, -50)]
    hits = 0
    for _ in range(400):
        sets = [[(Fraction(cx + rng.randint(-20, 20)), Fraction(cy + rng.randint(-20, 20))) for _ in range(3)]
                for cx, cy in centres]
        pts = [(Fraction(rng.randint(-15, 15)), Fraction(rng.randint(-15, 15))) for _ in range(2)]
        inside = True
        for lines in product(*(combinations(S, 2) for S in sets)):
            tri = [_meet(lines[1], lines[2]), _meet(lines[0], lines[2]), _meet(lines[0], lines[1])]
            if None in tri or any(orient_xy(*ln, p) != orient_xy(*ln, v) or orient_xy(*ln, p) == 0
                                  for p in pts for ln, v in zip(lines, tri)):
                inside = False
                break
        hits += inside
        assert in_core(sets, pts) == inside
    assert hits > 0


def test_blow_up_keeps_orientations():
    rng = random.Random(2)
    P = random_points(5, rng, box=100)
    B = blow_up(P, 13)
    assert len(B) == 13 and is_general_position(B)[0]
    cl = blow_up_clusters(P, 13)
    assert [len(c) for c in cl] == [3, 3, 3, 2, 2]
    for i, j, k in combinations(range(5), 3):
        want = orient_xy(P[i].xy(), P[j].xy(), P[k].xy())
        for a in cl[i]:
            for b in cl[j]:
                for c in cl[k]:
                    assert orient_xy(B[a].xy(), B[b].xy(), B[c].xy()) == want
    assert blow_up(P, 13) == B
    with pytest.raises(ValueError):
        blow_up(P, 4)


@pytest.mark.parametrize("n", [8, 12])
def test_parallel_upper_certificate(n):
    C = build_parallel_upper(n)
    assert C.certificate.passed
    with pytest.raises(ValueError):
        build_parallel_upper(10)


def test_focal_heights_grid_property():
    for n in (3, 5, 8):
        ys = focal_red_heights(n)
        assert ys[:2] == [1, 2] and len(ys) == n
        assert all(b > a for a, b in zip(ys, ys[1:]))
        assert focal_grid_property(n, ys)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_focal_construction_certificate(n):
    C = build_focal_constant(n)
    assert C.certificate.passed, C.certificate.first_failure()
    assert len(C.points) == 2 * n


def test_three_bar_instance_dual_stack():
    red, wires, P, part = three_bar_instance()
    assert is_one_avoiding(P, part)
    D = dual_bar_stack(P, part)
    assert D.stack.bars == ((2, 3), (1, 3), (1, 2))
    assert D.W == (0, 0, 1)
    B = bar_representation(red, relabel_bottom=True)
    assert sorted(B.bars) == sorted(D.stack.bars)


def test_spoke_demo_drawn_path():
    lines, bold, path = spoke_demo_arrangement()
    sub = [lines[i] for i in bold]
    arr = LineArrangement(sub)
    cells = [arr.cell_of_point(p) for p in path]
    assert len(cells) == 7
    order = []
    for a, b in zip(cells, cells[1:]):
        d = a ^ b
        assert bin(d).count("1") == 1
        order.append(d.bit_length() - 1)
    start = tuple(1 if cells[0] >> l & 1 else -1 for l in order)
    assert validate_witness(sub, PathWitness(tuple(order), start), Mode.SPOKE)[0]


def test_no_semialternating_certificate():
    C = build_no_semialternating()
    assert C.certificate.passed
    assert len(C.meta["lines"]) == 22


@pytest.mark.slow
def test_no_semialternating_oracle():
    # independent route: cells by LP flips, then a breadth-first pair search
    lines = build_no_semialternating().meta["lines"]
    assert not has_pseudoline(lines)


def test_replicate_lines():
    from crossfam.duality import Line

    L = replicate_lines([Line(1, 0, "blue"), Line(-1, 0, "red")], 3)
    assert len(L) == 6 and len({l.a for l in L}) == 6
    assert [l.color.value for l in L] == ["blue"] * 3 + ["red"] * 3


def test_builders_registry():
    assert set(BUILDERS) >= {"nover4", "config24", "parallel_upper", "focal_constant", "no_semialternating"}


def test_grow_bound_fails_for_convex_pentagon():
    # five clusters of three points on a parabola: a valid blow-up of a convex pentagon
    from crossfam.constructions import disk_orientations_inherited
    from crossfam.solvers import Family, Relation, crf, verify_family
    from crossfam.geom import Point, PointSet, Segment

    base = [(Fraction(10 * i), Fraction(100 * i * i)) for i in range(5)]
    clusters = [[(x + Fraction(j, 100), (x + Fraction(j, 100)) ** 2) for j in range(3)] for x, _ in base]
    assert disk_orientations_inherited(clusters, base)
    P5 = PointSet(Point(x, y) for x, y in base)
    P15 = PointSet(Point(x, y) for cl in clusters for x, y in cl)
    assert crf(P5) == 2
    F = Family(tuple(Segment.of(i, i + 7) for i in range(7)), Relation.CROSSING, P15)
    assert verify_family(F)[0]
    assert crf(P15) == 7 > 2 * 3
