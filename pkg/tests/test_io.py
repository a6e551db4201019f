import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crossfam import io as cio
from crossfam.arrangements import PathWitness
from crossfam.barstacks import BarStack
from crossfam.duality import Line
from crossfam.geom import Color, Point, PointSet, Segment
from crossfam.instances import random_colored
from crossfam.solvers import Family, Relation

rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)


@given(st.lists(st.tuples(rationals, rationals, st.sampled_from(list(Color))), min_size=1, max_size=8,
                unique_by=lambda t: (t[0], t[1])))
def test_point_set_round_trip(pts):
    P = PointSet(Point(x, y, c) for x, y, c in pts)
    doc = cio.point_set_doc(P, {"seed": 3, "name": "x"})
    text = cio.dumps(doc)
    back, meta = cio.parse_point_set(json.loads(text))
    assert back == P
    assert meta == {"name": "x", "seed": 3}
    assert cio.dumps(cio.canonical(json.loads(text))) == text


def test_rationals_are_reduced():
    doc = {"points": [{"x": "2/4", "y": "-6/3", "color": "red"}, {"x": 3, "y": "0/5"}]}
    c = cio.canonical(doc)
    assert c["points"][0] == {"x": "1/2", "y": "-2", "color": "red"}
    assert c["points"][1] == {"x": "3", "y": "0", "color": "none"}
    assert cio.rat(Fraction(10, 4)) == "5/2"


def test_bad_colour_names_point_index():
    doc = {"points": [{"x": "0", "y": "0", "color": "red"}, {"x": "1", "y": "1", "color": "green"}]}
    with pytest.raises(cio.SchemaError) as e:
        cio.parse_point_set(doc)
    assert e.value.path == "points[1].color"
    assert "green" in str(e.value)


@pytest.mark.parametrize("doc, path", [
    ({}, "points"),
    ({"points": [{"x": "1"}]}, "points[0].y"),
    ({"points": [{"x": "1/0", "y": "1"}]}, "points[0].x"),
    ({"points": [{"x": 1.5, "y": "1"}]}, "points[0].x"),
    ({"points": [{"x": "1", "y": "1"}], "meta": []}, "meta"),
])
def test_schema_errors_carry_paths(doc, path):
    with pytest.raises(cio.SchemaError) as e:
        cio.parse_point_set(doc)
    assert e.value.path == path


def test_arrangement_round_trip():
    lines = [Line(Fraction(1, 3), 2, Color.RED), Line(-5, Fraction(7, 2), Color.BLUE), Line.vertical_at(4)]
    doc = cio.arrangement_doc(lines)
    assert cio.parse_arrangement(json.loads(cio.dumps(doc))) == lines
    assert doc["lines"][0] == {"a": "1/3", "b": "2", "color": "red"}


def test_barstack_round_trip_and_errors():
    B = BarStack(3, ((2, 3), (1, 3), (1, 2)))
    doc = cio.barstack_doc(B, (0, 0, 1))
    assert doc == {"n": 3, "bars": [[2, 3, 1], [1, 3, 2], [1, 2, 3]], "wires": [0, 0, 1]}
    assert cio.parse_barstack(doc) == (B, (0, 0, 1))
    # heights given out of order are sorted
    shuffled = {"n": 3, "bars": [[1, 2, 3], [2, 3, 1], [1, 3, 2]]}
    assert cio.parse_barstack(shuffled) == (B, None)
    with pytest.raises(cio.SchemaError) as e:
        cio.parse_barstack({"n": 3, "bars": [[1, 2]], "wires": [5]})
    assert e.value.path == "wires[0]"
    with pytest.raises(cio.SchemaError) as e:
        cio.parse_barstack({"n": 3, "bars": [[1, 2, 2]]})
    assert e.value.path == "bars"


def test_table_and_witness_formats():
    assert cio.parse_table({"rows": [[1, 2], [2, 1]]}) == [[1, 2], [2, 1]]
    with pytest.raises(cio.SchemaError) as e:
        cio.parse_table({"rows": [[1, 2], [2, "x"]]})
    assert e.value.path == "rows[1]"
    w = PathWitness((2, 0, 1), (1, -1, 1))
    assert cio.parse_witness(cio.witness_doc(w)) == w
    with pytest.raises(cio.SchemaError) as e:
        cio.parse_witness({"order": [0], "start": [0]})
    assert e.value.path == "start[0]"


def test_family_round_trip():
    P = random_colored(3, 3, random.Random(1))
    F = Family((Segment.of(0, 3), Segment.of(1, 4)), Relation.CROSSING, P)
    back = cio.parse_family(json.loads(cio.dumps(cio.family_doc(F))), P)
    assert back.segments == F.segments and back.relation == F.relation
    with pytest.raises(cio.SchemaError) as e:
        cio.parse_family({"relation": "sideways", "segments": []}, P)
    assert e.value.path == "relation"


def test_detect_kind():
    assert cio.detect_kind({"points": []}) == "points"
    assert cio.detect_kind({"lines": []}) == "arrangement"
    assert cio.detect_kind({"bars": [], "n": 3}) == "barstack"
    assert cio.detect_kind({"rows": []}) == "table"
    with pytest.raises(cio.SchemaError):
        cio.detect_kind({"other": 1})
