"""JSON documents for point sets, arrangements, bar stacks, tables and witnesses.

Rationals are stored as strings ("p/q" or "p") so no JSON consumer can round
them.  Every parser reports schema problems with a path to the bad field.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any

from .barstacks import BarStack
from .duality import Line
from .geom import Color, Point, PointSet, Segment


class SchemaError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


def rat(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rat(s, path: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(path, f"expected a rational string, got {type(s).__name__}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"not a rational: {s!r}") from None


def _color(v, path: str) -> Color:
    try:
        return Color.parse(v)
    except (ValueError, TypeError):
        raise SchemaError(path, f"unknown color {v!r}") from None


def _get(d, key, path):
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if key not in d:
        raise SchemaError(f"{path}.{key}" if path else key, "missing")
    return d[key]


def _list(v, path) -> list:
    if not isinstance(v, list):
        raise SchemaError(path, "expected a list")
    return v


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def digest(doc: dict) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]


# -- point sets ------------------------------------------------------------

META_KEYS = ("name", "seed", "construction", "parameters")


def point_set_doc(P: PointSet, meta: dict | None = None) -> dict:
    meta = dict(meta or {})
    m = {k: meta.pop(k) for k in META_KEYS if k in meta}
    m.update(sorted(meta.items()))
    return {
        "points": [{"x": rat(p.x), "y": rat(p.y), "color": p.color.value} for p in P],
        "meta": m,
    }


def parse_point_set(doc) -> tuple[PointSet, dict]:
    pts = _list(_get(doc, "points", ""), "points")
    out = []
    for i, d in enumerate(pts):
        path = f"points[{i}]"
        x = parse_rat(_get(d, "x", path), f"{path}.x")
        y = parse_rat(_get(d, "y", path), f"{path}.y")
        c = _color(d.get("color", "none"), f"{path}.color") if isinstance(d, dict) else None
        out.append(Point(x, y, c))
    try:
        P = PointSet(out)
    except ValueError as e:
        raise SchemaError("points", str(e)) from None
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise SchemaError("meta", "expected an object")
    return P, meta


# -- arrangements ----------------------------------------------------------


def line_doc(l: Line) -> dict:
    if l.vertical:
        return {"x": rat(l.c), "color": l.color.value}
    return {"a": rat(l.a), "b": rat(l.b), "color": l.color.value}


def arrangement_doc(lines, meta: dict | None = None) -> dict:
    doc = {"lines": [line_doc(l) for l in lines]}
    if meta:
        doc["meta"] = meta
    return doc


def parse_arrangement(doc) -> list[Line]:
    out = []
    for i, d in enumerate(_list(_get(doc, "lines", ""), "lines")):
        path = f"lines[{i}]"
        if not isinstance(d, dict):
            raise SchemaError(path, "expected an object")
        col = _color(d.get("color", "none"), f"{path}.color")
        if "x" in d:
            out.append(Line.vertical_at(parse_rat(d["x"], f"{path}.x"), col))
        else:
            a = parse_rat(_get(d, "a", path), f"{path}.a")
            b = parse_rat(_get(d, "b", path), f"{path}.b")
            out.append(Line(a, b, col))
    return out


# -- bar stacks, tables, witnesses -----------------------------------------


def barstack_doc(B: BarStack, wires=None) -> dict:
    doc: dict[str, Any] = {"n": B.n, "bars": [[a, b, h] for h, (a, b) in enumerate(B.bars, start=1)]}
    if wires is not None:
        doc["wires"] = list(wires)
    return doc


def parse_barstack(doc) -> tuple[BarStack, tuple[int, ...] | None]:
    n = _get(doc, "n", "")
    if not isinstance(n, int) or n < 2:
        raise SchemaError("n", "expected an integer >= 2")
    rows = []
    for i, bar in enumerate(_list(_get(doc, "bars", ""), "bars")):
        path = f"bars[{i}]"
        if isinstance(bar, dict):
            bar = [bar.get("a"), bar.get("b"), bar.get("height", i + 1)]
        if not isinstance(bar, list) or len(bar) not in (2, 3) or not all(isinstance(v, int) for v in bar):
            raise SchemaError(path, "expected [a, b] or [a, b, height] integers")
        h = bar[2] if len(bar) == 3 else i + 1
        rows.append((h, bar[0], bar[1], path))
    heights = sorted(r[0] for r in rows)
    if heights != list(range(1, len(rows) + 1)):
        raise SchemaError("bars", "heights must be exactly 1..l")
    rows.sort()
    try:
        B = BarStack(n, tuple((a, b) for _, a, b, _ in rows))
    except ValueError as e:
        raise SchemaError("bars", str(e)) from None
    wires = None
    if "wires" in doc:
        wires = tuple(_list(doc["wires"], "wires"))
        for i, w in enumerate(wires):
            if not isinstance(w, int) or not 0 <= w <= B.height:
                raise SchemaError(f"wires[{i}]", f"wire level must lie in [0, {B.height}]")
    return B, wires


def table_doc(rows) -> dict:
    return {"rows": [list(r) for r in rows]}


def parse_table(doc) -> list[list[int]]:
    rows = _list(_get(doc, "rows", ""), "rows")
    for i, r in enumerate(rows):
        if not isinstance(r, list) or not all(isinstance(v, int) for v in r):
            raise SchemaError(f"rows[{i}]", "expected a list of integers")
    return rows


def witness_doc(w) -> dict:
    return {"order": list(w.order), "start": list(w.start)}


def parse_witness(doc):
    from .arrangements import PathWitness

    order = _list(_get(doc, "order", ""), "order")
    start = _list(_get(doc, "start", ""), "start")
    for i, s in enumerate(start):
        if s not in (1, -1):
            raise SchemaError(f"start[{i}]", "expected +1 or -1")
    try:
        return PathWitness(tuple(order), tuple(start))
    except ValueError as e:
        raise SchemaError("order", str(e)) from None


def family_doc(F) -> dict:
    return {"relation": F.relation.value, "segments": [[s[0], s[1]] for s in F.segments]}


def parse_family(doc, P: PointSet):
    from .solvers import Family, Relation

    try:
        rel = Relation.parse(_get(doc, "relation", ""))
    except ValueError:
        raise SchemaError("relation", f"unknown relation {doc.get('relation')!r}") from None
    segs = []
    for i, s in enumerate(_list(_get(doc, "segments", ""), "segments")):
        if not isinstance(s, list) or len(s) != 2 or not all(isinstance(v, int) for v in s):
            raise SchemaError(f"segments[{i}]", "expected [i, j]")
        try:
            segs.append(Segment.of(*s))
        except ValueError as e:
            raise SchemaError(f"segments[{i}]", str(e)) from None
    return Family(tuple(segs), rel, P)


def matching_doc(M) -> dict:
    return {"pairs": [list(p) for p in M.pairs]}


# -- generic ---------------------------------------------------------------

KINDS = {
    "points": ("points", parse_point_set),
    "arrangement": ("lines", parse_arrangement),
    "barstack": ("bars", parse_barstack),
    "table": ("rows", parse_table),
}


def detect_kind(doc) -> str:
    if not isinstance(doc, dict):
        raise SchemaError("", "document must be a JSON object")
    for kind, (key, _) in KINDS.items():
        if key in doc:
            return kind
    raise SchemaError("", "unrecognised document (expected points, lines, bars or rows)")


def canonical(doc: dict) -> dict:
    """Re-serialised form of a parsed document."""
    kind = detect_kind(doc)
    if kind == "points":
        P, meta = parse_point_set(doc)
        return point_set_doc(P, meta)
    if kind == "arrangement":
        out = arrangement_doc(parse_arrangement(doc))
        if "meta" in doc:
            out["meta"] = doc["meta"]
        return out
    if kind == "barstack":
        return barstack_doc(*parse_barstack(doc))
    return table_doc(parse_table(doc))


def load(path: str) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise SchemaError("", f"invalid JSON: {e}") from None


def save(doc: dict, path: str | None) -> str:
    text = dumps(doc)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text
