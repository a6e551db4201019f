"""Command-line interface.

Exit codes: 0 success, 2 certificate or verification failure, 3 incomplete
search (timeout), 4 input error.
"""
from __future__ import annotations

import random
import sys
import time

import click

from . import io as cio

EXIT_OK, EXIT_CERT, EXIT_INCOMPLETE, EXIT_INPUT = 0, 2, 3, 4


class Exit(Exception):
    def __init__(self, code: int, msg: str = ""):
        super().__init__(msg)
        self.code = code


def _report(ctx_name: str, doc_in, result: dict, complete=True, certificates=None, t0=None) -> dict:
    rep = {
        "command": ctx_name,
        "input_digest": cio.digest(doc_in) if doc_in is not None else None,
        "result": result,
        "complete": bool(complete),
    }
    if certificates is not None:
        rep["certificates"] = certificates
    if t0 is not None:
        rep["timing_s"] = round(time.monotonic() - t0, 4)
    return rep


def _emit(doc: dict, out: str | None):
    text = cio.save(doc, out)
    if not out:
        click.echo(text, nl=False)


def _load(path: str) -> dict:
    try:
        return cio.load(path)
    except OSError as e:
        raise Exit(EXIT_INPUT, str(e))
    except cio.SchemaError as e:
        raise Exit(EXIT_INPUT, str(e))


def _points(path):
    doc = _load(path)
    try:
        P, meta = cio.parse_point_set(doc)
    except cio.SchemaError as e:
        raise Exit(EXIT_INPUT, str(e))
    return doc, P, meta


def _partition(P):
    from .separation import Partition2

    if not P.blue() or not P.red():
        raise Exit(EXIT_INPUT, "points need red and blue colours")
    return Partition2.by_color(P)


def _guard(fn):
    """Map library errors to exit codes."""
    import functools

    @functools.wraps(fn)
    def inner(*a, **k):
        try:
            return fn(*a, **k)
        except Exit as e:
            if str(e):
                click.echo(f"error: {e}", err=True)
            sys.exit(e.code)
        except cio.SchemaError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT)
    return inner


@click.group()
def main():
    """Exact tools for crossing families, spoke sets, parallel sets and bar stacks."""


seed_opt = click.option("--seed", type=int, default=0, envvar="CROSSFAM_SEED", show_default=True,
                        help="Random seed (default from CROSSFAM_SEED).")
out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file.")
timeout_opt = click.option("--timeout-s", type=float, default=300.0, show_default=True)
cap_opt = click.option("--cap", type=int, default=None, help="Largest instance the search accepts.")

GENERATORS = ("nover4", "config24", "blowup", "parallel_upper", "focal_constant", "no_semialternating",
              "kn_barstack", "theta_sequence", "spoke_demo", "three_bar", "random", "random_one_avoiding")


@main.command()
@click.argument("construction", type=click.Choice(GENERATORS))
@click.option("-k", "--size", "size", type=int, default=None, help="Size parameter (k or n).")
@click.option("--base", type=click.Path(exists=True, dir_okay=False), help="Base point set for blowup.")
@seed_opt
@out_opt
@_guard
def generate(construction, size, base, seed, out):
    """Build a construction and write it as JSON."""
    from . import constructions as C
    from .instances import random_one_avoiding, random_points

    rng = random.Random(seed)
    meta = {"name": construction, "seed": seed, "construction": construction, "parameters": {"size": size}}
    try:
        if construction in ("nover4", "config24", "parallel_upper", "focal_constant"):
            default = {"nover4": 2, "config24": 1, "parallel_upper": 8, "focal_constant": 4}[construction]
            size = default if size is None else size
            meta["parameters"] = {"size": size}
            c = C.BUILDERS[construction](size)
            meta["certificate"] = c.certificate.to_dict()
            meta["groups"] = {k: list(v) for k, v in c.groups.items()}
            if construction == "focal_constant":
                meta["lines"] = cio.arrangement_doc(c.meta["lines"])["lines"]
            doc = cio.point_set_doc(c.points, meta)
        elif construction == "blowup":
            if base is None or size is None:
                raise Exit(EXIT_INPUT, "blowup needs --base FILE and --size N")
            _, P, _ = _points(base)
            doc = cio.point_set_doc(C.blow_up(P, size, seed=seed), meta)
        elif construction == "no_semialternating":
            c = C.build_no_semialternating()
            doc = cio.arrangement_doc(c.meta["lines"], {**meta, "certificate": c.certificate.to_dict()})
        elif construction == "kn_barstack":
            B, W = C.build_kn_barstack(size or 4)
            doc = cio.barstack_doc(B, W)
        elif construction == "theta_sequence":
            doc = cio.table_doc(C.build_theta_n2_sequence(size or 4))
        elif construction == "spoke_demo":
            lines, bold, path = C.spoke_demo_arrangement()
            doc = cio.arrangement_doc(lines, {**meta, "bold": list(bold),
                                              "path": [[cio.rat(x), cio.rat(y)] for x, y in path]})
        elif construction == "three_bar":
            _, _, P, _ = C.three_bar_instance()
            doc = cio.point_set_doc(P, meta)
        elif construction == "random":
            doc = cio.point_set_doc(random_points(size or 10, rng), meta)
        else:
            P, _ = random_one_avoiding(size or 5, rng)
            doc = cio.point_set_doc(P, meta)
    except C.ConstructionError as e:
        raise Exit(EXIT_CERT, str(e))
    except ValueError as e:
        raise Exit(EXIT_INPUT, str(e))
    _emit(doc, out)


@main.command()
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--target", type=click.Choice(["family", "spoke", "parallel", "side"]), default="family",
              show_default=True)
@click.option("--relation", type=click.Choice(["crossing", "parallel", "stab_or_cross"]), default="crossing",
              show_default=True)
@click.option("--bicolored", is_flag=True, help="Only segments joining a red and a blue point.")
@click.option("--ordered", is_flag=True, help="Ordered side compatibility (target side).")
@cap_opt
@timeout_opt
@out_opt
@_guard
def solve(input, target, relation, bicolored, ordered, cap, timeout_s, out):
    """Exact maximum family, spoke set, parallel set or side-compatible subset."""
    t0 = time.monotonic()
    doc = _load(input)
    if target == "side":
        from .barstacks import max_side_compatible

        B, W = cio.parse_barstack(doc)
        if W is None:
            raise Exit(EXIT_INPUT, "bar stack needs wires")
        r = max_side_compatible(B, W, ordered=ordered, timeout_s=timeout_s)
        res = {"size": r.size, "pillars": list(r.C), "marbling": {str(k): v for k, v in sorted(r.f.items())}}
        _emit(_report("solve side", doc, res, r.complete, t0=t0), out)
        if not r.complete:
            raise Exit(EXIT_INCOMPLETE)
        return
    P, _ = cio.parse_point_set(doc)
    if cap is not None and len(P) > cap:
        raise Exit(EXIT_INPUT, f"{len(P)} points exceed --cap {cap}")
    try:
        if target == "family":
            from .solvers import SegmentFilter, max_pairwise_family

            filt = SegmentFilter.BICOLORED if bicolored else SegmentFilter.ALL
            r = max_pairwise_family(P, relation, filt, timeout_s=timeout_s)
            res = {"size": r.size, "upper_bound": r.upper_bound, **cio.family_doc(r.family)}
            complete = r.complete
        elif target == "spoke":
            from .arrangements import max_spoke_set

            r = max_spoke_set(P, cap=cap or 12, timeout_s=timeout_s)
            res = {"size": r.size, "lines": cio.arrangement_doc(r.lines)["lines"]}
            complete = r.complete
        else:
            from .arrangements import max_parallel_set

            r = max_parallel_set(P, cap=cap or 16, timeout_s=timeout_s)
            res = {"size": r.size, "blue": list(r.blue), "red": list(r.red)}
            complete = r.complete
    except ValueError as e:
        raise Exit(EXIT_INPUT, str(e))
    _emit(_report(f"solve {target}", doc, res, complete, t0=t0), out)
    if not complete:
        raise Exit(EXIT_INCOMPLETE)


@main.command()
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--family", "family_path", type=click.Path(dir_okay=False), help="Family JSON to validate.")
@out_opt
@_guard
def verify(input, family_path, out):
    """Re-run a construction certificate or validate a family against its point set."""
    from . import constructions as C
    from .geom import is_general_position

    t0 = time.monotonic()
    doc, P, meta = _points(input)
    checks = []
    gp, triple = is_general_position(P)
    checks.append({"name": "general position", "ok": gp})
    name = meta.get("construction")
    if name in C.BUILDERS and name != "no_semialternating":
        size = (meta.get("parameters") or {}).get("size")
        try:
            c = C.BUILDERS[name](size) if size is not None else C.BUILDERS[name]()
        except C.ConstructionError as e:
            checks.append({"name": f"rebuild {name}", "ok": False, "error": str(e)})
        else:
            checks.extend(c.certificate.to_dict()["checks"])
            checks.append({"name": f"points match a fresh {name} build", "ok": c.points == P})
    if family_path:
        from .solvers import verify_family

        F = cio.parse_family(_load(family_path), P)
        ok, bad = verify_family(F)
        checks.append({"name": f"family is pairwise {F.relation.value}", "ok": ok,
                       **({"violation": [list(bad[0]), list(bad[1])]} if bad else {})})
    passed = all(c["ok"] for c in checks)
    _emit(_report("verify", doc, {"passed": passed}, True, checks, t0), out)
    if not passed:
        raise Exit(EXIT_CERT)


@main.command()
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--diagonal", type=int, default=None, help="Search a k x k distinct-diagonal subtable.")
@out_opt
@_guard
def table(input, diagonal, out):
    """Table of a 1-avoiding point set (blue rows, red labels), or rows given directly."""
    from .tables import build_table, find_distinct_diagonal

    t0 = time.monotonic()
    doc = _load(input)
    if "rows" in doc:
        rows = cio.parse_table(doc)
    else:
        P, _ = cio.parse_point_set(doc)
        try:
            rows = [list(r) for r in build_table(P, _partition(P)).rows]
        except ValueError as e:
            raise Exit(EXIT_INPUT, str(e))
    res = {"rows": rows}
    if diagonal is not None:
        d = find_distinct_diagonal(rows, diagonal)
        res["diagonal"] = None if d is None else {"rows": list(d[0]), "elements": list(d[1]), "diagonal": list(d[2])}
    _emit(_report("table", doc, res, t0=t0), out)


@main.command()
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--wires", default=None, help="Comma-separated wire levels, e.g. 0,0,1.")
@click.option("--ordered", is_flag=True)
@click.option("--full-marbling", is_flag=True, help="Construct wires admitting a marbling of every pillar.")
@timeout_opt
@out_opt
@_guard
def barstack(input, wires, ordered, full_marbling, timeout_s, out):
    """Bar representation of an arrangement, and side-compatible marblings."""
    from .barstacks import bar_representation, full_marbling_wires, max_side_compatible

    t0 = time.monotonic()
    doc = _load(input)
    if "lines" in doc:
        try:
            B = bar_representation(cio.parse_arrangement(doc))
        except ValueError as e:
            raise Exit(EXIT_INPUT, str(e))
        W = None
    else:
        B, W = cio.parse_barstack(doc)
    if wires is not None:
        try:
            W = tuple(int(v) for v in wires.split(","))
        except ValueError:
            raise Exit(EXIT_INPUT, f"bad --wires {wires!r}")
    res = cio.barstack_doc(B, W)
    complete = True
    if full_marbling:
        fm = full_marbling_wires(B)
        res["full_marbling"] = {"wires": list(fm.W), "marbling": {str(k): v for k, v in sorted(fm.f.items())}}
    if W is not None:
        r = max_side_compatible(B, W, ordered=ordered, timeout_s=timeout_s)
        res["side_compatible"] = {"size": r.size, "pillars": list(r.C),
                                  "marbling": {str(k): v for k, v in sorted(r.f.items())}}
        complete = r.complete
    _emit(_report("barstack", doc, res, complete, t0=t0), out)
    if not complete:
        raise Exit(EXIT_INCOMPLETE)


@main.command()
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--mode", type=click.Choice(["semi", "msemi", "mline", "spoke", "parallel"]), default="semi",
              show_default=True)
@click.option("--sub", "subsearch", is_flag=True, help="Search subarrangements for the largest witness.")
@timeout_opt
@out_opt
@_guard
def arrange(input, mode, subsearch, timeout_s, out):
    """Cells of an arrangement and pseudoline witnesses of the chosen kind."""
    from .arrangements import (LineArrangement, Mode, SearchTimeout, find_semialternating,
                               full_path_search, sub_path_search, validate_witness)

    t0 = time.monotonic()
    doc = _load(input)
    if "points" in doc:
        from .duality import dual_lines

        P, _ = cio.parse_point_set(doc)
        lines = dual_lines(P)
    else:
        lines = cio.parse_arrangement(doc)
    try:
        arr = LineArrangement(lines)
    except ValueError as e:
        raise Exit(EXIT_INPUT, str(e))
    res: dict = {"lines": len(lines), "cells": len(arr.cells)}
    complete = True
    try:
        if mode == "mline":
            w = find_semialternating(arr, "mline", subarrangement_search=subsearch, timeout_s=timeout_s)
        elif subsearch:
            r = sub_path_search(arr, Mode.parse(mode), None, timeout_s=timeout_s)
            w, complete = r.witness, r.complete
            res["upper_bound"] = r.upper_bound
        else:
            w = full_path_search(arr, Mode.parse(mode), deadline=time.monotonic() + timeout_s)
    except SearchTimeout:
        w, complete = None, False
    res["witness"] = None if w is None else cio.witness_doc(w)
    res["size"] = 0 if w is None else len(w)
    if w is not None and mode != "mline":
        ok, msg = validate_witness(lines, w, Mode.parse(mode))
        res["witness_valid"] = ok
        if not ok:
            _emit(_report("arrange", doc, res, complete, t0=t0), out)
            raise Exit(EXIT_CERT, msg or "witness failed validation")
    _emit(_report("arrange", doc, res, complete, t0=t0), out)
    if not complete:
        raise Exit(EXIT_INCOMPLETE)


@main.command()
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--kind", type=click.Choice(["stabbing", "noncrossing", "hamsandwich"]), default="stabbing",
              show_default=True)
@out_opt
@_guard
def match(input, kind, out):
    """Stabbing family of size n, non-crossing bicoloured matching, or a ham-sandwich cut."""
    from . import matchings as M

    t0 = time.monotonic()
    doc, P, _ = _points(input)
    try:
        if kind == "stabbing":
            r = M.stabbing_family_general(P)
            res = {"size": len(r.family), **cio.family_doc(r.family)}
        elif kind == "noncrossing":
            m = M.non_crossing_bicolored_matching(P, _partition(P))
            bad = M.crossing_pairs(m)
            res = {"size": len(m), **cio.matching_doc(m), "crossing_pairs": len(bad)}
            if bad:
                _emit(_report("match", doc, res, t0=t0), out)
                raise Exit(EXIT_CERT, "matching has crossing pairs")
        else:
            l = M.ham_sandwich_cut(P)
            res = {"line": cio.line_doc(l), "counts": M.cut_counts(P, l)}
    except ValueError as e:
        raise Exit(EXIT_INPUT, str(e))
    _emit(_report("match", doc, res, t0=t0), out)


@main.command()
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--family", "family_path", type=click.Path(dir_okay=False))
@out_opt
@_guard
def render(input, family_path, out):
    """SVG drawing of a point set (with groups and a family), arrangement or bar stack."""
    from . import render as R

    doc = _load(input)
    kind = cio.detect_kind(doc)
    if kind == "points":
        P, meta = cio.parse_point_set(doc)
        fam = cio.parse_family(_load(family_path), P) if family_path else None
        groups = {k: tuple(v) for k, v in (meta.get("groups") or {}).items()}
        svg = R.render_points(P, fam, groups)
    elif kind == "arrangement":
        path = [(cio.parse_rat(x, "path"), cio.parse_rat(y, "path")) for x, y in (doc.get("meta") or {}).get("path", [])]
        svg = R.render_arrangement(cio.parse_arrangement(doc), path)
    elif kind == "barstack":
        from .barstacks import max_side_compatible

        B, W = cio.parse_barstack(doc)
        marbles = max_side_compatible(B, W).f if W else None
        svg = R.render_barstack(B, W or (), marbles)
    else:
        raise Exit(EXIT_INPUT, "tables have no drawing")
    if out:
        with open(out, "w") as fh:
            fh.write(svg)
    else:
        click.echo(svg, nl=False)


@main.command()
@click.option("--repeat", type=int, default=3, show_default=True)
@seed_opt
def bench(repeat, seed):
    """Compare the compiled and pure-Python clique kernels."""
    from .bench import format_rows, run

    click.echo(format_rows(run(repeat=repeat, seed=seed)))


if __name__ == "__main__":
    main()
