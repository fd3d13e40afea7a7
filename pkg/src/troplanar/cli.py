"""Command-line front end: ``troplanar <subcommand> ...``.

Exit codes: 0 success or unobstructed, 1 obstructed, 2 usage, parse or
precondition error, 3 enumeration truncated by the budget.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import antihoney, graphcat, obstructions
from .errors import InvalidTriangulation, ParseError, TroplanarError
from .graphs import Multigraph, graph_genus
from .lattice_geom import LatticePolygon, lattice_points
from .render import RenderSpec, render_svg
from .skeleton import geometric_rotation, skeleton_of
from .subdivision import Triangulation, enumerate_triangulations, is_regular, validate

EXIT_OK, EXIT_OBSTRUCTED, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3
CENSUS_GENERA = range(3, 7)


class _UsageError(Exception):
    pass


def _jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return dataclasses.asdict(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, Multigraph):
        return {"n": obj.n, "edges": [list(e) for e in obj.edges]}
    raise TypeError(f"not serializable: {type(obj).__name__}")


def _dump(data) -> str:
    return json.dumps(data, default=_jsonable, sort_keys=True)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def load_graph(path: str) -> Multigraph:
    text = _read(path)
    if _is_json(text):
        try:
            data = json.loads(text)
            return Multigraph(data["n"], tuple(tuple(e) for e in data["edges"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad graph JSON: {exc}") from None
    try:
        return Multigraph.from_text(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_polygon(path: str) -> LatticePolygon:
    text = _read(path)
    return LatticePolygon.from_json(text) if _is_json(text) else LatticePolygon.from_text(text)


def load_triangulation(path: str) -> Triangulation:
    text = _read(path)
    return Triangulation.from_json(text) if _is_json(text) else Triangulation.from_text(text)


def _emit(args, payload: dict, text: str) -> None:
    print(_dump(payload) if args.format == "json" else text)


# ---------------------------------------------------------------------------
# classify: census tables


def _classify_edges(item) -> dict:
    n, edges = item
    return obstructions.classify(Multigraph(n, edges)).to_json()


def census_reports(genus: int, jobs: int = 1) -> list[dict]:
    graphs = graphcat.enumerate_trivalent(genus)
    items = [(g.n, g.edges) for g in graphs]
    if jobs <= 1:
        return [_classify_edges(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_classify_edges, items, chunksize=4))


def census_summary(reports: list[dict]) -> dict:
    out = {"total": len(reports), "nonplanar": sum(not r["planar"] for r in reports)}
    for name in obstructions.DETECTORS:
        out[name] = sum(bool(r["flags"][name]) for r in reports)
    out["unobstructed"] = sum(r["verdict"] != "obstructed" for r in reports)
    return out


def cmd_classify(args) -> int:
    if args.genus not in CENSUS_GENERA:
        raise _UsageError(f"genus must be in 3..6, got {args.genus}")
    reports = census_reports(args.genus, args.jobs)
    summary = census_summary(reports)
    line = ", ".join(f"{k} {v}" for k, v in summary.items())
    if args.output:
        Path(args.output).write_text(_dump({"genus": args.genus, "summary": summary,
                                            "graphs": reports}) + "\n")
    _emit(args, {"genus": args.genus, "summary": summary}, line)
    return EXIT_OK


# ---------------------------------------------------------------------------
# check, skeleton, antihoney


def cmd_check(args) -> int:
    g = load_graph(args.graph)
    report = obstructions.classify(g)
    payload = report.to_json()
    text = f"{report.verdict}: " + ", ".join(k for k, v in report.flags.items() if v)
    if args.format == "json":
        print(_dump(payload))
    else:
        print(text.rstrip(": "))
    return EXIT_OBSTRUCTED if report.obstructed else EXIT_OK


def _require_valid(t: Triangulation) -> None:
    rep = validate(t)
    if not rep.valid:
        raise InvalidTriangulation("invalid triangulation: " + _dump(dataclasses.asdict(rep)), rep)


def cmd_skeleton(args) -> int:
    t = load_triangulation(args.triangulation)
    _require_valid(t)
    sk, eta = skeleton_of(t)
    if args.output:
        Path(args.output).write_text(sk.to_text())
    if args.svg:
        Path(args.svg).write_text(render_svg(t, RenderSpec(target="all", scale=args.scale), eta))
    payload = {"n": sk.n, "edges": [list(e) for e in sk.edges], "degenerate": eta.degenerate,
               "hash": graphcat.canonical_form(sk).hash}
    if eta.degenerate == "empty":
        text = "empty skeleton (no interior lattice points)"
    else:
        text = sk.to_text().rstrip()
    _emit(args, payload, text)
    return EXIT_OK


def cmd_antihoney(args) -> int:
    if len(args.params) != 6:
        raise _UsageError("antihoney takes six integers k k' l l' m m'")
    pi = antihoney.AntiHoneycombType(*args.params)
    poly = antihoney.build_polygon(pi)
    t = antihoney.build_triangulation(pi)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = args.stem or "antihoney_" + "_".join(str(p) for p in args.params).replace("-", "m")
    poly_path = out / f"{stem}.polygon"
    tri_path = out / f"{stem}.triangulation"
    poly_path.write_text(poly.to_text())
    tri_path.write_text(t.to_text())
    g = len(lattice_points(poly).interior)
    payload = {"type": str(pi), "genus": g, "vertices": [list(v) for v in poly.vertices],
               "polygon_file": str(poly_path), "triangulation_file": str(tri_path)}
    _emit(args, payload, f"genus {g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# enumerate


def cmd_enumerate(args) -> int:
    poly = load_polygon(args.polygon)
    cfg = lattice_points(poly)
    stream = enumerate_triangulations(cfg, budget=args.budget)
    counts = {"triangulations": 0, "regular": 0, "listed": 0}
    classes: dict[str, dict] = {}
    for t in stream:
        counts["triangulations"] += 1
        if args.regular_only:
            if not is_regular(t).regular:
                continue
            counts["regular"] += 1
        row: dict = {"triangles": [list(x) for x in t.triangles]}
        if args.skeletons:
            sk, eta = skeleton_of(t)
            h = graphcat.canonical_form(sk).hash
            row["skeleton"] = h
            if h not in classes:
                info = {"n": sk.n, "edges": [list(e) for e in sk.edges], "count": 0}
                if sk.n and sk.is_trivalent() and graph_genus(sk) >= 3:
                    rep = obstructions.classify(sk, rotation_hint=geometric_rotation(t, eta))
                    info["verdict"] = rep.verdict
                classes[h] = info
            classes[h]["count"] += 1
        counts["listed"] += 1
        if not args.quiet:
            print(_dump(row) if args.format == "json" else "; ".join(
                "{} {} {}".format(*x) for x in t.triangles) + (f"  # {row['skeleton']}" if "skeleton" in row else ""))
    final = {"counts": counts, "truncated": stream.truncated,
             "skeleton_classes": classes if args.skeletons else None}
    if args.format == "json":
        print(_dump(final))
    else:
        text = f"triangulations {counts['triangulations']}"
        if args.regular_only:
            text += f", regular {counts['regular']}"
        if args.skeletons:
            text += f", skeleton classes {len(classes)}: " + " ".join(sorted(classes))
        if stream.truncated:
            text += " (truncated)"
        print(text)
    return EXIT_TRUNCATED if stream.truncated else EXIT_OK


# ---------------------------------------------------------------------------
# render


def cmd_render(args) -> int:
    t = load_triangulation(args.triangulation)
    _require_valid(t)
    spec = RenderSpec(target=args.target, scale=args.scale,
                      point_labels=args.labels, node_labels=args.labels)
    svg = render_svg(t, spec)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--jobs", type=int, default=d(os.cpu_count() or 1),
                        help="worker processes (default: logical cores)")
    parser.add_argument("--format", choices=("json", "text"), default=d("text"))
    parser.add_argument("--seed", type=int, default=d(None),
                        help="reserved; enumeration is deterministic")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="troplanar", description="Tropically planar graph toolkit.")
    _globals(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        _globals(sp, suppress=True)
        sp.set_defaults(func=func)
        return sp

    sp = add("classify", cmd_classify, "classify the trivalent census of one genus")
    sp.add_argument("genus", type=int)
    sp.add_argument("-o", "--output", help="write the full JSON report here")

    sp = add("check", cmd_check, "classify one graph file")
    sp.add_argument("graph")

    sp = add("skeleton", cmd_skeleton, "skeleton of a triangulation file")
    sp.add_argument("triangulation")
    sp.add_argument("-o", "--output", help="write the skeleton graph file here")
    sp.add_argument("--svg", help="write a side-by-side SVG here")
    sp.add_argument("--scale", type=float, default=40.0)

    sp = add("antihoney", cmd_antihoney, "build an anti-honeycomb polygon and triangulation")
    sp.add_argument("params", type=int, nargs="+", metavar="N")
    sp.add_argument("--out-dir", default=".")
    sp.add_argument("--stem", help="file name stem (default derived from the type)")

    sp = add("enumerate", cmd_enumerate, "enumerate unimodular triangulations of a polygon")
    sp.add_argument("polygon")
    sp.add_argument("--regular-only", action="store_true")
    sp.add_argument("--skeletons", action="store_true")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--quiet", action="store_true", help="print only the final line")

    sp = add("render", cmd_render, "render a triangulation, its dual graph or skeleton as SVG")
    sp.add_argument("triangulation")
    sp.add_argument("--target", choices=("triangulation", "dual", "skeleton", "all"),
                    default="triangulation")
    sp.add_argument("--scale", type=float, default=40.0)
    sp.add_argument("--labels", action="store_true")
    sp.add_argument("-o", "--output")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (_UsageError, TroplanarError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
