"""Command line surface: render | verify | orbit | irrational | stats."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .params import InvalidParameter, PlaidError, make_param
from .grid import trace_polygons
from .pet import (
    BadOffset,
    irrational_tiling,
    pet_region,
    special_orbit,
    vector_polygon,
)
from .analysis import gap_radius, polygon_stats
from .serialize import polygon_document, emit, report_line
from .svgout import LAYERS, RenderConfig, render_svg
from .verify import SUITES, run_suite, suite_golden, suite_irrational


def golden_dir() -> str:
    """Golden corpus location; override with PLAID_GOLDEN_DIR."""
    return os.environ.get(
        "PLAID_GOLDEN_DIR",
        os.path.join(os.path.dirname(os.path.dirname(
            os.path.dirname(os.path.abspath(__file__)))), "tests", "golden"))


def _parse_window(text: str):
    parts = [int(v) for v in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window is x0,y0,x1,y1")
    return tuple(parts)


def _parse_param_list(text: str):
    out = []
    for item in text.split(","):
        p, q = item.split("/")
        out.append(make_param(int(p), int(q)))
    return out


def _add_pq(sub):
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--q", type=int, required=True)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_render(args) -> int:
    param = make_param(args.p, args.q)
    cfg = RenderConfig(
        window=args.window,
        scale=args.scale,
        layers=tuple(args.layers.split(",")),
        palette=dict(kv.split("=") for kv in args.palette.split(",")) if
        args.palette else {},
    )
    _emit(render_svg(param, cfg), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.suite == "irrational":
        records = suite_irrational()
    elif args.suite == "golden":
        records = suite_golden(golden_dir())
    else:
        params = _parse_param_list(args.params) if args.params else None
        records = run_suite(args.suite, max_omega=args.max_omega,
                            params=params, jobs=args.jobs)
    lines = [report_line(r) for r in records]
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all(r["ok"] for r in records) else 1


def cmd_orbit(args) -> int:
    param = make_param(args.p, args.q)
    try:
        x, y = (Fraction(v) for v in args.c.split(","))
        if x.denominator != 2 or y.denominator != 2:
            raise ValueError
    except ValueError:
        print(f"error: --c must be a tile center like 1/2,1/2, got {args.c}",
              file=sys.stderr)
        return 2
    orbit = special_orbit(param, (x, y))
    pg = vector_polygon(param, (x, y))
    doc = {
        "param": [args.p, args.q],
        "center": [str(x), str(y)],
        "length": len(orbit.vectors),
        "states": [[str(s.That), str(s.U1), str(s.U2)] for s in orbit.states],
        "regions": [pet_region(param, s).name for s in orbit.states],
        "vectors": [list(v) for v in orbit.vectors],
        "polygon": [[str(a), str(b)] for a, b in pg.vertices] if pg else [],
    }
    if args.oriented:
        doc["labels"] = list(orbit.labels)
    _emit(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", args.out)
    return 0


def cmd_irrational(args) -> int:
    P = Fraction(args.P)
    offset = tuple(Fraction(v) for v in args.offset.split(","))
    if len(offset) != 3:
        print("error: --offset needs three rationals", file=sys.stderr)
        return 2
    eps = Fraction(args.eps) if args.eps else Fraction(1, 2 ** 40)
    try:
        r = irrational_tiling(P, offset, args.window, eps)
    except BadOffset as exc:
        doc = {"ok": False, "error": "BadOffset", "detail": str(exc),
               "suggested_offset": [str(v) for v in exc.suggestion]}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
        return 1
    doc = {
        "ok": r["ok"],
        "min_wall_distance": str(r["min_wall_distance"]),
        "closest_center": list(r["closest_center"]),
        "mismatches": r["mismatches"],
    }
    if args.tiles:
        doc["tiles"] = {f"{n},{m}": lab for (n, m), lab in
                        sorted(r["labels"].items())}
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0 if r["ok"] else 1


def cmd_stats(args) -> int:
    param = make_param(args.p, args.q)
    blocks = None
    if args.blocks:
        blocks = [(int(b), 0) for b in args.blocks.split(",")]
    st = polygon_stats(param, blocks)
    doc = {
        "param": [args.p, args.q],
        "count": st.count,
        "max_diameter": str(st.max_diameter),
        "max_x_diameter": str(st.max_x_diameter),
        "per_block": {f"{bi},{bj}": c for (bi, bj), c in
                      sorted(st.per_block.items())},
    }
    if args.gap_window:
        doc["gap_radius"] = str(gap_radius(param, args.gap_window))
        doc["gap_note"] = "finite trend observable, not an asymptotic claim"
    if args.document:
        polys = {b: trace_polygons(param, b) for b in st.per_block}
        _emit(emit(polygon_document(param, sorted(st.per_block), polys)),
              args.out)
        return 0
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="plaid",
        description="Exact engine for the plaid model: pictures, theorem "
                    "suites, orbits, and irrational-parameter tilings.")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("render", help="emit an SVG picture")
    _add_pq(r)
    r.add_argument("--window", type=_parse_window, required=True)
    r.add_argument("--scale", type=int, default=24)
    r.add_argument("--layers", default="polygons",
                   help=f"comma list from {','.join(LAYERS)}")
    r.add_argument("--palette", default="",
                   help="comma list of layer=color overrides")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)

    v = sub.add_parser("verify", help="run a theorem suite, JSON line per "
                                      "parameter, exit 0 iff all ok")
    v.add_argument("--suite", required=True,
                   choices=sorted(SUITES) + ["golden", "irrational"])
    v.add_argument("--max-omega", type=int)
    v.add_argument("--params", help="explicit list like 3/8,4/11")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("orbit", help="dump one special orbit")
    _add_pq(o)
    o.add_argument("--c", required=True, help="tile center, e.g. 1/2,1/2")
    o.add_argument("--oriented", action="store_true")
    o.add_argument("--out")
    o.set_defaults(func=cmd_orbit)

    i = sub.add_parser("irrational", help="offset tiling at any exact P")
    i.add_argument("--P", required=True, help="rational in (0,1), e.g. 34/89")
    i.add_argument("--offset", required=True, help="three rationals a,b,c")
    i.add_argument("--window", type=_parse_window, required=True)
    i.add_argument("--eps", help="wall-distance threshold (default 2^-40)")
    i.add_argument("--tiles", action="store_true", help="include tile labels")
    i.add_argument("--out")
    i.set_defaults(func=cmd_irrational)

    s = sub.add_parser("stats", help="polygon census and trend observables")
    _add_pq(s)
    s.add_argument("--blocks", help="comma list of fundamental block indices")
    s.add_argument("--gap-window", type=_parse_window)
    s.add_argument("--document", action="store_true",
                   help="emit the polygon document instead of statistics")
    s.add_argument("--out")
    s.set_defaults(func=cmd_stats)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameter, PlaidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
