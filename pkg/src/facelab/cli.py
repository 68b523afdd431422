"""Command-line interface.

Subcommands: gen, arrange, face, overlay, plan, ds, bench, render.
Exit codes: 0 success, 2 input error, 3 unreachable (plan), 4 invariant
violation during bench.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arrangement as arrmod
from . import bench as benchmod
from . import segio
from .arrangement import InputError, build
from .boundary import boundary_symbol_sequence, linearize, sequence_tokens
from .dsseq import (
    BudgetExceeded,
    SymbolSequence,
    Violation,
    active_profile,
    is_ds,
    lambda_brute,
)
from .generators import KINDS, generate, scenario
from .geom import Point, rat
from .overlay import (
    marked_faces_complexity,
    marked_instance,
    single_face_overlay,
)
from .planner import PlanPath, plan, plan_problem
from .svg import render_svg

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNREACHABLE = 3
EXIT_INVARIANT = 4


def _parse_point(values) -> Point:
    return Point(rat(values[0]), rat(values[1]))


def _parse_params(pairs) -> dict:
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not name=value")
        name, value = item.split("=", 1)
        try:
            out[name] = int(value)
        except ValueError:
            out[name] = value
    return out


def cmd_gen(args) -> int:
    params = _parse_params(args.param)
    sc = scenario(args.kind, seed=args.seed, **params)
    inst = generate(sc)
    segio.write_instance(
        args.out,
        inst,
        metadata={"kind": sc.kind, "seed": sc.seed, "parameters": dict(sc.parameters)},
    )
    print(f"wrote {args.out}.seg and {args.out}.json ({inst.n} segments, "
          f"{inst.t} collections, {inst.k} points)")
    return EXIT_OK


def cmd_arrange(args) -> int:
    segs = segio.read_segments(args.input)
    arr = build(segs, method=args.method)
    summary = {
        "vertices": arr.num_vertices,
        "edges": arr.num_edges,
        "faces": arr.num_faces,
        "total_complexity": arr.total_complexity(),
        "euler_ok": arr.check_euler(),
        "per_face": [
            dict(id=f.id, unbounded=f.is_unbounded, **arr.face_complexity(f.id))
            for f in arr.faces
        ],
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_face(args) -> int:
    segs = segio.read_segments(args.input)
    arr = build(segs)
    p = _parse_point(args.point)
    loc = arr.locate(p)
    if loc.kind != "face":
        raise InputError(f"point lies on the arrangement ({loc.kind} {loc.index})")
    out = {
        "face": loc.index,
        "complexity": arr.face_complexity(loc.index),
    }
    if args.sequence:
        out["circular"] = [
            sequence_tokens(s) for s in boundary_symbol_sequence(arr, loc.index)
        ]
        out["linearized"] = [sequence_tokens(s) for s in linearize(arr, loc.index)]
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_overlay(args) -> int:
    collections = [
        segio.read_segments(path, id_prefix=f"c{i}.")
        for i, path in enumerate(args.collections)
    ]
    p = _parse_point(args.point)
    inst = marked_instance(collections, [p])
    rep = single_face_overlay(inst, p)
    mc = marked_faces_complexity(inst)
    from .overlay import refine

    ref = refine(inst)
    k, t, C = inst.k, inst.t, mc.total
    out = {
        "face_complexity": rep.face.complexity,
        "components": rep.face.components,
        "per_level_complexity": rep.per_level_complexity,
        "L": ref.L,
        "C": C,
        "splitting_bound": 2 * k * t + 2 * C,
        "splitting_margin": ref.L / (2 * k * t + 2 * C),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_plan(args) -> int:
    robot = segio.read_segments(args.robot, id_prefix="r")
    pins = segio.read_points(args.pins)
    start = _parse_point(args.from_)
    goal = _parse_point(args.to)
    center = _parse_point(args.center) if args.center else None
    prob = plan_problem(robot, pins, start, goal, center)
    result = plan(prob)
    if not isinstance(result, PlanPath):
        print(json.dumps({"reachable": False}))
        return EXIT_UNREACHABLE
    doc = {
        "reachable": True,
        "path": [segio.point_json(p) for p in result.waypoints],
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.svg:
        from .planner import forbidden_families

        fams = forbidden_families(prob)
        arr = build([s for fam in fams for s in fam])
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(arr, points=[start, goal], path=list(result.waypoints)))
    return EXIT_OK


def cmd_ds(args) -> int:
    tokens = sys.stdin.read().split()
    s = SymbolSequence(tuple(tokens), circular=False)
    verdict = is_ds(s, args.order)
    out = {
        "valid": verdict == "valid",
        "violation": None
        if verdict == "valid"
        else {"kind": verdict.kind, "positions": list(verdict.positions)},
        "profile": active_profile(s),
        "lambda": None,
    }
    nsym = len(set(tokens))
    try:
        out["lambda"] = lambda_brute(nsym, args.order)
    except BudgetExceeded:
        pass
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_bench(args) -> int:
    suite = benchmod.SUITES.get(args.suite)
    if suite is None:
        raise InputError(f"unknown suite {args.suite!r}")
    try:
        reports = benchmod.run(suite(), trials=args.trials, seed=args.seed)
    except benchmod.InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    text = benchmod.reports_json(reports, args.suite, args.trials, args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({len(reports)} reports)")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_render(args) -> int:
    segs = segio.read_segments(args.input)
    arr = build(segs)
    highlight = []
    points = []
    if args.highlight_point:
        p = _parse_point(args.highlight_point)
        loc = arr.locate(p)
        if loc.kind != "face":
            raise InputError("highlight point lies on the arrangement")
        highlight.append(loc.index)
        points.append(p)
    text = render_svg(arr, highlight_faces=highlight, points=points)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="facelab",
        description="Exact segment arrangements, face complexity measurements, "
        "and translational motion planning.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a scenario instance")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--param", action="append", metavar="NAME=VALUE")
    g.add_argument("--out", required=True, help="output prefix")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("arrange", help="build an arrangement and summarize it")
    a.add_argument("--input", required=True)
    a.add_argument("--method", choices=("sweep", "quadratic"), default="sweep")
    a.set_defaults(func=cmd_arrange)

    f = sub.add_parser("face", help="inspect the face containing a point")
    f.add_argument("--input", required=True)
    f.add_argument("--point", nargs=2, required=True, metavar=("X", "Y"))
    f.add_argument("--sequence", action="store_true")
    f.set_defaults(func=cmd_face)

    o = sub.add_parser("overlay", help="single face in an overlay of collections")
    o.add_argument("--collections", nargs="+", required=True)
    o.add_argument("--point", nargs=2, required=True, metavar=("X", "Y"))
    o.set_defaults(func=cmd_overlay)

    p = sub.add_parser("plan", help="translational motion planning")
    p.add_argument("--robot", required=True)
    p.add_argument("--pins", required=True)
    p.add_argument("--from", dest="from_", nargs=2, required=True, metavar=("X", "Y"))
    p.add_argument("--to", nargs=2, required=True, metavar=("X", "Y"))
    p.add_argument("--center", nargs=2, metavar=("X", "Y"))
    p.add_argument("--svg")
    p.set_defaults(func=cmd_plan)

    d = sub.add_parser("ds", help="validate a symbol sequence from stdin")
    d.add_argument("--order", type=int, default=3)
    d.set_defaults(func=cmd_ds)

    b = sub.add_parser("bench", help="run a measurement suite")
    b.add_argument("--suite", default="default")
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="render an arrangement as SVG")
    r.add_argument("--input", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--highlight-point", nargs=2, metavar=("X", "Y"))
    r.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
