"""Command-line surface: build, classify, embed, render, verify.

Exit codes: 0 ok, 1 parse error, 2 invalid parameters, 3 not in
catalogue, 4 inconclusive, 5 render error, 6 verification failure,
7 oracle inconclusive.  All commands are deterministic for fixed flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analyze, classify, embed as embed_mod, render as render_mod
from .ball import CayleyBall, certify_ball
from .construct import (TYPE_IDS, TypeParams, construct,
                        construct_presentation_ball, cross_check)
from .errors import (BallTooSmall, ConstructionIncomplete, CubicCayleyError,
                     Inconclusive, InvalidParams, NoSeparatorFound, NotCubic,
                     NotInCatalogue, OracleInconclusive, Overflow, ParseError,
                     RenderError, SpinConflict, WrongType)
from .presentation import parse_presentation

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_NOT_IN_CATALOGUE = 3
EXIT_INCONCLUSIVE = 4
EXIT_RENDER = 5
EXIT_VERIFY = 6
EXIT_ORACLE = 7

_EXIT_FOR = (
    (ParseError, EXIT_PARSE),
    (NotInCatalogue, EXIT_NOT_IN_CATALOGUE),
    ((InvalidParams, NotCubic, WrongType), EXIT_INVALID),
    ((Inconclusive, BallTooSmall, NoSeparatorFound), EXIT_INCONCLUSIVE),
    (RenderError, EXIT_RENDER),
    ((OracleInconclusive, Overflow), EXIT_ORACLE),
    ((ConstructionIncomplete, SpinConflict), EXIT_VERIFY),
)

SMOKE_GRID = [
    ("I", 2, None), ("I", 3, None), ("II", 1, None), ("II", 2, None),
    ("III", 2, None), ("III", 3, None), ("IV", None, 2), ("IV", None, 3),
    ("V", 2, 2), ("V", 2, 3), ("VI", 2, 2), ("VI", 2, 3),
    ("VII", 2, 2), ("VII", 3, 2), ("VIII", None, 1), ("VIII", None, 2),
    ("IX", 1, None), ("IX", 2, None),
]


def _dump(payload, args, default_name=None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _write_text(text, args.output or default_name)


def _write_text(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _type_params(args) -> TypeParams:
    if args.type is None:
        raise InvalidParams("need --type or a presentation")
    n, m = args.n, args.m
    if args.type in ("I", "II", "III", "IX") and n is None and m is not None:
        n, m = m, None  # tolerate --m for the single-parameter n families
    return TypeParams(args.type, n=n, m=m)


def _load_ball(path) -> CayleyBall:
    try:
        with open(path) as fh:
            return CayleyBall.from_json(fh.read())
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise ParseError(f"cannot read ball file {path}: {exc}")


def _source_ball(args) -> CayleyBall:
    """Ball from a file, a presentation string, or type flags."""
    src = getattr(args, "source", None)
    if src is not None and (os.path.exists(src) or src.endswith(".json")):
        return _load_ball(src)
    if src is not None:
        p = parse_presentation(src)
        return construct_presentation_ball(p, args.radius, cap=args.cap)
    tp = _type_params(args)
    return construct(tp, args.radius)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    if args.presentation is not None:
        p = parse_presentation(args.presentation)
        ball = construct_presentation_ball(p, args.radius, cap=args.cap)
    else:
        ball = construct(_type_params(args), args.radius)
    violations = certify_ball(ball, ball.presentation)
    if violations:
        print(f"certificate FAILED: {len(violations)} violations",
              file=sys.stderr)
        return EXIT_VERIFY
    _write_text(ball.to_json() + "\n", args.output)
    print(f"certified ball: {ball.n_vertices} vertices, "
          f"{len(ball.edges)} edges, {len(ball.interior)} interior, "
          f"radius {ball.radius}", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args) -> int:
    if os.path.exists(args.source) or args.source.endswith(".json"):
        ball = _load_ball(args.source)
        report = classify.classify_ball(ball)
    elif args.blind:
        raise InvalidParams("--blind needs a ball file, not a presentation")
    else:
        report = classify.classify_presentation(parse_presentation(args.source))
    _dump(report.to_dict(), args)
    return EXIT_OK


def cmd_embed(args) -> int:
    ball = _source_ball(args)
    if args.type is not None:
        tp = _type_params(args)
    else:
        tp = classify.classify_presentation(ball.presentation).type_params
    emb = embed_mod.embed(ball, tp)
    if not embed_mod.check_consistency(emb):
        print("embedding consistency check failed", file=sys.stderr)
        return EXIT_VERIFY
    _dump(emb.to_dict(), args)
    return EXIT_OK


def cmd_render(args) -> int:
    ball = _source_ball(args)
    rotation = None
    if ball.presentation is not None:
        try:
            tp = (_type_params(args) if args.type is not None else
                  classify.classify_presentation(ball.presentation).type_params)
            rotation = embed_mod.embed(ball, tp).rotation
        except CubicCayleyError:
            rotation = None  # fall back to construction order
    spec = render_mod.RenderSpec(layout=args.layout, depth=args.depth)
    if args.format == "dot":
        _write_text(render_mod.to_dot(ball), args.output)
    elif args.format in ("svg", None):
        _write_text(render_mod.to_svg(ball, spec, rotation), args.output)
    else:
        raise RenderError(f"render cannot emit format {args.format!r}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _smoke_cell(type_id, n, m, radius, cap):
    tp = TypeParams(type_id, n=n, m=m)
    checks = {}
    ball = construct(tp, radius)
    checks["certified"] = not certify_ball(ball, tp.presentation())
    checks["oracle_match"] = cross_check(tp, min(radius, 3), cap=min(cap, 5000))
    emb = embed_mod.embed(ball, tp)
    checks["spin_consistent"] = embed_mod.check_consistency(emb)
    verdict = embed_mod.planarity_check(ball)
    checks["planar"] = isinstance(verdict, embed_mod.Planar)
    if checks["planar"]:
        checks["euler"] = verdict.euler_ok
    rt = classify.classify_presentation(tp.presentation())
    want = {k: v for k, v in (("n", n), ("m", m)) if v is not None}
    checks["classify_roundtrip"] = (rt.type_id == type_id and rt.params == want)
    svg = render_mod.to_svg(ball, render_mod.RenderSpec(depth=min(3, radius)),
                            emb.rotation)
    return tp, checks, svg


def _verify_grid(args) -> dict:
    cells = []
    svg_dir = None
    if args.output:
        svg_dir = args.output
        os.makedirs(svg_dir, exist_ok=True)
    for type_id, n, m in SMOKE_GRID:
        tp, checks, svg = _smoke_cell(type_id, n, m, args.radius, args.cap)
        ok = all(checks.values())
        cells.append({"type": type_id, "n": n, "m": m,
                      "checks": checks, "pass": ok})
        if svg_dir:
            name = f"{type_id}_{n or 0}_{m or 0}.svg"
            with open(os.path.join(svg_dir, name), "w") as fh:
                fh.write(svg)
    return {"grid": cells, "pass": all(c["pass"] for c in cells)}


def _verify_k33_scaffold() -> dict:
    import networkx as nx
    scaffold = embed_mod.case2_scaffold(3)
    suppressed = embed_mod.suppress_degree_two(scaffold)
    simple = nx.Graph(suppressed)
    is_k33 = nx.is_isomorphic(simple, nx.complete_bipartite_graph(3, 3))
    verdict = embed_mod.planarity_check(scaffold)
    witness_ok = (not isinstance(verdict, embed_mod.Planar)
                  and verdict.kind == "K33" and verdict.valid)
    return {"check": "k33-scaffold",
            "suppressed_is_k33": is_k33,
            "witness": witness_ok,
            "pass": is_k33 and witness_ok}


def _verify_separator_involution(ball: CayleyBall) -> dict:
    if ball.presentation is None:
        raise InvalidParams("ball file carries no presentation")
    margin = analyze.sound_margin(ball.presentation)
    cert = analyze.shortest_separating_path(ball, margin, center_only=True)
    ok = bool(cert.checks.get("z_squared_closes"))
    return {"check": "separator-involution",
            "separator": cert.to_dict(), "pass": ok}


def cmd_verify(args) -> int:
    if args.grid:
        report = _verify_grid(args)
        out = (os.path.join(args.output, "grid.json")
               if args.output else None)
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
        _write_text(text, out)
        if not report["pass"]:
            failing = next(c for c in report["grid"] if not c["pass"])
            print(f"first failing cell: {failing['type']} "
                  f"n={failing['n']} m={failing['m']}", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK
    if args.check == "k33-scaffold":
        report = _verify_k33_scaffold()
    elif args.check == "separator-involution":
        if args.source is None:
            raise InvalidParams("separator-involution needs a ball file")
        report = _verify_separator_involution(_load_ball(args.source))
    else:
        raise InvalidParams(f"unknown check {args.check!r}")
    _dump(report, args)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--radius", type=int, default=6)
    sub.add_argument("--cap", type=int, default=100000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--format", choices=("json", "dot", "svg"), default=None)
    sub.add_argument("-o", "--output", default=None)
    sub.add_argument("--type", choices=TYPE_IDS, default=None)
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--m", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubiccayley",
        description="planar cubic Cayley graphs of connectivity two")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("build", help="construct and certify a ball")
    _add_common(p)
    p.add_argument("--presentation", default=None)
    p.set_defaults(func=cmd_build)

    p = subs.add_parser("classify", help="classify a presentation or ball")
    _add_common(p)
    p.add_argument("source", help="presentation string or ball JSON file")
    p.add_argument("--blind", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("embed", help="spin embedding as JSON")
    _add_common(p)
    p.add_argument("source", nargs="?", default=None)
    p.set_defaults(func=cmd_embed)

    p = subs.add_parser("render", help="draw a ball as SVG or DOT")
    _add_common(p)
    p.add_argument("source", nargs="?", default=None)
    p.add_argument("--layout", choices=("radial", "tree", "auto"),
                   default="auto")
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_render)

    p = subs.add_parser("verify", help="run verification checks")
    _add_common(p)
    p.add_argument("source", nargs="?", default=None)
    p.add_argument("--grid", choices=("smoke",), default=None)
    p.add_argument("--check", default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CubicCayleyError as exc:
        for types, code in _EXIT_FOR:
            if isinstance(exc, types):
                print(f"error: {exc}", file=sys.stderr)
                return code
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
