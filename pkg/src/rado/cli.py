"""Command-line entry point: ``rado {generate,classify,slice,verify,transform}``.

Exit codes: 0 on success (for ``verify``: every requested check passed),
1 when a verification fails, 2 on bad usage, unreadable files or invalid
input.
"""

from __future__ import annotations

import argparse
import ast
import math
import sys
from pathlib import Path

import numpy as np

from . import gallery, io, report
from .classify import classify_all
from .errors import RadoError
from .field import double_field
from .mesh import double
from .network import extract_level_network, slice_bound, to_dot, to_obj_polylines
from .regions import clip, quotient_constant_boundary
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _param(text: str):
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        value = ast.literal_eval(raw)
    except (ValueError, SyntaxError):
        value = raw
    return key.replace("-", "_"), value


GENERATOR_ALIASES = {"g": "genus"}


def _emit(doc: dict, json_path: str | None) -> None:
    text = report.dumps(doc)
    sys.stdout.write(text)
    if json_path:
        Path(json_path).write_text(text)


def _load(args):
    m = io.read_mesh(args.mesh)
    return m, io.read_field(m, args.field)


def cmd_generate(args) -> int:
    if args.name not in gallery.GENERATORS:
        print(f"unknown generator {args.name!r}; choose from {', '.join(gallery.GENERATORS)}",
              file=sys.stderr)
        return EXIT_ERROR
    params = {GENERATOR_ALIASES.get(k, k): v for k, v in args.params}
    try:
        m, f = gallery.GENERATORS[args.name](**params)
    except TypeError as exc:
        print(f"bad parameters for {args.name}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.seed is not None:
        f = gallery.gen_random_field(m, args.seed)
    mesh_path = args.mesh or f"{args.name}.off"
    field_path = args.field or f"{args.name}.field"
    io.write_mesh_off(mesh_path, m)
    io.write_field(field_path, f.values)
    return EXIT_OK


def cmd_classify(args) -> int:
    m, f = _load(args)
    _emit(report.classification_doc(classify_all(f)), args.json)
    return EXIT_OK


def cmd_slice(args) -> int:
    m, f = _load(args)
    x = extract_level_network(f, args.t)
    r = slice_bound(f, args.t)
    _emit(report.network_doc(r, x), args.json)
    if args.dot:
        Path(args.dot).write_text(to_dot(x))
    if args.obj:
        Path(args.obj).write_text(to_obj_polylines(x))
    return EXIT_OK


def _theorem_table(f, args):
    a = -math.inf if args.a is None else args.a
    b = math.inf if args.b is None else args.b
    lo, hi = float(f.values.min()), float(f.values.max())
    return {
        "closed": lambda: V.verify_closed(f),
        "maxwell": lambda: V.verify_maxwell(f),
        "boundary": lambda: V.verify_boundary_valence(f),
        "general": lambda: V.verify_general(f),
        "inequality": lambda: V.verify_inequality(f),
        "interval": lambda: V.verify_interval(f, a, b),
        "interval-limit": lambda: V.verify_interval_limit(
            f, lo if args.a is None else a, hi if args.b is None else b),
        "slices": lambda: V.verify_slices(f),
        "quotient": lambda: V.verify_quotient(f),
    }


THEOREM_NAMES = ("closed", "maxwell", "boundary", "general", "inequality", "interval",
                 "interval-limit", "slices", "quotient")


def cmd_verify(args) -> int:
    names = None
    if args.theorems != "all":
        names = [s.strip() for s in args.theorems.split(",") if s.strip()]
        unknown = [n for n in names if n not in THEOREM_NAMES]
        if unknown or not names:
            print(f"unknown theorem {unknown!r}; choose from {', '.join(THEOREM_NAMES)}",
                  file=sys.stderr)
            return EXIT_ERROR
    entries = []
    try:
        m, f = _load(args)
    except RadoError as exc:
        entries.append({"theorem": "input", "pass": False, "error": f"{type(exc).__name__}: {exc}"})
        _emit(report.reports_doc(entries), args.json)
        return EXIT_FAIL
    table = _theorem_table(f, args)
    if names is None:
        reports = V.verify_all(f)
        if args.a is not None or args.b is not None:
            reports.append(table["interval"]())
        entries = [report.theorem_doc(r) for r in reports]
    else:
        for name in names:
            try:
                entries.append(report.theorem_doc(table[name]()))
            except RadoError as exc:
                entries.append({"theorem": name, "pass": False,
                                "error": f"{type(exc).__name__}: {exc}"})
    doc = report.reports_doc(entries)
    _emit(doc, args.json)
    return EXIT_OK if doc["pass"] else EXIT_FAIL


def cmd_transform(args) -> int:
    m, f = _load(args)
    out = args.out
    if args.op == "double":
        d = double(m)
        g = double_field(f, d)
        io.write_mesh_off(f"{out}.off", d.mesh)
        io.write_field(f"{out}.field", g.values)
    elif args.op == "quotient":
        q = quotient_constant_boundary(f)
        io.write_mesh_off(f"{out}.off", q.mesh)
        io.write_field(f"{out}.field", q.field.values)
    else:
        if args.a is None or args.b is None:
            print("clip needs --a and --b", file=sys.stderr)
            return EXIT_ERROR
        c = clip(f, args.a, args.b)
        io.write_off(f"{out}.off", c.point_positions(), c.cells)
        vals = [f.values[p[1]] if p[0] == "v" else p[2] for p in c.points]
        io.write_field(f"{out}.field", vals)
        comp = np.empty(len(c.cells), dtype=int)
        for i, component in enumerate(c.components):
            comp[list(component.cells)] = i
        Path(f"{out}.components").write_text("".join(f"{i}\n" for i in comp))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rado", description="Critical-point counting on PL surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def io_flags(sp, required=True):
        sp.add_argument("--mesh", required=required, help="OFF or OBJ triangle mesh")
        sp.add_argument("--field", required=required, help="field sidecar, one value per line")
        sp.add_argument("--json", help="also write the JSON document here")

    g = sub.add_parser("generate", help="write a gallery surface and field")
    g.add_argument("name", help=", ".join(gallery.GENERATORS))
    g.add_argument("params", nargs="*", type=_param, help="generator parameters as key=value")
    g.add_argument("--mesh", help="output OFF path (default NAME.off)")
    g.add_argument("--field", help="output field path (default NAME.field)")
    g.add_argument("--seed", type=int, help="replace the field with seeded random values")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("classify", help="classify every vertex")
    io_flags(c)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("slice", help="level network and slice bound at one value")
    io_flags(s)
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--dot", help="write the network as Graphviz DOT")
    s.add_argument("--obj", help="write the network as OBJ polylines")
    s.set_defaults(func=cmd_slice)

    v = sub.add_parser("verify", help="check counting identities; exit 1 on any failure")
    io_flags(v)
    v.add_argument("--theorems", default="all", help="comma-separated names, or 'all'")
    v.add_argument("--a", type=float)
    v.add_argument("--b", type=float)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transform", help="double, quotient or clip a surface")
    t.add_argument("op", choices=["double", "quotient", "clip"])
    io_flags(t)
    t.add_argument("--a", type=float)
    t.add_argument("--b", type=float)
    t.add_argument("--out", required=True, help="output prefix")
    t.set_defaults(func=cmd_transform)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except RadoError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
