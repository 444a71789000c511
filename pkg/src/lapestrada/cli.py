"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
JSON floats are written with 17 significant digits so equal runs produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from typing import Optional, Sequence

from . import checks
from .double_star import double_star_table, verify_double_star_ordering
from .enumeration import default_threads, rank_trees, verify_extremal
from .errors import GraphFormatError, InvalidInputError, InvalidParameterError, PreconditionError
from .graph_core import (
    Graph,
    build_broom,
    build_complete,
    build_cycle,
    build_double_star,
    build_path,
    build_star,
    format_edgelist,
    parse_edgelist,
    parse_graph6,
)
from .spectral import (
    adjacency_spectrum,
    estrada_index,
    laplacian_estrada_index,
    laplacian_spectrum,
    spectral_moments_walks,
)
from .transforms import find_sigma_sites, sigma_chain_to_star, sigma_transform

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot encode {x} as JSON")
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _emit_json(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def _read_graph(path: str, fmt: str) -> Graph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph6(text) if fmt == "graph6" else parse_edgelist(text)


# Commands


def cmd_compute(args) -> int:
    g = _read_graph(args.input, args.format)
    report = {
        "n": g.n,
        "m": g.m,
        "adjacency_spectrum": list(adjacency_spectrum(g).values),
        "laplacian_spectrum": list(laplacian_spectrum(g).values),
        "estrada_index": estrada_index(g),
        "laplacian_estrada_index": laplacian_estrada_index(g),
        "moments": list(spectral_moments_walks(g, args.moments).counts),
    }
    if args.output == "json":
        _emit_json(report)
    else:
        for key, val in report.items():
            if isinstance(val, list):
                val = " ".join(_fmt_float(v) if isinstance(v, float) else str(v) for v in val)
            elif isinstance(val, float):
                val = _fmt_float(val)
            print(f"{key}: {val}")
    return EXIT_OK


_BUILDERS = {
    "path": build_path,
    "star": build_star,
    "complete": build_complete,
    "cycle": build_cycle,
    "broom": build_broom,
}


def cmd_build(args) -> int:
    if args.family == "double-star":
        if args.a is None:
            raise UsageError("double-star needs A")
        g = build_double_star(args.n, args.a)
    else:
        if args.a is not None:
            raise UsageError(f"{args.family} takes no A argument")
        g = _BUILDERS[args.family](args.n)
    sys.stdout.write(format_edgelist(g))
    return EXIT_OK


def cmd_sigma(args) -> int:
    g = _read_graph(args.input, args.format)
    if args.chain:
        chain = sigma_chain_to_star(g)
        _emit_json({"steps": len(chain) - 1,
                    "lee": [laplacian_estrada_index(t) for t in chain],
                    "final": format_edgelist(chain[-1])})
        return EXIT_OK
    sites = find_sigma_sites(g)
    if args.vertex is None:
        _emit_json({"sites": [{"v": s.v, "u": s.u, "pendants": list(s.pendants)} for s in sites]})
        return EXIT_OK
    match = [s for s in sites if s.v == args.vertex]
    if not match:
        raise UsageError(f"vertex {args.vertex} is not a sigma site")
    sys.stdout.write(format_edgelist(sigma_transform(g, match[0])))
    return EXIT_OK


def _finish(report: dict) -> int:
    _emit_json(report)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_verify_identity(args) -> int:
    return _finish(checks.verify_identity(args.samples, args.n_min, args.n, args.seed,
                                          even_cycles=not args.no_cycles, tol=args.tol))


def cmd_verify_sigma(args) -> int:
    return _finish(checks.verify_sigma(args.samples, args.n_max, args.moment_samples,
                                       args.moment_n_max, args.seed))


def cmd_verify_extremal(args) -> int:
    return _finish(verify_extremal(args.max_n, args.min_n, threads=args.threads))


def cmd_rank(args) -> int:
    r = rank_trees(args.n, args.top, args.bottom, threads=args.threads)
    _emit_json(r.to_json())
    return EXIT_OK


_TABLE_COLUMNS = ["n", "a", "b", "x1", "x2", "x3", "lee_closed_form", "margin_to_next"]


def cmd_double_star(args) -> int:
    if args.action == "table":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(_TABLE_COLUMNS)
        for row in double_star_table(args.n_min, args.n_max):
            writer.writerow(["" if row[c] is None else
                             (_fmt_float(row[c]) if isinstance(row[c], float) else row[c])
                             for c in _TABLE_COLUMNS])
        return EXIT_OK
    reports = [verify_double_star_ordering(n) for n in range(max(5, args.n_min), args.n_max + 1)]
    return _finish({"check": "double-star-ordering", "results": reports,
                    "ok": all(r["ok"] for r in reports)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lapestrada",
        description="Estrada and Laplacian Estrada indices of graphs and trees.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def graph_input(p):
        p.add_argument("input", help="graph file, or '-' for stdin")
        p.add_argument("--format", choices=["edgelist", "graph6"], default="edgelist")

    p = sub.add_parser("compute", help="spectra, EE, LEE and closed-walk counts of a graph")
    graph_input(p)
    p.add_argument("--moments", type=int, default=10, metavar="K", help="highest moment (default 10)")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("build", help="write a named graph as an edge list")
    p.add_argument("family", choices=sorted(_BUILDERS) + ["double-star"])
    p.add_argument("n", type=int)
    p.add_argument("a", type=int, nargs="?", help="smaller star size for double-star")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("sigma", help="list sigma sites, apply one, or run the chain to the star")
    graph_input(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--vertex", type=int, help="apply the transform at this site vertex")
    g.add_argument("--chain", action="store_true", help="deepest-leaf chain to the star (trees)")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("verify-identity", help="line-graph identity on random trees and even cycles")
    p.add_argument("--n", type=int, default=40, help="largest vertex count (default 40)")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--no-cycles", action="store_true", help="skip the even cycles")
    p.add_argument("--tol", type=float, default=checks.IDENTITY_REL_TOL,
                   help="relative tolerance (default 1e-8)")
    p.set_defaults(func=cmd_verify_identity)

    p = sub.add_parser("verify-sigma", help="LEE increase and moment domination under sigma")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--moment-samples", type=int, default=100)
    p.add_argument("--moment-n-max", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify_sigma)

    p = sub.add_parser("verify-extremal", help="exhaustive extremal-tree check")
    p.add_argument("--max-n", type=int, default=14)
    p.add_argument("--min-n", type=int, default=5)
    p.add_argument("--threads", type=int, default=default_threads())
    p.set_defaults(func=cmd_verify_extremal)

    p = sub.add_parser("rank", help="rank all trees on N vertices by LEE")
    p.add_argument("n", type=int)
    p.add_argument("--top", type=int, default=4)
    p.add_argument("--bottom", type=int, default=1)
    p.add_argument("--threads", type=int, default=default_threads())
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("double-star", help="double-star root table (CSV) or ordering check")
    p.add_argument("action", choices=["table", "verify"])
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=20)
    p.set_defaults(func=cmd_double_star)
    return parser


def _validate(args) -> None:
    if getattr(args, "moments", 0) < 0:
        raise UsageError("--moments must be nonnegative")
    for name in ("samples", "moment_samples"):
        if getattr(args, name, 0) < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
    if getattr(args, "threads", 1) < 1:
        raise UsageError("--threads must be >= 1")
    if not getattr(args, "tol", 1.0) > 0:
        raise UsageError("--tol must be positive")
    if args.command == "verify-identity" and not 2 <= args.n_min <= args.n:
        raise UsageError("need 2 <= --n-min <= --n")
    if args.command == "verify-sigma" and (args.n_max < 4 or args.moment_n_max < 4):
        raise UsageError("--n-max and --moment-n-max must be >= 4")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        _validate(args)
        return args.func(args)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InvalidParameterError, InvalidInputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
