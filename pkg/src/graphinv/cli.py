"""Command line front end. Every subcommand is a thin wrapper over a library call."""

from __future__ import annotations

import argparse
import json
import sys

from . import clp, compactness
from .elements import ZERO, d_class_members, d_class_size, enumerate_elements, factorizations
from .errors import InvariantViolation, PreconditionError
from .graph import Graph, GraphError
from .io import DocumentError, ExpressionError, format_element, load_graph, parse_element

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATIONS = 2
EXIT_INTERNAL = 70


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _find_vertex(g: Graph, text: str):
    for v in g.vertices:
        if str(v) == text:
            return v
    raise GraphError(f"unknown vertex {text!r}", field="vertex")


def cmd_validate(g: Graph, args) -> tuple[int, dict]:
    return EXIT_OK, {"valid": True, "name": g.name,
                     "vertices": len(g.vertices), "edges": len(g.edges)}


def cmd_analyze(g: Graph, args) -> tuple[int, dict]:
    return EXIT_OK, compactness.admits_compact_topology(g, args.cross_check_depth).as_dict()


def cmd_decompose(g: Graph, args) -> tuple[int, dict]:
    d = clp.decompose(g)
    return (EXIT_OK if d.ok else EXIT_VIOLATIONS), d.as_dict()


def cmd_witness(g: Graph, args) -> tuple[int, dict]:
    site = _find_vertex(g, args.site)
    d = clp.decompose(g)
    bundles = [clp.obstruction_witness(g, v, args.witness_depth).as_dict()
               for v in d.violations if v.site == site]
    return EXIT_OK, {"site": str(site), "witnesses": bundles}


def cmd_mul(g: Graph, args) -> tuple[int, dict]:
    return EXIT_OK, {"result": format_element(parse_element(g, args.expr))}


def cmd_enumerate(g: Graph, args) -> tuple[int, dict]:
    elems = enumerate_elements(g, args.L)
    return EXIT_OK, {"L": args.L, "count": len(elems), "elements": [format_element(x) for x in elems]}


def cmd_dclass(g: Graph, args) -> tuple[int, dict]:
    v = _find_vertex(g, args.vertex)
    size = d_class_size(g, v)
    return EXIT_OK, {"vertex": str(v), "size": size.count if size.is_finite else "infinite",
                     "L": args.L, "members": [format_element(x) for x in d_class_members(g, v, args.L)]}


def cmd_factorizations(g: Graph, args) -> tuple[int, dict]:
    t = parse_element(g, args.expr)
    if t is ZERO:
        raise ExpressionError("factorizations need a non-zero target", 0)
    pairs = factorizations(g, t, args.L)
    return EXIT_OK, {"target": format_element(t), "L": args.L, "count": len(pairs),
                     "pairs": [[format_element(a), format_element(b)] for a, b in pairs]}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphinv", description="Graph inverse semigroup toolkit")
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    p.add_argument("--witness-depth", type=int, default=clp.DEFAULT_WITNESS_DEPTH)
    p.add_argument("--cross-check-depth", type=int, default=compactness.DEFAULT_CROSS_CHECK_DEPTH)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *extra):
        s = sub.add_parser(name)
        s.add_argument("file")
        for a in extra:
            a(s)
        s.set_defaults(fn=fn)
        return s

    depth = lambda s: s.add_argument("-L", type=int, default=3)  # noqa: E731
    add("validate", cmd_validate)
    add("analyze", cmd_analyze)
    add("decompose", cmd_decompose)
    add("witness", cmd_witness, lambda s: s.add_argument("--site", required=True))
    add("mul", cmd_mul, lambda s: s.add_argument("expr"))
    add("enumerate", cmd_enumerate, depth)
    add("dclass", cmd_dclass, lambda s: s.add_argument("vertex"), depth)
    add("factorizations", cmd_factorizations, lambda s: s.add_argument("expr"), depth)
    return p


def render(doc: dict, pretty: bool = False) -> str:
    if not pretty:
        return json.dumps(doc, ensure_ascii=False, sort_keys=False) + "\n"
    lines = []
    for k, v in doc.items():
        if isinstance(v, list) and v and not isinstance(v[0], (dict, list)):
            lines.append(f"{k}:")
            lines.extend(f"  {x}" for x in v)
        elif isinstance(v, (dict, list)):
            lines.append(f"{k}: {json.dumps(v, ensure_ascii=False, indent=2)}")
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def run_command(argv) -> tuple[int, str]:
    """Run one CLI invocation; returns (exit code, text for stdout)."""
    try:
        args = build_parser().parse_args(list(argv))
        for name in ("L", "witness_depth", "cross_check_depth"):
            if getattr(args, name, 0) < (1 if name == "cross_check_depth" else 0):
                raise _Usage(f"{name} must be non-negative")
        g = load_graph(args.file)
        code, doc = args.fn(g, args)
        return code, render(doc, args.pretty)
    except InvariantViolation as exc:
        return EXIT_INTERNAL, render({"error": "invariant violation", "detail": str(exc)})
    except (_Usage, DocumentError, ExpressionError, GraphError, PreconditionError, OSError) as exc:
        return EXIT_INPUT, render({"error": type(exc).__name__, "detail": str(exc)})


def main(argv=None) -> int:
    code, out = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
