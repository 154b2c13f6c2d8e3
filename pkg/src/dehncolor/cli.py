"""Command-line interface: ``dehncolor <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import coloring, diagram, doubling, moves, tuples, weights
from .coloring import CapExceeded, ColoringError
from .diagram import DiagramError
from .moves import MoveError
from .tuples import TupleError

FILE_GRAMMAR = """\
diagram files
  UTF-8 JSON with this shape:

    {"nodes": [NODE, ...], "arcs": [[DART, DART], ...], "outer": [DART, ...]}

    NODE = {"id": ID, "kind": "vertex", "darts": [DART, ...]}
         | {"id": ID, "kind": "crossing", "darts": [D0, D1, D2, D3], "over": 0 | 1}

  - "darts" lists the half-edges at a node in clockwise order.
  - A crossing has exactly four darts; its strands are D0-D2 and D1-D3 and
    "over" selects the pair on top (0: D0-D2, 1: D1-D3).
  - Every dart appears in exactly one node and exactly one arc.
  - The map must be planar (Euler characteristic 2 per component).
  - "outer" is optional: one dart per connected component whose face is the
    unbounded region.
  FILE may be "-" to read standard input.

invariant specs (--f)
  tau | eps | mu | mutau:T | prod(S1,S2,...)

environment
  DEHNCOLOR_CAP  default enumeration cap (currently @CAP@)

exit codes
  0 success, 1 domain error ("error: <category>: ..."), 2 usage error
"""


class Failure(Exception):
    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


def _read(path: str) -> diagram.Diagram:
    try:
        if path == "-":
            return diagram.parse(sys.stdin.read())
        return diagram.load(path)
    except OSError as exc:
        raise Failure("io", f"{path}: {exc.strerror}") from None


def _spec(text: str, p: int) -> tuples.InvariantSpec:
    spec = tuples.parse_spec(text)
    spec.check(p)
    return spec


def _tuple_arg(text: str, p: int) -> tuple[int, ...]:
    try:
        entries = [int(x) for x in text.split(",")]
    except ValueError:
        raise TupleError(f"bad tuple {text!r}") from None
    return tuples.make_tuple(entries, p)


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=False))
    else:
        print(text)


# -- subcommands ------------------------------------------------------------

def cmd_validate(args):
    d = _read(args.file)
    s = d.summary()
    text = "\n".join(f"{k}: {v}" for k, v in s.items())
    _emit(args, "valid\n" + text, {"valid": True, **s})


def cmd_regions(args):
    d = _read(args.file)
    lines, data = [], []
    for r, corners in enumerate(d.regions):
        desc = " ".join(f"{n}:{i}" for n, i in corners)
        lines.append(f"r{r}: {desc}")
        data.append({"region": r, "corners": [[n, i] for n, i in corners]})
    _emit(args, "\n".join(lines), data)


def cmd_count(args):
    d = _read(args.file)
    n = coloring.count_colorings(d, args.p)
    _emit(args, str(n), {"p": args.p, "count": n})


def cmd_enumerate(args):
    d = _read(args.file)
    rows = []
    for k, c in enumerate(coloring.enumerate_colorings(d, args.p, cap=args.cap)):
        if args.limit is not None and k >= args.limit:
            break
        rows.append(c)
    if args.json:
        print(json.dumps([list(c) for c in rows]))
    else:
        for c in rows:
            print(" ".join(f"r{r}={x}" for r, x in enumerate(c)))


def cmd_phi(args):
    d = _read(args.file)
    value = weights.phi(d, args.p, _spec(args.f, args.p), cap=args.cap)
    _emit(args, "\n".join(value.lines()), value.to_json())


def cmd_tuple(args):
    t = _tuple_arg(args.t, args.p)
    if args.action == "eval":
        if not args.f:
            raise Failure("usage", "tuple eval needs --f")
        v = tuples.evaluate(_spec(args.f, args.p), t, args.p)
        _emit(args, tuples.format_value(v), tuples.json_value(v))
    else:
        orb = sorted(tuples.orbit(t, args.p, cap=args.cap))
        _emit(args, "\n".join(",".join(map(str, u)) for u in orb), [list(u) for u in orb])


def cmd_dedges(args):
    d = _read(args.file)
    sets = doubling.doublable_sets(d, args.r)
    _emit(args, "\n".join(",".join(s) for s in sets), [list(s) for s in sets])


def cmd_double(args):
    d = _read(args.file)
    edges = [e for e in args.edges.split(",") if e]
    sys.stdout.write(doubling.double(d, edges).dumps())


def cmd_phi_r(args):
    d = _read(args.file)
    values = doubling.phi_r(d, args.p, _spec(args.f, args.p), args.r, cap=args.cap)
    blocks = []
    for k, v in enumerate(values):
        blocks.append(f"[{k}]\n" + "\n".join(v.lines()))
    _emit(args, "\n".join(blocks), [v.to_json() for v in values])


def cmd_count_r(args):
    d = _read(args.file)
    counts = doubling.count_r(d, args.p, args.r)
    _emit(args, "\n".join(map(str, counts)), counts)


def _site_label(kind: str, k: int) -> str:
    return f"{kind}:{k}"


def _resolve_site(d, site_id: str) -> moves.MoveSite:
    kind, _, index = site_id.rpartition(":")
    if kind not in moves.KINDS or not index.isdigit():
        raise Failure("usage", f"site id must look like KIND:INDEX, got {site_id!r}")
    sites = moves.find_sites(d, kind)
    k = int(index)
    if k >= len(sites):
        raise MoveError(f"{kind} has only {len(sites)} sites")
    return sites[k]


def cmd_moves(args):
    d = _read(args.file)
    if args.action == "list":
        kinds = [args.kind] if args.kind else list(moves.KINDS)
        lines, data = [], []
        for kind in kinds:
            for k, s in enumerate(moves.find_sites(d, kind)):
                label = _site_label(kind, k)
                lines.append(f"{label} {s.direction} {' '.join(s.anchor)}"
                             + (f" [{' '.join(map(str, s.variant))}]" if s.variant else ""))
                data.append({"site": label, "direction": s.direction,
                             "anchor": list(s.anchor), "variant": list(s.variant)})
        _emit(args, "\n".join(lines), data)
    elif args.action == "apply":
        if not args.site:
            raise Failure("usage", "moves apply needs --site")
        sys.stdout.write(moves.apply(d, _resolve_site(d, args.site)).dumps())
    else:
        out = moves.random_walk(d, args.steps, args.seed, max_crossings=args.max_crossings)
        sys.stdout.write(out.dumps())


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dehncolor",
        description="Dehn colorings and vertex-weight invariants of spatial-graph diagrams.",
        epilog=FILE_GRAMMAR.replace("@CAP@", str(coloring.DEFAULT_CAP)),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, file=True, p=False, f=False, cap=False, actions=None):
        sp = sub.add_parser(name, help=help_text, description=help_text,
                            epilog=FILE_GRAMMAR.replace("@CAP@", str(coloring.DEFAULT_CAP)),
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="structured output")
        if actions:
            sp.add_argument("action", choices=actions)
        if p:
            sp.add_argument("--p", type=int, required=True, help="modulus p >= 2")
        if f:
            sp.add_argument("--f", required=True, help="invariant spec")
        if cap:
            sp.add_argument("--cap", type=int, default=coloring.DEFAULT_CAP,
                            help="enumeration cap (default %(default)s)")
        if file:
            sp.add_argument("--format", choices=["dg"], default="dg", help="input format")
            sp.add_argument("file", metavar="FILE")
        return sp

    add("validate", cmd_validate, "check a diagram and print a summary")
    add("regions", cmd_regions, "list regions with their corners")
    add("count", cmd_count, "number of Dehn p-colorings", p=True)
    sp = add("enumerate", cmd_enumerate, "list Dehn p-colorings in canonical order", p=True, cap=True)
    sp.add_argument("--limit", type=int, help="print at most N colorings")
    add("phi", cmd_phi, "vertex-weight invariant of an Euler diagram", p=True, f=True, cap=True)

    sp = add("tuple", cmd_tuple, "evaluate tuple invariants or list an orbit", file=False, p=True,
             actions=["eval", "orbit"])
    sp.add_argument("--t", required=True, help="comma separated residues")
    sp.add_argument("--f", help="invariant spec (eval)")
    sp.add_argument("--cap", type=int, default=100_000, help="orbit size cap")

    sp = add("dedges", cmd_dedges, "doublable edge sets of size r")
    sp.add_argument("--r", type=int, required=True)
    sp = add("double", cmd_double, "double the given edges and print the diagram")
    sp.add_argument("--edges", required=True, help="comma separated edge ids")
    sp = add("phi-r", cmd_phi_r, "phi over all doubles of r-edge sets", p=True, f=True, cap=True)
    sp.add_argument("--r", type=int, required=True)
    sp = add("count-r", cmd_count_r, "coloring counts over all doubles of r-edge sets", p=True)
    sp.add_argument("--r", type=int, required=True)

    sp = add("moves", cmd_moves, "list, apply or randomly chain Reidemeister moves",
             actions=["list", "apply", "scramble"])
    sp.add_argument("--kind", choices=moves.KINDS)
    sp.add_argument("--site", help="KIND:INDEX as printed by 'moves list'")
    sp.add_argument("--steps", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-crossings", type=int, default=None,
                    help="stop adding crossings beyond this size")
    return parser


def _category(exc: Exception) -> str:
    if isinstance(exc, DiagramError):
        return "syntax" if exc.rule == "syntax" else "invalid-diagram"
    if isinstance(exc, CapExceeded):
        return "cap-exceeded"
    if isinstance(exc, ColoringError):
        return "coloring"
    if isinstance(exc, TupleError):
        return "tuple"
    if isinstance(exc, MoveError):
        return "move"
    return "domain"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "p", None) is not None:
            try:
                tuples.check_modulus(args.p)
            except TupleError as exc:
                return _fail(args, "domain", str(exc))
        args.func(args)
    except Failure as exc:
        if exc.category == "usage":
            parser.error(str(exc))
        return _fail(args, exc.category, str(exc))
    except (DiagramError, ColoringError, TupleError, MoveError) as exc:
        return _fail(args, _category(exc), str(exc))
    except ValueError as exc:
        return _fail(args, "domain", str(exc))
    return 0


def _fail(args, category: str, message: str) -> int:
    if getattr(args, "json", False):
        print(json.dumps({"error": category, "message": message}))
    print(f"error: {category}: {message}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
