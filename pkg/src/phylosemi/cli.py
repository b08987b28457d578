"""Command-line interface.

Exit status: 0 success (or "yes"), 1 "no", 2 usage, parse or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .atlas import parse_range, run_atlas
from .classify import TAG_NETWORK, classify_betti2, generator_tag
from .decompose import DecompositionError, decompose_full, split_deg3
from .families import FAMILIES, family
from .generators import is_indecomposable, minimal_generators
from .graph import GraphError, cycle_legs, first_betti_number, suppress_degree2
from .io import (FormatError, dumps_decomposition, dumps_graph, dumps_labeling, dumps_report,
                 labeling_to_dict, load_graph, load_labeling, report_csv, report_text)
from .semigroup import Labeling, LabelingError, enumerate_networks, violation

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_generators(args) -> int:
    g = load_graph(args.graph)
    rep = minimal_generators(g, args.cap)
    if args.format == "json":
        text = dumps_report(rep)
    elif args.format == "csv":
        text = report_csv(rep)
    else:
        text = report_text(rep)
    _write(text, args.out)
    return EXIT_OK


def cmd_member(args) -> int:
    g = load_graph(args.graph)
    w = load_labeling(args.labeling)
    msg = violation(g, w)
    if msg is None:
        print("member")
        return EXIT_OK
    print(f"not a member: {msg}")
    return EXIT_NO


def _graph_bound(g) -> str:
    b = first_betti_number(g)
    if b == 2:
        norm = suppress_degree2(g).graph
        cls = classify_betti2(norm)
        return f"{cls.tag} max_degree={cls.max_degree}"
    if b == 0:
        return "Betti=0 max_degree=1"
    if b == 1:
        return f"Betti=1 max_degree={2 if cycle_legs(g) else 1}"
    return f"Betti={b} max_degree=unknown"


def cmd_classify(args) -> int:
    g = load_graph(args.graph)
    if args.labeling is None:
        print(_graph_bound(g))
        return EXIT_OK
    w = load_labeling(args.labeling)
    msg = violation(g, w)
    if msg is not None:
        raise LabelingError(f"not a member: {msg}")
    if w.degree == 0:
        print("Zero degree")
        return EXIT_OK
    indec = is_indecomposable(g, w)
    tag = TAG_NETWORK if w.degree == 1 else generator_tag(g, w)
    print(f"{tag} {'indecomposable' if indec else 'decomposable'}")
    if w.degree == 3 and first_betti_number(g) == 1:
        res = split_deg3(g, w)
        if len(res) == 3:
            print("three networks: " + " + ".join(str(p) for p in res))
        else:
            print(f"unique split: {res.w1} + {res.w2}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = load_graph(args.graph)
    w = load_labeling(args.labeling)
    pieces = decompose_full(g, w, args.cap)
    if args.format == "json":
        _write(dumps_decomposition(pieces), args.out)
    else:
        _write("".join(f"{p}\n" for p in pieces), args.out)
    return EXIT_OK


def cmd_networks(args) -> int:
    g = load_graph(args.graph)
    nets = enumerate_networks(g)
    if args.format == "json":
        text = json.dumps([labeling_to_dict(n) for n in nets], indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        text = ",".join(g.edge_ids) + "\n" + "".join(",".join(map(str, n.vector(g.edge_ids))) + "\n"
                                                     for n in nets)
    else:
        text = "".join(f"{n}\n" for n in nets)
    _write(text, args.out)
    return EXIT_OK


def cmd_atlas(args) -> int:
    params = parse_range(args.param_range)
    if args.family not in FAMILIES:
        raise GraphError(f"unknown family {args.family!r}")
    run_atlas(args.family, params, Path(args.out), args.cap, args.resume, args.jobs,
              echo=None if args.quiet else sys.stdout)
    return EXIT_OK


def cmd_graph(args) -> int:
    g = family(args.family, *args.params)
    _write(dumps_graph(g), args.out)
    return EXIT_OK


def cmd_labeling(args) -> int:
    g = load_graph(args.graph)
    if len(args.values) != len(g.edge_ids):
        raise LabelingError(f"expected {len(g.edge_ids)} labels for edges {', '.join(g.edge_ids)}")
    _write(dumps_labeling(Labeling.from_vector(args.degree, g.edge_ids, args.values)), args.out)
    return EXIT_OK


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="phylosemi", description="Phylogenetic semigroups of graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("generators", help="minimal generators up to a degree cap")
    s.add_argument("graph")
    s.add_argument("--cap", type=_positive, default=None, help="degree cap (default: Betti + 1)")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_generators)

    s = sub.add_parser("member", help="membership test; exit 0 member, 1 not")
    s.add_argument("graph")
    s.add_argument("labeling")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("classify", help="structural class of a graph, or characterization of a labeling")
    s.add_argument("graph")
    s.add_argument("labeling", nargs="?")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("decompose", help="decompose a member into minimal generators")
    s.add_argument("graph")
    s.add_argument("labeling")
    s.add_argument("--cap", type=_positive, default=None, help="largest summand degree searched")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("networks", help="all networks (degree-1 members)")
    s.add_argument("graph")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_networks)

    s = sub.add_parser("atlas", help="max generator degree over a family, as CSV")
    s.add_argument("--family", required=True)
    s.add_argument("--param-range", required=True, help="a..b inclusive")
    s.add_argument("--cap", type=_positive, default=None, help="degree cap (default: Betti + 1 per row)")
    s.add_argument("--out", required=True)
    s.add_argument("--resume", action="store_true", help="keep rows already in --out")
    s.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: PHYLOSEMI_THREADS or CPU count)")
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(func=cmd_atlas)

    s = sub.add_parser("graph", help="write a named family member as a graph file")
    s.add_argument("family", choices=sorted(FAMILIES))
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("labeling", help="write a labeling file from values in canonical edge order")
    s.add_argument("graph")
    s.add_argument("degree", type=int)
    s.add_argument("values", nargs="*", type=int)
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_labeling)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, GraphError, LabelingError, DecompositionError, ValueError, OSError) as exc:
        print(f"phylosemi: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
