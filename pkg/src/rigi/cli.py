"""Command-line front end.

Exit codes: 0 success or sparse, 2 violating or counterexample found,
1 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterable, List, Optional, TextIO

from .corpus import CorpusBoundsError, CorpusSpec
from .graph import ColoredGraph, GraphError, component_rhos, graph_translation_subgroup
from .groups import GroupError, GroupTag, cent_dim, lattice_rank, teich_restricted
from .lift import UnsupportedLiftError, lift_finite, lift_window
from .oracle import VARIANTS, VariantError, generic_corank
from .sparsity import (
    DEFAULT_MAX_EDGES,
    FAMILY_NAMES,
    FamilyMismatchError,
    FamilyTag,
    TooManyEdgesError,
    check_family,
    f_general,
)
from .verify import PROPOSITIONS, UnknownPropositionError, verify_corpus, verify_graphs

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def default_seed() -> int:
    raw = os.environ.get("RIGI_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RIGI_SEED must be an integer, got {raw!r}") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- I/O --------------------------------------------------------------------------


def _read_text(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def read_graph(path: Optional[str]) -> ColoredGraph:
    text = _read_text(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return ColoredGraph.from_json(obj)
    except (GraphError, GroupError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid graph: {exc}") from None


def read_graph_stream(path: Optional[str]) -> List[ColoredGraph]:
    """JSON lines; a leading line without an "edges" key (a corpus header) is skipped."""
    out = []
    for lineno, line in enumerate(_read_text(path).splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON at line {lineno}, column {exc.colno}: {exc.msg}") from None
        if "edges" not in obj:
            continue
        try:
            out.append(ColoredGraph.from_json(obj))
        except (GraphError, GroupError, TypeError, ValueError) as exc:
            raise UsageError(f"invalid graph on line {lineno}: {exc}") from None
    return out


class _Output:
    def __init__(self, path: Optional[str]):
        self.path = path
        self.fh: Optional[TextIO] = None

    def __enter__(self) -> TextIO:
        if self.path is None or self.path == "-":
            return sys.stdout
        try:
            self.fh = open(self.path, "w")
        except OSError as exc:
            raise UsageError(f"cannot write {self.path}: {exc.strerror}") from None
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not None:
            self.fh.close()


def _emit(args, obj) -> None:
    with _Output(args.output) as out:
        out.write(dumps(obj) + "\n")


# -- commands ---------------------------------------------------------------------


def invariants_report(g: ColoredGraph) -> dict:
    comps = []
    for cr in component_rhos(g):
        sub = cr.subgroup(g.tag)
        comps.append({
            "cent": cent_dim(sub),
            "rho_generators": [x.to_json() for x in sub.generators],
            "translation_rank": sub.translation_rank,
            "vertices": list(cr.vertices),
        })
    lam = graph_translation_subgroup(g)
    return {
        "bound": f_general(g, range(g.m)),
        "cent_total": sum(c["cent"] for c in comps),
        "components": comps,
        "group": g.tag.to_json(),
        "lambda_rank": lattice_rank(x.t for x in lam.generators),
        "m": g.m,
        "n": g.n,
        "teich": teich_restricted(g.tag, lam),
    }


def cmd_invariants(args) -> int:
    _emit(args, invariants_report(read_graph(args.input)))
    return EXIT_OK


def cmd_check(args) -> int:
    g = read_graph(args.input)
    try:
        family = FamilyTag.parse(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = check_family(g, family, max_edges=args.max_edges)
    _emit(args, report.to_json())
    return EXIT_OK if report.is_sparse else EXIT_VIOLATION


def cmd_oracle(args) -> int:
    g = read_graph(args.input)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    seed = default_seed() if args.seed is None else args.seed
    result = generic_corank(g, args.variant, trials=args.trials, seed=seed, rational=args.rational)
    _emit(args, result.to_json())
    return EXIT_OK


def _parse_box(text: str):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--box needs four integers x0,x1,y0,y1, got {text!r}") from None
    if len(parts) != 4:
        raise UsageError(f"--box needs four integers x0,x1,y0,y1, got {text!r}")
    return tuple(parts)


def cmd_lift(args) -> int:
    g = read_graph(args.input)
    lift = lift_window(g, _parse_box(args.box)) if args.box else lift_finite(g)
    _emit(args, lift.to_json())
    return EXIT_OK


def _corpus_spec(args, tag: GroupTag, color_bound: int) -> CorpusSpec:
    seed = default_seed() if args.seed is None else args.seed
    return CorpusSpec(
        tag=tag,
        max_n=args.max_n,
        max_m=args.max_m,
        color_bound=color_bound,
        seed=seed,
        count=args.count,
        min_n=args.min_n,
        switching=not args.no_switching,
        square=args.square,
    )


def _tag(text: str) -> GroupTag:
    try:
        return GroupTag.parse(text)
    except (GroupError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_gen(args) -> int:
    spec = _corpus_spec(args, _tag(args.group), args.color_bound)
    if args.count is not None and args.count < 0:
        raise UsageError("--count must be non-negative")
    with _Output(args.output) as out:
        out.write(dumps(spec.header()) + "\n")
        for g in spec.generate():
            out.write(g.dumps() + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.proposition not in PROPOSITIONS:
        raise UsageError(f"unknown proposition {args.proposition!r}; choose from {', '.join(sorted(PROPOSITIONS))}")
    prop = PROPOSITIONS[args.proposition]
    if args.input:
        report = verify_graphs(args.proposition, read_graph_stream(args.input))
    else:
        tag = _tag(args.group) if args.group else prop.default_tag
        bound = prop.default_bound if args.color_bound is None else args.color_bound
        spec = _corpus_spec(args, tag, bound)
        if spec.max_m is None and prop.max_m is not None:
            spec = CorpusSpec(**{**spec.__dict__, "max_m": prop.max_m})
        report = verify_corpus(args.proposition, spec)
    _emit(args, report.to_json())
    return EXIT_OK if report.ok else EXIT_VIOLATION


# -- parser -----------------------------------------------------------------------


def _add_corpus_args(p: argparse.ArgumentParser, color_default: Optional[int]) -> None:
    p.add_argument("--max-n", type=int, default=3, help="largest vertex count (default 3)")
    p.add_argument("--min-n", type=int, default=1, help="smallest vertex count (default 1)")
    p.add_argument("--max-m", type=int, default=None, help="largest edge count (default 2n+1 per n)")
    p.add_argument("--color-bound", type=int, default=color_default,
                   help="colors range over [-b, b] in each coordinate")
    p.add_argument("--count", type=int, default=None, help="random mode: number of graphs (default: exhaustive)")
    p.add_argument("--seed", type=int, default=None, help="random seed (default: $RIGI_SEED or 0)")
    p.add_argument("--square", action="store_true",
                   help="also identify graphs related by a symmetry of the color box")
    p.add_argument("--no-switching", action="store_true",
                   help="enumerate all colorings instead of one switching representative per class")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rigi", description="Colored-graph sparsity counts and generic rigidity checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="per-component rho-images, translation ranks and the Maxwell count")
    p.add_argument("--input", help="graph JSON file (default: stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("check", help="exhaustive sparsity check for one family")
    p.add_argument("--family", required=True,
                   help=f"one of {', '.join(FAMILY_NAMES[:-1])}, or kl(k,l)")
    p.add_argument("--input", help="graph JSON file (default: stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES,
                   help=f"refuse graphs with more edges (default {DEFAULT_MAX_EDGES})")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="generic rank of a rigidity matrix over a prime field")
    p.add_argument("--variant", required=True, choices=VARIANTS)
    p.add_argument("--input", help="graph JSON file (default: stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--trials", type=int, default=3, help="random realizations; the rank is the maximum (default 3)")
    p.add_argument("--seed", type=int, default=None, help="master seed (default: $RIGI_SEED or 0)")
    p.add_argument("--rational", action="store_true", help="exact rank over the rationals (slow)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("lift", help="plain lift graph (colors dropped)")
    p.add_argument("--input", help="graph JSON file (default: stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--k", action="store_true", help="full finite lift of a Z/k or reflection graph")
    mode.add_argument("--box", help="window x0,x1,y0,y1 of the periodic lift of a Z2 graph")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("gen", help="stream a corpus as JSON lines (header first)")
    p.add_argument("--group", default="Z2", help="Z2, Z, Z/k, reflection or Gammak (default Z2)")
    p.add_argument("--output", help="output file (default: stdout)")
    _add_corpus_args(p, 1)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check one named equivalence over a corpus")
    p.add_argument("proposition", help=f"one of {', '.join(PROPOSITIONS)}")
    p.add_argument("--group", default=None, help="override the proposition's default group")
    p.add_argument("--input", help="JSON-lines corpus to check instead of generating one")
    p.add_argument("--output", help="output file (default: stdout)")
    _add_corpus_args(p, None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
        return args.func(args)
    except UsageError as exc:
        print(f"rigi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, GroupError, FamilyMismatchError, TooManyEdgesError, VariantError,
            UnsupportedLiftError, CorpusBoundsError, UnknownPropositionError, ValueError) as exc:
        print(f"rigi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
