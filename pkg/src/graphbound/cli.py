"""Command-line front end.

Exit codes: 0 = verdict true / success, 1 = verdict false, 2 = input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import lab
from .errors import GraphboundError
from .graph import boundary, boundary_matrix, format_graph, parse_graph, to_dot
from .matrix import (
    DissimilarityMatrix,
    format_matrix,
    four_point_violation,
    parse_matrix,
    triangle_violation,
)
from .realize import (
    RecognitionReport,
    Violation,
    certificate_matches,
    is_block_boundary_matrix,
    is_block_distance_matrix,
    is_cycle_distance_matrix,
    is_tree_boundary_matrix,
    is_tree_distance_matrix,
    is_unicyclic_distance_matrix,
)
from .reconstruct import (
    reconstruct_1block,
    reconstruct_unicyclic,
    recognize_unicyclic_boundary,
)

OK, FALSE, INPUT_ERROR = 0, 1, 2


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphboundError as exc:
        raise _InputError(f"{path}: {exc}") from None


def _load_matrix(path: str) -> DissimilarityMatrix:
    try:
        return parse_matrix(_read(path))
    except GraphboundError as exc:
        raise _InputError(f"{path}: {exc}") from None


# -- boundary ------------------------------------------------------------------

def cmd_boundary(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    if g.n < 2:
        raise _InputError("boundary needs a graph with at least 2 vertices")
    bp, bm = boundary_matrix(g)
    lines = [f"κ={bp.kappa}"] + [f"{v} {lab_.value}" for v, lab_ in zip(bp.boundary, bp.labels)]
    out = "\n".join(lines) + "\n"
    if args.matrix:
        out += format_matrix(bm)
    _write(args.out, out)
    if args.dot:
        Path(args.dot).write_text(to_dot(g, bp.boundary))
    return OK


# -- check ---------------------------------------------------------------------

def _metric(m: DissimilarityMatrix) -> RecognitionReport:
    bad = triangle_violation(m)
    if bad is None:
        return RecognitionReport(True, "metric")
    return RecognitionReport(False, "metric", violation=Violation("triangle", tuple(i + 1 for i in bad)))


def _additive(m: DissimilarityMatrix) -> RecognitionReport:
    bad = triangle_violation(m)
    if bad is not None:
        return RecognitionReport(False, "additive", violation=Violation("triangle", tuple(i + 1 for i in bad)))
    quad = four_point_violation(m)
    if quad is None:
        return RecognitionReport(True, "additive")
    return RecognitionReport(False, "additive", violation=Violation("four-point", tuple(i + 1 for i in quad)))


def _unicyclic_boundary(m: DissimilarityMatrix) -> RecognitionReport:
    fam = "unicyclic-boundary"
    if not recognize_unicyclic_boundary(m):
        return RecognitionReport(False, fam, violation=Violation("pruning-does-not-reach-a-cycle"))
    try:
        res = reconstruct_unicyclic(m)
    except GraphboundError as exc:
        return RecognitionReport(False, fam, violation=Violation("rebuild-mismatch", detail=str(exc)))
    return RecognitionReport(True, fam, res.graph, res.index_map)


CHECKS: dict[str, Callable[[DissimilarityMatrix], RecognitionReport]] = {
    "metric": _metric,
    "additive": _additive,
    "tree-dist": is_tree_distance_matrix,
    "block-dist": is_block_distance_matrix,
    "unicyclic-dist": is_unicyclic_distance_matrix,
    "tree-boundary": is_tree_boundary_matrix,
    "block-boundary": is_block_boundary_matrix,
    "unicyclic-boundary": _unicyclic_boundary,
    "cycle": is_cycle_distance_matrix,
}


def cmd_check(args: argparse.Namespace) -> int:
    m = _load_matrix(args.matrix)
    try:
        rep = CHECKS[args.family](m)
    except GraphboundError as exc:
        raise _InputError(f"{args.family}: {exc}") from None
    line = rep.line().replace(rep.family, args.family, 1)
    sys.stdout.write(line + "\n")
    if rep.verdict and rep.graph is not None:
        if args.out:
            Path(args.out).write_text(format_graph(rep.graph))
        if args.dot:
            Path(args.dot).write_text(to_dot(rep.graph, rep.index_map or ()))
    return OK if rep.verdict else FALSE


# -- reconstruct ---------------------------------------------------------------

def cmd_reconstruct(args: argparse.Namespace) -> int:
    m = _load_matrix(args.matrix)
    fam = args.family
    if fam == "tree":
        rep = is_tree_boundary_matrix(m)
        if not rep:
            sys.stdout.write(rep.line().replace(rep.family, fam, 1) + "\n")
            return FALSE
        g, idx, steps = rep.graph, rep.index_map, []
    else:
        build = reconstruct_1block if fam == "block1" else reconstruct_unicyclic
        try:
            res = build(m)
        except GraphboundError as exc:
            sys.stdout.write(f"{fam} false {exc}\n")
            return FALSE
        g, idx, steps = res.graph, res.index_map, res.trace()
    if args.trace:
        for line in steps:
            sys.stderr.write(line + "\n")
    if args.verify and not certificate_matches(m, g, idx):
        sys.stdout.write(f"{fam} false verify-mismatch\n")
        return FALSE
    _write(args.out, format_graph(g))
    if args.dot:
        Path(args.dot).write_text(to_dot(g, boundary(g).boundary if g.n >= 2 else ()))
    return OK


# -- conjecture ----------------------------------------------------------------

def _summary(rep: lab.ConjectureReport) -> str:
    cross = len(rep.cross_order_hk())
    return (
        f"graphs={rep.graph_count} Hkn={len(rep.hkn)} Hn={len(rep.hn)} "
        f"Hk={len(rep.hk)} (cross-order {cross})\n"
    )


def cmd_conjecture(args: argparse.Namespace) -> int:
    if args.merge:
        records = []
        n_max = None
        for path in args.merge:
            try:
                nm, recs = lab.parse_fragment(_read(path))
            except (GraphboundError, ValueError) as exc:
                raise _InputError(f"{path}: {exc}") from None
            if n_max is not None and nm != n_max:
                raise _InputError(f"{path}: n_max={nm} differs from {n_max}")
            n_max = nm
            records.extend(recs)
        rep = lab.report_from_records(n_max, args.family, records)
    else:
        if args.n_max is None:
            raise _InputError("--n-max is required")
        if not 2 <= args.n_max <= lab.MAX_ENUM_ORDER:
            raise _InputError(f"--n-max must lie in 2..{lab.MAX_ENUM_ORDER}")
        if args.shards < 1:
            raise _InputError("--shards must be >= 1")
        if args.shard_id is not None:
            if not 0 <= args.shard_id < args.shards:
                raise _InputError(f"--shard-id must lie in 0..{args.shards - 1}")
            recs = lab.records_for_shard(args.n_max, args.family, args.shards, args.shard_id)
            _write(args.out, lab.format_fragment(args.n_max, args.shards, args.shard_id, recs))
            return OK
        rep = lab.test_conjecture(args.n_max, args.family, workers=args.shards)
    _write(args.out, lab.format_report(rep))
    if args.out and args.out != "-":
        sys.stdout.write(_summary(rep))
    return FALSE if rep.violates_hkn else OK


# -- wiring --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphbound", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=None, help="accepted for scripted runs; commands are deterministic")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("boundary", help="list the boundary vertices of a graph")
    b.add_argument("graph", help='graph file ("n m" then m lines "u v"), or - for stdin')
    b.add_argument("--matrix", action="store_true", help="also print the boundary distance matrix")
    b.add_argument("--out")
    b.add_argument("--dot", help="write Graphviz source with boundary vertices filled")
    b.set_defaults(func=cmd_boundary)

    c = sub.add_parser("check", help="decide whether a matrix belongs to a family")
    c.add_argument("matrix")
    c.add_argument("--family", required=True, choices=sorted(CHECKS))
    c.add_argument("--out", help="write the certificate graph here on a positive verdict")
    c.add_argument("--dot")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("reconstruct", help="rebuild a graph from its boundary distance matrix")
    r.add_argument("matrix")
    r.add_argument("--family", required=True, choices=["tree", "block1", "unicyclic"])
    r.add_argument("--out")
    r.add_argument("--dot")
    r.add_argument("--verify", action="store_true", help="recompute the boundary matrix and compare")
    r.add_argument("--trace", action="store_true", help="print one line per pruning step on stderr")
    r.set_defaults(func=cmd_reconstruct)

    k = sub.add_parser("conjecture", help="sweep small graphs for boundary-matrix collisions")
    k.add_argument("--n-max", type=int)
    k.add_argument("--family", choices=sorted(lab._FAMILY_FILTERS))
    k.add_argument("--shards", type=int, default=1, help="parallel workers (or shard count with --shard-id)")
    k.add_argument("--shard-id", type=int, help="compute one shard and write a fragment")
    k.add_argument("--merge", nargs="+", metavar="FRAGMENT", help="merge shard fragments into a report")
    k.add_argument("--out")
    k.set_defaults(func=cmd_conjecture)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except _InputError as exc:
        sys.stderr.write(f"graphbound: error: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
