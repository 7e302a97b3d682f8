"""Command line interface: ``hyperricci <command> ...``.

Exit codes: 0 success, 1 invalid input document, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import re
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from .curvature import CurvatureReport, curvature, digraph_lower_bound, overlap_upper_bound
from .generators import FAMILIES, FamilyError, FamilySpec, generate
from .hypergraph import DirectedHypergraph, HypergraphError
from .io import DocumentError, dump, format_rational, parse
from .measures import head_measure, tail_measure
from .metric import INFINITE, distance

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _natural_key(text: str):
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", text)]


def _decimal(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 10
        q = Decimal(x.numerator) / Decimal(x.denominator)
        return str(q.quantize(Decimal(1).scaleb(-digits)))


def _read(path: str) -> DirectedHypergraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _vertex(H: DirectedHypergraph, name: str):
    if name in H.vertices:
        return name
    matches = [v for v in H.vertices if str(v) == name]
    if len(matches) != 1:
        raise UsageError(f"unknown vertex {name!r}")
    return matches[0]


def _edges(H: DirectedHypergraph, edge_id: str | None):
    if edge_id is None:
        return sorted(H.edges, key=lambda e: _natural_key(e.id))
    try:
        return [H.edge(edge_id)]
    except HypergraphError as exc:
        raise UsageError(str(exc)) from None


def _row(report: CurvatureReport, args, H) -> dict:
    d = report.decomposition
    row = {
        "edge": report.edge_id,
        "kappa": report.kappa,
        "wasserstein": report.wasserstein,
        "mu0": d.mu0,
        "mu1": d.mu1,
        "mu2": d.mu2,
        "mu3": d.mu3,
    }
    if args.dual:
        row["dual_bound"] = report.dual.bound
    if args.bounds:
        row["digraph_min"] = digraph_lower_bound(H, report.edge_id)
        row["overlap_bound"] = overlap_upper_bound(H, report.edge_id)
    return row


def _measure_items(m):
    return [{"vertex": v, "mass": format_rational(x)} for v, x in m.items()]


def cmd_validate(args) -> int:
    H = _read(args.file)
    print(f"ok: {len(H.vertices)} vertices, {len(H.edges)} edges")
    return EXIT_OK


def cmd_curvature(args) -> int:
    H = _read(args.file)
    edges = _edges(H, args.edge)
    reports = [curvature(H, e, dual=args.dual) for e in edges]
    rows = [_row(r, args, H) for r in reports]
    if args.decimal is not None:
        for row in rows:
            for key in ("kappa", "wasserstein"):
                row[f"{key}_decimal"] = _decimal(row[key], args.decimal)
    if args.format == "csv":
        buf = _io.StringIO()
        header = list(rows[0]) if rows else ["edge", "kappa", "wasserstein", "mu0", "mu1", "mu2", "mu3"]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else format_rational(v) for v in row.values()])
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    out = []
    for report, row in zip(reports, rows):
        item = {k: (v if isinstance(v, str) else format_rational(v)) for k, v in row.items()}
        item["plan"] = [
            {"from": u, "to": v, "mass": format_rational(m)} for (u, v), m in report.plan.entries.items()
        ]
        item["tail_measure"] = _measure_items(report.tail_measure)
        item["head_measure"] = _measure_items(report.head_measure)
        if report.dual is not None:
            item["dual_potential"] = [
                {"vertex": v, "value": format_rational(f)} for v, f in report.dual.potential.items()
            ]
            item["duality_gap"] = format_rational(report.duality_gap)
        out.append(item)
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {text!r}") from None


def _parse_granularity(text: str):
    if text == "unit":
        return None
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m:
        raise UsageError(f"--granularity must be 'unit' or TAILxHEAD (e.g. 2x3), got {text!r}")
    return int(m.group(1)), int(m.group(2))


def cmd_generate(args) -> int:
    try:
        spec = FamilySpec(args.family, _parse_sizes(args.sizes), _parse_granularity(args.granularity), args.seed)
    except FamilyError as exc:
        raise UsageError(str(exc)) from None
    H = generate(spec)
    dump(H, args.output)
    print(f"wrote {args.output}: {len(H.vertices)} vertices, {len(H.edges)} edges")
    return EXIT_OK


def cmd_distance(args) -> int:
    H = _read(args.file)
    d = distance(H, _vertex(H, args.source), _vertex(H, args.target))
    print("inf" if d == INFINITE else d)
    return EXIT_OK


def cmd_measures(args) -> int:
    H = _read(args.file)
    (e,) = _edges(H, args.edge)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["side", "vertex", "mass"])
    for side, m in (("tail", tail_measure(H, e, H.is_weighted)), ("head", head_measure(H, e, H.is_weighted))):
        for v, x in m.items():
            writer.writerow([side, v, format_rational(x)])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperricci", description="Ollivier-Ricci curvature of directed hypergraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a hypergraph document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("curvature", help="curvature table for the hyperedges of a document")
    p.add_argument("file")
    p.add_argument("--edge", help="only this edge id")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--dual", action="store_true", help="add the Kantorovich dual bound")
    p.add_argument("--bounds", action="store_true", help="add the unit-edge lower bound and overlap upper bound")
    p.add_argument("--decimal", type=int, metavar="K", help="also print K-digit decimal approximations")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("generate", help="write a generated family to a document")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--sizes", required=True, help="comma-separated sizes, e.g. 2,3,2")
    p.add_argument("--granularity", default="unit", help="'unit' or TAILxHEAD group sizes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("distance", help="directed hyperdistance between two vertices")
    p.add_argument("file")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("measures", help="tail and head measures of one edge")
    p.add_argument("file")
    p.add_argument("--edge", required=True)
    p.set_defaults(func=cmd_measures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hyperricci: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DocumentError as exc:
        print(f"hyperricci: invalid document: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
