"""Command dispatch and machine-readable reporting.

Exit codes: 0 success, 1 usage, 2 parse error, 3 domain error.  Reports
go to stdout, diagnostics to stderr.  JSON key order is fixed, so two
runs on the same input differ at most in the timing field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .dsl import (
    build_group,
    parse_action_file,
    parse_matrix_file,
    parse_source,
    print_presentation,
)
from .errors import KernelError, MissingPoint, ParseError
from .localgeom import (
    SmoothnessVerdict,
    VerdictKind,
    point_on_variety,
    smooth_test,
    tangent_dim,
    truncated_quotient,
)
from .supercalc import jacobian_at, super_rank
from .supergroups import lie_superdim, stabilizer_ideal
from .supermatrix import berezinian
from .superpoly import poly_to_string


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="supergeom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="presentation source file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        return p

    add_source_command("check", "test whether the declared point lies on the variety")
    add_source_command("tangent", "tangent dimension at the declared point")

    p = add_source_command("smooth", "decide smoothness at the declared point")
    p.add_argument("--order", type=int, default=None, help="truncation order")

    p = add_source_command("hilbert", "local Hilbert table at the declared point")
    p.add_argument("--max-degree", type=int, required=True, help="top degree to report")

    p = sub.add_parser("ber", help="Berezinian of a supermatrix file")
    p.add_argument("file", help="matrix file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("group", help="construct a classical supergroup")
    p.add_argument("name", choices=["gl", "sl", "osp", "psp"])
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--emit", action="store_true", help="print the presentation source")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("stabilizer", help="stabilizer subgroup from an action file")
    p.add_argument("file", help="action file")
    p.add_argument("--json", action="store_true")
    return parser


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None


def _parse_stage(fn, text: str):
    # Anything the front end rejects is a parse failure for exit-code purposes.
    try:
        return fn(text)
    except ParseError:
        raise
    except KernelError as exc:
        raise ParseError(str(exc)) from exc


def _load_source(path: str):
    return _parse_stage(parse_source, _read_file(path))


def _require_point(point, path):
    if point is None:
        raise MissingPoint(f"{path} declares no point")
    return point


def _dim_json(d) -> dict:
    return {"even": d.even, "odd": d.odd}


def _verdict_report(verdict: SmoothnessVerdict, timing_ms: float) -> dict:
    certificate = {
        "kind": {
            VerdictKind.SMOOTH_EXACT: "complete_intersection",
            VerdictKind.SMOOTH_TO_ORDER: "verified_to_order",
            VerdictKind.NOT_SMOOTH: (
                "hilbert_witness"
                if verdict.witness_degree is not None
                else "failed_generator"
            ),
        }[verdict.kind],
        "witness_degree": verdict.witness_degree,
        "failed_generator": verdict.failed_generator,
    }
    return {
        "verdict": verdict.kind.value,
        "dim": _dim_json(verdict.dim),
        "tangent": _dim_json(verdict.tangent),
        "hilbert": list(verdict.hilbert),
        "certificate": certificate,
        "order": verdict.order,
        "timing_ms": timing_ms,
    }


def _emit(report: dict, human: str, as_json: bool):
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        print(human)


def _cmd_check(args) -> int:
    pres, point = _load_source(args.file)
    point = _require_point(point, args.file)
    start = time.perf_counter()
    on_it = point_on_variety(pres, point)
    ms = round((time.perf_counter() - start) * 1000, 3)
    _emit(
        {"on_variety": on_it, "timing_ms": ms},
        f"point {point} {'lies on' if on_it else 'is NOT on'} the variety",
        args.json,
    )
    return 0


def _cmd_tangent(args) -> int:
    pres, point = _load_source(args.file)
    point = _require_point(point, args.file)
    start = time.perf_counter()
    dim = tangent_dim(pres, point)
    rank = super_rank(jacobian_at(pres, point))
    ms = round((time.perf_counter() - start) * 1000, 3)
    _emit(
        {
            "tangent": _dim_json(dim),
            "rank": {"even": rank.a, "odd": rank.b},
            "timing_ms": ms,
        },
        f"tangent dimension {dim} (jacobian rank {rank})",
        args.json,
    )
    return 0


def _cmd_smooth(args) -> int:
    pres, point = _load_source(args.file)
    point = _require_point(point, args.file)
    start = time.perf_counter()
    verdict = smooth_test(pres, point, args.order)
    ms = round((time.perf_counter() - start) * 1000, 3)
    report = _verdict_report(verdict, ms)
    human = "\n".join(
        [
            f"verdict: {verdict}",
            f"dim: {verdict.dim}",
            f"tangent: {verdict.tangent}",
            f"hilbert: {list(verdict.hilbert)}",
            f"order: {verdict.order}",
        ]
    )
    _emit(report, human, args.json)
    return 0


def _cmd_hilbert(args) -> int:
    pres, point = _load_source(args.file)
    point = _require_point(point, args.file)
    start = time.perf_counter()
    order = max(args.max_degree, 1)
    ring = truncated_quotient(pres, point, order)
    table = [ring.hilbert(d) for d in range(args.max_degree + 1)]
    ms = round((time.perf_counter() - start) * 1000, 3)
    _emit(
        {"hilbert": table, "t": list(ring.t[: args.max_degree + 1]), "order": order,
         "timing_ms": ms},
        f"hilbert: {table}\nt: {list(ring.t[: args.max_degree + 1])}",
        args.json,
    )
    return 0


def _cmd_ber(args) -> int:
    matrix = _parse_stage(parse_matrix_file, _read_file(args.file))
    start = time.perf_counter()
    value = berezinian(matrix)
    ms = round((time.perf_counter() - start) * 1000, 3)
    text = poly_to_string(value)
    _emit(
        {"berezinian": text, "m": matrix.m, "n": matrix.n, "timing_ms": ms},
        f"Ber = {text}",
        args.json,
    )
    return 0


def _cmd_group(args) -> int:
    group = build_group(args.name, args.m, args.n)
    if args.emit:
        sys.stdout.write(print_presentation(group.base, group.identity))
        return 0
    dim = lie_superdim(group)
    table = group.base.table
    report = {
        "group": args.name,
        "m": args.m,
        "n": args.n,
        "even_vars": len(table.evens),
        "odd_vars": len(table.odds),
        "relations": len(group.base.even_gens) + len(group.base.odd_gens),
        "lie_superdim": _dim_json(dim),
    }
    human = (
        f"{args.name}({args.m}|{args.n}): {len(table.evens)} even vars, "
        f"{len(table.odds)} odd vars, "
        f"{report['relations']} relations, lie superdimension {dim}"
    )
    _emit(report, human, args.json)
    return 0


def _cmd_stabilizer(args) -> int:
    action, point = _parse_stage(parse_action_file, _read_file(args.file))
    stab = stabilizer_ideal(action, point)
    if args.json:
        report = {
            "evens": list(stab.base.table.evens),
            "odds": list(stab.base.table.odds),
            "relations": [
                poly_to_string(g) for g in stab.base.even_gens + stab.base.odd_gens
            ],
            "identity": [str(c) for c in stab.identity.coords],
            "lie_superdim": _dim_json(lie_superdim(stab)),
        }
        print(json.dumps(report, indent=2))
    else:
        sys.stdout.write(print_presentation(stab.base, stab.identity))
    return 0


_HANDLERS = {
    "check": _cmd_check,
    "tangent": _cmd_tangent,
    "smooth": _cmd_smooth,
    "hilbert": _cmd_hilbert,
    "ber": _cmd_ber,
    "group": _cmd_group,
    "stabilizer": _cmd_stabilizer,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except KernelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
