"""Command-line front end.

Subcommands:

* ``certify`` -- run the full check suite, print a per-family table, exit 0
  when everything passes, 1 on any violation, 2 on usage errors.
* ``radius``  -- seminorm, radius and membership flags of one operator from a
  matrix file.
* ``sharp``   -- the metric adjoint of one operator, with its residual.
* ``demo``    -- two worked examples: the classic unbounded-radius pair and a
  doubled-space rotation whose conjugation leaves the radius invariant.

Matrix files are UTF-8 JSON: ``{"n": 2, "A": [[[1,0],[0,0]],[[0,0],[0,0]]],
"T": ...}`` with complex entries as [re, im] pairs in row-major order.
Reports are serialized with 17 significant digits (exact double round-trip);
human tables use 8.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .backend import BACKEND
from .certifier import SuiteReport, run_suite
from .errors import SemiradError
from .semihilbert import (
    a_numerical_radius,
    a_seminorm_op,
    bind,
    is_unbounded,
    new_metric,
    sharp,
)

_EXIT_OK = 0
_EXIT_VIOLATION = 1
_EXIT_USAGE = 2


# -- deterministic JSON ------------------------------------------------------


def dumps_json(obj) -> str:
    """Serialize with a fixed float format so identical runs give identical bytes."""
    pieces = []
    _emit(obj, pieces)
    return "".join(pieces)


def _emit(obj, out):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format(obj, ".17g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(k)))
            out.append(":")
            _emit(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _emit(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def report_to_json(report: SuiteReport) -> dict:
    """The wire schema: meta, per-check result rows, per-check summary."""
    return {
        "meta": dict(report.meta),
        "results": [
            {
                "check": r.check,
                "seed": r.seed,
                "dim": r.dim,
                "rank": r.rank,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "slack": r.slack,
                "pass": r.passed,
            }
            for r in report.results
        ],
        "summary": {
            check: {
                "count": agg.count,
                "failures": agg.failures,
                "min_slack": agg.min_slack,
                "argmin_seed": agg.argmin_seed,
            }
            for check, agg in report.summary.items()
        },
    }


# -- matrix files ------------------------------------------------------------


def load_matrix_file(path: str) -> dict:
    """Parse a named-matrix JSON file into complex arrays."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or "n" not in raw:
        raise ValueError("matrix file must be an object with an 'n' field")
    n = raw["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("'n' must be a positive integer")
    out = {"n": n}
    for name, rows in raw.items():
        if name == "n":
            continue
        mat = np.zeros((n, n), dtype=np.complex128)
        if not isinstance(rows, list) or len(rows) != n:
            raise ValueError(f"matrix {name!r} must have {n} rows")
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise ValueError(f"matrix {name!r} row {i} must have {n} entries")
            for j, pair in enumerate(row):
                if not (isinstance(pair, list) and len(pair) == 2):
                    raise ValueError(
                        f"matrix {name!r} entry ({i},{j}) must be an [re, im] pair"
                    )
                mat[i, j] = complex(float(pair[0]), float(pair[1]))
        out[name] = mat
    return out


def _fmt(x) -> str:
    return "unbounded" if is_unbounded(x) else format(float(x), ".8g")


# -- subcommands -------------------------------------------------------------


def _parse_dims(text: str) -> list:
    dims = [int(p) for p in text.split(",") if p.strip()]
    if not dims or any(d < 2 or d > 8 for d in dims):
        raise ValueError("dims must be a comma list within 2..8")
    return dims


def _parse_ranks(text: str):
    if text.strip().lower() == "all":
        return None
    ranks = [int(p) for p in text.split(",") if p.strip()]
    if not ranks or any(r < 1 for r in ranks):
        raise ValueError("ranks must be 'all' or a comma list of positive integers")
    return ranks


def cmd_certify(args) -> int:
    try:
        dims = _parse_dims(args.dims)
        ranks = _parse_ranks(args.ranks)
        if args.trials < 1:
            raise ValueError("--trials must be >= 1")
        if args.tol_scale <= 0:
            raise ValueError("--tol-scale must be positive")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    try:
        report = run_suite(
            dims, ranks=ranks, trials=args.trials,
            base_seed=args.seed, tol_scale=args.tol_scale,
        )
    except SemiradError as exc:
        print(f"hard failure: {exc}", file=sys.stderr)
        return _EXIT_VIOLATION
    _print_report(report)
    if args.json:
        try:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(dumps_json(report_to_json(report)))
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return _EXIT_USAGE
        print(f"json report written to {args.json}")
    return _EXIT_OK if report.global_pass else _EXIT_VIOLATION


def _print_report(report: SuiteReport) -> None:
    meta = report.meta
    print(
        f"certify: dims={meta['dims']} trials={meta['trials']} "
        f"seed={meta['seed']} instances={meta['instances']} backend={BACKEND}"
    )
    header = f"{'check':34s} {'count':>7s} {'fail':>5s} {'min slack':>14s} {'at seed':>20s}"
    print(header)
    print("-" * len(header))
    for check, agg in report.summary.items():
        print(
            f"{check:34s} {agg.count:7d} {agg.failures:5d} "
            f"{agg.min_slack:14.8g} {agg.argmin_seed:20d}"
        )
    families = {c.split(".")[0] for c in report.summary}
    verdict = "PASS" if report.global_pass else "FAIL"
    print(f"{len(families)} check families, {len(report.results)} checks: {verdict}")


def _load_bound_operator(args):
    data = load_matrix_file(args.input)
    if "A" not in data:
        raise ValueError("matrix file must define the metric 'A'")
    if args.operator not in data:
        raise ValueError(f"operator {args.operator!r} not present in file")
    metric = new_metric(data["A"])
    return metric, bind(metric, data[args.operator])


def cmd_radius(args) -> int:
    try:
        _, op = _load_bound_operator(args)
    except (OSError, ValueError, SemiradError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    print(f"operator {args.operator}: in B_A^(1/2): {op.in_half}, in B_A: {op.in_full}")
    norm = a_seminorm_op(op)
    if args.method == "sampling":
        rad = a_numerical_radius(op, method="sampling", samples=args.samples)
    else:
        rad = a_numerical_radius(op, method=args.method)
    print(f"A-seminorm      ||T||_A = {_fmt(norm)}")
    print(f"A-radius ({args.method}) w_A(T) = {_fmt(rad)}")
    return _EXIT_OK


def cmd_sharp(args) -> int:
    try:
        metric, op = _load_bound_operator(args)
    except (OSError, ValueError, SemiradError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    if not op.in_full:
        print(f"operator {args.operator} is not A-adjointable", file=sys.stderr)
        return _EXIT_VIOLATION
    sh = sharp(op)
    print(f"adjoint of {args.operator} for the metric A:")
    for row in sh:
        print("  [" + ", ".join(f"{z.real:.8g}{z.imag:+.8g}j" for z in row) + "]")
    resid = float(np.linalg.norm(metric.a @ sh - op.mat.conj().T @ metric.a))
    print(f"residual ||A T# - T* A||_F = {resid:.8g}")
    return _EXIT_OK


def cmd_demo(args) -> int:
    del args
    print("1) rank-deficient metric A = diag(1, 0) with the swap operator")
    metric = new_metric(np.diag([1.0, 0.0]).astype(complex))
    swap = np.array([[0, 1], [1, 0]], dtype=complex)
    op = bind(metric, swap)
    print(f"   swap maps the null space of A outside itself: in B_A = {op.in_full}")
    print(f"   ||T||_A = {_fmt(a_seminorm_op(op))}")
    print(f"   w_A(T) = {_fmt(a_numerical_radius(op))}")

    print("2) doubled-space rotation U = (1/sqrt 2) [[I, I], [-I, I]]")
    from .blocks import double_metric
    from .semihilbert import is_a_unitary

    m2 = double_metric(metric)
    eye = np.eye(2)
    u = np.block([[eye, eye], [-eye, eye]]).astype(complex) / np.sqrt(2.0)
    uop = bind(m2, u)
    print(f"   is A-unitary for the doubled metric: {is_a_unitary(uop)}")
    t0 = np.diag([1.0, 3.0]).astype(complex)
    s0 = np.diag([2.0, -1.0]).astype(complex)
    mat = np.block([[t0, s0], [t0, s0]])
    mop = bind(m2, mat)
    w_before = a_numerical_radius(mop)
    conj = bind(m2, m2.sharp_mat(u) @ mat @ u)
    w_after = a_numerical_radius(conj)
    print(f"   w(M) = {_fmt(w_before)}, w(U# M U) = {_fmt(w_after)}")
    print(f"   invariance deviation = {abs(w_before - w_after):.3g}")
    return _EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semirad",
        description="semi-Hilbertian operator seminorms, radii and certified inequalities",
    )
    parser.add_argument("--version", action="version", version=f"semirad {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="run the certification sweep")
    cert.add_argument("--dims", default="2,3", help="comma list of dimensions (2..8)")
    cert.add_argument("--ranks", default="all", help="'all' or a comma list of ranks")
    cert.add_argument("--trials", type=int, default=10, help="instances per (dim, rank)")
    cert.add_argument("--seed", type=int, default=0, help="base seed")
    cert.add_argument("--json", default=None, metavar="PATH", help="write the JSON report")
    cert.add_argument("--tol-scale", type=float, default=1.0, help="tolerance multiplier")
    cert.set_defaults(fn=cmd_certify)

    rad = sub.add_parser("radius", help="seminorm and radius of one operator")
    rad.add_argument("input", help="matrix JSON file")
    rad.add_argument("--operator", default="T", help="operator name (default T)")
    rad.add_argument(
        "--method",
        default="compression",
        choices=("compression", "theta-sup", "sampling"),
    )
    rad.add_argument("--samples", type=int, default=100_000)
    rad.set_defaults(fn=cmd_radius)

    sh = sub.add_parser("sharp", help="metric adjoint of one operator")
    sh.add_argument("input", help="matrix JSON file")
    sh.add_argument("--operator", default="T", help="operator name (default T)")
    sh.set_defaults(fn=cmd_sharp)

    demo = sub.add_parser("demo", help="run the worked examples")
    demo.set_defaults(fn=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
