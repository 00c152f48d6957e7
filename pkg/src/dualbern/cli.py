"""Command-line interface.

Subcommands
-----------
dual-table
    Compute a dual-coefficient table and write it to a table file, with an
    optional self-check against an independent oracle.
reduce
    Least-squares degree reduction of a patch file, optionally with
    boundary-layer constraints and prescribed boundary coefficients.
eval
    Evaluate a patch file at one or more barycentric points.
distance
    Weighted L2 distance between two patch files.

Exit codes: 0 on success; 2 for bad flags, malformed files, or invalid
parameters; 3 when a computation fails its accuracy contract (an oracle
check over tolerance, or an adaptive integral that will not settle).
All numeric output uses 17 significant digits and is deterministic.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .approx import l2_distance, reduce_degree
from .domains import as_alpha, as_constraint
from .dualtable import compute_table
from .errors import (
    ConditioningError,
    ConvergenceError,
    DegenerateRecurrenceError,
    DomainError,
    DualbernError,
    FormatError,
    ParameterError,
)
from .oracles import (
    ORACLE_MAX_DEGREE,
    duality_residual,
    table_direct_sum,
    table_rel_difference,
)
from .patch import patch_eval
from .patchio import read_patch, write_patch, write_table


class CheckFailure(DualbernError):
    """An oracle self-check exceeded its tolerance."""


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _parse_floats(text: str, count: int, what: str) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != count:
        raise ParameterError(f"{what} needs {count} comma-separated values, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ParameterError(f"{what} has a non-numeric entry: {text!r}") from None


def _parse_ints(text: str, count: int, what: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != count:
        raise ParameterError(f"{what} needs {count} comma-separated values, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParameterError(f"{what} has a non-integer entry: {text!r}") from None


def _cmd_dual_table(args) -> int:
    al = as_alpha(_parse_floats(args.alpha, 3, "--alpha"))
    cc = as_constraint(_parse_ints(args.c, 3, "--c") if args.c else None)
    table = compute_table(al, args.n, cc)
    if args.check == "gram":
        resid, scale = duality_residual(table, al, cc)
        tol = (1e-7 if not cc.is_zero else 1e-8) * scale
        print(f"check gram: residual={_fmt(resid)} tolerance={_fmt(tol)}")
        if resid > tol:
            raise CheckFailure(f"gram check failed: residual {resid:.3e} > tolerance {tol:.3e}")
    elif args.check == "direct":
        inner_n = args.n - cc.total
        if inner_n > ORACLE_MAX_DEGREE:
            raise ParameterError(
                f"--check direct supports n - |c| <= {ORACLE_MAX_DEGREE}, got {inner_n}"
            )
        inner_alpha = al.shifted(cc)
        inner = compute_table(inner_alpha, inner_n)
        rel = table_rel_difference(inner, table_direct_sum(inner_alpha, inner_n))
        print(f"check direct: rel_difference={_fmt(rel)} tolerance={_fmt(1e-8)}")
        if rel > 1e-8:
            raise CheckFailure(f"direct-sum check failed: {rel:.3e} > 1e-08")
    write_table(args.out, table, cc)
    dom = "constrained interior" if not cc.is_zero else "full triangle"
    print(f"wrote {args.out}: n={args.n} alpha={args.alpha} ({dom})")
    return 0


def _cmd_reduce(args) -> int:
    al = as_alpha(_parse_floats(args.alpha, 3, "--alpha"))
    cc = as_constraint(_parse_ints(args.c, 3, "--c") if args.c else None)
    src = read_patch(args.infile)
    boundary = None
    if args.g is not None:
        bpatch = read_patch(args.g)
        if bpatch.n != args.m:
            raise ParameterError(
                f"boundary patch degree {bpatch.n} must equal target degree {args.m}"
            )
        if bpatch.dim != src.dim:
            raise ParameterError(
                f"boundary patch dim {bpatch.dim} must match source dim {src.dim}"
            )
        boundary = bpatch.values
    reduced = reduce_degree(src, args.m, al, c=cc, boundary=boundary, qtol=args.qtol)
    write_patch(args.out, reduced)
    if args.report:
        err = l2_distance(src, reduced, al, qtol=args.qtol)
        print(f"l2_error={_fmt(err)}")
    print(f"wrote {args.out}: degree {args.m} dim {reduced.dim}")
    return 0


def _cmd_eval(args) -> int:
    patch = read_patch(args.infile)
    pts = np.array([_parse_floats(a, 2, "--at") for a in args.at])
    vals = patch_eval(patch, pts)
    for row_pt, row_val in zip(pts, vals):
        print(" ".join(_fmt(v) for v in (*row_pt, *row_val)))
    return 0


def _cmd_distance(args) -> int:
    al = as_alpha(_parse_floats(args.alpha, 3, "--alpha"))
    pa = read_patch(args.a)
    pb = read_patch(args.b)
    print(_fmt(l2_distance(pa, pb, al, qtol=args.tol)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualbern",
        description="Dual bivariate Bernstein tables and weighted least-squares patch reduction.",
        epilog="Exit codes: 0 success, 2 invalid flags/files/parameters, "
        "3 accuracy-contract failure (oracle check or adaptive integral).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dual-table", help="compute a dual-coefficient table file")
    p.add_argument("--n", type=int, required=True, help="basis degree")
    p.add_argument("--alpha", required=True, metavar="A1,A2,A3", help="weight exponents (> -1)")
    p.add_argument("--c", metavar="C1,C2,C3", help="boundary constraint orders (default none)")
    p.add_argument("--out", required=True, help="output table file")
    p.add_argument(
        "--check",
        choices=["gram", "direct", "none"],
        default="none",
        help="self-check: 'gram' verifies duality against the mass matrix; "
        "'direct' compares the underlying unconstrained table with the "
        f"orthogonal double-sum oracle (degree after constraints <= {ORACLE_MAX_DEGREE})",
    )
    p.set_defaults(func=_cmd_dual_table)

    p = sub.add_parser("reduce", help="least-squares degree reduction of a patch file")
    p.add_argument("--in", dest="infile", required=True, help="source patch file")
    p.add_argument("--m", type=int, required=True, help="target degree")
    p.add_argument("--alpha", required=True, metavar="A1,A2,A3", help="weight exponents (> -1)")
    p.add_argument("--c", metavar="C1,C2,C3", help="boundary constraint orders (default none)")
    p.add_argument(
        "--g",
        metavar="PATCHFILE",
        help="degree-m patch supplying the prescribed boundary coefficients "
        "(required when --c is nonzero; only constrained indices are read)",
    )
    p.add_argument("--out", required=True, help="output patch file")
    p.add_argument("--report", action="store_true", help="print the weighted L2 error")
    p.add_argument("--qtol", type=float, default=1e-12, help="adaptive integral tolerance")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("eval", help="evaluate a patch file at barycentric points")
    p.add_argument("--in", dest="infile", required=True, help="patch file")
    p.add_argument(
        "--at",
        action="append",
        required=True,
        metavar="X1,X2",
        help="evaluation point (repeatable)",
    )
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("distance", help="weighted L2 distance between two patch files")
    p.add_argument("--a", required=True, help="first patch file")
    p.add_argument("--b", required=True, help="second patch file")
    p.add_argument("--alpha", required=True, metavar="A1,A2,A3", help="weight exponents (> -1)")
    p.add_argument("--tol", type=float, default=1e-12, help="adaptive integral tolerance")
    p.set_defaults(func=_cmd_distance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, DomainError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CheckFailure, ConditioningError, ConvergenceError, DegenerateRecurrenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
