"""Command-line front end.

Exit codes: 0 success, 1 validation or mathematical failure, 2 retry budget
exhausted, 3 I/O, parse or usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from . import io
from .conjugation import ToleranceConfig, fixed_basis
from .engine import extend, symmetric_residual, validate
from .errors import Exhausted, ExtensionError, NotIsometric, NotSkewSymmetric, OddDimension
from .oracle import gen_case_a, gen_case_b
from .splitter import restrict, split, split_residuals
from .subspaces import Frame, orthonormalize

EXIT_OK, EXIT_INVALID, EXIT_EXHAUSTED, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _emit(data: dict, out=None):
    text = io.dumps(data)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> ToleranceConfig:
    kw = {}
    if getattr(args, "tol", None) is not None:
        kw["residual_tol"] = args.tol
    if getattr(args, "seed", None) is not None:
        kw["seed"] = args.seed
    if getattr(args, "max_retries", None) is not None:
        kw["max_retries"] = args.max_retries
    return ToleranceConfig(**kw)


def cmd_check(args) -> int:
    cfg = _config(args)
    P = io.load_problem(args.path, cfg)
    declared = validate(P)
    skew = declared if P.mode == "skew" else validate(_as_mode(P, "skew"))
    iso = declared if P.mode == "isometric" else validate(_as_mode(P, "isometric"))
    ok = declared <= cfg.residual_tol
    if P.mode == "isometric":
        ok = ok and orthonormalize(P.op.action, cfg).dim == P.op.domain_dim
    _emit(
        {
            "mode": P.mode,
            "residual_symmetric": symmetric_residual(P),
            "residual_skew": skew,
            "residual_isometric": iso,
            "valid": ok,
        }
    )
    return EXIT_OK if ok else EXIT_INVALID


def _as_mode(P, mode):
    return replace(P, mode=mode)


def cmd_extend(args) -> int:
    cfg = _config(args)
    P = io.load_problem(args.path, cfg)
    try:
        report = extend(P, force_double=args.force_double)
    except (NotSkewSymmetric, NotIsometric) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit({"error": "Exhausted", "diagnostics": exc.diagnostics}, args.out)
        return EXIT_EXHAUSTED
    _emit(io.report_to_dict(report), args.out)
    return EXIT_OK


def cmd_split(args) -> int:
    cfg = _config(args)
    J = io.load_conjugation(args.path)
    D = Frame.full(J.dim)
    try:
        X, JX = split(D, J, args.rotation_seed, cfg)
    except OddDimension as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    res = split_residuals(D, J, X, JX, cfg)
    fixed = fixed_basis(restrict(D, J, cfg.residual_tol), cfg)
    res["fixed_point"] = float(np.max(np.abs(J.apply(fixed) - fixed)))
    ok = all(v <= cfg.residual_tol for v in res.values())
    _emit(
        {
            "dim": J.dim,
            "M": [io.encode_vector(c) for c in X.basis.T],
            "JM": [io.encode_vector(c) for c in JX.basis.T],
            "residual_orthogonality": res["orthogonality"],
            "residual_span": res["span"],
            "residual_image": res["image"],
            "residual_fixed_point": res["fixed_point"],
        },
        args.out,
    )
    return EXIT_OK if ok else EXIT_INVALID


def cmd_gen(args) -> int:
    if args.dim < 1 or not 0 <= args.domain <= args.dim:
        print(f"error: need dim >= 1 and 0 <= domain <= dim (got {args.dim}, {args.domain})", file=sys.stderr)
        return EXIT_IO
    gen = gen_case_a if args.mode == "skew" else gen_case_b
    P = gen(args.dim, args.domain, args.seed)
    _emit(io.problem_to_dict(P), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jextend", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="report J-symmetric / J-skew / J-isometric residuals")
    p.add_argument("path")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extend", help="construct a J-skew-self-adjoint or J-unitary extension")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-retries", type=int)
    p.add_argument("--force-double", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("split", help="split C^n as M + JM for the file's conjugation")
    p.add_argument("path")
    p.add_argument("--tol", type=float)
    p.add_argument("--rotation-seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("gen", help="write a seeded random valid problem file")
    p.add_argument("--mode", choices=("skew", "isometric"), required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--domain", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.ProblemFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ExtensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
