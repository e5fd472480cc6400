"""Command-line front end.

Three subcommands:

* ``eval``        - apply one operator to a parsed function and emit CSV
                    (exact engine: 257 uniform samples; grid engine: one row
                    per node with a ``reliable`` 0/1 column).
* ``verify``      - run the law-verification harness and write one JSON
                    report per law.
* ``convergence`` - grid-refinement study against the exact backend.

Exit codes: 0 success, 1 law failure (verify only), 2 parse/config error,
3 numerical failure (overflow or a singular evaluation request).
All configuration is via flags; outputs are deterministic for identical
invocations.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .errors import DomainError, FracopsError, ParseError, SingularityError
from .grid import (
    DEFAULT_SCHEME,
    GridFunction,
    SchemeConfig,
    convergence_study,
    hilfer_derivative_grid,
    rl_derivative_grid,
    rl_integral_grid,
)
from .laws import LAW_IDS, DrawConfig, run_laws
from .monomial import (
    HilferSpec,
    MonomialSeries,
    evaluate,
    frac_derivative_caputo,
    frac_derivative_hilfer,
    frac_derivative_rl,
    frac_integral,
)
from .polyspec import format_spec, parse_spec

EXIT_OK = 0
EXIT_LAW_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_OPS = ("integral", "rl", "caputo", "hilfer")
_EXACT_SAMPLES = 257


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracops",
        description="Fractional-calculus operators (Riemann-Liouville / Hilfer) "
        "with exact and grid backends, plus a law-verification harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="apply an operator and write CSV")
    ev.add_argument("--op", required=True, choices=_OPS)
    ev.add_argument("--alpha", required=True, type=float)
    ev.add_argument("--beta", type=float, default=None, help="Hilfer type (hilfer only)")
    ev.add_argument("--a", type=float, default=0.0, help="interval start (default 0)")
    ev.add_argument("--b", type=float, default=1.0, help="interval end (default 1)")
    ev.add_argument("--func", required=True, help="function spec, e.g. poly:1@0,2@1.5")
    ev.add_argument("--engine", choices=("exact", "grid"), default="exact")
    ev.add_argument("--grid", type=int, default=256, help="grid intervals (grid engine)")
    ev.add_argument("--scheme", choices=("product-trapezoid", "product-rectangle"),
                    default="product-trapezoid")
    ev.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    ev.add_argument("--skip-singular", action="store_true",
                    help="drop rows where the exact result is singular instead of failing")

    vf = sub.add_parser("verify", help="run the law-verification harness")
    vf.add_argument("--seed", type=int, default=42)
    vf.add_argument("--draws", type=int, default=1000)
    vf.add_argument("--laws", default=",".join(LAW_IDS),
                    help="comma-separated subset of: " + ", ".join(LAW_IDS))
    vf.add_argument("--out-dir", default=".", help="directory for JSON reports")

    cv = sub.add_parser("convergence", help="grid refinement study on [0, 1]")
    cv.add_argument("--op", required=True, choices=_OPS)
    cv.add_argument("--alpha", required=True, type=float)
    cv.add_argument("--beta", type=float, default=None)
    cv.add_argument("--func", required=True)
    cv.add_argument("--grids", default="64,128,256,512",
                    help="comma-separated increasing grid sizes (each >= 8)")
    cv.add_argument("--scheme", choices=("product-trapezoid", "product-rectangle"),
                    default="product-trapezoid")
    return parser


def _validate_orders(op: str, alpha: float, beta: float | None):
    if op == "integral":
        if not alpha > 0.0:
            raise DomainError(f"integral order must be > 0, got {alpha}")
    elif not 0.0 < alpha <= 1.0:
        raise DomainError(f"derivative order must lie in (0, 1], got {alpha}")
    if op == "hilfer":
        if beta is None:
            raise DomainError("operator 'hilfer' requires --beta")
        if not 0.0 <= beta <= 1.0:
            raise DomainError(f"Hilfer type must lie in [0, 1], got {beta}")
    elif beta is not None:
        raise DomainError(f"--beta only applies to the hilfer operator, not {op!r}")


def _apply_exact(op: str, y: MonomialSeries, alpha: float, beta: float | None):
    if op == "integral":
        return frac_integral(y, alpha)
    if op == "rl":
        return frac_derivative_rl(y, alpha)
    if op == "caputo":
        return frac_derivative_caputo(y, alpha)
    return frac_derivative_hilfer(y, HilferSpec(alpha, beta))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_lines(path: str, lines: list[str]):
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cmd_eval(args) -> int:
    _validate_orders(args.op, args.alpha, args.beta)
    if not args.b > args.a:
        raise DomainError(f"need b > a, got [{args.a}, {args.b}]")
    y = parse_spec(args.func, base=args.a)

    if args.engine == "exact":
        result = _apply_exact(args.op, y, args.alpha, args.beta)
        ts = np.linspace(args.a, args.b, _EXACT_SAMPLES)
        lines = ["t,value"]
        for t in ts:
            try:
                v = evaluate(result, float(t))
            except SingularityError:
                if args.skip_singular:
                    continue
                raise
            lines.append(f"{_fmt(float(t))},{_fmt(v)}")
        _write_lines(args.out, lines)
        return EXIT_OK

    if args.grid < 8:
        raise DomainError(f"grid engine needs N >= 8, got {args.grid}")
    if y.terms and y.terms[0].exponent < 0.0:
        raise SingularityError(
            "grid engine requires a continuous input (all exponents >= 0); "
            "use --engine exact for singular functions"
        )
    cfg = SchemeConfig(scheme=args.scheme)
    gf = GridFunction.sample(y, args.a, args.b, args.grid)
    if args.op == "integral":
        out = rl_integral_grid(gf, args.alpha, cfg)
    elif args.op == "rl":
        out = rl_derivative_grid(gf, args.alpha, cfg)
    elif args.op == "caputo":
        out = hilfer_derivative_grid(gf, HilferSpec(args.alpha, 1.0), cfg)
    else:
        out = hilfer_derivative_grid(gf, HilferSpec(args.alpha, args.beta), cfg)
    lines = ["t,value,reliable"]
    for t, v, r in zip(out.ts, out.values, out.reliable):
        lines.append(f"{_fmt(float(t))},{_fmt(float(v))},{1 if r else 0}")
    _write_lines(args.out, lines)
    return EXIT_OK


def _cmd_verify(args) -> int:
    laws = [l.strip() for l in args.laws.split(",") if l.strip()]
    cfg = DrawConfig(seed=args.seed, draws=args.draws)
    reports = run_laws(cfg, laws)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    all_pass = True
    for law, report in reports.items():
        (out_dir / f"{law}.json").write_text(report.to_json())
        print(
            f"{law}: {report.verdict} "
            f"(max_residual={report.max_residual:.6g}, tolerance={report.tolerance:.6g})"
        )
        all_pass &= report.passed
    return EXIT_OK if all_pass else EXIT_LAW_FAILURE


def _cmd_convergence(args) -> int:
    _validate_orders(args.op, args.alpha, args.beta)
    try:
        grids = [int(g) for g in args.grids.split(",") if g.strip()]
    except ValueError:
        raise DomainError(f"malformed grid list {args.grids!r}") from None
    y = parse_spec(args.func, base=0.0)
    if y.terms and y.terms[0].exponent < 0.0:
        raise DomainError("the convergence study needs a continuous input")
    rows = convergence_study(
        y, args.op, grids, alpha=args.alpha, beta=args.beta,
        cfg=SchemeConfig(scheme=args.scheme),
    )
    print("N,max_interior_error,empirical_order")
    for n, err, order in rows:
        order_text = "" if order is None else ("inf" if math.isinf(order) else f"{order:.6g}")
        print(f"{n},{_fmt(err)},{order_text}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the config-error code
        return EXIT_CONFIG if exc.code else EXIT_OK

    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_convergence(args)
    except (ParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SingularityError, OverflowError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except FracopsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
