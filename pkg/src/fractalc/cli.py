"""Command-line front-end: compute operator values, run the claim suite,
and solve derivation spaces.

Exit codes: 0 success / all claims as expected, 1 at least one claim missed
its expected verdict, 2 usage or spec-parse error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

import numpy as np

from . import __version__
from .algebra import Resolution, apply_operator
from .claims import REGISTRY, ClaimContext
from .corpus import (
    Constant,
    Cos,
    Exp,
    FuncExpr,
    Monomial,
    Sum,
    WeierstrassTruncated,
    default_corpus,
)
from .derivations import (
    MAX_POINTWISE_N,
    MAX_TRUNCATED_D,
    FiniteAlgebra,
    solve_derivation_space,
)
from .errors import DomainError, UnsupportedVariantError
from .frac_ops import (
    BCLocal,
    Caputo,
    ClassicalDerivative,
    Direction,
    Entropy,
    GrunwaldLetnikov,
    Jumarie,
    KGLocal,
    KonigMilman,
    RLDerivative,
    RLIntegral,
)
from .local_ops import bc_probe, kg_probe

SCHEMA_VERSION = 1


class SpecError(ValueError):
    """A --fn/--op specification that does not parse."""


def parse_function_spec(spec: str) -> FuncExpr:
    """Parse a function descriptor like "monomial:1,0.5" or "corpus:sqrt".

    Grammar: NAME or NAME:ARG[,ARG...]; supported names are const, monomial,
    exp, cos, affine, weierstrass, and corpus (stock member by id).
    """
    name, _, argstr = spec.partition(":")
    name = name.strip().lower()
    args = [a.strip() for a in argstr.split(",")] if argstr else []

    def floats(k: int) -> list[float]:
        if len(args) != k:
            raise SpecError(f"{name} expects {k} argument(s), got {len(args)}")
        try:
            return [float(a) for a in args]
        except ValueError as exc:
            raise SpecError(f"bad numeric argument in {spec!r}") from exc

    if name == "const":
        return Constant(floats(1)[0])
    if name == "monomial":
        coef, exp = floats(2)
        return Monomial(coef, exp)
    if name == "exp":
        return Exp(floats(1)[0])
    if name == "cos":
        return Cos(floats(1)[0])
    if name == "affine":
        c0, c1 = floats(2)
        return Sum((Constant(c0), Monomial(c1, 1.0)))
    if name == "weierstrass":
        alpha, q, n_max = floats(3)
        return WeierstrassTruncated(alpha, q, int(n_max))
    if name == "corpus":
        if len(args) != 1:
            raise SpecError("corpus expects exactly one member id")
        for member in default_corpus():
            if member.name == args[0]:
                return member.expr
        known = ", ".join(m.name for m in default_corpus())
        raise SpecError(f"unknown corpus member {args[0]!r}; known: {known}")
    raise SpecError(
        f"unknown function spec {spec!r}; expected const, monomial, exp, cos, "
        "affine, weierstrass, or corpus"
    )


_LOCAL_OPS = ("bc-lfd", "kg-lfd")
_OP_CHOICES = (
    "classical",
    "rl-integral",
    "rl-deriv",
    "caputo",
    "jumarie",
    "gl",
    "bc-lfd",
    "kg-lfd",
    "entropy",
    "konig-milman",
)


def build_operator(args: argparse.Namespace):
    op = args.op
    needs_alpha = op not in ("classical", "entropy", "konig-milman")
    if needs_alpha and args.alpha is None:
        raise SpecError(f"--alpha is required for --op {op}")
    if op == "classical":
        return ClassicalDerivative()
    if op == "rl-integral":
        return RLIntegral(args.alpha, args.base)
    if op == "rl-deriv":
        return RLDerivative(args.alpha, args.base)
    if op == "caputo":
        return Caputo(args.alpha, args.base)
    if op == "jumarie":
        return Jumarie(args.alpha)
    if op == "gl":
        return GrunwaldLetnikov(args.alpha, args.base)
    if op == "bc-lfd":
        return BCLocal(args.alpha, Direction(args.sigma))
    if op == "kg-lfd":
        return KGLocal(args.alpha, Direction(args.sigma))
    if op == "entropy":
        return Entropy(parse_function_spec(args.coeff))
    if op == "konig-milman":
        return KonigMilman(parse_function_spec(args.c), parse_function_spec(args.d))
    raise SpecError(f"unknown operator {op!r}")


def _resolution(args: argparse.Namespace) -> Resolution:
    base = Resolution()
    return Resolution(
        nodes=args.nodes if args.nodes else base.nodes,
        h0=base.h0,
        scales=args.ladder_scales if args.ladder_scales else base.scales,
        tol=args.tol if args.tol else base.tol,
    )


def _points(args: argparse.Namespace) -> list[float]:
    if args.at is not None:
        return [args.at]
    if args.range:
        try:
            lo, hi = (float(x) for x in args.range.split(","))
        except ValueError as exc:
            raise SpecError(f"bad --range {args.range!r}, expected 'a,b'") from exc
        return [float(t) for t in np.linspace(lo, hi, args.points)]
    raise SpecError("either --at or --range is required")


def cmd_compute(args: argparse.Namespace) -> int:
    f = parse_function_spec(args.fn)
    op = build_operator(args)
    res = _resolution(args)
    ts = _points(args)
    lines = []
    if args.op in _LOCAL_OPS:
        lines.append("t,value,status,error_bar")
        probe_fn = bc_probe if args.op == "bc-lfd" else kg_probe
        for t in ts:
            probe = probe_fn(
                f,
                args.alpha,
                t,
                Direction(args.sigma),
                h0=res.h0,
                scales=res.scales,
                tol=res.tol,
            )
            e = probe.result
            lines.append(
                f"{t:.17g},{e.value:.17g},{e.status.value},{e.error_bar:.17g}"
            )
    else:
        lines.append("t,value")
        for t in ts:
            value = apply_operator(op, f, t, res)
            lines.append(f"{t:.17g},{value:.17g}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _claim_report(claim_id: str, ctx: ClaimContext) -> dict:
    claim = REGISTRY[claim_id]
    start = time.perf_counter()
    outcome = claim.runner(ctx)
    runtime_ms = int((time.perf_counter() - start) * 1000)
    return {
        "schema": SCHEMA_VERSION,
        "claim": claim.id,
        "anchor": claim.anchor,
        "inputs": outcome.inputs,
        "expected": claim.expected,
        "verdict": outcome.verdict,
        "match": outcome.verdict == claim.expected,
        "metrics": outcome.metrics,
        "runtime_ms": runtime_ms,
    }


def cmd_check(args: argparse.Namespace) -> int:
    if args.claim != "all" and args.claim not in REGISTRY:
        known = ", ".join(REGISTRY)
        print(f"error: unknown claim id {args.claim!r}; known: {known}", file=sys.stderr)
        return 2
    seed = int(os.environ.get("FRACTALC_SEED", "0"))
    ctx = ClaimContext(_resolution(args), seed)
    ids = list(REGISTRY) if args.claim == "all" else [args.claim]
    all_match = True
    lines = []
    for claim_id in ids:
        report = _claim_report(claim_id, ctx)
        all_match = all_match and report["match"]
        lines.append(json.dumps(report))
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if all_match else 1


def cmd_solve(args: argparse.Namespace) -> int:
    if args.algebra == "pointwise":
        if args.n is None:
            print("error: --n is required for pointwise", file=sys.stderr)
            return 2
        if not 1 <= args.n <= MAX_POINTWISE_N:
            print(
                f"error: --n {args.n} outside cap 1..{MAX_POINTWISE_N}",
                file=sys.stderr,
            )
            return 2
        algebra = FiniteAlgebra.pointwise(args.n)
    else:
        if args.d is None:
            print("error: --d is required for truncated-poly", file=sys.stderr)
            return 2
        if not 0 <= args.d <= MAX_TRUNCATED_D:
            print(
                f"error: --d {args.d} outside cap 0..{MAX_TRUNCATED_D}",
                file=sys.stderr,
            )
            return 2
        algebra = FiniteAlgebra.truncated_polynomial(args.d)
    space = solve_derivation_space(algebra)
    payload = {"schema": SCHEMA_VERSION, **space.to_json_dict()}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _claim_epilog() -> str:
    lines = ["claims (id: expected verdict -- statement):"]
    for claim in REGISTRY.values():
        lines.append(f"  {claim.id}: {claim.expected} -- {claim.anchor}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fractalc",
        description="Fractional-calculus operators and algebraic-law checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_resolution_flags(p):
        p.add_argument("--nodes", type=int, default=None, help="quadrature nodes")
        p.add_argument(
            "--ladder-scales", type=int, default=None, help="dyadic ladder length"
        )
        p.add_argument(
            "--tol", type=float, default=None, help="limit extrapolation tolerance"
        )
        p.add_argument("--out", default=None, help="write output to a file")

    p_compute = sub.add_parser(
        "compute",
        help="evaluate an operator on a function",
        description="Evaluate an operator at points; emits CSV.",
    )
    p_compute.add_argument("--op", required=True, choices=_OP_CHOICES)
    p_compute.add_argument("--fn", required=True, help='function spec, e.g. "monomial:1,1"')
    p_compute.add_argument("--alpha", type=float, default=None, help="fractional order in (0,1)")
    p_compute.add_argument("--base", type=float, default=0.0, help="base point a")
    p_compute.add_argument("--sigma", default="+", choices=["+", "-"], help="limit side for local ops")
    p_compute.add_argument("--coeff", default="const:1", help="entropy coefficient spec")
    p_compute.add_argument("--c", default="const:1", help="derivative coefficient spec")
    p_compute.add_argument("--d", default="const:0", help="log-term coefficient spec")
    p_compute.add_argument("--at", type=float, default=None, help="single evaluation point")
    p_compute.add_argument("--range", default=None, help="evaluation interval 'a,b'")
    p_compute.add_argument("--points", type=int, default=33, help="points across --range")
    add_resolution_flags(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_check = sub.add_parser(
        "check",
        help="run claim checks and stream NDJSON reports",
        description="Run one claim or the whole registry; one JSON report per line.",
        epilog=_claim_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_check.add_argument("claim", help='claim id or "all"')
    add_resolution_flags(p_check)
    p_check.set_defaults(func=cmd_check)

    p_solve = sub.add_parser(
        "solve",
        help="solve a derivation space exactly",
        description="Compute the exact derivation space of a finite algebra.",
    )
    p_solve.add_argument(
        "--algebra", required=True, choices=["pointwise", "truncated-poly"]
    )
    p_solve.add_argument("--n", type=int, default=None, help="pointwise dimension")
    p_solve.add_argument("--d", type=int, default=None, help="max polynomial degree")
    p_solve.add_argument("--out", default=None, help="write output to a file")
    p_solve.set_defaults(func=cmd_solve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, UnsupportedVariantError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
