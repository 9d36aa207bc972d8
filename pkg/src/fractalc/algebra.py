"""Algebraic-law harness: residual profiles for linearity, the Leibniz rule,
the chain rule, and constant annihilation against any catalogued operator,
plus the entropy and derivative-log combination operators and the
Caputo-Jumarie gap meter.

Every check returns a ResidualProfile whose verdict separates genuine law
violations from discretization noise: the scheme error is estimated a
posteriori by re-running at double resolution, and Violated requires the
residual to clear that estimate by a factor of ten.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .corpus import (
    Compose,
    Constant,
    FuncExpr,
    GridFunction,
    Product,
    Sum,
    differentiate,
    evaluate,
)
from .errors import UnsupportedVariantError
from .frac_ops import (
    DEFAULT_NODES,
    BCLocal,
    Caputo,
    ClassicalDerivative,
    Entropy,
    GrunwaldLetnikov,
    Jumarie,
    KGLocal,
    KonigMilman,
    OperatorHandle,
    RLDerivative,
    RLIntegral,
    caputo,
    gl_derivative,
    jumarie,
    rl_derivative,
    rl_integral,
)
from .local_ops import DEFAULT_H0, DEFAULT_SCALES, DEFAULT_TOL, bc_lfd, kg_lfd

Evaluand = Union[FuncExpr, GridFunction]

# Default probe set: interior points only, away from the base point where
# the RL kernel is singular.
DEFAULT_PROBES: tuple[float, ...] = tuple(np.linspace(0.1, 0.9, 8))

VIOLATION_FACTOR = 10.0
ROUNDOFF_UNIT = 1e-12


class Verdict(enum.Enum):
    SATISFIED = "Satisfied"
    VIOLATED = "Violated"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Resolution:
    """Discretization knobs shared by every operator evaluation."""

    nodes: int = DEFAULT_NODES
    h0: float = DEFAULT_H0
    scales: int = DEFAULT_SCALES
    tol: float = DEFAULT_TOL

    def doubled(self) -> "Resolution":
        return Resolution(self.nodes * 2, self.h0 / 2.0, self.scales, self.tol)


@dataclass(frozen=True)
class ResidualProfile:
    """Residuals of one algebraic law at a set of probe points."""

    probes: tuple[float, ...]
    residuals: tuple[float, ...]
    max_abs: float
    numerical_error_estimate: float
    verdict: Verdict

    @staticmethod
    def from_residuals(
        probes: Sequence[float],
        fine: Sequence[float],
        coarse: Sequence[float],
        scale: float,
    ) -> "ResidualProfile":
        """Build a profile from residuals at two resolutions.

        `fine` are the reported residuals; the coarse/fine shift feeds the
        a posteriori scheme-error estimate together with a roundoff floor
        proportional to the magnitude of the quantities that were combined.
        """
        fine = tuple(float(v) for v in fine)
        shift = max(abs(a - b) for a, b in zip(fine, coarse))
        err = 2.0 * shift + ROUNDOFF_UNIT * (1.0 + abs(scale))
        max_abs = max(abs(v) for v in fine)
        if not all(math.isfinite(v) for v in fine):
            verdict = Verdict.INDETERMINATE
        elif max_abs > VIOLATION_FACTOR * err:
            verdict = Verdict.VIOLATED
        elif max_abs <= err:
            verdict = Verdict.SATISFIED
        else:
            verdict = Verdict.INDETERMINATE
        return ResidualProfile(tuple(float(t) for t in probes), fine, max_abs, err, verdict)


def apply_operator(
    D: OperatorHandle,
    f: Evaluand,
    t: float,
    res: Resolution = Resolution(),
) -> float:
    """Evaluate a catalogued operator at a single point.

    Limit-based local operators contribute their extrapolated value; their
    convergence status is available through the local_ops probe API when the
    caller needs it.
    """
    if isinstance(D, ClassicalDerivative):
        return evaluate(differentiate(_require_expr(f, "classical derivative")), t)
    if isinstance(D, RLIntegral):
        return rl_integral(f, D.order, D.base, t, res.nodes)
    if isinstance(D, RLDerivative):
        return rl_derivative(f, D.order, D.base, t, res.nodes)
    if isinstance(D, Caputo):
        return caputo(f, D.order, D.base, t, res.nodes)
    if isinstance(D, Jumarie):
        return jumarie(f, D.order, t, res.nodes)
    if isinstance(D, GrunwaldLetnikov):
        return gl_derivative(f, D.order, D.base, t, res.nodes)
    if isinstance(D, BCLocal):
        est = bc_lfd(f, D.order, t, D.direction, h0=res.h0, scales=res.scales, tol=res.tol)
        return est.value
    if isinstance(D, KGLocal):
        est = kg_lfd(f, D.order, t, D.direction, h0=res.h0, scales=res.scales, tol=res.tol)
        return est.value
    if isinstance(D, Entropy):
        return evaluate(D.coeff, t) * _xlogabs(_value_at(f, t))
    if isinstance(D, KonigMilman):
        fx = _require_expr(f, "derivative-log combination")
        dfx = evaluate(differentiate(fx), t)
        return evaluate(D.c, t) * dfx + evaluate(D.d, t) * _xlogabs(_value_at(f, t))
    raise UnsupportedVariantError(f"no evaluation rule for operator {D!r}")


def _xlogabs(u: float) -> float:
    """u * ln|u| extended by its limit 0 at u = 0."""
    if u == 0.0:
        return 0.0
    return u * math.log(abs(u))


def _value_at(f: Evaluand, t: float) -> float:
    if isinstance(f, GridFunction):
        return f.interp(t)
    return evaluate(f, t)


def _require_expr(f: Evaluand, what: str) -> FuncExpr:
    if isinstance(f, GridFunction):
        raise UnsupportedVariantError(f"{what} needs a closed-form input, got a grid")
    return f


def _pointwise_product(f: Evaluand, g: Evaluand) -> Evaluand:
    if isinstance(f, GridFunction) or isinstance(g, GridFunction):
        if (
            isinstance(f, GridFunction)
            and isinstance(g, GridFunction)
            and (f.a, f.b, f.n) == (g.a, g.b, g.n)
        ):
            return GridFunction(f.a, f.b, f.n, f.samples * g.samples)
        raise UnsupportedVariantError("product of grids requires matching grids")
    return Product(f, g)


def _linear_combination(f: Evaluand, g: Evaluand, lam: float, mu: float) -> Evaluand:
    if isinstance(f, GridFunction) or isinstance(g, GridFunction):
        if (
            isinstance(f, GridFunction)
            and isinstance(g, GridFunction)
            and (f.a, f.b, f.n) == (g.a, g.b, g.n)
        ):
            return GridFunction(f.a, f.b, f.n, lam * f.samples + mu * g.samples)
        raise UnsupportedVariantError("combination of grids requires matching grids")
    return Sum((Product(Constant(lam), f), Product(Constant(mu), g)))


def _profile_from_rule(rule, probes: Sequence[float], res: Resolution) -> ResidualProfile:
    """Evaluate a per-probe residual rule at res and res.doubled().

    `rule(t, r)` returns (residual, magnitude) where magnitude bounds the
    size of the combined terms, feeding the roundoff floor.
    """
    coarse = []
    fine = []
    scale = 0.0
    for t in probes:
        rc, _ = rule(t, res)
        rf, mag = rule(t, res.doubled())
        coarse.append(rc)
        fine.append(rf)
        scale = max(scale, mag)
    return ResidualProfile.from_residuals(probes, fine, coarse, scale)


def leibniz_residual(
    D: OperatorHandle,
    f: Evaluand,
    g: Evaluand,
    probes: Sequence[float] = DEFAULT_PROBES,
    res: Resolution = Resolution(),
) -> ResidualProfile:
    """Residual of D(f*g) - D(f)*g - f*D(g) at the probe points."""
    fg = _pointwise_product(f, g)

    def rule(t, r):
        dfg = apply_operator(D, fg, t, r)
        df = apply_operator(D, f, t, r)
        dg = apply_operator(D, g, t, r)
        fv = _value_at(f, t)
        gv = _value_at(g, t)
        residual = dfg - df * gv - fv * dg
        magnitude = abs(dfg) + abs(df * gv) + abs(fv * dg)
        return residual, magnitude

    return _profile_from_rule(rule, probes, res)


def chain_residual(
    D: OperatorHandle,
    f: FuncExpr,
    g: FuncExpr,
    probes: Sequence[float] = DEFAULT_PROBES,
    res: Resolution = Resolution(),
) -> ResidualProfile:
    """Residual of D(f∘g) - D(f)(g(t)) * D(g)(t) at the probe points."""
    f = _require_expr(f, "chain-rule check")
    g = _require_expr(g, "chain-rule check")
    comp = Compose(f, g)

    def rule(t, r):
        dcomp = apply_operator(D, comp, t, r)
        df_at_g = apply_operator(D, f, evaluate(g, t), r)
        dg = apply_operator(D, g, t, r)
        residual = dcomp - df_at_g * dg
        magnitude = abs(dcomp) + abs(df_at_g * dg)
        return residual, magnitude

    return _profile_from_rule(rule, probes, res)


def linearity_residual(
    D: OperatorHandle,
    f: Evaluand,
    g: Evaluand,
    lam: float = 2.0,
    mu: float = -3.0,
    probes: Sequence[float] = DEFAULT_PROBES,
    res: Resolution = Resolution(),
) -> ResidualProfile:
    """Residual of D(lam*f + mu*g) - lam*D(f) - mu*D(g) at the probes."""
    combo = _linear_combination(f, g, lam, mu)

    def rule(t, r):
        dcombo = apply_operator(D, combo, t, r)
        df = apply_operator(D, f, t, r)
        dg = apply_operator(D, g, t, r)
        residual = dcombo - lam * df - mu * dg
        magnitude = abs(dcombo) + abs(lam * df) + abs(mu * dg)
        return residual, magnitude

    return _profile_from_rule(rule, probes, res)


def constant_annihilation_check(
    D: OperatorHandle,
    constants: Sequence[float] = (1.0, 5.0),
    probes: Sequence[float] = DEFAULT_PROBES,
    res: Resolution = Resolution(),
) -> ResidualProfile:
    """Residuals are D applied to constant functions; zero means the operator
    annihilates constants."""
    flat_probes = []
    coarse = []
    fine = []
    scale = 0.0
    for c in constants:
        f = Constant(c)
        for t in probes:
            rc = apply_operator(D, f, t, res)
            rf = apply_operator(D, f, t, res.doubled())
            flat_probes.append(t)
            coarse.append(rc)
            fine.append(rf)
            scale = max(scale, abs(c))
    return ResidualProfile.from_residuals(flat_probes, fine, coarse, scale)


def entropy_operator(
    d: FuncExpr,
    f: Evaluand,
    a: float = 0.0,
    b: float = 1.0,
    n: int = 257,
) -> GridFunction:
    """Sample T(f)(x) = d(x) * f(x) * ln|f(x)| on [a, b], with the integrand
    extended by 0 at zeros of f."""
    xs = np.linspace(a, b, n)
    if isinstance(f, GridFunction):
        fv = np.array([f.interp(x) for x in xs])
    else:
        fv = evaluate(f, xs)
    dv = evaluate(d, xs)
    out = np.zeros_like(fv)
    nz = fv != 0.0
    out[nz] = dv[nz] * fv[nz] * np.log(np.abs(fv[nz]))
    return GridFunction(a, b, n, out)


def konig_milman_operator(
    c: FuncExpr,
    d: FuncExpr,
    f: FuncExpr,
    a: float = 0.0,
    b: float = 1.0,
    n: int = 257,
) -> GridFunction:
    """Sample T(f)(x) = c(x) f'(x) + d(x) f(x) ln|f(x)| on [a, b]; requires a
    symbolic derivative for f."""
    fx = _require_expr(f, "derivative-log combination")
    fprime = differentiate(fx)
    xs = np.linspace(a, b, n)
    fv = evaluate(fx, xs)
    log_part = np.zeros_like(fv)
    nz = fv != 0.0
    log_part[nz] = fv[nz] * np.log(np.abs(fv[nz]))
    out = evaluate(c, xs) * evaluate(fprime, xs) + evaluate(d, xs) * log_part
    return GridFunction(a, b, n, out)


def caputo_jumarie_gap(
    f: Evaluand,
    alpha: float,
    probes: Sequence[float] = DEFAULT_PROBES,
    res: Resolution = Resolution(),
) -> ResidualProfile:
    """Gap jumarie(f,alpha,t) - caputo(f,alpha,0,t) across the probes.

    The two sides are computed by genuinely different routes whenever f has a
    symbolic derivative: the outer-difference pipeline versus the integrated
    classical derivative.  Expected verdict is Satisfied on absolutely
    continuous inputs.
    """

    def rule(t, r):
        j = jumarie(f, alpha, t, r.nodes)
        cpt = caputo(f, alpha, 0.0, t, r.nodes)
        return j - cpt, abs(j) + abs(cpt)

    return _profile_from_rule(rule, probes, res)
