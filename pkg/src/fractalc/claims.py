"""Registry of checkable claims.

Each claim pairs a stable id with a one-line statement of the property being
checked (the anchor), the verdict the theory predicts, and a runner that
recomputes the verdict from scratch.  The same anchor strings appear verbatim
in the README claim table; the CLI streams one report per claim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import (
    Resolution,
    Verdict,
    caputo_jumarie_gap,
    chain_residual,
    constant_annihilation_check,
    leibniz_residual,
    linearity_residual,
)
from .corpus import (
    Constant,
    Exp,
    Monomial,
    Product,
    WeierstrassTruncated,
    ac_members,
    evaluate,
    polynomial_members,
)
from .derivations import (
    FiniteAlgebra,
    cube_root_annihilation_check,
    factor_through_derivative,
    solve_derivation_space,
)
from .frac_ops import (
    Caputo,
    ClassicalDerivative,
    Direction,
    Entropy,
    GrunwaldLetnikov,
    Jumarie,
    KonigMilman,
    RLDerivative,
    gl_derivative,
    power_rule_oracle,
    rl_derivative,
)
from .local_ops import bc_lfd, kg_bc_agreement, kg_lfd, triviality_sweep
from .numerics import LimitStatus

DIVERGENT = "Divergent"


@dataclass(frozen=True)
class ClaimContext:
    res: Resolution
    seed: int

    @property
    def rng(self) -> random.Random:
        return random.Random(self.seed)


@dataclass(frozen=True)
class ClaimOutcome:
    verdict: str
    metrics: dict
    inputs: dict


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    expected: str
    runner: Callable[[ClaimContext], ClaimOutcome]


def _from_profile(profile, inputs: dict, extra: dict | None = None) -> ClaimOutcome:
    metrics = {
        "max_abs": profile.max_abs,
        "error_estimate": profile.numerical_error_estimate,
        "residuals": list(profile.residuals),
    }
    if extra:
        metrics.update(extra)
    return ClaimOutcome(profile.verdict.value, metrics, inputs)


def _worst_of(profiles: list, inputs: dict) -> ClaimOutcome:
    """Aggregate several profiles: Satisfied only if all are Satisfied."""
    order = {Verdict.SATISFIED: 0, Verdict.INDETERMINATE: 1, Verdict.VIOLATED: 2}
    worst = max((p.verdict for p in profiles), key=order.get)
    metrics = {
        "max_abs": max(p.max_abs for p in profiles),
        "error_estimate": max(p.numerical_error_estimate for p in profiles),
        "profiles": len(profiles),
    }
    return ClaimOutcome(worst.value, metrics, inputs)


# --- runners -------------------------------------------------------------

_T = Monomial(1.0, 1.0)
_T2 = Monomial(1.0, 2.0)


def _run_rl_power_rule(ctx: ClaimContext) -> ClaimOutcome:
    worst_rl = 0.0
    worst_gl = 0.0
    gl_nodes = 2**14
    for gamma_exp in (0.5, 1.0, 2.0, 3.0):
        f = Monomial(1.0, gamma_exp)
        for alpha in (0.25, 0.5, 0.75):
            for t in (0.25, 0.5, 1.0):
                exact = power_rule_oracle(gamma_exp, alpha, t)
                worst_rl = max(
                    worst_rl, abs(rl_derivative(f, alpha, 0.0, t, ctx.res.nodes) - exact)
                )
                worst_gl = max(
                    worst_gl, abs(gl_derivative(f, alpha, 0.0, t, gl_nodes) - exact)
                )
    ok = worst_rl <= 5e-3 and worst_gl <= 5e-3
    return ClaimOutcome(
        Verdict.SATISFIED.value if ok else Verdict.INDETERMINATE.value,
        {"worst_rl_error": worst_rl, "worst_gl_error": worst_gl, "budget": 5e-3},
        {
            "exponents": [0.5, 1.0, 2.0, 3.0],
            "orders": [0.25, 0.5, 0.75],
            "points": [0.25, 0.5, 1.0],
            "gl_nodes": gl_nodes,
        },
    )


def _run_caputo_jumarie(ctx: ClaimContext) -> ClaimOutcome:
    members = list(ac_members())
    ctx.rng.shuffle(members)
    profiles = []
    worst = 0.0
    names = []
    for member in members:
        for alpha in (0.25, 0.5, 0.75):
            prof = caputo_jumarie_gap(member.expr, alpha, res=ctx.res)
            profiles.append(prof)
            worst = max(worst, prof.max_abs)
        names.append(member.name)
    out = _worst_of(profiles, {"corpus": names, "orders": [0.25, 0.5, 0.75]})
    out.metrics["worst_gap"] = worst
    return out


def _leibniz_claim(make_op, inputs_extra=None):
    def run(ctx: ClaimContext) -> ClaimOutcome:
        op = make_op()
        prof = leibniz_residual(op, _T, _T, [1.0], ctx.res)
        inputs = {"operator": op.describe(), "f": _T.describe(), "g": _T.describe(), "probes": [1.0]}
        if inputs_extra:
            inputs.update(inputs_extra)
        return _from_profile(prof, inputs)

    return run


def _run_rl_chain(ctx: ClaimContext) -> ClaimOutcome:
    op = RLDerivative(0.5, 0.0)
    prof = chain_residual(op, _T2, _T2, [1.0], ctx.res)
    return _from_profile(
        prof, {"operator": op.describe(), "f": _T2.describe(), "g": _T2.describe(), "probes": [1.0]}
    )


def _run_caputo_chain(ctx: ClaimContext) -> ClaimOutcome:
    op = Caputo(0.5, 0.0)
    prof = chain_residual(op, _T2, _T2, [1.0], ctx.res)
    return _from_profile(
        prof, {"operator": op.describe(), "f": _T2.describe(), "g": _T2.describe(), "probes": [1.0]}
    )


def _run_rl_linearity(ctx: ClaimContext) -> ClaimOutcome:
    members = [m for m in ac_members() if m.name not in ("const-1", "const-5")]
    ctx.rng.shuffle(members)
    f, g = members[0].expr, members[1].expr
    op = RLDerivative(0.5, 0.0)
    prof = linearity_residual(op, f, g, 2.0, -3.0, res=ctx.res)
    return _from_profile(
        prof,
        {
            "operator": op.describe(),
            "f": f.describe(),
            "g": g.describe(),
            "lambda": 2.0,
            "mu": -3.0,
        },
    )


def _run_classical_fixed_point(ctx: ClaimContext) -> ClaimOutcome:
    op = ClassicalDerivative()
    polys = [m.expr for m in polynomial_members()]
    ctx.rng.shuffle(polys)
    f, g = polys[0], polys[1]
    profiles = [
        linearity_residual(op, f, g, 2.0, -3.0, res=ctx.res),
        leibniz_residual(op, f, g, res=ctx.res),
        chain_residual(op, f, g, res=ctx.res),
    ]
    out = _worst_of(profiles, {"operator": op.describe(), "f": f.describe(), "g": g.describe()})
    ok = out.verdict == Verdict.SATISFIED.value and out.metrics["max_abs"] <= 1e-10
    out.metrics["budget"] = 1e-10
    return ClaimOutcome(
        out.verdict if ok else Verdict.INDETERMINATE.value, out.metrics, out.inputs
    )


def _entropy_pairs(ctx: ClaimContext):
    # Pairs bounded away from zero on the probe window.
    candidates = [
        Exp(1.0),
        Monomial(1.0, 2.0),
        Constant(5.0),
        Monomial(1.0, 1.0),
    ]
    ctx.rng.shuffle(candidates)
    return candidates[0], candidates[1]


def _run_entropy_leibniz(ctx: ClaimContext) -> ClaimOutcome:
    f, g = _entropy_pairs(ctx)
    op = Entropy(Constant(1.0))
    prof = leibniz_residual(op, f, g, res=ctx.res)
    return _from_profile(prof, {"operator": op.describe(), "f": f.describe(), "g": g.describe()})


def _run_entropy_nonlinear(ctx: ClaimContext) -> ClaimOutcome:
    op = Entropy(Constant(1.0))
    prof = linearity_residual(op, Constant(2.0), Constant(3.0), 1.0, 1.0, res=ctx.res)
    return _from_profile(
        prof,
        {"operator": op.describe(), "f": "const(2)", "g": "const(3)", "lambda": 1.0, "mu": 1.0},
    )


def _run_entropy_chain(ctx: ClaimContext) -> ClaimOutcome:
    op = Entropy(Constant(1.0))
    prof = chain_residual(op, Exp(1.0), _T, res=ctx.res)
    return _from_profile(prof, {"operator": op.describe(), "f": "exp(1)", "g": _T.describe()})


def _run_km_leibniz(ctx: ClaimContext) -> ClaimOutcome:
    f, g = _entropy_pairs(ctx)
    op = KonigMilman(Constant(1.0), Constant(1.0))
    prof = leibniz_residual(op, f, g, res=ctx.res)
    return _from_profile(prof, {"operator": op.describe(), "f": f.describe(), "g": g.describe()})


def _run_rl_constants(ctx: ClaimContext) -> ClaimOutcome:
    op = RLDerivative(0.5, 0.0)
    prof = constant_annihilation_check(op, res=ctx.res)
    return _from_profile(prof, {"operator": op.describe(), "constants": [1.0, 5.0]})


def _run_caputo_constants(ctx: ClaimContext) -> ClaimOutcome:
    op = Caputo(0.5, 0.0)
    prof = constant_annihilation_check(op, res=ctx.res)
    return _from_profile(prof, {"operator": op.describe(), "constants": [1.0, 5.0]})


def _run_local_constants(ctx: ClaimContext) -> ClaimOutcome:
    worst = 0.0
    ok = True
    for est in (
        bc_lfd(Constant(5.0), 0.5, 0.4, h0=ctx.res.h0, scales=ctx.res.scales, tol=ctx.res.tol),
        kg_lfd(Constant(5.0), 0.5, 0.4, h0=ctx.res.h0, scales=ctx.res.scales, tol=ctx.res.tol),
    ):
        worst = max(worst, abs(est.value))
        ok = ok and est.status is LimitStatus.CONVERGED and est.value == 0.0
    return ClaimOutcome(
        Verdict.SATISFIED.value if ok else Verdict.INDETERMINATE.value,
        {"worst_abs": worst},
        {"f": "const(5)", "alpha": 0.5, "y": 0.4, "estimators": ["bc", "kg"]},
    )


def _run_kg_bc_equivalence(ctx: ClaimContext) -> ClaimOutcome:
    battery = [
        (Monomial(1.0, 0.5), 0.5, 0.0),
        (Monomial(1.0, 0.5), 0.5, 0.25),
        (Monomial(1.0, 2.0), 0.5, 0.5),
        (Monomial(1.0, 1.0), 0.25, 0.3),
        (Monomial(1.0, 0.8), 0.8, 0.0),
    ]
    worst = 0.0
    compared = 0
    for f, alpha, y in battery:
        rep = kg_bc_agreement(
            f, alpha, y, Direction.PLUS, h0=ctx.res.h0, scales=ctx.res.scales, tol=ctx.res.tol
        )
        if rep.gap is not None:
            worst = max(worst, rep.gap)
            compared += 1
    ok = compared == len(battery) and worst <= 1e-2
    return ClaimOutcome(
        Verdict.SATISFIED.value if ok else Verdict.INDETERMINATE.value,
        {"worst_gap": worst, "compared": compared, "budget": 1e-2},
        {"battery_size": len(battery), "includes": "monomial(1,0.5) at y=0, alpha=0.5"},
    )


def _run_kg_holder_triviality(ctx: ClaimContext) -> ClaimOutcome:
    fractions = {}
    ok = True
    for lam, alpha in ((0.8, 0.5), (0.9, 0.5), (0.6, 0.25), (1.0, 0.5)):
        f = Monomial(1.0, lam)
        sweep = triviality_sweep(
            f, alpha, m=64, h0=ctx.res.h0, scales=ctx.res.scales
        )
        fractions[f"lam={lam},alpha={alpha}"] = sweep.fraction
        ok = ok and abs(sweep.fraction - 1.0) <= 1e-3
    return ClaimOutcome(
        Verdict.SATISFIED.value if ok else Verdict.INDETERMINATE.value,
        {"fractions": fractions, "tol": 1e-3},
        {"probes_per_sweep": 64, "interval": [0.1, 0.9], "estimator": "kg"},
    )


def _run_local_leibniz(ctx: ClaimContext) -> ClaimOutcome:
    sqrt = Monomial(1.0, 0.5)
    cases = [
        (sqrt, sqrt, 0.5, 0.0),
        (_T, _T, 0.5, 0.5),
        (_T2, Exp(1.0), 0.5, 0.3),
    ]
    worst = 0.0
    qualified = 0
    for f, g, alpha, y in cases:
        kw = dict(h0=ctx.res.h0, scales=ctx.res.scales, tol=ctx.res.tol)
        ef = bc_lfd(f, alpha, y, **kw)
        eg = bc_lfd(g, alpha, y, **kw)
        efg = bc_lfd(Product(f, g), alpha, y, **kw)
        if all(e.status is LimitStatus.CONVERGED for e in (ef, eg, efg)):
            qualified += 1
            res = efg.value - ef.value * evaluate(g, y) - evaluate(f, y) * eg.value
            worst = max(worst, abs(res))
    ok = qualified > 0 and worst <= 2e-2
    return ClaimOutcome(
        Verdict.SATISFIED.value if ok else Verdict.INDETERMINATE.value,
        {"worst_residual": worst, "qualified_probes": qualified, "budget": 2e-2},
        {"cases": len(cases), "estimator": "bc"},
    )


def _run_weierstrass(ctx: ClaimContext) -> ClaimOutcome:
    w = WeierstrassTruncated(0.5, 2.0, 24)
    ys = np.linspace(0.1, 0.9, 32)
    non_converged = 0
    statuses: dict[str, int] = {}
    for y in ys:
        est = bc_lfd(w, 0.5, float(y), h0=ctx.res.h0, scales=ctx.res.scales, tol=ctx.res.tol)
        statuses[est.status.value] = statuses.get(est.status.value, 0) + 1
        if est.status is not LimitStatus.CONVERGED:
            non_converged += 1
    fraction = non_converged / len(ys)
    verdict = DIVERGENT if fraction >= 0.9 else Verdict.INDETERMINATE.value
    return ClaimOutcome(
        verdict,
        {"fraction_non_converged": fraction, "statuses": statuses},
        {"f": w.describe(), "alpha": 0.5, "probes": 32, "interval": [0.1, 0.9]},
    )


def _run_obstruction(ctx: ClaimContext) -> ClaimOutcome:
    dims = {}
    for n in range(2, 17):
        space = solve_derivation_space(FiniteAlgebra.pointwise(n))
        dims[str(n)] = space.dimension
    ok = all(v == 0 for v in dims.values())
    return ClaimOutcome(
        Verdict.SATISFIED.value if ok else Verdict.VIOLATED.value,
        {"dimensions": dims},
        {"algebra": "pointwise", "sizes": "2..16"},
    )


def _run_rigidity(ctx: ClaimContext) -> ClaimOutcome:
    dims = {}
    all_zero = True
    for d in range(2, 9):
        space = solve_derivation_space(FiniteAlgebra.truncated_polynomial(d))
        dims[str(d)] = space.dimension
        for _q, residual in factor_through_derivative(space):
            if any(any(x != 0 for x in row) for row in residual):
                all_zero = False
    return ClaimOutcome(
        Verdict.SATISFIED.value if all_zero else Verdict.VIOLATED.value,
        {"dimensions": dims, "residuals_exactly_zero": all_zero},
        {"algebra": "truncated-poly", "degrees": "2..8"},
    )


def _run_cube_root(ctx: ClaimContext) -> ClaimOutcome:
    rng = ctx.rng
    n = 4
    A = FiniteAlgebra.pointwise(n)
    space = solve_derivation_space(A)
    v = [rng.randint(1, 5) for _ in range(n)]
    v[rng.randrange(n)] = 0
    zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    candidates = [zero, *space.basis]
    ok = all(cube_root_annihilation_check(A, D, v) for D in candidates)
    return ClaimOutcome(
        Verdict.SATISFIED.value if ok else Verdict.VIOLATED.value,
        {"candidates": len(candidates), "space_dimension": space.dimension},
        {"algebra": "pointwise", "n": n, "element": v},
    )


REGISTRY: dict[str, Claim] = {
    c.id: c
    for c in [
        Claim(
            "rl-power-rule",
            "D^a[t^g](t) = G(g+1)/G(g+1-a) t^(g-a): quadrature, finite differences, and the closed form agree to 5e-3",
            Verdict.SATISFIED.value,
            _run_rl_power_rule,
        ),
        Claim(
            "caputo-jumarie-identity",
            "d/dt I^(1-a)[f - f(0)] equals the base-shifted fractional derivative of f on absolutely continuous inputs",
            Verdict.SATISFIED.value,
            _run_caputo_jumarie,
        ),
        Claim(
            "rl-leibniz",
            "D^a(fg) != D^a(f)g + fD^a(g): the memory-carrying derivative violates the product rule",
            Verdict.VIOLATED.value,
            _leibniz_claim(lambda: RLDerivative(0.5, 0.0)),
        ),
        Claim(
            "jumarie-leibniz",
            "the outer-difference derivative violates the product rule: D(fg) - D(f)g - fD(g) is nonzero on f = g = t",
            Verdict.VIOLATED.value,
            _leibniz_claim(lambda: Jumarie(0.5)),
        ),
        Claim(
            "caputo-leibniz",
            "the base-shifted fractional derivative violates the product rule",
            Verdict.VIOLATED.value,
            _leibniz_claim(lambda: Caputo(0.5, 0.0)),
        ),
        Claim(
            "gl-leibniz",
            "the backward-difference fractional derivative violates the product rule",
            Verdict.VIOLATED.value,
            _leibniz_claim(lambda: GrunwaldLetnikov(0.5, 0.0)),
        ),
        Claim(
            "rl-chain",
            "D^a(f o g) != (D^a f)(g) * D^a g: the fractional chain rule fails",
            Verdict.VIOLATED.value,
            _run_rl_chain,
        ),
        Claim(
            "caputo-chain",
            "the base-shifted fractional derivative violates the chain rule",
            Verdict.VIOLATED.value,
            _run_caputo_chain,
        ),
        Claim(
            "rl-linearity",
            "D^a(lf + mg) = lD^a(f) + mD^a(g): fractional integrals and derivatives are linear",
            Verdict.SATISFIED.value,
            _run_rl_linearity,
        ),
        Claim(
            "classical-fixed-point",
            "the classical derivative satisfies linearity, the product rule, and the chain rule to 1e-10",
            Verdict.SATISFIED.value,
            _run_classical_fixed_point,
        ),
        Claim(
            "entropy-leibniz",
            "T(f) = f ln|f| satisfies T(fg) = T(f)g + fT(g) exactly, via ln|fg| = ln|f| + ln|g|",
            Verdict.SATISFIED.value,
            _run_entropy_leibniz,
        ),
        Claim(
            "entropy-nonlinear",
            "T(f) = f ln|f| is not additive: T(2+3) - T(2) - T(3) = 5ln5 - 2ln2 - 3ln3 != 0",
            Verdict.VIOLATED.value,
            _run_entropy_nonlinear,
        ),
        Claim(
            "entropy-chain",
            "T(f) = f ln|f| violates the chain rule",
            Verdict.VIOLATED.value,
            _run_entropy_chain,
        ),
        Claim(
            "konig-milman-leibniz",
            "T(f) = c f' + d f ln|f| satisfies the product-rule functional equation on differentiable inputs",
            Verdict.SATISFIED.value,
            _run_km_leibniz,
        ),
        Claim(
            "rl-constants",
            "the memory-carrying derivative of a constant is c (t-a)^(-a)/G(1-a), not zero",
            Verdict.VIOLATED.value,
            _run_rl_constants,
        ),
        Claim(
            "caputo-constants",
            "subtracting the base value makes the fractional derivative annihilate constants",
            Verdict.SATISFIED.value,
            _run_caputo_constants,
        ),
        Claim(
            "local-constants",
            "both local fractional derivative estimators return exactly 0 with Converged status on constants",
            Verdict.SATISFIED.value,
            _run_local_constants,
        ),
        Claim(
            "kg-bc-equivalence",
            "the base-point-localized derivative and the scaled difference quotient agree where both converge (gap <= 1e-2)",
            Verdict.SATISFIED.value,
            _run_kg_bc_equivalence,
        ),
        Claim(
            "kg-holder-triviality",
            "a Holder exponent above the order forces the local fractional derivative to vanish everywhere",
            Verdict.SATISFIED.value,
            _run_kg_holder_triviality,
        ),
        Claim(
            "local-leibniz-on-domain",
            "where all three local derivatives converge, the product rule holds within 2e-2",
            Verdict.SATISFIED.value,
            _run_local_leibniz,
        ),
        Claim(
            "weierstrass-nonconvergence",
            "on a truncated Weierstrass generator of matching exponent the difference-quotient ladder fails to settle",
            DIVERGENT,
            _run_weierstrass,
        ),
        Claim(
            "obstruction-pointwise",
            "the derivation space of the pointwise algebra R^n is exactly zero for n = 2..16",
            Verdict.SATISFIED.value,
            _run_obstruction,
        ),
        Claim(
            "truncated-poly-rigidity",
            "every derivation of the truncated polynomial algebra is multiplication composed with the formal derivative, with exact zero residual",
            Verdict.SATISFIED.value,
            _run_rigidity,
        ),
        Claim(
            "cube-root-annihilation",
            "a derivation image vanishes on the zero set of its argument, by the cube-root factorization",
            Verdict.SATISFIED.value,
            _run_cube_root,
        ),
    ]
}


def run_claim(claim_id: str, ctx: ClaimContext) -> ClaimOutcome:
    claim = REGISTRY[claim_id]
    return claim.runner(ctx)
