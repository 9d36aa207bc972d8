"""Local fractional derivatives: difference-quotient and base-point-localized
Riemann-Liouville estimators with one-sided limit extrapolation.

Existence is never asserted symbolically; it is operationalized as the
Converged status of the ladder extrapolation, and non-existence surfaces as
Divergent or Inconclusive, never as a crash.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .corpus import (
    Constant,
    FuncExpr,
    GridFunction,
    Monomial,
    Product,
    ShiftByValueAt,
    Sum,
    evaluate,
)
from .frac_ops import Direction, FracOrder, _order, rl_derivative
from .numerics import LimitEstimate, LimitStatus, extrapolate_limit
from .numerics import gamma as gamma_fn

Evaluand = Union[FuncExpr, GridFunction]

DEFAULT_H0 = 0.05
DEFAULT_SCALES = 10
MIN_SCALES = 4
DEFAULT_TOL = 1e-4
WINDOW_NODES = 256
# Ladder scales below safety * resolution_floor would probe the smooth tail
# of a truncated fractal rather than its fractal regime.
FLOOR_SAFETY = 16.0


@dataclass(frozen=True)
class LocalProbe:
    """One local-derivative estimation: ladder, raw values, and the verdict."""

    y: float
    direction: Direction
    alpha: float
    ladder: tuple[float, ...]
    raw: tuple[float, ...]
    result: LimitEstimate


def _as_direction(sigma: Union[Direction, str]) -> Direction:
    if isinstance(sigma, Direction):
        return sigma
    return Direction(sigma)


def _ladder(
    f: Evaluand,
    y: float,
    sigma: Direction,
    domain: tuple[float, float],
    h0: float,
    scales: int,
) -> list[float]:
    a, b = domain
    if not a <= y <= b:
        raise ValueError(f"probe point {y} outside domain [{a}, {b}]")
    room = (b - y) if sigma is Direction.PLUS else (y - a)
    floor = 0.0
    res_floor = getattr(f, "resolution_floor", None)
    if res_floor:
        floor = FLOOR_SAFETY * res_floor
    hs = [h0 * 2.0**-k for k in range(scales)]
    hs = [h for h in hs if h <= room and h > floor]
    if len(hs) < MIN_SCALES:
        raise ValueError(
            f"fewer than {MIN_SCALES} usable ladder scales at y={y} "
            f"(room={room:g}, floor={floor:g})"
        )
    return hs


def _value_at(f: Evaluand, t: float) -> float:
    if isinstance(f, GridFunction):
        return f.interp(t)
    return evaluate(f, t)


def bc_quotients(
    f: Evaluand,
    alpha: Union[float, FracOrder],
    y: float,
    sigma: Union[Direction, str] = Direction.PLUS,
    *,
    domain: tuple[float, float] = (0.0, 1.0),
    h0: float = DEFAULT_H0,
    scales: int = DEFAULT_SCALES,
) -> tuple[list[float], list[float]]:
    """Raw ladder of Gamma(1+alpha) * sigma * (f(y+sigma h) - f(y)) / h**alpha."""
    alpha = _order(alpha)
    sigma = _as_direction(sigma)
    hs = _ladder(f, y, sigma, domain, h0, scales)
    fy = _value_at(f, y)
    scale_const = gamma_fn(1.0 + alpha) * sigma.sign
    vals = [
        scale_const * (_value_at(f, y + sigma.sign * h) - fy) / h**alpha for h in hs
    ]
    return hs, vals


def bc_probe(
    f: Evaluand,
    alpha: Union[float, FracOrder],
    y: float,
    sigma: Union[Direction, str] = Direction.PLUS,
    *,
    domain: tuple[float, float] = (0.0, 1.0),
    h0: float = DEFAULT_H0,
    scales: int = DEFAULT_SCALES,
    tol: float = DEFAULT_TOL,
) -> LocalProbe:
    alpha = _order(alpha)
    sigma = _as_direction(sigma)
    hs, vals = bc_quotients(f, alpha, y, sigma, domain=domain, h0=h0, scales=scales)
    est = extrapolate_limit(list(zip(hs, vals)), tol)
    return LocalProbe(y, sigma, alpha, tuple(hs), tuple(vals), est)


def bc_lfd(
    f: Evaluand,
    alpha: Union[float, FracOrder],
    y: float,
    sigma: Union[Direction, str] = Direction.PLUS,
    **kwargs,
) -> LimitEstimate:
    """Difference-quotient local fractional derivative at y from side sigma."""
    return bc_probe(f, alpha, y, sigma, **kwargs).result


def _kg_inner(f: Evaluand, alpha: float, y: float, sigma: Direction, x_offset: float) -> float:
    """RL derivative, base point y, of sigma*(f - f(y)) evaluated at offset
    x_offset from y on the sigma side, on a window-proportional grid."""
    if sigma is Direction.PLUS:
        if isinstance(f, GridFunction):
            shifted: Evaluand = GridFunction(f.a, f.b, f.n, f.samples - f.interp(y))
        else:
            shifted = ShiftByValueAt(f, y)
        return rl_derivative(shifted, alpha, y, y + x_offset, WINDOW_NODES)
    # Minus side: reflect u -> y - u, which maps the right-sided operator on
    # [x, y] to the left-sided one on [0, y - x] applied to f(y) - f(y - u).
    if isinstance(f, GridFunction):
        n = max(WINDOW_NODES + 1, f.n)
        u_nodes = np.linspace(0.0, x_offset * 1.5, n)
        vals = f.interp(y) - f.interp(y - u_nodes)
        reflected: Evaluand = GridFunction(0.0, x_offset * 1.5, n, vals)
    else:
        flipped = Sum((Constant(y), Monomial(-1.0, 1.0)))  # u |-> y - u
        from .corpus import Compose

        reflected = Product(Constant(-1.0), ShiftByValueAt(Compose(f, flipped), 0.0))
    return rl_derivative(reflected, alpha, 0.0, x_offset, WINDOW_NODES)


def kg_probe(
    f: Evaluand,
    alpha: Union[float, FracOrder],
    y: float,
    sigma: Union[Direction, str] = Direction.PLUS,
    *,
    domain: tuple[float, float] = (0.0, 1.0),
    h0: float = DEFAULT_H0,
    scales: int = DEFAULT_SCALES,
    tol: float = DEFAULT_TOL,
) -> LocalProbe:
    alpha = _order(alpha)
    sigma = _as_direction(sigma)
    hs = _ladder(f, y, sigma, domain, h0, scales)
    vals = [_kg_inner(f, alpha, y, sigma, h) for h in hs]
    est = extrapolate_limit(list(zip(hs, vals)), tol)
    return LocalProbe(y, sigma, alpha, tuple(hs), tuple(vals), est)


def kg_lfd(
    f: Evaluand,
    alpha: Union[float, FracOrder],
    y: float,
    sigma: Union[Direction, str] = Direction.PLUS,
    **kwargs,
) -> LimitEstimate:
    """Base-point-localized RL derivative of sigma*(f - f(y)) with the
    evaluation point driven to y from side sigma."""
    return kg_probe(f, alpha, y, sigma, **kwargs).result


@dataclass(frozen=True)
class AgreementReport:
    """Gap between the two local estimators on a shared ladder."""

    y: float
    alpha: float
    direction: Direction
    kg: LimitEstimate
    bc: LimitEstimate
    gap: float | None
    notes: tuple[str, ...] = ()


def kg_bc_agreement(
    f: Evaluand,
    alpha: Union[float, FracOrder],
    y: float,
    sigma: Union[Direction, str] = Direction.PLUS,
    **kwargs,
) -> AgreementReport:
    """Run both estimators on the same ladder; the gap is reported only when
    both converged, statuses otherwise."""
    alpha = _order(alpha)
    sigma = _as_direction(sigma)
    kg = kg_lfd(f, alpha, y, sigma, **kwargs)
    bc = bc_lfd(f, alpha, y, sigma, **kwargs)
    gap = None
    if kg.status is LimitStatus.CONVERGED and bc.status is LimitStatus.CONVERGED:
        gap = abs(kg.value - bc.value)
    notes = []
    res_floor = getattr(f, "resolution_floor", None)
    if res_floor:
        notes.append(
            f"truncated-fractal input: ladder clamped above {FLOOR_SAFETY:g} * {res_floor:g}"
        )
    return AgreementReport(y, alpha, sigma, kg, bc, gap, tuple(notes))


@dataclass(frozen=True)
class SweepRow:
    y: float
    estimate: float
    status: LimitStatus
    error_bar: float

    @property
    def trivial_at(self) -> float:
        return abs(self.estimate)


@dataclass(frozen=True)
class SweepResult:
    """Vanishing fraction of a local derivative across an interval."""

    rows: tuple[SweepRow, ...]
    tol: float

    @property
    def fraction(self) -> float:
        hits = sum(
            1
            for r in self.rows
            if r.status is LimitStatus.CONVERGED and abs(r.estimate) <= self.tol
        )
        return hits / len(self.rows)

    def to_csv(self) -> str:
        lines = ["y,estimate,status,error_bar"]
        for r in self.rows:
            lines.append(f"{r.y:.17g},{r.estimate:.17g},{r.status.value},{r.error_bar:.17g}")
        return "\n".join(lines) + "\n"


def triviality_sweep(
    f: Evaluand,
    alpha: Union[float, FracOrder],
    holder: float | None = None,
    interval: tuple[float, float] = (0.1, 0.9),
    m: int = 64,
    *,
    tol: float = 1e-3,
    estimator: str = "kg",
    domain: tuple[float, float] = (0.0, 1.0),
    h0: float = DEFAULT_H0,
    scales: int = DEFAULT_SCALES,
) -> SweepResult:
    """Probe m equispaced points and report the fraction where the local
    derivative both converged and vanished (|estimate| <= tol).

    `holder` is the declared Hölder exponent; when omitted it is read off
    the expression.  Exponent strictly above alpha means expected fraction 1;
    exponent equal to alpha probes the almost-everywhere regime.  Exponents
    below alpha are rejected since neither vanishing claim applies there.
    """
    alpha = _order(alpha)
    if holder is None:
        holder = getattr(f, "holder_exponent", None)
    if holder is None:
        raise ValueError("triviality sweep requires a declared Hölder exponent")
    if holder < alpha:
        raise ValueError(
            f"declared exponent {holder} is below the order {alpha}; "
            "no vanishing statement applies"
        )
    if estimator not in ("kg", "bc"):
        raise ValueError(f"unknown estimator {estimator!r}")
    run = kg_lfd if estimator == "kg" else bc_lfd
    ys = np.linspace(interval[0], interval[1], m)
    rows = []
    for y in ys:
        est = run(f, alpha, float(y), Direction.PLUS, domain=domain, h0=h0, scales=scales)
        rows.append(SweepRow(float(y), est.value, est.status, est.error_bar))
    return SweepResult(tuple(rows), tol)
