"""Nonlocal fractional operators on [a, b].

The Riemann-Liouville integral is the workhorse: a product-integration rule
that integrates the piecewise-linear interpolant exactly against the weakly
singular kernel, so no order is lost at the singular endpoint.  The
derivative-like operators differentiate that map by central differencing
(the post-integration map being much smoother than the integrand), and an
independent Grünwald-Letnikov discretization serves as a cross-validation
oracle throughout the test suite.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import kernels
from .corpus import FuncExpr, GridFunction, ShiftByValueAt, differentiate, evaluate
from .errors import DomainError, UnsupportedVariantError
from .numerics import gamma

Evaluand = Union[FuncExpr, GridFunction]

# Grid resolution defaults: everyday computation vs oracle-grade cross-checks.
DEFAULT_NODES = 4096
ORACLE_NODES = 16384
GL_MIN_NODES = 8


@dataclass(frozen=True)
class FracOrder:
    """Fractional order restricted to the open interval (0, 1)."""

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"fractional order must lie in (0, 1), got {self.alpha!r}")


def _order(alpha: Union[float, FracOrder]) -> float:
    if isinstance(alpha, FracOrder):
        return alpha.alpha
    return FracOrder(float(alpha)).alpha


class Direction(enum.Enum):
    """Side from which a local limit is taken."""

    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> float:
        return 1.0 if self is Direction.PLUS else -1.0


def _values_at(f: Evaluand, s: np.ndarray) -> np.ndarray:
    if isinstance(f, GridFunction):
        return f.interp(s)
    return evaluate(f, s)


def rl_integral(
    f: Evaluand, beta: Union[float, FracOrder], a: float, t: float, n: int = DEFAULT_NODES
) -> float:
    """Riemann-Liouville integral of order beta in (0, 1) from base a at t.

    Closed-form inputs are evaluated exactly at the quadrature nodes; grid
    inputs are linearly interpolated.  Both paths share the same weights.
    """
    beta = _order(beta)
    if t < a:
        raise DomainError(f"rl_integral requires t >= a, got t={t} < a={a}")
    if t == a:
        return 0.0
    h = (t - a) / n
    s = a + h * np.arange(n + 1)
    vals = _values_at(f, s)
    w = kernels.abel_weights(beta, n)
    return h**beta / gamma(beta) * float(np.dot(w, vals))


def rl_derivative(
    f: Evaluand, alpha: Union[float, FracOrder], a: float, t: float, n: int = DEFAULT_NODES
) -> float:
    """Riemann-Liouville derivative of order alpha: d/dt of the (1-alpha)
    integral, by central differencing with step tied to the grid spacing.

    Nonzero on constants: c * (t-a)**(-alpha) / Gamma(1-alpha).
    """
    alpha = _order(alpha)
    if t <= a:
        raise DomainError(f"rl_derivative requires t > a, got t={t}, a={a}")
    beta = 1.0 - alpha
    delta = 2.0 * (t - a) / n
    upper = rl_integral(f, beta, a, t + delta, n)
    lower = rl_integral(f, beta, a, t - delta, n)
    return (upper - lower) / (2.0 * delta)


def caputo(
    f: Evaluand, alpha: Union[float, FracOrder], a: float, t: float, n: int = DEFAULT_NODES
) -> float:
    """Caputo derivative: annihilates constants.

    Computed as the (1-alpha) integral of the exact derivative f' when the
    expression supports symbolic differentiation; equal (and falling back)
    to the Riemann-Liouville derivative of f - f(a) otherwise.  Keeping the
    two code paths distinct is what lets the Caputo/Jumarie residual checks
    compare genuinely independent evaluations.
    """
    alpha = _order(alpha)
    if t <= a:
        raise DomainError(f"caputo requires t > a, got t={t}, a={a}")
    if isinstance(f, FuncExpr):
        try:
            fprime = differentiate(f)
        except UnsupportedVariantError:
            fprime = None
        if fprime is not None:
            return rl_integral(fprime, 1.0 - alpha, a, t, n)
        return rl_derivative(ShiftByValueAt(f, a), alpha, a, t, n)
    shifted_samples = f.samples - f.interp(a)
    shifted = GridFunction(f.a, f.b, f.n, shifted_samples)
    return rl_derivative(shifted, alpha, a, t, n)


def jumarie(
    f: Evaluand, alpha: Union[float, FracOrder], t: float, n: int = DEFAULT_NODES
) -> float:
    """Modified Riemann-Liouville derivative with base point fixed at 0:
    d/dt of the (1-alpha) integral of f - f(0)."""
    alpha = _order(alpha)
    if t <= 0.0:
        raise DomainError(f"jumarie requires t > 0, got t={t}")
    if isinstance(f, FuncExpr):
        shifted: Evaluand = ShiftByValueAt(f, 0.0)
    else:
        shifted = GridFunction(f.a, f.b, f.n, f.samples - f.interp(0.0))
    return rl_derivative(shifted, alpha, 0.0, t, n)


def gl_derivative(
    f: Evaluand, alpha: Union[float, FracOrder], a: float, t: float, n: int
) -> float:
    """Truncated Grünwald-Letnikov sum with step h = (t-a)/n.

    First-order accurate in h; independent of the product-integration rule,
    which is exactly why it is the cross-validation oracle.
    """
    alpha = _order(alpha)
    if n < GL_MIN_NODES:
        raise ValueError(f"gl_derivative requires n >= {GL_MIN_NODES}, got {n}")
    if t <= a:
        raise DomainError(f"gl_derivative requires t > a, got t={t}, a={a}")
    h = (t - a) / n
    s = t - h * np.arange(n + 1)
    vals = _values_at(f, s)
    w = kernels.gl_weights(alpha, n)
    return float(np.dot(w, vals)) / h**alpha


def power_rule_oracle(
    gamma_exp: float, alpha: Union[float, FracOrder], t: float
) -> float:
    """Closed-form fractional power rule used as a test oracle:
    Gamma(g+1)/Gamma(g+1-alpha) * t**(g-alpha) for t**g, g >= 0."""
    alpha = _order(alpha)
    if gamma_exp < 0:
        raise DomainError("power rule oracle requires exponent >= 0")
    if gamma_exp + 1.0 - alpha <= 0:
        raise DomainError("power rule oracle requires exponent + 1 - alpha > 0")
    if t <= 0:
        raise DomainError("power rule oracle requires t > 0")
    return gamma(gamma_exp + 1.0) / gamma(gamma_exp + 1.0 - alpha) * t ** (gamma_exp - alpha)


# --------------------------------------------------------------------------
# Operator catalogue.  Handles are inert descriptions; fractalc.algebra owns
# the uniform application machinery.


class OperatorHandle:
    """Base class for catalogued derivative-like operators."""

    def describe(self) -> str:
        raise NotImplementedError

    def __post_init__(self):
        # Accept plain floats for the order field on any handle.
        order = getattr(self, "order", None)
        if order is not None and not isinstance(order, FracOrder):
            object.__setattr__(self, "order", FracOrder(float(order)))
        direction = getattr(self, "direction", None)
        if direction is not None and not isinstance(direction, Direction):
            object.__setattr__(self, "direction", Direction(direction))


@dataclass(frozen=True)
class ClassicalDerivative(OperatorHandle):
    def describe(self):
        return "classical"


@dataclass(frozen=True)
class RLIntegral(OperatorHandle):
    order: FracOrder
    base: float = 0.0

    def describe(self):
        return f"rl-integral(beta={self.order.alpha:g},a={self.base:g})"


@dataclass(frozen=True)
class RLDerivative(OperatorHandle):
    order: FracOrder
    base: float = 0.0

    def describe(self):
        return f"rl-derivative(alpha={self.order.alpha:g},a={self.base:g})"


@dataclass(frozen=True)
class Caputo(OperatorHandle):
    order: FracOrder
    base: float = 0.0

    def describe(self):
        return f"caputo(alpha={self.order.alpha:g},a={self.base:g})"


@dataclass(frozen=True)
class Jumarie(OperatorHandle):
    # Base point is pinned at 0 by definition.
    order: FracOrder

    def describe(self):
        return f"jumarie(alpha={self.order.alpha:g})"


@dataclass(frozen=True)
class GrunwaldLetnikov(OperatorHandle):
    order: FracOrder
    base: float = 0.0

    def describe(self):
        return f"grunwald-letnikov(alpha={self.order.alpha:g},a={self.base:g})"


@dataclass(frozen=True)
class BCLocal(OperatorHandle):
    order: FracOrder
    direction: Direction = Direction.PLUS

    def describe(self):
        return f"bc-local(alpha={self.order.alpha:g},{self.direction.value})"


@dataclass(frozen=True)
class KGLocal(OperatorHandle):
    order: FracOrder
    direction: Direction = Direction.PLUS

    def describe(self):
        return f"kg-local(alpha={self.order.alpha:g},{self.direction.value})"


@dataclass(frozen=True)
class Entropy(OperatorHandle):
    """T(f) = d * f * ln|f|, extended by 0 across zeros of f."""

    coeff: FuncExpr

    def describe(self):
        return f"entropy(d={self.coeff.describe()})"


@dataclass(frozen=True)
class KonigMilman(OperatorHandle):
    """T(f) = c * f' + d * f * ln|f| on symbolically differentiable f."""

    c: FuncExpr
    d: FuncExpr

    def describe(self):
        return f"konig-milman(c={self.c.describe()},d={self.d.describe()})"
