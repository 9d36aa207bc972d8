"""Closed-form test functions, their grids, and the default function corpus.

Expressions evaluate exactly (to machine precision) by structural recursion
and carry a declared Hölder exponent where one is known by construction; the
library never estimates smoothness from data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import DomainError, UnsupportedVariantError
from .kernels import weierstrass_sum


class FuncExpr:
    """Base class for closed-form function descriptors.

    Subclasses implement ``_eval`` on float arrays; instances are immutable
    and freely shareable.
    """

    def _eval(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def holder_exponent(self) -> float | None:
        """Declared Hölder class exponent in (0, 1], or None when unknown."""
        return None

    @property
    def resolution_floor(self) -> float | None:
        """Scale below which a truncated fractal expression turns smooth."""
        return None

    def describe(self) -> str:
        raise NotImplementedError

    def __call__(self, t):
        return evaluate(self, t)


def _fmt(x: float) -> str:
    return f"{x:g}"


@dataclass(frozen=True)
class Constant(FuncExpr):
    value: float

    def _eval(self, t):
        return np.full_like(t, self.value, dtype=np.float64)

    @property
    def holder_exponent(self):
        return 1.0

    def describe(self):
        return f"const({_fmt(self.value)})"


@dataclass(frozen=True)
class Monomial(FuncExpr):
    """coef * t**exponent with exponent >= 0 so values stay finite at 0."""

    coef: float
    exponent: float

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("Monomial exponent must be >= 0")

    def _eval(self, t):
        e = self.exponent
        if e != round(e) and np.any(t < 0):
            raise DomainError("fractional power of a negative argument")
        return self.coef * np.power(t, e)

    @property
    def holder_exponent(self):
        if self.exponent == 0:
            return 1.0
        return self.exponent if self.exponent < 1 else 1.0

    def describe(self):
        return f"monomial({_fmt(self.coef)},{_fmt(self.exponent)})"


@dataclass(frozen=True)
class Exp(FuncExpr):
    rate: float

    def _eval(self, t):
        return np.exp(self.rate * t)

    @property
    def holder_exponent(self):
        return 1.0

    def describe(self):
        return f"exp({_fmt(self.rate)})"


@dataclass(frozen=True)
class Cos(FuncExpr):
    freq: float

    def _eval(self, t):
        return np.cos(self.freq * t)

    @property
    def holder_exponent(self):
        return 1.0

    def describe(self):
        return f"cos({_fmt(self.freq)})"


@dataclass(frozen=True)
class Sum(FuncExpr):
    terms: tuple[FuncExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def _eval(self, t):
        acc = np.zeros_like(t, dtype=np.float64)
        for term in self.terms:
            acc = acc + term._eval(t)
        return acc

    @property
    def holder_exponent(self):
        return _combined_holder(self.terms)

    @property
    def resolution_floor(self):
        return _combined_floor(self.terms)

    def describe(self):
        return "sum(" + ",".join(term.describe() for term in self.terms) + ")"


@dataclass(frozen=True)
class Product(FuncExpr):
    left: FuncExpr
    right: FuncExpr

    def _eval(self, t):
        return self.left._eval(t) * self.right._eval(t)

    @property
    def holder_exponent(self):
        return _combined_holder((self.left, self.right))

    @property
    def resolution_floor(self):
        return _combined_floor((self.left, self.right))

    def describe(self):
        return f"product({self.left.describe()},{self.right.describe()})"


@dataclass(frozen=True)
class Compose(FuncExpr):
    outer: FuncExpr
    inner: FuncExpr

    def _eval(self, t):
        return self.outer._eval(self.inner._eval(t))

    @property
    def resolution_floor(self):
        return _combined_floor((self.outer, self.inner))

    def describe(self):
        return f"compose({self.outer.describe()},{self.inner.describe()})"


@dataclass(frozen=True)
class ShiftByValueAt(FuncExpr):
    """inner - inner(base): vanishes at the base point by construction."""

    inner: FuncExpr
    base: float

    def _eval(self, t):
        base_val = self.inner._eval(np.asarray(float(self.base)))
        return self.inner._eval(t) - base_val

    @property
    def holder_exponent(self):
        return self.inner.holder_exponent

    @property
    def resolution_floor(self):
        return self.inner.resolution_floor

    def describe(self):
        return f"shift({self.inner.describe()},{_fmt(self.base)})"


@dataclass(frozen=True)
class WeierstrassTruncated(FuncExpr):
    """sum_{k=0..n_max} q^(-alpha k) cos(q^k t), Hölder exponent alpha.

    The truncation is smooth below the scale q^-n_max; estimators clamp
    their scale ladders above that floor so they probe the fractal regime.
    """

    alpha: float
    q: float
    n_max: int

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("WeierstrassTruncated requires 0 < alpha < 1")
        if self.q <= 1.0:
            raise ValueError("WeierstrassTruncated requires q > 1")
        if self.n_max < 1:
            raise ValueError("WeierstrassTruncated requires n_max >= 1")

    def _eval(self, t):
        return weierstrass_sum(self.alpha, self.q, self.n_max, np.asarray(t, dtype=np.float64))

    @property
    def holder_exponent(self):
        return self.alpha

    @property
    def resolution_floor(self):
        return self.q ** (-float(self.n_max))

    @property
    def tail_bound(self) -> float:
        """Sup-norm gap to the untruncated series."""
        r = self.q**-self.alpha
        return r ** (self.n_max + 1) / (1.0 - r)

    def describe(self):
        return f"weierstrass({_fmt(self.alpha)},{_fmt(self.q)},{self.n_max})"


def _combined_holder(parts: Sequence[FuncExpr]) -> float | None:
    exps = [p.holder_exponent for p in parts]
    if any(e is None for e in exps):
        return None
    return min(exps)


def _combined_floor(parts: Sequence[FuncExpr]) -> float | None:
    floors = [p.resolution_floor for p in parts if p.resolution_floor is not None]
    return max(floors) if floors else None


def evaluate(f: FuncExpr, t):
    """Pointwise value(s) of ``f``; accepts a scalar or an ndarray."""
    arr = np.asarray(t, dtype=np.float64)
    out = f._eval(arr)
    if np.isscalar(t) or arr.ndim == 0:
        return float(out)
    return np.asarray(out, dtype=np.float64)


def differentiate(f: FuncExpr) -> FuncExpr:
    """Exact symbolic derivative, staying inside the expression variants.

    Raises:
        UnsupportedVariantError: for variants without a representable
            derivative (fractional-power monomials, truncated Weierstrass).
    """
    if isinstance(f, Constant):
        return Constant(0.0)
    if isinstance(f, Monomial):
        if f.exponent == 0:
            return Constant(0.0)
        if f.exponent == 1:
            return Constant(f.coef)
        if f.exponent >= 1:
            return Monomial(f.coef * f.exponent, f.exponent - 1.0)
        raise UnsupportedVariantError(
            f"monomial exponent {f.exponent} has no representable derivative"
        )
    if isinstance(f, Exp):
        return Product(Constant(f.rate), Exp(f.rate))
    if isinstance(f, Cos):
        # d/dt cos(w t) = -w sin(w t) = w cos(w t + pi/2)
        phase = Sum((Monomial(f.freq, 1.0), Constant(math.pi / 2.0)))
        return Product(Constant(f.freq), Compose(Cos(1.0), phase))
    if isinstance(f, Sum):
        return Sum(tuple(differentiate(term) for term in f.terms))
    if isinstance(f, Product):
        return Sum(
            (
                Product(differentiate(f.left), f.right),
                Product(f.left, differentiate(f.right)),
            )
        )
    if isinstance(f, Compose):
        return Product(Compose(differentiate(f.outer), f.inner), differentiate(f.inner))
    if isinstance(f, ShiftByValueAt):
        return differentiate(f.inner)
    raise UnsupportedVariantError(f"no symbolic derivative for {f.describe()}")


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a function at n uniform nodes over [a, b]."""

    a: float
    b: float
    n: int
    samples: np.ndarray

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError("GridFunction requires b > a")
        if self.n < 2:
            raise ValueError("GridFunction requires n >= 2")
        arr = np.asarray(self.samples, dtype=np.float64).copy()
        if arr.shape != (self.n,):
            raise ValueError(f"expected {self.n} samples, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("GridFunction samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.n)

    @property
    def spacing(self) -> float:
        return (self.b - self.a) / (self.n - 1)

    def interp(self, t):
        """Piecewise-linear value(s) at ``t``, extrapolating linearly at
        the edges (the outer differencing steps peek slightly past b)."""
        arr = np.asarray(t, dtype=np.float64)
        x = self.nodes
        y = self.samples
        out = np.interp(arr, x, y)
        h = self.spacing
        lo = arr < self.a
        hi = arr > self.b
        if np.any(lo):
            out = np.where(lo, y[0] + (arr - self.a) * (y[1] - y[0]) / h, out)
        if np.any(hi):
            out = np.where(hi, y[-1] + (arr - self.b) * (y[-1] - y[-2]) / h, out)
        if np.isscalar(t) or arr.ndim == 0:
            return float(out)
        return out

    def to_csv(self) -> str:
        """CSV text with header ``t,value`` at full double precision."""
        lines = ["t,value"]
        for t, v in zip(self.nodes, self.samples):
            lines.append(f"{t:.17g},{v:.17g}")
        return "\n".join(lines) + "\n"


def sample(f: FuncExpr, a: float, b: float, n: int) -> GridFunction:
    """Evaluate ``f`` on the uniform n-node grid over [a, b]."""
    if not b > a:
        raise ValueError("sample requires b > a")
    if n < 2:
        raise ValueError("sample requires n >= 2")
    nodes = np.linspace(a, b, n)
    return GridFunction(a, b, n, evaluate(f, nodes))


def cube_root_witness(f: Union[FuncExpr, GridFunction]):
    """A continuous g with g**3 == f: closed-form when the variant allows,
    nodewise signed cube root for grid data.

    Raises:
        UnsupportedVariantError: when ``f`` is an expression with no
            closed-form signed cube root; callers may fall back to
            ``cube_root_witness(sample(f, ...))``.
    """
    if isinstance(f, GridFunction):
        return GridFunction(f.a, f.b, f.n, np.cbrt(f.samples))
    if isinstance(f, Constant):
        return Constant(math.copysign(abs(f.value) ** (1.0 / 3.0), f.value) if f.value else 0.0)
    if isinstance(f, Monomial):
        coef_root = math.copysign(abs(f.coef) ** (1.0 / 3.0), f.coef) if f.coef else 0.0
        return Monomial(coef_root, f.exponent / 3.0)
    if isinstance(f, Product):
        return Product(cube_root_witness(f.left), cube_root_witness(f.right))
    if isinstance(f, Compose):
        return Compose(cube_root_witness(f.outer), f.inner)
    raise UnsupportedVariantError(
        f"no closed-form cube root for {f.describe()}; take the gridwise root of samples"
    )


@dataclass(frozen=True)
class CorpusMember:
    """A named corpus entry with the declarations the harnesses rely on."""

    name: str
    expr: FuncExpr
    absolutely_continuous: bool
    polynomial: bool = False


def default_corpus() -> tuple[CorpusMember, ...]:
    """The stock function corpus probed by the claim suites.

    The truncated Weierstrass member is flagged non-AC: the truncation
    itself is smooth, but it stands in for the genuinely fractal limit and
    is kept out of the absolutely-continuous sweeps.
    """
    return (
        CorpusMember("const-1", Constant(1.0), True, True),
        CorpusMember("const-5", Constant(5.0), True, True),
        CorpusMember("linear", Monomial(1.0, 1.0), True, True),
        CorpusMember("quadratic", Monomial(1.0, 2.0), True, True),
        CorpusMember("cubic", Monomial(1.0, 3.0), True, True),
        CorpusMember("affine", Sum((Constant(5.0), Monomial(1.0, 1.0))), True, True),
        CorpusMember("sqrt", Monomial(1.0, 0.5), True),
        CorpusMember("pow-0.8", Monomial(1.0, 0.8), True),
        CorpusMember("exp", Exp(1.0), True),
        CorpusMember("cosine", Cos(3.0), True),
        CorpusMember("weierstrass-0.5", WeierstrassTruncated(0.5, 2.0, 24), False),
    )


def ac_members(corpus: Sequence[CorpusMember] | None = None) -> Iterator[CorpusMember]:
    for member in corpus if corpus is not None else default_corpus():
        if member.absolutely_continuous:
            yield member


def polynomial_members(corpus: Sequence[CorpusMember] | None = None) -> Iterator[CorpusMember]:
    for member in corpus if corpus is not None else default_corpus():
        if member.polynomial:
            yield member
