"""Exact derivation-space computation on finite commutative algebras.

Two families are modeled: pointwise algebras (R^n with coordinatewise
multiplication, the finite stand-in for continuous functions) and truncated
polynomial algebras (R[x] modulo degrees above d).  The space of derivations,
linear maps D with D(uv) = D(u)v + uD(v), is computed as the exact rational
null space of the Leibniz constraint system.  No floating point anywhere:
ranks and residuals are statements about integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AlgebraInvariantError, UnsupportedVariantError

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

POINTWISE = "pointwise"
TRUNCATED_POLY = "truncated-poly"

# Default size caps: the constraint system has ~m^3 rows and the exact solve
# should stay interactive.
MAX_POINTWISE_N = 16
MAX_TRUNCATED_D = 8

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """Finite-dimensional commutative algebra given by structure constants.

    `table[(i, j)]` holds the expansion of e_i * e_j in the basis as a sparse
    mapping {l: coefficient}.  Only pairs with a nonzero product appear.
    """

    kind: str
    param: int
    m: int
    table: dict = field(repr=False)

    @staticmethod
    def pointwise(n: int) -> "FiniteAlgebra":
        """R^n with coordinatewise multiplication: e_i * e_j = delta_ij e_i."""
        if n < 1:
            raise ValueError(f"pointwise algebra needs n >= 1, got {n}")
        table = {(i, i): {i: _ONE} for i in range(n)}
        alg = FiniteAlgebra(POINTWISE, n, n, table)
        alg.validate()
        return alg

    @staticmethod
    def truncated_polynomial(d: int) -> "FiniteAlgebra":
        """R[x] / (degrees above d), basis 1, x, ..., x^d."""
        if d < 0:
            raise ValueError(f"truncated polynomial algebra needs d >= 0, got {d}")
        m = d + 1
        table = {
            (i, j): {i + j: _ONE}
            for i in range(m)
            for j in range(m)
            if i + j <= d
        }
        alg = FiniteAlgebra(TRUNCATED_POLY, d, m, table)
        alg.validate()
        return alg

    def structure_constant(self, i: int, j: int, l: int) -> Fraction:
        return self.table.get((i, j), {}).get(l, _ZERO)

    def product_row(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def multiply(self, u: Sequence, v: Sequence) -> Vector:
        """Product of two coefficient vectors in the algebra."""
        u = [_frac(x) for x in u]
        v = [_frac(x) for x in v]
        out = [_ZERO] * self.m
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                for l, c in self.product_row(i, j).items():
                    out[l] += ui * vj * c
        return tuple(out)

    def validate(self) -> None:
        """Check commutativity and associativity on all basis triples."""
        m = self.m
        for i in range(m):
            for j in range(i, m):
                if self.product_row(i, j) != self.product_row(j, i):
                    raise AlgebraInvariantError(
                        f"multiplication not commutative at basis pair ({i}, {j})"
                    )
        basis = [tuple(_ONE if k == i else _ZERO for k in range(m)) for i in range(m)]
        for i in range(m):
            for j in range(m):
                eij = self.multiply(basis[i], basis[j])
                for k in range(m):
                    left = self.multiply(eij, basis[k])
                    right = self.multiply(basis[i], self.multiply(basis[j], basis[k]))
                    if left != right:
                        raise AlgebraInvariantError(
                            f"multiplication not associative at triple ({i}, {j}, {k})"
                        )

    def describe(self) -> str:
        if self.kind == POINTWISE:
            return f"pointwise(n={self.param})"
        return f"truncated-poly(d={self.param})"


def _add_term(row: dict, col: int, coef: Fraction) -> None:
    new = row.get(col, _ZERO) + coef
    if new == 0:
        row.pop(col, None)
    else:
        row[col] = new


def leibniz_constraint_rows(A: FiniteAlgebra) -> list[dict]:
    """Sparse rows of the linear system imposing the Leibniz identity.

    Unknowns are the matrix entries D[k][l] (coefficient of e_k in D(e_l)),
    flattened as k*m + l.  One row per basis pair i <= j and output
    coordinate k; commutativity makes the i > j rows redundant.
    """
    m = A.m
    rows = []
    for i in range(m):
        for j in range(i, m):
            prod_ij = A.product_row(i, j)
            for k in range(m):
                row: dict = {}
                for l, c in prod_ij.items():
                    _add_term(row, k * m + l, c)
                for p in range(m):
                    c_pj = A.structure_constant(p, j, k)
                    if c_pj != 0:
                        _add_term(row, p * m + i, -c_pj)
                    c_ip = A.structure_constant(i, p, k)
                    if c_ip != 0:
                        _add_term(row, p * m + j, -c_ip)
                if row:
                    rows.append(row)
    return rows


def _nullspace(rows: Iterable[dict], nvars: int) -> list[Vector]:
    """Exact null-space basis of a sparse rational system, via RREF.

    Pivot rows are kept fully reduced (leading coefficient 1, pivot columns
    eliminated from every other stored row) so free-column basis vectors can
    be read off directly.
    """
    pivots: dict[int, dict] = {}
    for raw in rows:
        row = dict(raw)
        while row:
            lead = min(row)
            if lead not in pivots:
                break
            factor = row[lead]
            for c, v in pivots[lead].items():
                _add_term(row, c, -factor * v)
        if not row:
            continue
        lead = min(row)
        inv = _ONE / row[lead]
        row = {c: v * inv for c, v in row.items()}
        for prow in pivots.values():
            f = prow.get(lead)
            if f is not None:
                for c, v in row.items():
                    _add_term(prow, c, -f * v)
        pivots[lead] = row
    basis = []
    for free_col in range(nvars):
        if free_col in pivots:
            continue
        vec = [_ZERO] * nvars
        vec[free_col] = _ONE
        for pcol, prow in pivots.items():
            coef = prow.get(free_col)
            if coef is not None:
                vec[pcol] = -coef
        basis.append(tuple(vec))
    return basis


def _vector_to_matrix(vec: Vector, m: int) -> Matrix:
    return tuple(tuple(vec[k * m + l] for l in range(m)) for k in range(m))


def _matrix_to_vector(M: Sequence[Sequence], m: int) -> Vector:
    return tuple(_frac(M[k][l]) for k in range(m) for l in range(m))


def apply_matrix(M: Sequence[Sequence], v: Sequence) -> Vector:
    rows = [[_frac(x) for x in r] for r in M]
    vv = [_frac(x) for x in v]
    return tuple(sum((r[l] * vv[l] for l in range(len(vv))), _ZERO) for r in rows)


def leibniz_defects(A: FiniteAlgebra, M: Sequence[Sequence]) -> list[Vector]:
    """D(e_i e_j) - D(e_i) e_j - e_i D(e_j) for all i <= j, as exact vectors."""
    m = A.m
    rows = [[_frac(x) for x in r] for r in M]
    basis = [tuple(_ONE if k == i else _ZERO for k in range(m)) for i in range(m)]
    images = [apply_matrix(rows, basis[i]) for i in range(m)]
    defects = []
    for i in range(m):
        for j in range(i, m):
            lhs = apply_matrix(rows, A.multiply(basis[i], basis[j]))
            rhs1 = A.multiply(images[i], basis[j])
            rhs2 = A.multiply(basis[i], images[j])
            defects.append(
                tuple(lhs[k] - rhs1[k] - rhs2[k] for k in range(m))
            )
    return defects


def is_derivation(A: FiniteAlgebra, M: Sequence[Sequence]) -> bool:
    return all(all(x == 0 for x in d) for d in leibniz_defects(A, M))


@dataclass(frozen=True, eq=False)
class DerivationSpace:
    """Exact basis of all derivations of a finite algebra."""

    algebra: FiniteAlgebra
    basis: tuple[Matrix, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, M: Sequence[Sequence]) -> bool:
        """Exact membership of a matrix in the span of the basis."""
        m = self.algebra.m
        nvars = m * m
        pivots: dict[int, dict] = {}
        for B in self.basis:
            row = {
                idx: val
                for idx, val in enumerate(_matrix_to_vector(B, m))
                if val != 0
            }
            row = _reduce_row(row, pivots)
            if row:
                lead = min(row)
                inv = _ONE / row[lead]
                pivots[lead] = {c: v * inv for c, v in row.items()}
        target = {
            idx: val for idx, val in enumerate(_matrix_to_vector(M, m)) if val != 0
        }
        return not _reduce_row(target, pivots)

    def to_json_dict(self) -> dict:
        alg = {
            "kind": self.algebra.kind,
            "size": self.algebra.param,
            "basis_size": self.algebra.m,
        }
        basis = [
            [[_frac_str(x) for x in row] for row in M] for M in self.basis
        ]
        return {"algebra": alg, "dimension": self.dimension, "basis": basis}


def _reduce_row(row: dict, pivots: dict) -> dict:
    row = dict(row)
    while row:
        lead = min(row)
        prow = pivots.get(lead)
        if prow is None:
            return row
        factor = row[lead]
        for c, v in prow.items():
            _add_term(row, c, -factor * v)
    return row


def solve_derivation_space(A: FiniteAlgebra) -> DerivationSpace:
    """Exact null-space basis of the Leibniz constraint system on A."""
    A.validate()
    rows = leibniz_constraint_rows(A)
    vecs = _nullspace(rows, A.m * A.m)
    return DerivationSpace(A, tuple(_vector_to_matrix(v, A.m) for v in vecs))


def formal_derivative_matrix(A: FiniteAlgebra) -> Matrix:
    """Matrix of P -> P' on a truncated polynomial algebra: x^j -> j x^(j-1)."""
    _require_kind(A, TRUNCATED_POLY, "formal derivative")
    m = A.m
    return tuple(
        tuple(Fraction(j) if k == j - 1 else _ZERO for j in range(m))
        for k in range(m)
    )


def multiplication_matrix(A: FiniteAlgebra, q: Sequence) -> Matrix:
    """Matrix of multiplication by the algebra element q."""
    qv = [_frac(x) for x in q]
    m = A.m
    cols = []
    for j in range(m):
        e_j = tuple(_ONE if k == j else _ZERO for k in range(m))
        cols.append(A.multiply(qv, e_j))
    return tuple(tuple(cols[j][k] for j in range(m)) for k in range(m))


def _matmul(P: Matrix, Q: Matrix) -> Matrix:
    m = len(P)
    return tuple(
        tuple(sum((P[k][l] * Q[l][j] for l in range(m)), _ZERO) for j in range(m))
        for k in range(m)
    )


def _require_kind(A: FiniteAlgebra, kind: str, what: str) -> None:
    if A.kind != kind:
        raise UnsupportedVariantError(f"{what} requires a {kind} algebra, got {A.kind}")


def factor_through_derivative(
    space: DerivationSpace,
) -> list[tuple[Vector, Matrix]]:
    """Factor each derivation basis matrix as multiplication-by-q composed
    with the formal derivative, q being the image of x.

    Returns (q, residual) pairs with residual = M - Mul_q . d/dx, as exact
    matrices.  On a truncated polynomial algebra every derivation factors
    this way, so residuals are expected to be identically zero.
    """
    A = space.algebra
    _require_kind(A, TRUNCATED_POLY, "derivative factorization")
    if not space.basis:
        return []
    m = A.m
    dx = formal_derivative_matrix(A)
    out = []
    for M in space.basis:
        q = tuple(M[k][1] for k in range(m))
        composed = _matmul(multiplication_matrix(A, q), dx)
        residual = tuple(
            tuple(M[k][j] - composed[k][j] for j in range(m)) for k in range(m)
        )
        out.append((q, residual))
    return out


def cube_root_annihilation_check(
    A: FiniteAlgebra, D: Sequence[Sequence], v: Sequence
) -> bool:
    """True iff D(v) vanishes at every coordinate where v vanishes.

    On a pointwise algebra every element has a coordinatewise cube root, and
    applying the Leibniz identity to v = (v^(1/3))^3 forces the image of v to
    inherit the zero set of v.  The check requires a genuine derivation and
    an element with at least one zero coordinate.
    """
    _require_kind(A, POINTWISE, "cube-root annihilation check")
    vv = [_frac(x) for x in v]
    if len(vv) != A.m:
        raise ValueError(f"element has {len(vv)} coordinates, algebra has {A.m}")
    if all(x != 0 for x in vv):
        raise ValueError("element must have at least one zero coordinate")
    if not is_derivation(A, D):
        raise ValueError("candidate matrix does not satisfy the Leibniz identity")
    image = apply_matrix(D, vv)
    return all(image[k] == 0 for k in range(A.m) if vv[k] == 0)
