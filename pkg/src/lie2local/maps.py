"""Linear maps on an algebra: automorphism/derivation checks, Der(L), exponentials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import linalg as la
from .core import LieAlgebra, bracket_sparse
from .forms import ad_matrix
from .roots import RootDatum


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class LinearMap:
    """Square rational matrix acting on coordinate column vectors."""

    matrix: tuple

    def __post_init__(self):
        m = tuple(la.vec(row) for row in self.matrix)
        if any(len(row) != len(m) for row in m):
            raise MapError("linear map matrix must be square")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, n: int) -> LinearMap:
        return cls(la.identity(n))

    @classmethod
    def zero(cls, n: int) -> LinearMap:
        return cls(la.zero_matrix(n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> LinearMap:
        return cls(la.transpose(columns))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.matrix)

    def __call__(self, x: Sequence) -> tuple:
        return la.mat_vec(self.matrix, la.vec(x))

    def __matmul__(self, other: LinearMap) -> LinearMap:
        return LinearMap(la.mat_mul(self.matrix, other.matrix))

    def __add__(self, other: LinearMap) -> LinearMap:
        return LinearMap(la.mat_add(self.matrix, other.matrix))

    def __sub__(self, other: LinearMap) -> LinearMap:
        return LinearMap(la.mat_sub(self.matrix, other.matrix))

    def __neg__(self) -> LinearMap:
        return LinearMap(la.mat_scale(-1, self.matrix))

    def scaled(self, c) -> LinearMap:
        return LinearMap(la.mat_scale(la.frac(c), self.matrix))

    def __pow__(self, k: int) -> LinearMap:
        return LinearMap(la.mat_pow(self.matrix, k))

    def inverse(self) -> LinearMap:
        inv = la.inverse(self.matrix)
        if inv is None:
            raise MapError("map is not invertible")
        return LinearMap(inv)

    def is_invertible(self) -> bool:
        return la.rank(self.matrix) == self.dim

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)

    def nilpotency_index(self) -> int | None:
        """Smallest ``k`` with ``A**k == 0`` (``k <= dim``), or None."""
        power = LinearMap.identity(self.dim)
        for k in range(1, self.dim + 1):
            power = power @ self
            if power.is_zero():
                return k
        return None


@dataclass(frozen=True)
class Report:
    ok: bool
    failing_pair: tuple | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok


def _sparse_columns(A: LinearMap) -> list:
    n = A.dim
    return [{i: A.matrix[i][j] for i in range(n) if A.matrix[i][j]} for j in range(n)]


def _apply_sparse(cols: list, v: dict) -> dict:
    out: dict = {}
    for j, a in v.items():
        for i, c in cols[j].items():
            out[i] = out.get(i, 0) + a * c
    return {i: x for i, x in out.items() if x}


def _check_dim(L: LieAlgebra, A: LinearMap):
    if A.dim != L.dim:
        raise MapError(f"dimension mismatch: map is {A.dim}x{A.dim}, algebra has dim {L.dim}")


def is_automorphism(L: LieAlgebra, A: LinearMap) -> Report:
    """Invertible and ``A[b_i, b_j] == [A b_i, A b_j]`` for all ``i < j``."""
    _check_dim(L, A)
    if not A.is_invertible():
        return Report(False, None, "not invertible")
    cols = _sparse_columns(A)
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = _apply_sparse(cols, dict(_bracket_terms(L, i, j)))
            rhs = bracket_sparse(L, cols[i], cols[j])
            if lhs != rhs:
                return Report(False, (i, j), "bracket not preserved")
    return Report(True)


def is_derivation(L: LieAlgebra, D: LinearMap) -> Report:
    """Leibniz rule ``D[b_i, b_j] == [D b_i, b_j] + [b_i, D b_j]`` for all ``i < j``."""
    _check_dim(L, D)
    cols = _sparse_columns(D)
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = _apply_sparse(cols, dict(_bracket_terms(L, i, j)))
            r1 = bracket_sparse(L, cols[i], {j: Fraction(1)})
            r2 = bracket_sparse(L, {i: Fraction(1)}, cols[j])
            rhs = {k: r1.get(k, 0) + r2.get(k, 0) for k in set(r1) | set(r2)}
            if lhs != {k: v for k, v in rhs.items() if v}:
                return Report(False, (i, j), "Leibniz rule fails")
    return Report(True)


def _bracket_terms(L: LieAlgebra, i: int, j: int):
    return L._nonzero.get((i, j), ())


def derivation_space(L: LieAlgebra) -> list:
    """Basis of Der(L) from the exact kernel of the Leibniz system.

    Unknown ``D[r][c]`` sits at position ``r * dim + c``.
    """
    n = L.dim
    nz = L._nonzero
    equations = []
    for i in range(n):
        for j in range(i + 1, n):
            # component k of D[b_i,b_j] - [D b_i, b_j] - [b_i, D b_j]
            eqs: dict = {}

            def acc(k, var, c):
                row = eqs.setdefault(k, {})
                row[var] = row.get(var, 0) + c

            for m, c in nz.get((i, j), ()):
                for k in range(n):
                    acc(k, k * n + m, c)
            for m in range(n):
                # D b_i = sum_m D[m][i] b_m ; [b_m, b_j]
                for k, c in nz.get((m, j), ()):
                    acc(k, m * n + i, -c)
                for k, c in nz.get((i, m), ()):
                    acc(k, m * n + j, -c)
            equations.extend(eqs.values())
    kernel = la.nullspace(equations, n * n)
    return [LinearMap(tuple(tuple(v[r * n : (r + 1) * n]) for r in range(n))) for v in kernel]


def ad_map(L: LieAlgebra, x: Sequence) -> LinearMap:
    return LinearMap(ad_matrix(L, la.vec(x)))


def exp_nilpotent(L: LieAlgebra, D: LinearMap) -> LinearMap:
    """``exp D = sum_{k<n} D^k / k!`` for a nilpotent derivation ``D``."""
    report = is_derivation(L, D)
    if not report:
        raise MapError(f"not a derivation (fails at pair {report.failing_pair})")
    index = D.nilpotency_index()
    if index is None:
        raise MapError("derivation is not nilpotent")
    total = LinearMap.identity(L.dim)
    power = LinearMap.identity(L.dim)
    for k in range(1, index):
        power = power @ D
        total = total + power.scaled(Fraction(1, factorial(k)))
    if not is_automorphism(L, total):
        raise AssertionError("exp of a nilpotent derivation failed the automorphism check")
    return total


def inner_automorphism(L: LieAlgebra, x: Sequence) -> LinearMap:
    """``exp(ad x)`` for an ad-nilpotent element ``x``."""
    return exp_nilpotent(L, ad_map(L, x))


def torus_automorphism(L: LieAlgebra, datum: RootDatum, c: Sequence) -> LinearMap:
    """Fix the Cartan subalgebra and scale ``e_alpha`` by ``prod c_i ** n_i``.

    ``c`` is aligned with ``datum.simple``; ``alpha = sum n_i alpha_i``.
    """
    c = la.vec(c)
    if len(c) != len(datum.simple):
        raise MapError(f"expected {len(datum.simple)} scalars, one per simple root")
    if any(x == 0 for x in c):
        raise MapError("torus scalars must be nonzero")
    columns = list(datum.cartan_basis)
    scales = [Fraction(1)] * len(columns)
    for i, root in enumerate(datum.roots):
        factor = Fraction(1)
        for ci, ni in zip(c, datum.simple_coefficients(i)):
            factor *= ci**ni
        columns.append(root.vector)
        scales.append(factor)
    P = la.transpose(columns)
    P_inv = la.inverse(P)
    if P_inv is None:
        raise MapError("Cartan basis and root vectors do not form a basis")
    diag = tuple(tuple(scales[i] if i == j else Fraction(0) for j in range(L.dim)) for i in range(L.dim))
    phi = LinearMap(la.mat_mul(la.mat_mul(P, diag), P_inv))
    if not is_automorphism(L, phi):
        raise AssertionError("torus map failed the automorphism check")
    return phi


def torus_scalars(datum: RootDatum, phi: LinearMap) -> dict | None:
    """``{root index: c_alpha}`` if ``phi`` fixes the Cartan basis and scales every root vector, else None."""
    for h in datum.cartan_basis:
        if phi(h) != h:
            return None
    out = {}
    for i, root in enumerate(datum.roots):
        image = phi(root.vector)
        p = next(k for k, x in enumerate(root.vector) if x)
        c = image[p] / root.vector[p]
        if c == 0 or image != la.scale(c, root.vector):
            return None
        out[i] = c
    return out
