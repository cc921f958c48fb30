"""Exact rational linear algebra on tuples of Fractions.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of row
tuples.  Elimination works on sparse dict rows internally, which keeps the
derivation solver (``dim**2`` unknowns) fast enough in pure Python.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

Vector = tuple
Matrix = tuple


def frac(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def vec(values: Iterable) -> Vector:
    return tuple(frac(v) for v in values)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def is_zero(u: Sequence) -> bool:
    return not any(u)


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def zero_matrix(n: int, m: int | None = None) -> Matrix:
    return tuple(zeros(n if m is None else m) for _ in range(n))


def transpose(a: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(col) for col in zip(*a))


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vector:
    nz = [(j, x) for j, x in enumerate(v) if x]
    return tuple(sum((row[j] * x for j, x in nz), Fraction(0)) for row in a)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * m
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


def mat_add(a, b) -> Matrix:
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_sub(a, b) -> Matrix:
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_scale(c, a) -> Matrix:
    return tuple(scale(c, r) for r in a)


def trace(a: Sequence[Sequence]) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


# -- elimination ------------------------------------------------------------


def _sparse(row) -> dict:
    if isinstance(row, Mapping):
        return {c: frac(v) for c, v in row.items() if v}
    return {c: frac(v) for c, v in enumerate(row) if v}


def reduce_rows(rows: Iterable) -> dict[int, dict[int, Fraction]]:
    """Fully reduced echelon form, returned as ``{pivot column: row}``.

    Rows may be dense sequences or ``{column: value}`` dicts.  Every stored
    row has a 1 at its pivot and zeros at every other pivot column.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        r = _sparse(raw)
        for col in [c for c in r if c in pivots]:
            coef = r.get(col)
            if not coef:
                continue
            for c, v in pivots[col].items():
                nv = r.get(c, 0) - coef * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        if not r:
            continue
        lead = min(r)
        inv = 1 / r[lead]
        r = {c: v * inv for c, v in r.items()}
        for prow in pivots.values():
            coef = prow.get(lead)
            if coef:
                for c, v in r.items():
                    nv = prow.get(c, 0) - coef * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[lead] = r
    return pivots


def _densify(row: Mapping[int, Fraction], n: int) -> Vector:
    out = [Fraction(0)] * n
    for c, v in row.items():
        out[c] = v
    return tuple(out)


def rref(rows: Iterable, ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns."""
    piv = reduce_rows(rows)
    cols = tuple(sorted(piv))
    return tuple(_densify(piv[c], ncols) for c in cols), cols


def rank(rows: Iterable) -> int:
    return len(reduce_rows(rows))


def nullspace(rows: Iterable, ncols: int) -> Matrix:
    """Basis of ``{v : row . v = 0 for every row}``, in reduced echelon form."""
    piv = reduce_rows(rows)
    basis = []
    for free in range(ncols):
        if free in piv:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for p, row in piv.items():
            coef = row.get(free)
            if coef:
                v[p] = -coef
        basis.append(v)
    return rref(basis, ncols)[0]


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of ``a x = b`` (free variables set to 0), or None."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    piv = reduce_rows(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for p, row in piv.items():
        x[p] = row.get(ncols, Fraction(0))
    return tuple(x)


def inverse(a: Sequence[Sequence]) -> Matrix | None:
    n = len(a)
    aug = [list(row) + list(unit(n, i)) for i, row in enumerate(a)]
    piv = reduce_rows(aug)
    if any(p not in piv for p in range(n)) or len(piv) != n:
        return None
    return tuple(tuple(piv[i].get(n + j, Fraction(0)) for j in range(n)) for i in range(n))


def mat_pow(a, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


# -- spectra ----------------------------------------------------------------


def charpoly(a: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial ``det(tI - a)`` as coefficients, constant first.

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = zero_matrix(n)
    for k in range(1, n + 1):
        m = mat_add(mat_mul(a, m), mat_scale(coeffs[n - k + 1], identity(n)))
        coeffs[n - k] = -trace(mat_mul(a, m)) / k
    return coeffs


def _synthetic_div(coeffs: list, root) -> tuple[list, Fraction]:
    # coeffs constant-first; divide by (t - root)
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    acc = Fraction(0)
    for i in range(n, 0, -1):
        acc = coeffs[i] + acc * root
        out[i - 1] = acc
    rem = coeffs[0] + acc * root
    return out, rem


def rational_eigenvalues(a: Sequence[Sequence]) -> dict[Fraction, int] | None:
    """Eigenvalues with algebraic multiplicity, or None if any is irrational.

    The matrix is scaled to integers; its characteristic polynomial is then
    monic over the integers, so every rational root is an integer dividing
    the lowest nonzero coefficient and bounded by the max absolute row sum.
    """
    n = len(a)
    if n == 0:
        return {}
    den = 1
    for row in a:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    ai = tuple(tuple(x * den for x in row) for row in a)
    poly = charpoly(ai)
    found: dict[Fraction, int] = {}
    while len(poly) > 1 and poly[0] == 0:
        poly = poly[1:]
        found[Fraction(0)] = found.get(Fraction(0), 0) + 1
    bound = max(sum(abs(x) for x in row) for row in ai)
    t = 1
    while len(poly) > 1 and t <= bound:
        c0 = poly[0]
        if c0.numerator % t == 0:
            progressed = False
            for cand in (Fraction(t), Fraction(-t)):
                while len(poly) > 1:
                    q, rem = _synthetic_div(poly, cand)
                    if rem:
                        break
                    poly = q
                    found[cand / den] = found.get(cand / den, 0) + 1
                    progressed = True
            if progressed:
                continue
        t += 1
    if len(poly) > 1:
        return None
    return found


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def small_integer_vectors(length: int, max_coef: int):
    """Nonnegative integer vectors ordered by max entry, then lexicographically."""
    for m in range(1, max_coef + 1):
        for combo in product(range(m + 1), repeat=length):
            if max(combo) == m:
                yield combo
