"""Adjoint representation, Killing form, and Cartan's semisimplicity test."""

from __future__ import annotations

from fractions import Fraction
import threading
import weakref
from typing import Sequence

from . import linalg as la
from .core import LieAlgebra, Subspace, _check_len, bracket


def ad_matrix(L: LieAlgebra, x: Sequence) -> tuple:
    """Matrix of ``ad x``; column ``j`` holds the coordinates of ``[x, b_j]``."""
    _check_len(L, x)
    cols = [bracket(L, x, L.basis_vector(j)) for j in range(L.dim)]
    return la.transpose(cols)


_gram_cache: dict = {}
_gram_lock = threading.Lock()


def _compute_gram(L: LieAlgebra) -> tuple:
    # tr(ad b_i ad b_j) = sum_{k,m} c[i][m][k] c[j][k][m]
    n = L.dim
    nz = L._nonzero
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            total = Fraction(0)
            for m in range(n):
                for k, c in nz.get((i, m), ()):
                    cjk = L.structure[j][k][m]
                    if cjk:
                        total += c * cjk
            row.append(total)
        rows.append(tuple(row))
    return tuple(rows)


def killing_gram(L: LieAlgebra) -> tuple:
    """Gram matrix of the Killing form in the algebra's basis (cached per algebra)."""
    # keyed by identity: equal-but-distinct algebras would otherwise pay a full table comparison
    key = id(L)
    gram = _gram_cache.get(key)
    if gram is None:
        with _gram_lock:
            gram = _gram_cache.get(key)
            if gram is None:
                gram = _compute_gram(L)
                _gram_cache[key] = gram
                weakref.finalize(L, _gram_cache.pop, key, None)
    return gram


def killing(L: LieAlgebra, x: Sequence, y: Sequence) -> Fraction:
    _check_len(L, x, y)
    G = killing_gram(L)
    ys = [(j, la.frac(b)) for j, b in enumerate(y) if b]
    total = Fraction(0)
    for i, a in enumerate(x):
        if a:
            row = G[i]
            total += la.frac(a) * sum((row[j] * b for j, b in ys if row[j]), Fraction(0))
    return total


def form_radical(L: LieAlgebra) -> Subspace:
    return Subspace.span(la.nullspace(killing_gram(L), L.dim), L.dim)


def is_semisimple(L: LieAlgebra) -> bool:
    """Cartan's criterion: semisimple iff the Killing form is nondegenerate."""
    return form_radical(L).dim == 0
