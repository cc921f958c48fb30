"""Lie algebras by structure constants over the rationals.

An algebra is a dense table ``c[i][j][k]`` with ``[b_i, b_j] = sum_k c[i][j][k] b_k``.
Elements are coordinate tuples of Fractions in the fixed basis.  Subspaces are
stored in reduced row echelon form, so equal subspaces compare equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import jsonschema

from . import linalg as la

Scalar = Fraction
Element = tuple


class AlgebraError(ValueError):
    """Invalid structure constants or malformed algebra document."""


class AntisymmetryError(AlgebraError):
    pass


class JacobiError(AlgebraError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"not a Lie algebra: Jacobi identity fails for basis triple {triple}")


class DimensionMismatch(ValueError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


# -- subspaces --------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows, _ = la.rref(vectors, ambient_dim)
        return cls(ambient_dim, rows)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def whole(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, la.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coordinates of ``v`` in the echelon basis, or None if ``v`` is outside."""
        coords = tuple(la.frac(v[p]) for p in self.pivots)
        recon = la.zeros(self.ambient_dim)
        for c, row in zip(coords, self.basis):
            if c:
                recon = la.add(recon, la.scale(c, row))
        return coords if recon == tuple(la.frac(x) for x in v) else None

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(self.ambient_dim, len(v))
        return self.coordinates(v) is not None

    def contains_subspace(self, other: Subspace) -> bool:
        return all(row in self for row in other.basis)

    def intersection(self, other: Subspace) -> Subspace:
        # solve sum a_i u_i = sum b_j w_j
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        cols = list(self.basis) + [la.scale(-1, w) for w in other.basis]
        system = la.transpose(cols)
        kernel = la.nullspace(system, len(cols))
        vectors = []
        for k in kernel:
            v = la.zeros(self.ambient_dim)
            for c, u in zip(k[: self.dim], self.basis):
                if c:
                    v = la.add(v, la.scale(c, u))
            vectors.append(v)
        return Subspace.span(vectors, self.ambient_dim)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def complement_indices(self) -> tuple:
        """Standard basis indices completing the echelon basis to the whole space."""
        return tuple(i for i in range(self.ambient_dim) if i not in self.pivots)


# -- the algebra ------------------------------------------------------------


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    basis_labels: tuple
    structure: tuple
    cartan_indices: tuple | None = None
    root_labels: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise AlgebraError("dimension must be positive")
        if len(self.basis_labels) != n:
            raise AlgebraError(f"expected {n} basis labels, got {len(self.basis_labels)}")
        s = self.structure
        if len(s) != n or any(len(r) != n or any(len(c) != n for c in r) for r in s):
            raise AlgebraError("structure table must be dim x dim x dim")
        for i in range(n):
            if any(s[i][i]):
                raise AntisymmetryError(f"antisymmetry violated: [b{i}, b{i}] != 0")
            for j in range(i + 1, n):
                if any(a != -b for a, b in zip(s[i][j], s[j][i])):
                    raise AntisymmetryError(
                        f"antisymmetry violated: c[{i}][{j}] != -c[{j}][{i}]"
                    )
        bad = self._jacobi_failure()
        if bad is not None:
            raise JacobiError(bad)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.dim, self.basis_labels, self.structure, self.cartan_indices))

    @cached_property
    def _nonzero(self) -> dict:
        # (i, j) -> ((k, c), ...) for nonzero brackets
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                terms = tuple((k, c) for k, c in enumerate(self.structure[i][j]) if c)
                if terms:
                    out[i, j] = terms
        return out

    def _jacobi_failure(self):
        n = self.dim
        nz = self._nonzero
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    total = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for m, coef in nz.get((a, b), ()):
                            for t, coef2 in nz.get((m, c), ()):
                                total[t] = total.get(t, 0) + coef * coef2
                    if any(total.values()):
                        return (i, j, k)
        return None

    # elements

    def zero(self) -> Element:
        return la.zeros(self.dim)

    def basis_vector(self, i: int) -> Element:
        return la.unit(self.dim, i)

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def element(self, coords=None, **by_label) -> Element:
        """Build an element from a coordinate sequence or label keywords.

        >>> L = build_heisenberg(1)
        >>> L.element(x1=1, z="1/2")
        (Fraction(1, 1), Fraction(0, 1), Fraction(1, 2))
        """
        if coords is not None:
            v = la.vec(coords)
            if len(v) != self.dim:
                raise DimensionMismatch(self.dim, len(v))
            return v
        v = [Fraction(0)] * self.dim
        for label, c in by_label.items():
            v[self.index(label)] = la.frac(c)
        return tuple(v)

    def is_abelian(self) -> bool:
        return not self._nonzero

    def cartan_basis(self) -> list[Element] | None:
        if self.cartan_indices is None:
            return None
        return [self.basis_vector(i) for i in self.cartan_indices]


def _check_len(L: LieAlgebra, *vs):
    for v in vs:
        if len(v) != L.dim:
            raise DimensionMismatch(L.dim, len(v))


def bracket_sparse(L: LieAlgebra, x: dict, y: dict) -> dict:
    out: dict = {}
    nz = L._nonzero
    for i, a in x.items():
        for j, b in y.items():
            terms = nz.get((i, j))
            if terms:
                ab = a * b
                for k, c in terms:
                    out[k] = out.get(k, 0) + ab * c
    return {k: v for k, v in out.items() if v}


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Element:
    """Exact Lie bracket ``[x, y]`` of two coordinate vectors."""
    _check_len(L, x, y)
    xs = {i: la.frac(a) for i, a in enumerate(x) if a}
    ys = {j: la.frac(b) for j, b in enumerate(y) if b}
    out = [Fraction(0)] * L.dim
    for k, v in bracket_sparse(L, xs, ys).items():
        out[k] = v
    return tuple(out)


def basis_bracket(L: LieAlgebra, i: int, j: int) -> Element:
    return L.structure[i][j]


def from_brackets(labels: Sequence[str], brackets: dict, **kwargs) -> LieAlgebra:
    """Build an algebra from ``{(i, j): {k: coef}}`` with ``i < j``; counterparts filled."""
    n = len(labels)
    table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), terms in brackets.items():
        for k, c in terms.items():
            c = la.frac(c)
            table[i][j][k] += c
            table[j][i][k] -= c
    structure = tuple(tuple(tuple(col) for col in row) for row in table)
    return LieAlgebra(n, tuple(labels), structure, **kwargs)


# -- builders ---------------------------------------------------------------


def sl_basis_matrices(n: int) -> list:
    """The matrices behind :func:`build_sl`'s basis, in basis order."""
    mats = []

    def E(i, j):
        m = [[0] * n for _ in range(n)]
        m[i][j] = 1
        return m

    for i in range(n - 1):
        m = E(i, i)
        m[i + 1][i + 1] = -1
        mats.append(m)
    pos = _sl_positive_roots(n)
    mats += [E(i, j) for i, j in pos]
    mats += [E(j, i) for i, j in pos]
    return mats


def _sl_positive_roots(n: int) -> list:
    # by height, then lexicographic
    return sorted(((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda p: (p[1] - p[0], p))


def build_sl(n: int) -> LieAlgebra:
    """sl(n) in the Chevalley basis ``h_i = E_ii - E_(i+1)(i+1)``, ``e_ij = E_ij``, ``f_ij = E_ji``.

    Basis order: ``h_1..h_(n-1)``, positive roots by height then
    lexicographically, then the negative roots in the same order.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("build_sl requires n >= 2")
    pos = _sl_positive_roots(n)
    npos = len(pos)
    dim = n * n - 1
    labels = [f"h{i + 1}" for i in range(n - 1)]
    labels += [f"e{i + 1}_{j + 1}" for i, j in pos]
    labels += [f"f{i + 1}_{j + 1}" for i, j in pos]
    off_index = {}
    for r, (i, j) in enumerate(pos):
        off_index[i, j] = n - 1 + r
        off_index[j, i] = n - 1 + npos + r
    mats = sl_basis_matrices(n)

    def coords(m):
        v = [Fraction(0)] * dim
        for (i, j), idx in off_index.items():
            v[idx] = Fraction(m[i][j])
        running = 0
        for k in range(n - 1):
            running += m[k][k]
            v[k] = Fraction(running)
        return v

    def commutator(a, b):
        return [
            [sum(a[i][k] * b[k][j] - b[i][k] * a[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    brackets = {}
    for p in range(dim):
        for q in range(p + 1, dim):
            c = coords(commutator(mats[p], mats[q]))
            terms = {k: x for k, x in enumerate(c) if x}
            if terms:
                brackets[p, q] = terms
    root_labels = {}
    for r, (i, j) in enumerate(pos):
        root_labels[n - 1 + r] = f"a{i + 1}_{j + 1}"
        root_labels[n - 1 + npos + r] = f"-a{i + 1}_{j + 1}"
    return from_brackets(
        labels, brackets, cartan_indices=tuple(range(n - 1)), root_labels=root_labels
    )


def build_abelian(n: int) -> LieAlgebra:
    if not isinstance(n, int) or n < 1:
        raise ValueError("build_abelian requires n >= 1")
    return from_brackets([f"a{i + 1}" for i in range(n)], {})


def build_heisenberg(k: int) -> LieAlgebra:
    """Heisenberg algebra of dimension ``2k+1``: basis ``x1, y1, ..., xk, yk, z`` with ``[x_i, y_i] = z``."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("build_heisenberg requires k >= 1")
    labels = [name for i in range(k) for name in (f"x{i + 1}", f"y{i + 1}")] + ["z"]
    return from_brackets(labels, {(2 * i, 2 * i + 1): {2 * k: 1} for i in range(k)})


def build_filiform(n: int) -> LieAlgebra:
    """Standard filiform algebra: ``[e_1, e_i] = e_(i+1)`` for ``2 <= i <= n-1``."""
    if not isinstance(n, int) or n < 3:
        raise ValueError("build_filiform requires n >= 3")
    labels = [f"e{i + 1}" for i in range(n)]
    return from_brackets(labels, {(0, i): {i + 1: 1} for i in range(1, n - 1)})


BUILDERS = {
    "sl": build_sl,
    "abelian": build_abelian,
    "heisenberg": build_heisenberg,
    "filiform": build_filiform,
}


def build(spec: str) -> LieAlgebra:
    """Build from ``name:param`` (``sl:3``, ``heisenberg:2``, ...)."""
    name, _, param = spec.partition(":")
    if name not in BUILDERS:
        raise ValueError(f"unknown builder {name!r}; expected one of {sorted(BUILDERS)}")
    try:
        p = int(param)
    except ValueError:
        raise ValueError(f"builder parameter must be an integer, got {param!r}") from None
    return BUILDERS[name](p)


# -- JSON documents ---------------------------------------------------------

_FRACTION = r"^-?[0-9]+(/[0-9]+)?$"

ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["dim", "labels", "brackets"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "labels": {"type": "array", "items": {"type": "string"}},
        "brackets": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "integer", "minimum": 0},
                    {"type": "integer", "minimum": 0},
                    {"type": "integer", "minimum": 0},
                    {"type": "string", "pattern": _FRACTION},
                ],
                "minItems": 4,
                "maxItems": 4,
            },
        },
        "cartan": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}


def load_algebra(document) -> LieAlgebra:
    """Parse and validate an algebra document (JSON text or already-decoded dict)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"parse error: {exc}") from None
    try:
        jsonschema.validate(document, ALGEBRA_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise AlgebraError(f"parse error: {exc.message}") from None
    n = document["dim"]
    labels = document["labels"]
    if len(labels) != n:
        raise AlgebraError(f"parse error: {len(labels)} labels for dimension {n}")
    entries = {}
    for i, j, k, text in document["brackets"]:
        if max(i, j, k) >= n:
            raise AlgebraError(f"parse error: index out of range in {[i, j, k, text]}")
        c = Fraction(text)
        if str(c) != text:
            raise AlgebraError(f"parse error: scalar {text!r} is not a reduced fraction")
        if (i, j, k) in entries:
            raise AlgebraError(f"parse error: duplicate entry for ({i}, {j}, {k})")
        entries[i, j, k] = c
    brackets: dict = {}
    for (i, j, k), c in entries.items():
        if i == j:
            if c:
                raise AntisymmetryError(f"antisymmetry violated: [b{i}, b{i}] != 0")
        elif i > j:
            # tolerated only as a restatement of the (j, i) entry
            if entries.get((j, i, k), 0) != -c:
                raise AntisymmetryError(
                    f"antisymmetry violated: c[{j}][{i}][{k}] != -c[{i}][{j}][{k}]"
                )
        elif c:
            brackets.setdefault((i, j), {})[k] = c
    cartan = document.get("cartan")
    if cartan is not None and max(cartan, default=-1) >= n:
        raise AlgebraError("parse error: cartan index out of range")
    return from_brackets(labels, brackets, cartan_indices=None if cartan is None else tuple(cartan))


def dump_algebra(L: LieAlgebra) -> dict:
    doc = {
        "dim": L.dim,
        "labels": list(L.basis_labels),
        "brackets": [
            [i, j, k, str(c)]
            for i in range(L.dim)
            for j in range(i + 1, L.dim)
            for k, c in enumerate(L.structure[i][j])
            if c
        ],
    }
    if L.cartan_indices is not None:
        doc["cartan"] = list(L.cartan_indices)
    return doc


# -- structural series ------------------------------------------------------


class SeriesVerdict(NamedTuple):
    holds: bool
    index: int | None


def _bracket_span(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    vecs = []
    for u in A.basis:
        us = {i: a for i, a in enumerate(u) if a}
        for w in B.basis:
            ws = {j: b for j, b in enumerate(w) if b}
            vecs.append(bracket_sparse(L, us, ws))
    return Subspace.span(vecs, L.dim)


def commutator_subalgebra(L: LieAlgebra) -> Subspace:
    return Subspace.span((row for r in L.structure for row in r), L.dim)


def center(L: LieAlgebra) -> Subspace:
    # x central iff sum_i x_i c[i][j][k] = 0 for all j, k
    n = L.dim
    rows = [[L.structure[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return Subspace.span(la.nullspace(rows, n), n)


def _series(L: LieAlgebra, step) -> list:
    terms = [Subspace.whole(L.dim)]
    while terms[-1].dim:
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def derived_series(L: LieAlgebra) -> list:
    """``L, [L,L], [[L,L],[L,L]], ...`` up to zero or the first repeat."""
    return _series(L, lambda S: _bracket_span(L, S, S))


def lower_central_series(L: LieAlgebra) -> list:
    """``L, [L,L], [[L,L],L], ...`` up to zero or the first repeat."""
    whole = Subspace.whole(L.dim)
    return _series(L, lambda S: _bracket_span(L, S, whole))


def _verdict(series) -> SeriesVerdict:
    if series[-1].dim == 0:
        return SeriesVerdict(True, len(series) - 1)
    return SeriesVerdict(False, None)


def is_solvable(L: LieAlgebra) -> SeriesVerdict:
    return _verdict(derived_series(L))


def is_nilpotent(L: LieAlgebra) -> SeriesVerdict:
    return _verdict(lower_central_series(L))
