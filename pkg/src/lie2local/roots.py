"""Root-space decomposition relative to a designated Cartan subalgebra.

Joint eigenspaces of ``{ad h}`` are found by successive refinement: each
Cartan basis vector splits the current blocks into its eigenspaces, whose
eigenvalues come from exact rational-root scanning of the characteristic
polynomial.  Anything that does not split over the rationals fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .core import LieAlgebra, Subspace, bracket
from .forms import ad_matrix


class RootError(ValueError):
    pass


class NotSplitError(RootError):
    def __init__(self, detail: str = ""):
        msg = "algebra not split over the rationals in this basis"
        super().__init__(f"{msg}: {detail}" if detail else msg)


@dataclass(frozen=True)
class Root:
    values: tuple  # alpha(h_i) for the ordered Cartan basis
    vector: tuple  # root vector e_alpha, first nonzero coordinate 1
    vector_index: int | None  # basis index when e_alpha is a basis vector

    def __call__(self, h_coords: Sequence) -> Fraction:
        """Evaluate on ``sum_i h_coords[i] h_i``."""
        return la.dot(self.values, h_coords)

    def __neg__(self):
        return tuple(-v for v in self.values)


@dataclass(frozen=True)
class RootDatum:
    cartan: Subspace
    cartan_basis: tuple
    roots: tuple
    positive: tuple  # indices into roots
    simple: tuple  # indices into roots
    d: tuple
    d_coords: tuple  # d in the Cartan basis
    q: tuple

    def root_index(self, values: Sequence) -> int:
        values = tuple(values)
        for i, r in enumerate(self.roots):
            if r.values == values:
                return i
        raise KeyError(values)

    def simple_coefficients(self, i: int) -> tuple:
        """Integer coefficients of root ``i`` in the simple roots."""
        simple_vals = [self.roots[s].values for s in self.simple]
        sol = la.solve(la.transpose(simple_vals), self.roots[i].values)
        if sol is None or any(c.denominator != 1 for c in sol):
            raise RootError(f"root {i} is not an integer combination of simple roots")
        # solve() picks free variables as zero; verify since simple roots may be dependent
        recon = la.mat_vec(la.transpose(simple_vals), sol)
        if recon != self.roots[i].values:
            raise RootError(f"root {i} is not in the span of the simple roots")
        return tuple(int(c) for c in sol)


def _split_block(A, block: Subspace) -> list:
    # restrict A to the block, then split into eigenspaces
    m = block.dim
    images = [la.mat_vec(A, row) for row in block.basis]
    restricted_cols = []
    for img in images:
        coords = block.coordinates(img)
        if coords is None:
            raise RootError("Cartan basis does not act invariantly on a joint eigenspace")
        restricted_cols.append(coords)
    M = la.transpose(restricted_cols)
    eig = la.rational_eigenvalues(M)
    if eig is None:
        raise NotSplitError("non-rational spectrum")
    pieces = []
    total = 0
    for lam in sorted(eig):
        shifted = la.mat_sub(M, la.mat_scale(lam, la.identity(m)))
        kernel = la.nullspace(shifted, m)
        total += len(kernel)
        vecs = []
        for k in kernel:
            v = la.zeros(block.ambient_dim)
            for c, row in zip(k, block.basis):
                if c:
                    v = la.add(v, la.scale(c, row))
            vecs.append(v)
        pieces.append((lam, Subspace.span(vecs, block.ambient_dim)))
    if total != m:
        raise NotSplitError("ad action is not diagonalizable")
    return pieces


def joint_eigenspaces(L: LieAlgebra, cartan_basis: Sequence) -> list:
    """``[(values, Subspace)]`` for the simultaneous eigenspaces of ``ad h_i``."""
    blocks = [((), Subspace.whole(L.dim))]
    for h in cartan_basis:
        A = ad_matrix(L, h)
        refined = []
        for values, block in blocks:
            for lam, piece in _split_block(A, block):
                refined.append((values + (lam,), piece))
        blocks = refined
    return blocks


def find_strongly_regular(L: LieAlgebra, roots: Sequence[Root], cartan_basis: Sequence) -> tuple:
    """Smallest ``d = sum c_i h_i`` (c_i small nonnegative integers) with all ``alpha(d)`` distinct.

    Candidates are ordered by their largest coefficient, then lexicographically.
    """
    if not roots:
        raise RootError("no roots: cannot choose a strongly regular element")
    bound = 64 * len(roots) ** 2
    for combo in la.small_integer_vectors(len(cartan_basis), bound):
        vals = [r(combo) for r in roots]
        if len(set(vals)) == len(vals):
            d = L.zero()
            for c, h in zip(combo, cartan_basis):
                if c:
                    d = la.add(d, la.scale(c, h))
            return d
    raise RootError("strongly regular search exhausted")


def is_strongly_regular(roots: Sequence[Root], d_coords: Sequence) -> bool:
    vals = [r(d_coords) for r in roots]
    return len(set(vals)) == len(vals)


def is_regular_semisimple(L: LieAlgebra, d: Sequence, cartan: Subspace) -> bool:
    """True iff the centralizer of ``d`` is exactly the Cartan subspace."""
    kernel = Subspace.span(la.nullspace(ad_matrix(L, d), L.dim), L.dim)
    return kernel == cartan


def root_decomposition(L: LieAlgebra, cartan_basis: Sequence | None = None) -> RootDatum:
    """Decompose ``L`` into root spaces for the given (or designated) Cartan basis."""
    if cartan_basis is None:
        cartan_basis = L.cartan_basis()
        if cartan_basis is None:
            raise RootError("no Cartan subalgebra designated")
    cartan_basis = tuple(la.vec(h) for h in cartan_basis)
    if not cartan_basis:
        raise RootError("empty Cartan basis")
    cartan = Subspace.span(cartan_basis, L.dim)
    if cartan.dim != len(cartan_basis):
        raise RootError("Cartan basis is linearly dependent")
    for i, a in enumerate(cartan_basis):
        for b in cartan_basis[i + 1 :]:
            if any(bracket(L, a, b)):
                raise RootError("Cartan basis is not abelian")
    rows = [row for h in cartan_basis for row in ad_matrix(L, h)]
    centralizer = Subspace.span(la.nullspace(rows, L.dim), L.dim)
    if centralizer != cartan:
        raise RootError("Cartan subalgebra is not self-centralizing")

    roots = []
    for values, space in joint_eigenspaces(L, cartan_basis):
        if not any(values):
            if space != cartan:
                raise NotSplitError("zero weight space differs from the Cartan subalgebra")
            continue
        if space.dim != 1:
            raise NotSplitError(f"joint eigenspace of dimension {space.dim}")
        v = space.basis[0]
        support = [i for i, x in enumerate(v) if x]
        roots.append(Root(values, v, support[0] if len(support) == 1 else None))
    roots.sort(key=lambda r: (next(i for i, x in enumerate(r.vector) if x), r.vector))
    value_set = {r.values for r in roots}
    if any(-r not in value_set for r in roots):
        raise RootError("roots are not closed under negation")

    positive = tuple(
        i for i, r in enumerate(roots) if next(x for x in r.values if x) > 0
    )
    pos_values = {roots[i].values for i in positive}
    simple = tuple(
        i
        for i in positive
        if not any(
            la.sub(roots[i].values, roots[j].values) in pos_values for j in positive
        )
    )
    d = find_strongly_regular(L, roots, cartan_basis)
    d_coords = la.solve(la.transpose(cartan_basis), d)
    q = L.zero()
    for r in roots:
        q = la.add(q, r.vector)
    return RootDatum(
        cartan=cartan,
        cartan_basis=cartan_basis,
        roots=tuple(roots),
        positive=positive,
        simple=simple,
        d=d,
        d_coords=d_coords,
        q=q,
    )
