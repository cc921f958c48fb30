"""Pointwise (not necessarily linear) maps and 2-local automorphism certificates.

For an algebra with ``dim [L,L] <= dim L - 2`` and a nonzero ``z`` in
``Z(L) & [L,L]``, write ``x = x1 + sum lambda_i e_i`` with ``x1`` in ``[L,L]`` and
``e_i`` spanning a complement ``V``.  Then

    Delta(x) = x + f(lambda_1, lambda_2) z

is 2-local for any degree-1 homogeneous ``f``: at each pair ``x, y`` it agrees
with ``exp D = id + D`` where ``D(x) = (a lambda_1 + b lambda_2) z``.  When
``f`` is not additive, ``Delta`` is not linear, hence not an automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from . import linalg as la
from .core import (
    LieAlgebra,
    Subspace,
    center,
    commutator_subalgebra,
    is_nilpotent,
    lower_central_series,
)
from .forms import is_semisimple, killing
from .maps import LinearMap, Report, is_automorphism, is_derivation


class TwoLocalError(ValueError):
    pass


class HypothesisError(TwoLocalError):
    pass


class WitnessError(TwoLocalError):
    pass


class NoWitnessFound(TwoLocalError):
    pass


def default_f(l1, l2) -> Fraction:
    """``l1**3 / (l1**2 + l2**2)``, and 0 at the origin: homogeneous of degree 1, not additive."""
    l1, l2 = la.frac(l1), la.frac(l2)
    denom = l1 * l1 + l2 * l2
    if denom == 0:
        return Fraction(0)
    return l1**3 / denom


# -- pointwise maps ---------------------------------------------------------


class PointwiseMap:
    """A deterministic rule ``Element -> Element``; ``kind`` names the rule."""

    kind = "pointwise"

    def __call__(self, x: Sequence) -> tuple:
        raise NotImplementedError

    def __add__(self, other: PointwiseMap) -> PointwiseMap:
        return SumRule((self, other))


class LinearRule(PointwiseMap):
    def __init__(self, linear: LinearMap):
        self.linear = linear
        self.kind = "identity" if linear == LinearMap.identity(linear.dim) else "linear"

    @classmethod
    def identity(cls, n: int) -> LinearRule:
        return cls(LinearMap.identity(n))

    def __call__(self, x):
        return self.linear(x)


class FunctionRule(PointwiseMap):
    """Arbitrary callable; opaque to certification."""

    kind = "function"

    def __init__(self, fn: Callable):
        self.fn = fn

    def __call__(self, x):
        return la.vec(self.fn(la.vec(x)))


class SumRule(PointwiseMap):
    kind = "sum"

    def __init__(self, parts: Iterable[PointwiseMap]):
        self.parts = tuple(parts)

    def __call__(self, x):
        out = None
        for p in self.parts:
            y = p(x)
            out = y if out is None else la.add(out, y)
        return out


@dataclass(frozen=True)
class CounterexampleSetup:
    algebra: LieAlgebra
    derived: Subspace  # the subspace V complements
    complement_indices: tuple  # V spanned by these standard basis vectors
    z: tuple
    f: Callable = field(default=default_f, compare=False)

    @property
    def complement_basis(self) -> tuple:
        return tuple(self.algebra.basis_vector(i) for i in self.complement_indices)

    def lambdas(self, x: Sequence) -> tuple:
        """All complement coordinates of ``x``."""
        x = la.vec(x)
        # the [L,L] part of x is sum_p x[p] row_p over the RREF pivots p
        terms = [(x[p], row) for p, row in zip(self.derived.pivots, self.derived.basis) if x[p]]
        return tuple(x[i] - sum((c * row[i] for c, row in terms), Fraction(0)) for i in self.complement_indices)

    @cached_property
    def basis_coords(self) -> tuple:
        """``(lambda_1, lambda_2)`` of every basis vector."""
        return tuple(self.coords(self.algebra.basis_vector(j)) for j in range(self.algebra.dim))

    def coords(self, x: Sequence) -> tuple:
        """``(lambda_1, lambda_2)``: the first two complement coordinates."""
        lam = self.lambdas(x)
        return lam[0], lam[1]

    def perturbation(self, x: Sequence) -> tuple:
        """``T(x) = f(lambda_1, lambda_2) z``."""
        return la.scale(la.frac(self.f(*self.coords(x))), self.z)


class CounterexampleMap(PointwiseMap):
    """``Delta(x) = x + f(lambda_1, lambda_2) z``."""

    kind = "counterexample"

    def __init__(self, setup: CounterexampleSetup):
        self.setup = setup

    def __call__(self, x):
        x = la.vec(x)
        return la.add(x, self.setup.perturbation(x))


def _homogeneity_failure(f, samples=((1, 0), (0, 1), (1, 1), (2, -3), (-1, 2), (3, 5))):
    for (l1, l2), t in product(samples, (Fraction(2), Fraction(-1), Fraction(1, 3), Fraction(0))):
        if la.frac(f(t * l1, t * l2)) != t * la.frac(f(l1, l2)):
            return (l1, l2, t)
    return None


def make_counterexample(L: LieAlgebra, f: Callable = default_f):
    """Build the setup and ``Delta`` for ``L``; returns ``(setup, Delta)``.

    ``V`` is spanned by the standard basis vectors completing the echelon basis
    of ``[L,L]``.  ``z`` is the first echelon vector of the last nonzero
    lower-central term when ``L`` is nilpotent, else of ``Z(L) & [L,L]``.  An
    abelian ``L`` has ``Z(L) & [L,L] = 0``; there ``V = L`` and ``z`` is the
    last basis vector.
    """
    if L.dim < 2:
        raise HypothesisError("algebra must have dimension at least 2")
    bad = _homogeneity_failure(f)
    if bad is not None:
        raise HypothesisError(f"f is not homogeneous of degree 1 (sample {bad})")
    derived = commutator_subalgebra(L)
    complement = derived.complement_indices()
    if len(complement) < 2:
        raise HypothesisError("hypothesis (i) fails: dim [L,L] > dim L - 2")
    if L.is_abelian():
        z = L.basis_vector(L.dim - 1)
    else:
        centre = center(L)
        if is_nilpotent(L).holds:
            z = lower_central_series(L)[-2].basis[0]
        else:
            meet = centre.intersection(derived)
            if meet.dim == 0:
                raise HypothesisError("hypothesis (ii) fails: Z(L) & [L,L] = 0")
            z = meet.basis[0]
        if z not in centre or z not in derived:
            raise AssertionError("chosen z is not in Z(L) & [L,L]")
    setup = CounterexampleSetup(L, derived, complement, z, f)
    return setup, CounterexampleMap(setup)


# -- witnesses --------------------------------------------------------------


@dataclass(frozen=True)
class PairWitness:
    x: tuple
    y: tuple
    witness: LinearMap
    witness_kind: str  # "derivation" or "automorphism"
    a: Fraction | None = None
    b: Fraction | None = None

    def validate(self, L: LieAlgebra, target: Callable) -> Report:
        """Re-check agreement at both points and the structural predicate."""
        for p in (self.x, self.y):
            if self.witness(p) != la.vec(target(p)):
                return Report(False, None, "witness disagrees with target")
        check = is_automorphism if self.witness_kind == "automorphism" else is_derivation
        return check(L, self.witness)


def _solve_ab(rows: list) -> tuple:
    # rows: [(l1, l2, rhs)]; prefer b = 0, then a = 0, for underdetermined systems
    (p1, p2, r), (s1, s2, t) = rows
    det = p1 * s2 - p2 * s1
    if det:
        return (r * s2 - p2 * t) / det, (p1 * t - r * s1) / det
    for pick in (0, 1):
        val = None
        consistent = True
        for row in rows:
            coef, rhs = row[pick], row[2]
            if coef == 0:
                if rhs != 0:
                    consistent = False
                    break
            else:
                cand = rhs / coef
                if val is None:
                    val = cand
                elif val != cand:
                    consistent = False
                    break
        if consistent:
            val = val if val is not None else Fraction(0)
            return (val, Fraction(0)) if pick == 0 else (Fraction(0), val)
    raise WitnessError("witness system inconsistent")


def derivation_from_coefficients(setup: CounterexampleSetup, a, b) -> LinearMap:
    """``D(x) = (a lambda_1 + b lambda_2) z`` as a matrix."""
    L = setup.algebra
    a, b = la.frac(a), la.frac(b)
    return LinearMap.from_columns([la.scale(a * l1 + b * l2, setup.z) for l1, l2 in setup.basis_coords])


def witness_derivation(setup: CounterexampleSetup, x, y) -> PairWitness:
    """Derivation ``D`` with ``D(x) = T(x)`` and ``D(y) = T(y)``."""
    x, y = la.vec(x), la.vec(y)
    rows = []
    for p in (x, y):
        l1, l2 = setup.coords(p)
        rows.append((l1, l2, la.frac(setup.f(l1, l2))))
    a, b = _solve_ab(rows)
    D = derivation_from_coefficients(setup, a, b)
    return PairWitness(x, y, D, "derivation", a, b)


def automorphism_from_derivation(L: LieAlgebra, D: LinearMap) -> LinearMap:
    """``id + D``, which is exactly ``exp D`` whenever ``D^2 = 0``.

    ``D`` has rank <= 1 with image span{z}, so ``D^2 = 0`` unless ``z`` itself
    has a nonzero lambda coordinate (only for abelian ``L``).  The bracket
    check is left to :meth:`PairWitness.validate`.
    """
    return LinearMap.identity(L.dim) + D


def witness_automorphism(setup: CounterexampleSetup, x, y) -> PairWitness:
    """Automorphism ``id + D`` agreeing with ``Delta`` at ``x`` and ``y``."""
    dw = witness_derivation(setup, x, y)
    phi = automorphism_from_derivation(setup.algebra, dw.witness)
    return PairWitness(dw.x, dw.y, phi, "automorphism", dw.a, dw.b)


# -- sampling and certificates ----------------------------------------------


class LCG:
    """Numerical Recipes LCG: ``s <- (1664525 s + 1013904223) mod 2**32``.

    Coordinates are ``(s >> 16) % 7 - 3``, i.e. in ``{-3, ..., 3}``.
    """

    def __init__(self, seed: int):
        self.state = seed % 2**32

    def next(self) -> int:
        self.state = (1664525 * self.state + 1013904223) % 2**32
        return self.state

    def coordinate(self) -> int:
        return (self.next() >> 16) % 7 - 3


def sample_pairs(dim: int, count: int, seed: int = 7) -> list:
    rng = LCG(seed)
    pairs = []
    for _ in range(count):
        x = tuple(Fraction(rng.coordinate()) for _ in range(dim))
        y = tuple(Fraction(rng.coordinate()) for _ in range(dim))
        pairs.append((x, y))
    return pairs


@dataclass(frozen=True)
class PairFailure:
    x: tuple
    y: tuple
    reason: str


@dataclass(frozen=True)
class NonadditivityWitness:
    x: tuple
    y: tuple
    defect: tuple  # Delta(x + y) - Delta(x) - Delta(y)

    def recheck(self, delta: Callable) -> bool:
        recomputed = la.sub(la.sub(delta(la.add(self.x, self.y)), delta(self.x)), delta(self.y))
        return recomputed == self.defect and any(recomputed)


CERTIFIED = "certified-2local-on-sample"
REFUTED = "refuted-not-automorphism"
BOTH = "both"
FAILED = "failed"


@dataclass(frozen=True)
class Certificate:
    verdict: str
    pair_witnesses: tuple
    failures: tuple = ()
    nonadditivity_witness: NonadditivityWitness | None = None

    @property
    def certified(self) -> bool:
        return not self.failures

    def revalidate(self, L: LieAlgebra, delta: Callable) -> bool:
        if not all(w.validate(L, delta) for w in self.pair_witnesses):
            return False
        nw = self.nonadditivity_witness
        return nw is None or nw.recheck(delta)


def verdict_for(certified: bool, refuted: bool) -> str:
    if certified and refuted:
        return BOTH
    if certified:
        return CERTIFIED
    if refuted:
        return REFUTED
    return FAILED


def certify_two_local(L: LieAlgebra, delta: PointwiseMap, pairs=None, *, n_pairs: int = 1000, seed: int = 7) -> Certificate:
    """Build and re-validate a witness automorphism for every pair.

    ``pairs`` defaults to ``n_pairs`` seeded samples (see :class:`LCG`).  Only
    counterexample maps and linear automorphisms are accepted: witnesses are
    constructed from the rule, not searched for.
    """
    if pairs is None:
        pairs = sample_pairs(L.dim, n_pairs, seed)
    if isinstance(delta, CounterexampleMap):
        build = lambda x, y: witness_automorphism(delta.setup, x, y)  # noqa: E731
    elif isinstance(delta, LinearRule):
        if not is_automorphism(L, delta.linear):
            raise TwoLocalError("linear rule is not an automorphism")
        build = lambda x, y: PairWitness(la.vec(x), la.vec(y), delta.linear, "automorphism")  # noqa: E731
    else:
        raise TwoLocalError(f"cannot certify black-box maps (rule kind {delta.kind!r})")

    witnesses, failures = [], []
    for x, y in pairs:
        x, y = la.vec(x), la.vec(y)
        try:
            w = build(x, y)
        except (WitnessError, AssertionError) as exc:
            failures.append(PairFailure(x, y, str(exc)))
            continue
        report = w.validate(L, delta)
        if report:
            witnesses.append(w)
        else:
            failures.append(PairFailure(x, y, report.reason or "validation failed"))
    try:
        nonadd = refute_automorphism(L, delta)
    except NoWitnessFound:
        nonadd = None
    return Certificate(
        verdict=verdict_for(not failures, nonadd is not None),
        pair_witnesses=tuple(witnesses),
        failures=tuple(failures),
        nonadditivity_witness=nonadd,
    )


def _scan_vectors(L: LieAlgebra, delta: PointwiseMap):
    if isinstance(delta, CounterexampleMap):
        e1, e2 = delta.setup.complement_basis[:2]
    else:
        e1, e2 = L.basis_vector(0), L.basis_vector(min(1, L.dim - 1))
    candidates = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)]
    return [la.add(la.scale(Fraction(p), e1), la.scale(Fraction(q), e2)) for p, q in candidates]


def refute_automorphism(L: LieAlgebra, delta: PointwiseMap) -> NonadditivityWitness:
    """First scanned pair with ``Delta(x + y) != Delta(x) + Delta(y)``.

    The scan starts at the unit pair ``(1, 0), (0, 1)`` in the first two
    complement coordinates.
    """
    vectors = _scan_vectors(L, delta)
    for x, y in product(vectors, repeat=2):
        defect = la.sub(la.sub(delta(la.add(x, y)), delta(x)), delta(y))
        if any(defect):
            w = NonadditivityWitness(x, y, defect)
            if not w.recheck(delta):
                raise AssertionError("nonadditivity witness failed to re-verify")
            return w
    raise NoWitnessFound("no nonadditivity witness in the scan range")


def killing_additivity_defect(L: LieAlgebra, T: Callable, x, y, z) -> Fraction:
    """``<T(x+y) - T(x) - T(y), T(z)>`` under the Killing form."""
    if not is_semisimple(L):
        raise TwoLocalError("Killing form is degenerate: algebra is not semisimple")
    x, y, z = la.vec(x), la.vec(y), la.vec(z)
    diff = la.sub(la.sub(la.vec(T(la.add(x, y))), la.vec(T(x))), la.vec(T(y)))
    return killing(L, diff, la.vec(T(z)))
