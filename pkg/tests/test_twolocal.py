from dataclasses import replace
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import NILPOTENT_SPECS
from lie2local import linalg as la
from lie2local.core import build, build_abelian, build_filiform, build_heisenberg, build_sl, from_brackets
from lie2local.forms import killing
from lie2local.maps import LinearMap, is_automorphism, is_derivation, torus_automorphism
from lie2local.roots import root_decomposition
from lie2local.twolocal import (
    BOTH,
    CERTIFIED,
    CounterexampleMap,
    FunctionRule,
    HypothesisError,
    LCG,
    LinearRule,
    NoWitnessFound,
    TwoLocalError,
    WitnessError,
    certify_two_local,
    default_f,
    killing_additivity_defect,
    make_counterexample,
    refute_automorphism,
    sample_pairs,
    witness_automorphism,
    witness_derivation,
)


def f_plus_one(l1, l2):
    return default_f(l1, l2) + 1


def test_default_f_values():
    assert default_f(1, 0) == 1
    assert default_f(0, 1) == 0
    assert default_f(1, 1) == F(1, 2)
    assert default_f(1, 1) != default_f(1, 0) + default_f(0, 1)
    assert default_f(3, 0) == 3
    assert default_f(2, 2) == 1 == 2 * default_f(1, 1)
    assert default_f(0, 0) == 0


@settings(max_examples=100)
@given(st.fractions(max_denominator=20), st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_default_f_homogeneous(a, b, t):
    assert default_f(t * a, t * b) == t * default_f(a, b)


# -- setup


def test_abelian2_setup():
    L = build_abelian(2)
    setup, delta = make_counterexample(L)
    assert setup.complement_indices == (0, 1)
    assert setup.z == (0, 1)
    assert delta((1, 1)) == (1, F(3, 2))


def test_heisenberg2_setup():
    L = build_heisenberg(2)
    setup, delta = make_counterexample(L)
    assert len(setup.complement_indices) == 4
    assert setup.z == L.element(z=1)
    x = L.element(x1=1, y1=1)
    assert delta(x) == L.element(x1=1, y1=1, z=F(1, 2))


def test_filiform4_setup():
    L = build_filiform(4)
    setup, _ = make_counterexample(L)
    assert setup.derived.dim == 2
    assert setup.complement_indices == (0, 1)
    assert setup.z == L.element(e4=1)


@pytest.mark.parametrize("spec", NILPOTENT_SPECS)
def test_setup_succeeds_for_nilpotent(spec):
    setup, _ = make_counterexample(build(spec))
    assert len(setup.complement_indices) >= 2
    assert any(setup.z)


def test_hypothesis_failures():
    with pytest.raises(HypothesisError, match="hypothesis \\(i\\)"):
        make_counterexample(build_sl(2))
    with pytest.raises(HypothesisError, match="at least 2"):
        make_counterexample(build_abelian(1))
    with pytest.raises(HypothesisError, match="homogeneous"):
        make_counterexample(build_heisenberg(1), f=f_plus_one)


def _sl2_plus_heisenberg():
    # sl(2) on indices 0..2, heisenberg x, y, z on 3..5
    return from_brackets(
        ["h", "e", "f", "x", "y", "z"],
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}, (3, 4): {5: 1}},
    )


def test_non_nilpotent_algebra_with_hypotheses():
    L = _sl2_plus_heisenberg()
    setup, delta = make_counterexample(L)
    assert setup.z == L.element(z=1)
    cert = certify_two_local(L, delta, n_pairs=50, seed=3)
    assert cert.verdict == BOTH


def test_hypothesis_ii_failure():
    # sl(2) + abelian(2): [L,L] = sl(2), center = abelian part, meet is zero
    L = from_brackets(["h", "e", "f", "a", "b"], {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})
    with pytest.raises(HypothesisError, match="hypothesis \\(ii\\)"):
        make_counterexample(L)


# -- witnesses


def test_witness_unit_pair():
    L = build_heisenberg(1)
    setup, _ = make_counterexample(L)
    w = witness_derivation(setup, L.element(x1=1), L.element(y1=1))
    assert (w.a, w.b) == (1, 0)


def test_witness_proportional_pair():
    L = build_heisenberg(1)
    setup, _ = make_counterexample(L)
    w = witness_derivation(setup, L.element(x1=1, y1=1), L.element(x1=2, y1=2))
    assert (w.a, w.b) == (F(1, 2), 0)
    assert w.a * 1 + w.b * 1 == default_f(1, 1)
    assert w.a * 2 + w.b * 2 == default_f(2, 2)


def test_witness_degenerate_row():
    L = build_heisenberg(1)
    setup, _ = make_counterexample(L)
    w = witness_derivation(setup, L.element(z=1), L.element(x1=1, y1=2))
    assert w.a * 1 + w.b * 2 == default_f(1, 2)
    assert w.validate(L, setup.perturbation)


def test_witness_b_zero_falls_back_to_a_zero():
    L = build_heisenberg(1)
    setup, _ = make_counterexample(L)
    w = witness_derivation(setup, L.element(y1=1), L.element(y1=3))
    assert (w.a, w.b) == (0, 0)


def test_witness_automorphism_heisenberg():
    L = build_heisenberg(1)
    setup, delta = make_counterexample(L)
    x, y = L.element(x1=1), L.element(y1=1)
    w = witness_automorphism(setup, x, y)
    assert w.witness(x) == delta(x) == L.element(x1=1, z=1)
    assert w.witness(y) == delta(y)
    assert is_automorphism(L, w.witness)
    D = w.witness - LinearMap.identity(3)
    assert w.witness @ (LinearMap.identity(3) - D) == LinearMap.identity(3)


@pytest.mark.parametrize("spec", NILPOTENT_SPECS)
def test_witness_properties_random(spec):
    L = build(spec)
    setup, delta = make_counterexample(L)
    z_span = la.rref([setup.z], L.dim)[0]
    for x, y in sample_pairs(L.dim, 40, seed=11):
        dw = witness_derivation(setup, x, y)
        assert dw.validate(L, setup.perturbation)
        D = dw.witness
        for j in range(L.dim):
            col = D.column(j)
            assert la.rank(z_span + (col,)) == 1 or not any(col)
        if spec != "abelian:2":
            assert (D @ D).is_zero()
        aw = witness_automorphism(setup, x, y)
        assert aw.validate(L, delta)


def test_abelian2_square_nonzero_still_invertible():
    L = build_abelian(2)
    setup, delta = make_counterexample(L)
    x, y = (1, 1), (1, 2)
    w = witness_automorphism(setup, x, y)
    D = w.witness - LinearMap.identity(2)
    assert not (D @ D).is_zero()
    assert w.validate(L, delta)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(-5, 5), min_size=5, max_size=5),
    st.fractions(max_denominator=7, min_value=-4, max_value=4),
)
def test_delta_homogeneous(coords, t):
    L = build_heisenberg(2)
    _, delta = make_counterexample(L)
    x = la.vec(coords)
    assert delta(la.scale(t, x)) == la.scale(t, delta(x))


# -- certificates


def test_lcg_is_documented_recurrence():
    rng = LCG(7)
    assert rng.next() == (1664525 * 7 + 1013904223) % 2**32
    assert sample_pairs(3, 5, seed=7) == sample_pairs(3, 5, seed=7)
    assert all(-3 <= c <= 3 for x, y in sample_pairs(4, 50) for c in x + y)


def test_certify_heisenberg_1000():
    L = build_heisenberg(1)
    _, delta = make_counterexample(L)
    cert = certify_two_local(L, delta, n_pairs=1000, seed=7)
    assert len(cert.pair_witnesses) == 1000 and not cert.failures
    assert cert.verdict == BOTH
    assert cert.revalidate(L, delta)


def test_certify_actual_automorphism():
    L = build_sl(2)
    phi = torus_automorphism(L, root_decomposition(L), [3])
    cert = certify_two_local(L, LinearRule(phi), n_pairs=20)
    assert cert.verdict == CERTIFIED
    assert cert.nonadditivity_witness is None


def test_certify_rejects_black_box():
    L = build_sl(2)
    with pytest.raises(TwoLocalError, match="black-box"):
        certify_two_local(L, FunctionRule(lambda x: x), n_pairs=1)


def test_negative_control_non_homogeneous():
    L = build_heisenberg(1)
    setup, _ = make_counterexample(L)
    bad = CounterexampleMap(replace(setup, f=f_plus_one))
    x, y = L.element(x1=1), L.element(x1=2)
    with pytest.raises(WitnessError, match="inconsistent"):
        witness_derivation(bad.setup, x, y)
    cert = certify_two_local(L, bad, pairs=[(x, y), (L.element(x1=1), L.element(y1=1))])
    assert len(cert.failures) == 1
    assert cert.failures[0].x == x and cert.failures[0].y == y
    assert len(cert.pair_witnesses) == 1
    assert not cert.certified


# -- refutation


def test_refute_default_defect():
    L = build_heisenberg(1)
    _, delta = make_counterexample(L)
    w = refute_automorphism(L, delta)
    assert (w.x, w.y) == (L.element(x1=1), L.element(y1=1))
    assert w.defect == L.element(z=F(-1, 2))
    assert w.recheck(delta)


def test_refute_identity_errors():
    with pytest.raises(NoWitnessFound):
        refute_automorphism(build_sl(2), LinearRule.identity(3))


@pytest.mark.parametrize("spec", NILPOTENT_SPECS)
def test_refute_defect_along_z(spec):
    L = build(spec)
    setup, delta = make_counterexample(L)
    w = refute_automorphism(L, delta)
    assert w.defect == la.scale(F(-1, 2), setup.z)


# -- Killing additivity defect


def _torus(n, c):
    L = build_sl(n)
    return L, torus_automorphism(L, root_decomposition(L), c)


@pytest.mark.parametrize("n,c", [(2, [5]), (3, [2, F(-1, 3)])])
def test_defect_zero_for_isometries(n, c):
    L, phi = _torus(n, c)
    basis = [L.basis_vector(i) for i in range(L.dim)]
    for x, y, z in product(basis, repeat=3):
        assert killing_additivity_defect(L, phi, x, y, z) == 0


def test_defect_identity_sl2():
    L = build_sl(2)
    h, e, f = (L.basis_vector(i) for i in range(3))
    assert killing_additivity_defect(L, LinearRule.identity(3), h, e, f) == 0


def test_defect_nonlinear_control():
    L = build_sl(2)
    h = L.basis_vector(0)

    def control(x):
        return la.add(x, la.scale(killing(L, x, x), h))

    # <h,h> = 8: T(2h) - 2T(h) = 16h, T(h) = 9h, <16h, 9h> = 144 * 8
    assert killing_additivity_defect(L, control, h, h, h) == 1152
    # along e the quadratic term vanishes (<e,e> = 0), so the defect does too
    e, f = L.basis_vector(1), L.basis_vector(2)
    assert killing_additivity_defect(L, control, e, e, f) == 0


def test_defect_requires_semisimple():
    L = build_heisenberg(1)
    with pytest.raises(TwoLocalError, match="not semisimple"):
        killing_additivity_defect(L, LinearRule.identity(3), *(L.basis_vector(i) for i in range(3)))
