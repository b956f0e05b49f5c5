import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpdf.characters import QCharacter, dual_dictionary, fibonacci_axes
from qpdf.errors import NotHermitian, NotInSlice, NotPositiveDefinite, NotReal, RealCharacter, WrongExponent
from qpdf.group import FiniteGroup, ZWindow
from qpdf.measures import (
    AtomicMeasure,
    classical_fourier_weights,
    measure_distance,
    nonuniqueness_witness,
    real_characters,
    recover,
    synthesize,
    unique_representation_exp2,
)
from qpdf.pdf import QFunction, is_positive_definite
from qpdf.quat import I1, I2, I3, Quaternion, axes_close, rotate
from qpdf.sampling import SMALL_GROUPS, random_measure

Z3 = FiniteGroup((3,))
Z4 = FiniteGroup((4,))
Z6 = FiniteGroup((6,))
K4 = FiniteGroup((2, 2))


def test_measure_merges_and_validates():
    chi = QCharacter(Z6, (1,), I2)
    mu = AtomicMeasure(((chi, 0.25), (QCharacter(Z6, (5,), -I2), 0.75)))
    assert len(mu) == 1 and mu.total_mass == 1.0 and mu.is_probability()
    with pytest.raises(ValueError):
        AtomicMeasure(((chi, -0.1),))
    with pytest.raises(ValueError):
        AtomicMeasure(((chi, 1.0), (QCharacter(Z4, (1,)), 1.0)))


def test_measure_json_round_trip():
    mu = AtomicMeasure(((QCharacter(Z6, (1,), I3), 0.3), (QCharacter(Z6, (0,)), 0.7)))
    back = AtomicMeasure.from_json(Z6, mu.to_json())
    assert measure_distance(mu, back) == 0.0


def test_synthesis_examples():
    assert synthesize(AtomicMeasure.dirac(QCharacter(Z4, (0,)))).values.tolist() == [[1, 0, 0, 0]] * 4
    W = ZWindow(20)
    alpha = QCharacter(W, 1.0, I1)
    phi = synthesize(AtomicMeasure(((alpha, 0.5), (alpha.conj(), 0.5))))
    np.testing.assert_allclose(phi.values[:, 0], np.cos(np.arange(-20, 21)), atol=1e-15)
    assert np.max(np.abs(phi.values[:, 1:])) <= 1e-14
    uniform = AtomicMeasure(tuple((c, 0.25) for c in real_characters(K4)))
    np.testing.assert_allclose(synthesize(uniform).values[:, 0], [1, 0, 0, 0], atol=1e-15)


def test_empty_measure_needs_group():
    with pytest.raises(ValueError):
        synthesize(AtomicMeasure())
    assert not synthesize(AtomicMeasure(), Z4).values.any()


@given(st.integers(0, 10_000))
@settings(max_examples=100, deadline=None)
def test_synthesis_is_pd_with_mass_at_identity(seed):
    rng = np.random.default_rng(seed)
    G = SMALL_GROUPS[rng.integers(len(SMALL_GROUPS))]
    mu = random_measure(G, rng, probability=False)
    phi = synthesize(mu, G)
    assert is_positive_definite(phi, tol=1e-9).ok
    assert abs(phi.at_identity.real - mu.total_mass) <= 1e-12


def test_recover_constant():
    D = dual_dictionary(Z6, 8)
    res = recover(QFunction.constant(Z6), D)
    assert res.residual <= 1e-12 and res.success
    assert res.measure.weight_of(QCharacter(Z6, (0,))) == pytest.approx(1.0)


def test_recover_three_atoms_on_z6(rng):
    D = dual_dictionary(Z6, 16)
    idx = rng.choice(len(D), 3, replace=False)
    mu = AtomicMeasure(tuple((D[i], w) for i, w in zip(idx, [0.2, 0.3, 0.5])))
    phi = synthesize(mu)
    res = recover(phi, D)
    assert res.residual <= 1e-8
    assert synthesize(res.measure, Z6).sup_distance(phi) <= 1e-8
    assert np.all(res.weights >= 0)


def test_recover_cosine_on_window():
    W = ZWindow(10)
    axes = [I1, -I1, I2, -I2, I3, -I3]
    D = dual_dictionary(W, angles=[0.0, 0.5, 1.0, 2.0, math.pi], axes=axes)
    phi = QFunction.from_callable(W, lambda g: math.cos(g[0]))
    res = recover(phi, D)
    assert res.residual <= 1e-8
    at_one = sum(w for c, w in res.measure.atoms if math.isclose(c.index, 1.0) or math.isclose(c.index, 2 * math.pi - 1.0))
    assert at_one == pytest.approx(1.0, abs=1e-8)


def test_recover_rejects_non_hermitian():
    bad = QFunction.from_mapping(Z4, {0: 1.0, 1: I1})
    with pytest.raises(NotHermitian):
        recover(bad, dual_dictionary(Z4, 4))
    with pytest.raises(ValueError):
        recover(QFunction.constant(Z4), [])


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_round_trip(seed):
    rng = np.random.default_rng(seed)
    G = [Z6, FiniteGroup((2, 4)), FiniteGroup((5,))][seed % 3]
    D = dual_dictionary(G, 8)
    phi = synthesize(random_measure(G, rng, dictionary=D), G)
    res = recover(phi, D)
    assert res.residual <= 1e-8
    assert synthesize(res.measure, G).sup_distance(phi) <= 1e-8


def test_witness_on_z3():
    gamma = QCharacter(Z3, (1,), I1)
    w = nonuniqueness_witness(gamma)
    np.testing.assert_allclose(w.phi.values[:, 0], [1, -0.5, -0.5], atol=1e-15)
    assert synthesize(w.mu2, Z3).sup_distance(w.phi) <= 1e-12
    assert measure_distance(w.mu1, w.mu2) == 2.0
    atoms = w.mu1.characters + w.mu2.characters
    assert all(not a.equals(b) for i, a in enumerate(atoms) for b in atoms[i + 1 :])
    # the rotated atoms sit on the axis r i1 r^-1, orthogonal to i1
    target = rotate(I1, w.rotor)
    for c in w.mu2.characters:
        assert axes_close(c.axis, target) or axes_close(-c.axis, target)
        assert abs(float(np.dot(c.axis.vector, I1.vector))) <= 1e-12


def test_witness_with_j_equal_i2_gives_axis_minus_i3():
    r = (Quaternion(1.0) + I2) * (1 / math.sqrt(2))
    gamma = QCharacter(Z3, (1,), I1)
    rotated = gamma.rotated(r)
    # axis -i3 is stored canonically as i3 with the index negated
    assert rotated.axis == I3 and rotated.index == (2,)


def test_witness_on_window_reproduces_cosine():
    W = ZWindow(20)
    w = nonuniqueness_witness(QCharacter(W, 1.0, I1))
    np.testing.assert_allclose(w.phi.values[:, 0], np.cos(np.arange(-20, 21)), atol=1e-15)
    assert synthesize(w.mu2, W).sup_distance(w.phi) <= 1e-12


def test_witness_rejects_real_character():
    with pytest.raises(RealCharacter):
        nonuniqueness_witness(QCharacter(Z4, (2,)))


def test_distance_examples():
    gamma = QCharacter(Z6, (1,), I2)
    mu = AtomicMeasure.dirac(gamma)
    assert measure_distance(mu, mu) == 0.0
    assert measure_distance(mu, AtomicMeasure.dirac(gamma.conj())) == 2.0
    assert measure_distance(mu, mu * 0.25) == pytest.approx(0.75)


def test_unique_representation_examples():
    ind = QFunction.from_mapping(K4, {(0, 0): 1.0})
    mu = unique_representation_exp2(ind)
    assert len(mu) == 4 and all(w == 0.25 for w in mu.weights)
    mu = unique_representation_exp2(QFunction.constant(K4))
    assert len(mu) == 1 and mu.characters[0].index == (0, 0)
    Z2 = FiniteGroup((2,))
    mu = unique_representation_exp2(QFunction.from_mapping(Z2, {0: 1.0, 1: -1.0}))
    assert len(mu) == 1 and mu.characters[0].index == (1,) and mu.weights[0] == 1.0


def test_unique_representation_errors():
    with pytest.raises(WrongExponent):
        unique_representation_exp2(QFunction.constant(Z4))
    with pytest.raises(WrongExponent):
        unique_representation_exp2(QFunction.constant(ZWindow(3)))
    with pytest.raises(NotReal):
        unique_representation_exp2(QFunction.from_mapping(K4, {(0, 0): 1.0, (1, 0): I1 * 0.1}))
    with pytest.raises(NotPositiveDefinite):
        unique_representation_exp2(QFunction.from_mapping(K4, {(0, 0): 1.0, (1, 0): 2.0}))


@pytest.mark.parametrize("orders", [(2,), (2, 2), (2, 2, 2)])
def test_unique_representation_recovers_weights(rng, orders):
    G = FiniteGroup(orders)
    chars = real_characters(G)
    for _ in range(20):
        mu = AtomicMeasure.from_weights(chars, rng.uniform(0, 1, len(chars)))
        got = unique_representation_exp2(synthesize(mu, G))
        assert measure_distance(got, mu) <= 1e-10 * len(chars)


def test_classical_fourier_weights():
    w = classical_fourier_weights(QFunction.constant(Z4), I1)
    assert w[0][1].isclose(Quaternion(1.0)) and all(q.isclose(Quaternion()) for _, q in w[1:])
    w = dict(classical_fourier_weights(QCharacter(Z4, (1,), I1).as_function(), I1))
    assert w[(1,)].isclose(Quaternion(1.0), 1e-15)
    cos3 = nonuniqueness_witness(QCharacter(Z3, (1,), I1)).phi
    w = dict(classical_fourier_weights(cos3, I1))
    assert w[(1,)].isclose(Quaternion(0.5), 1e-15) and w[(2,)].isclose(Quaternion(0.5), 1e-15)
    with pytest.raises(NotInSlice):
        classical_fourier_weights(QCharacter(Z4, (1,), I2).as_function(), I1)


def test_classical_weights_of_pd_slice_function_resynthesize(rng):
    G = FiniteGroup((2, 3))
    chars = [QCharacter(G, k, I3) for k in G.elements()]
    mu = AtomicMeasure.from_weights(chars, rng.uniform(0, 1, len(chars)))
    phi = synthesize(mu, G)
    weights = classical_fourier_weights(phi, I3)
    assert all(q.real >= -1e-10 and abs(q.imag) <= 1e-12 for _, q in weights)
    back = AtomicMeasure.from_weights([QCharacter(G, k, I3) for k, _ in weights], [q.real for _, q in weights], drop=1e-15)
    assert synthesize(back, G).sup_distance(phi) <= 1e-12
