import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpdf.characters import (
    REAL,
    QCharacter,
    dual_dictionary,
    evaluate,
    fibonacci_axes,
    fit_slice_cosine,
    is_character,
    is_extreme,
    product_to_sum_check,
    slice_of_range,
)
from qpdf.errors import NoFit, TooLarge
from qpdf.group import FiniteGroup, ZWindow
from qpdf.measures import AtomicMeasure, synthesize
from qpdf.pdf import QFunction, is_positive_definite
from qpdf.quat import I1, I2, I3, ImaginaryUnit, Quaternion, axes_close, exp_slice, qmul
from qpdf.sampling import random_character, random_unit

Z4 = FiniteGroup((4,))
Z6 = FiniteGroup((6,))


def test_evaluation_examples():
    chi = QCharacter(Z4, (1,), I1)
    assert [evaluate(chi, g) for g in range(4)] == [Quaternion(1.0), I1, Quaternion(-1.0), -I1]
    assert all(v == Quaternion(1.0) for v in map(QCharacter(Z6, (0,)), range(6)))
    W = ZWindow(5)
    chi = QCharacter(W, 1.0, I3)
    for n in range(-5, 6):
        assert chi(n).isclose(Quaternion(math.cos(n), 0, 0, math.sin(n)), 1e-14)


def test_canonicalisation():
    a = QCharacter(Z6, (1,), -I2)
    assert a.axis == I2 and a.index == (5,)
    assert a.equals(QCharacter(Z6, (5,), I2))
    np.testing.assert_allclose(a.table(), QCharacter(Z6, (1,), -I2).table())
    real = QCharacter(Z6, (3,), I3)
    assert real.real_valued and real.axis == I1
    w = QCharacter(ZWindow(4), 2 * math.pi - 1.0, -I1)
    assert w.axis == I1 and math.isclose(w.index, 1.0)


def test_conj_and_rotation():
    chi = QCharacter(Z6, (1,), I1)
    np.testing.assert_allclose(chi.conj().table()[:, 1:], -chi.table()[:, 1:])
    r = Quaternion(1, 0, 1, 0) * (1 / math.sqrt(2))
    rot = chi.rotated(r)
    for g in range(6):
        assert rot(g).isclose(r * chi(g) * r.inverse(), 1e-12)


def test_json_round_trip():
    for chi in (QCharacter(Z6, (2,), I3), QCharacter(ZWindow(3), 0.4, I2), QCharacter(Z4, (2,))):
        back = QCharacter.from_json(chi.group, chi.to_json())
        assert back.equals(chi)
        assert chi.to_json()["real"] == chi.real_valued


def test_is_character_examples():
    assert is_character(QCharacter(Z6, (1,), I2).as_function())
    W = ZWindow(10)
    assert not is_character(QFunction.from_callable(W, lambda g: math.cos(g[0])))
    Z5 = FiniteGroup((5,))
    mid = synthesize(AtomicMeasure(((QCharacter(Z5, (1,), I1), 0.5), (QCharacter(Z5, (2,), I1), 0.5))))
    assert not is_extreme(mid)


def test_slice_of_range_examples():
    W = ZWindow(6)
    assert slice_of_range(QFunction.from_callable(W, lambda g: exp_slice(g[0], I2))) == I2
    assert slice_of_range(QFunction.constant(Z4)) == REAL
    diag = QFunction.from_mapping(FiniteGroup((3,)), {0: 1.0, 1: I1 * 0.5, 2: I2 * 0.5})
    assert slice_of_range(diag) is None


def test_product_to_sum_examples():
    for k in range(8):
        r = product_to_sum_check(QCharacter(FiniteGroup((8,)), (k,), ImaginaryUnit.of([0, 1, 2])).as_function())
        assert max(r) <= 1e-11
    assert max(product_to_sum_check(QFunction.constant(Z4))) == 0.0
    W = ZWindow(12)
    half_cos = QFunction.from_callable(W, lambda g: 0.5 * math.cos(g[0]))
    assert product_to_sum_check(half_cos).max_residual_re > 0.1


def test_slice_cosine_fits():
    fit = fit_slice_cosine(QCharacter(Z6, (1,), I1).as_function(), (1,))
    assert math.isclose(fit.theta, math.pi / 3, abs_tol=1e-9) and math.isclose(fit.t, 1.0, abs_tol=1e-9)
    assert fit.axis == I1
    fit = fit_slice_cosine(QFunction.constant(Z6), (1,))
    assert fit.theta == 0.0 and fit.t == 0.0
    W = ZWindow(10)
    phi = QFunction.from_callable(W, lambda g: Quaternion(math.cos(g[0]), 0.5 * math.sin(g[0]), 0, 0))
    fit = fit_slice_cosine(phi, (1,))
    assert math.isclose(fit.theta, 1.0, abs_tol=1e-9) and math.isclose(fit.t, 0.5, abs_tol=1e-9)
    noise = QFunction.from_mapping(Z6, {0: 1.0, 1: 0.9, 2: -0.9, 3: 0.1, 4: -0.9, 5: 0.9})
    with pytest.raises(NoFit):
        fit_slice_cosine(noise, (1,))


def test_dictionary_sizes():
    assert len(dual_dictionary(FiniteGroup((2,)), 64)) == 2
    assert len(dual_dictionary(FiniteGroup((3,)), 2)) == 3
    D = dual_dictionary(FiniteGroup((2, 2)), 16)
    assert len(D) == 4 and all(c.real_valued for c in D)
    # Z6: 2 real characters + 2 non-real classes {1,5}, {2,4} x 16 axes
    assert len(dual_dictionary(Z6, 16)) == 34
    assert len(dual_dictionary(ZWindow(10), 4, z_angles=5)) == 2 + 3 * 4
    with pytest.raises(TooLarge):
        dual_dictionary(FiniteGroup((4097,)))


def test_dictionary_entries_are_distinct_pd_characters():
    for G in (FiniteGroup((3,)), Z4, FiniteGroup((2, 4))):
        D = dual_dictionary(G, 8)
        assert len({c.key() for c in D}) == len(D)
        for chi in D:
            phi = chi.as_function()
            assert is_character(phi, 1e-10)
            assert is_positive_definite(phi).ok
            found = slice_of_range(phi)
            if chi.real_valued:
                assert found == REAL
            else:
                assert axes_close(found, chi.axis)


def test_fibonacci_axes_are_units():
    axes = fibonacci_axes(32)
    assert len(axes) == 32
    assert all(math.isclose(abs(a), 1.0) for a in axes)
    assert fibonacci_axes(32) == axes


@given(st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_characters_are_multiplicative_and_commuting(seed):
    rng = np.random.default_rng(seed)
    G = [FiniteGroup((5,)), FiniteGroup((2, 6)), ZWindow(7)][seed % 3]
    chi = random_character(G, rng)
    v = chi.table()
    assert np.max(np.abs(np.linalg.norm(v, axis=1) - 1)) <= 1e-12
    assert is_character(chi.as_function(), 1e-11)
    comm = qmul(v[:, None], v[None, :]) - qmul(v[None, :], v[:, None])
    assert np.max(np.abs(comm)) <= 1e-12
    if not chi.real_valued:
        a = (1,) if isinstance(G, ZWindow) else G.elements()[1]
        fit = fit_slice_cosine(chi.as_function(), a)
        assert fit.residual <= 1e-9


@given(st.integers(0, 10_000), st.sampled_from([0.3, 0.5, 0.7]))
@settings(max_examples=50, deadline=None)
def test_mixtures_are_not_characters(seed, lam):
    rng = np.random.default_rng(seed)
    D = dual_dictionary(Z6, 8)
    i, j = rng.choice(len(D), 2, replace=False)
    mix = synthesize(AtomicMeasure(((D[i], lam), (D[j], 1 - lam))), Z6)
    assert not is_character(mix)


def test_random_unit_character_stays_in_its_slice(rng):
    I = random_unit(rng)
    chi = QCharacter(FiniteGroup((7,)), (3,), I)
    assert axes_close(slice_of_range(chi.as_function()), I.canonical())
