import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpdf.adjoint import adjoint_complex, min_eigenvalue, sampled_form_extremes
from qpdf.characters import QCharacter
from qpdf.errors import NonRealAtIdentity, NotHermitian, OutOfWindow
from qpdf.functions import lemma_exp2
from qpdf.group import FiniteGroup, ZWindow
from qpdf.measures import synthesize
from qpdf.pdf import (
    QFunction,
    bound_check,
    conjugate_transform,
    gram_matrix,
    is_hermitian,
    is_positive_definite,
    is_real_valued,
    project_pdf,
    semigroup_sense_reality_check,
    slice_values,
)
from qpdf.quat import I1, I2, I3, Quaternion, exp_slice
from qpdf.sampling import SMALL_GROUPS, random_measure, random_quaternion, random_unit

Z4 = FiniteGroup((4,))


def lemma_z4():
    return QFunction.from_mapping(Z4, {0: 1.0, 1: I2 * 0.5, 3: I2 * -0.5})


def test_function_basics():
    phi = QFunction.constant(FiniteGroup((3,)), 2.0)
    assert phi(1) == Quaternion(2.0)
    assert not phi.is_normalized()
    assert (phi * 0.5).is_normalized()
    with pytest.raises(ValueError):
        QFunction(Z4, np.zeros((3, 4)))


def test_values_are_read_only():
    phi = QFunction.constant(Z4)
    with pytest.raises(ValueError):
        phi.values[0, 0] = 5.0


def test_gram_examples():
    np.testing.assert_array_equal(gram_matrix(QFunction.constant(FiniteGroup((2,))))[..., 0], np.ones((2, 2)))
    s = exp_slice(0.7, I3)
    W = ZWindow(3)
    phi = QFunction.from_callable(W, lambda g: s ** g[0])
    A = gram_matrix(phi, [(0,), (1,)])
    assert Quaternion.from_array(A[0, 1]).isclose(s)
    assert Quaternion.from_array(A[1, 0]).isclose(s.conj())
    with pytest.raises(OutOfWindow):
        gram_matrix(phi, [(-2,), (2,)])


def test_gram_of_lemma_function():
    A = gram_matrix(lemma_z4())
    # A[i, j] = phi(j - i): a circulant with 1 on the diagonal, +-i2/2 beside it
    assert Quaternion.from_array(A[0, 1]) == I2 * 0.5
    assert Quaternion.from_array(A[1, 0]) == I2 * -0.5
    assert Quaternion.from_array(A[0, 2]) == Quaternion()
    assert np.all(A[np.arange(4), np.arange(4)] == [1, 0, 0, 0])


def test_lemma_function_is_pd_with_known_spectrum():
    phi = lemma_z4()
    assert phi.values.tolist() == lemma_exp2(Z4).values.tolist()
    v = is_positive_definite(phi)
    assert v.ok and v.points == 4
    # circulant eigenvalues 1 - sin(pi k / 2), each doubled by the adjoint
    H = adjoint_complex(gram_matrix(phi))
    expected = sorted(2 * [1 - math.sin(math.pi * k / 2) for k in range(4)])
    np.testing.assert_allclose(np.linalg.eigvalsh(H), expected, atol=1e-14)
    assert abs(v.min_eig) <= 1e-14


def test_bound_violation_is_not_pd():
    phi = QFunction.from_mapping(ZWindow(2), {0: 1.0, 1: 2.0, -1: 2.0})
    v = is_positive_definite(phi)
    assert not v.ok
    assert math.isclose(v.min_eig, 1 - 2 * math.sqrt(2), rel_tol=1e-12)
    assert not bound_check(phi)


def test_two_point_gram_eigenvalue():
    # [[1, 2], [2, 1]] has eigenvalues -1 and 3
    assert min_eigenvalue(adjoint_complex(gram_matrix(QFunction.from_mapping(ZWindow(2), {0: 1.0, 1: 2.0, -1: 2.0}), [(0,), (1,)]))) == pytest.approx(-1.0)


def test_constant_is_pd_on_every_group():
    for G in (FiniteGroup((5,)), FiniteGroup((2, 3)), ZWindow(6)):
        v = is_positive_definite(QFunction.constant(G))
        assert v.ok and abs(v.min_eig) <= 1e-12


def test_hermitian_checks():
    assert is_hermitian(lemma_z4())
    bad = QFunction.from_mapping(ZWindow(1), {0: 1.0, 1: I1, -1: I1})
    assert not is_hermitian(bad)
    with pytest.raises(NotHermitian):
        is_positive_definite(bad)


def test_bound_check():
    assert bound_check(QFunction.constant(Z4))
    assert not bound_check(QFunction.from_mapping(Z4, {0: 1.0, 1: I1 * 1.5, 3: I1 * -1.5}))
    with pytest.raises(NonRealAtIdentity):
        bound_check(QFunction.from_mapping(Z4, {0: I1}))


def test_conjugate_transform_examples(rng):
    phi = synthesize(random_measure(FiniteGroup((6,)), rng))
    same = conjugate_transform(phi, [(0,)], [1.0])
    np.testing.assert_allclose(same.values, phi.values)
    q = Quaternion(0.5, -1.0, 2.0, 0.3)
    psi = conjugate_transform(phi, [(0,)], [q])
    for g in phi.group.elements():
        assert psi(g).isclose(q.conj() * phi(g) * q, 1e-12)
    assert math.isclose(psi.at_identity.real, q.norm2() * phi.at_identity.real)


def test_conjugate_transform_on_window_shrinks():
    W = ZWindow(6)
    phi = QFunction.from_callable(W, lambda g: math.cos(g[0]))
    psi = conjugate_transform(phi, [(0,), (2,)], [Quaternion(1.0), I2])
    assert psi.group == ZWindow(4)
    assert is_positive_definite(psi).ok


def test_projection_examples():
    assert project_pdf(QFunction.constant(Z4), I3).values.tolist() == QFunction.constant(Z4).values.tolist()
    proj = project_pdf(lemma_z4(), I1)
    np.testing.assert_array_equal(proj.values[:, 0], [1, 0, 0, 0])
    assert is_positive_definite(proj).ok
    W = ZWindow(8)
    phi = QFunction.from_callable(W, lambda g: exp_slice(g[0], I2))
    proj = project_pdf(phi, I1)
    np.testing.assert_allclose(proj.values[:, 0], np.cos(np.arange(-8, 9)), atol=1e-15)
    assert is_real_valued(proj)


def test_reality_in_the_semigroup_sense():
    assert semigroup_sense_reality_check(QFunction.constant(Z4))
    assert not semigroup_sense_reality_check(lemma_z4())


def test_slice_values():
    phi = QCharacter(Z4, (1,), I3).as_function()
    np.testing.assert_allclose(slice_values(phi, I3), [1, 1j, -1, -1j], atol=1e-15)


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_pd_implies_hermitian_and_bounded(seed):
    rng = np.random.default_rng(seed)
    G = SMALL_GROUPS[rng.integers(len(SMALL_GROUPS))]
    phi = synthesize(random_measure(G, rng), G)
    assert is_positive_definite(phi).ok
    assert is_hermitian(phi, 1e-12)
    assert bound_check(phi)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_verdict_cross_checked_by_sampling(seed):
    rng = np.random.default_rng(seed)
    G = SMALL_GROUPS[rng.integers(len(SMALL_GROUPS))]
    phi = synthesize(random_measure(G, rng), G)
    tol = 1e-9
    v = is_positive_definite(phi, tol=tol)
    lo, im = sampled_form_extremes(gram_matrix(phi), 1000, rng)
    assert v.ok
    assert lo >= -10 * tol and im <= 10 * tol


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_conjugate_transform_preserves_pd(seed):
    rng = np.random.default_rng(seed)
    G = FiniteGroup((6,))
    phi = synthesize(random_measure(G, rng), G)
    m = int(rng.integers(1, 4))
    t = [(int(x),) for x in rng.integers(6, size=m)]
    p = [random_quaternion(rng) for _ in range(m)]
    assert is_positive_definite(conjugate_transform(phi, t, p)).ok


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_projection_preserves_pd(seed):
    rng = np.random.default_rng(seed)
    G = SMALL_GROUPS[rng.integers(len(SMALL_GROUPS))]
    phi = synthesize(random_measure(G, rng), G)
    assert is_positive_definite(project_pdf(phi, random_unit(rng))).ok
