"""The reproducing kernel space of a positive definite function on a finite group.

The space is spanned by the translates ``phi_s(t) = phi(s - t)``; a vector
is a quaternion coefficient array ``f`` of shape ``(n, 4)`` standing for
``sum_s phi_s f_s`` (right scalar multiplication), and

    <f, g> = sum_{s,t} conj(g_t) phi(s - t) f_s.

Null vectors are quotiented out by restricting to the range of the Gram
matrix.  The shift ``lambda(s)`` sends ``phi_t`` to ``phi_{s+t}``, which on
coefficients is a permutation, and ``<lambda(s) phi_0, phi_0> = phi(s)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .adjoint import complex_adjoint
from .errors import DimensionMismatch, NotFinite, NotPositiveDefinite, ZeroKernel
from .group import FiniteGroup
from .pdf import QFunction, gram_matrix, is_positive_definite
from .quat import Quaternion, qconj, qmul


@dataclass(frozen=True)
class ShiftOperator:
    """``lambda(s)``: coefficient ``f_t`` moves to position ``s + t``."""

    s: tuple
    permutation: np.ndarray

    def apply(self, f) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        out = np.empty_like(f)
        out[self.permutation] = f
        return out

    def compose(self, other: ShiftOperator, group: FiniteGroup) -> ShiftOperator:
        """``self after other``."""
        return ShiftOperator(group.add(self.s, other.s), self.permutation[other.permutation])

    def matrix(self) -> np.ndarray:
        n = len(self.permutation)
        P = np.zeros((n, n))
        P[self.permutation, np.arange(n)] = 1.0
        return P


@dataclass(frozen=True, eq=False)
class KernelSpace:
    phi: QFunction
    gram: np.ndarray
    rank: int
    eigen_threshold: float
    _range: np.ndarray = field(repr=False)  # K_c restricted: U_r * diag(lam_r)^(-1/2)

    @property
    def group(self) -> FiniteGroup:
        return self.phi.group

    @property
    def basis(self) -> list[tuple]:
        return self.group.elements()

    @property
    def dim(self) -> int:
        return self.group.size

    def shift(self, s) -> ShiftOperator:
        G = self.group
        s = G.element(s)
        perm = G.index_array(G.coords + np.array(s))
        return ShiftOperator(s, perm)

    def translate(self, t) -> np.ndarray:
        """Coefficients of ``phi_t``: the indicator at ``t``."""
        f = np.zeros((self.dim, 4))
        f[self.group.index(t), 0] = 1.0
        return f


def build(phi: QFunction, tol: float = 1e-9) -> KernelSpace:
    """Assemble the Gram matrix ``gram[t][s] = phi(s - t)`` and its numerical rank."""
    G = phi.group
    if not isinstance(G, FiniteGroup):
        raise NotFinite(f"the kernel space needs a finite group, got {G}")
    verdict = is_positive_definite(phi, tol=tol)
    if not verdict:
        raise NotPositiveDefinite(f"phi is not positive definite (min eigenvalue {verdict.min_eig:.3g})")
    K = gram_matrix(phi)
    thr = 1e-10 * max(1.0, phi.at_identity.real)
    lam, U = np.linalg.eigh(complex_adjoint(K))
    keep = lam > thr
    rank = int(keep.sum()) // 2
    basis = U[:, keep] / np.sqrt(lam[keep])
    return KernelSpace(phi, K, rank, thr, basis)


def _check(ks: KernelSpace, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (ks.dim, 4):
        raise DimensionMismatch(f"coefficient vector must have shape ({ks.dim}, 4), got {f.shape}")
    return f


def inner(ks: KernelSpace, f, g) -> Quaternion:
    """``<f, g> = sum_{s,t} conj(g_t) gram[t][s] f_s``; right-linear in ``f``."""
    f = _check(ks, f)
    g = _check(ks, g)
    Kf = qmul(ks.gram, f[None, :, :]).sum(axis=1)
    return Quaternion.from_array(qmul(qconj(g), Kf).sum(axis=0))


def norm(ks: KernelSpace, f) -> float:
    return float(np.sqrt(max(inner(ks, f, f).real, 0.0)))


def evaluate(ks: KernelSpace, f) -> np.ndarray:
    """Point values ``f(t) = sum_s gram[t][s] f_s`` as an ``(n, 4)`` array."""
    f = _check(ks, f)
    return qmul(ks.gram, f[None, :, :]).sum(axis=1)


def reproduce_check(ks: KernelSpace) -> float:
    """Largest ``|<lambda(s) phi_0, phi_0> - phi(s)|`` over the group."""
    e = ks.translate(ks.group.identity)
    err = 0.0
    for s in ks.basis:
        got = inner(ks, ks.shift(s).apply(e), e)
        err = max(err, abs(got - ks.phi(s)))
    return err


def operator_norm(ks: KernelSpace, s) -> float:
    """Norm of ``lambda(s)`` on the quotient by null vectors.

    In the complex adjoint picture this is the square root of the largest
    generalised eigenvalue of ``(P^H K P, K)`` on the range of ``K``.
    """
    if ks.rank == 0:
        raise ZeroKernel("the kernel is zero; the quotient space is trivial")
    P = np.kron(ks.shift(s).matrix(), np.eye(2))
    Kc = complex_adjoint(ks.gram)
    B = ks._range.conj().T @ (P.T @ Kc @ P) @ ks._range
    top = np.linalg.eigvalsh(0.5 * (B + B.conj().T))[-1]
    return float(np.sqrt(max(top, 0.0)))


def report(ks: KernelSpace) -> dict:
    return {
        "rank": ks.rank,
        "reproduce_error": reproduce_check(ks),
        "norms": [[list(s), operator_norm(ks, s)] for s in ks.basis],
    }

