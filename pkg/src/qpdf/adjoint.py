"""Quaternion matrices, their complex adjoint, and a Jacobi eigensolver.

A k x k quaternion matrix is a float array of shape ``(k, k, 4)``.  Writing
``q = (a0 + a1 i) + (a2 + a3 i) i2`` with ``z = a0 + a1 i`` and ``w = a2 + a3 i``,
each entry becomes the 2 x 2 complex block ``[[z, w], [-conj(w), conj(z)]]``.
This map is multiplicative and sends the quaternionic conjugate transpose
to the complex one, so a quaternion-hermitian matrix is positive
semidefinite exactly when its adjoint is.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import NoConvergence, NotHermitian
from .quat import qconj, qmul


def qmatmul(A, B) -> np.ndarray:
    """Product of quaternion matrices ``(m, k, 4) @ (k, n, 4)``."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    return qmul(A[:, :, None, :], B[None, :, :, :]).sum(axis=1)


def qconj_transpose(A) -> np.ndarray:
    return qconj(np.swapaxes(np.asarray(A, dtype=float), 0, 1))


def hermitian_defect(A) -> float:
    """Largest ``|A[i, j] - conj(A[j, i])|`` component."""
    A = np.asarray(A, dtype=float)
    return float(np.max(np.abs(A - qconj_transpose(A)), initial=0.0))


def is_qhermitian(A, tol: float = 1e-12) -> bool:
    return hermitian_defect(A) <= tol


def complex_adjoint(A) -> np.ndarray:
    """The ``(2k, 2k)`` complex adjoint of a quaternion matrix, without checks."""
    A = np.asarray(A, dtype=float)
    if A.ndim == 1:
        A = A.reshape(1, 1, 4)
    k = A.shape[0]
    z = A[..., 0] + 1j * A[..., 1]
    w = A[..., 2] + 1j * A[..., 3]
    H = np.empty((2 * k, 2 * k), dtype=complex)
    H[0::2, 0::2] = z
    H[0::2, 1::2] = w
    H[1::2, 0::2] = -np.conj(w)
    H[1::2, 1::2] = np.conj(z)
    return H


def adjoint_complex(A, tol: float = 1e-12) -> np.ndarray:
    """Complex adjoint of a quaternion-hermitian matrix.

    Raises :class:`NotHermitian` when ``A`` is not hermitian within ``tol``;
    the result is symmetrised so it is conjugate-symmetric to round-off.
    """
    defect = hermitian_defect(A)
    if defect > tol:
        raise NotHermitian(f"quaternion matrix is not hermitian (defect {defect:.3g})")
    H = complex_adjoint(A)
    return 0.5 * (H + H.conj().T)


def quaternion_from_adjoint(H) -> np.ndarray:
    """Inverse of :func:`complex_adjoint` (reads the z and w blocks)."""
    H = np.asarray(H)
    z = H[0::2, 0::2]
    w = H[0::2, 1::2]
    return np.stack([z.real, z.imag, w.real, w.imag], axis=-1)


def adjoint_vector(q) -> np.ndarray:
    """First column of the adjoint of a quaternion column vector ``(k, 4)``.

    For hermitian ``A``, ``v^H adjoint(A) v`` equals the real quadratic form
    ``sum conj(q_i) A_ij q_j``.
    """
    q = np.asarray(q, dtype=float)
    v = np.empty(2 * q.shape[0], dtype=complex)
    v[0::2] = q[:, 0] + 1j * q[:, 1]
    v[1::2] = -(q[:, 2] - 1j * q[:, 3])
    return v


def quadratic_form(A, q) -> np.ndarray:
    """``sum_ij conj(q_i) A_ij q_j`` for one vector ``(k, 4)`` or a batch ``(S, k, 4)``."""
    A = np.asarray(A, dtype=float)
    q = np.asarray(q, dtype=float)
    Aq = qmul(A[None, :, :, :], q[..., None, :, :]).sum(axis=-2) if q.ndim == 3 else qmul(A, q[None, :, :]).sum(axis=1)
    return qmul(qconj(q), Aq).sum(axis=-2)


def left_matrix(A) -> np.ndarray:
    """Real ``(4k, 4k)`` matrix of ``q -> A q`` on stacked components."""
    A = np.asarray(A, dtype=float)
    a0, a1, a2, a3 = np.moveaxis(A, -1, 0)
    L = np.stack(
        [
            np.stack([a0, -a1, -a2, -a3], axis=-1),
            np.stack([a1, a0, -a3, a2], axis=-1),
            np.stack([a2, a3, a0, -a1], axis=-1),
            np.stack([a3, -a2, a1, a0], axis=-1),
        ],
        axis=-2,
    )  # (k, k, 4, 4)
    k = A.shape[0]
    return L.transpose(0, 2, 1, 3).reshape(4 * k, 4 * k)


def sampled_form_extremes(A, n_samples: int = 10_000, rng=None) -> tuple[float, float]:
    """Brute-force PSD oracle working directly in quaternion arithmetic.

    Draws ``n_samples`` random unit vectors in H^k and returns the minimum
    real part and the maximum imaginary magnitude of the quadratic form.
    """
    rng = np.random.default_rng(rng)
    A = np.asarray(A, dtype=float)
    k = A.shape[0]
    M = left_matrix(A)
    lo, im = np.inf, 0.0
    for start in range(0, n_samples, 5000):
        m = min(5000, n_samples - start)
        q = rng.normal(size=(m, 4 * k))
        q /= np.linalg.norm(q, axis=1)[:, None]
        Aq = (q @ M.T).reshape(m, k, 4)
        vals = qmul(qconj(q.reshape(m, k, 4)), Aq).sum(axis=1)
        lo = min(lo, float(vals[:, 0].min()))
        im = max(im, float(np.sqrt(np.sum(vals[:, 1:] ** 2, axis=-1)).max()))
    return lo, im


@lru_cache(maxsize=64)
def _tournament(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Round-robin schedule: each round is a set of disjoint (p, q) pairs."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        P = np.array([p for p, _ in pairs], dtype=np.intp)
        Q = np.array([q for _, q in pairs], dtype=np.intp)
        rounds.append((P, Q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def jacobi_eigh(H, tol: float = 1e-13, max_sweeps: int = 200, vectors: bool = False):
    """Eigenvalues (ascending) of a conjugate-symmetric matrix by cyclic Jacobi.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs that are rotated together.  Converged when every
    off-diagonal magnitude is at most ``tol * (1 + max|diag|)``.

    Returns ``w`` or ``(w, V)`` with ``H V = V diag(w)``.
    """
    A = np.array(H, dtype=complex, copy=True)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"square matrix expected, got shape {A.shape}")
    asym = np.max(np.abs(A - A.conj().T), initial=0.0)
    if asym > 1e-13 * (1.0 + np.max(np.abs(A), initial=0.0)):
        raise NotHermitian(f"matrix is not conjugate-symmetric (defect {asym:.3g})")
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=complex) if vectors else None
    rounds = _tournament(n) if n > 1 else ()
    off_mask = ~np.eye(n, dtype=bool)

    def off_ok():
        off = np.max(np.abs(A[off_mask]), initial=0.0)
        return off <= tol * (1.0 + np.max(np.abs(A.diagonal().real), initial=0.0)), off

    for _ in range(max_sweeps):
        done, _ = off_ok()
        if done:
            break
        # entries this small never affect convergence; rotating them divides by denormals
        negligible = 1e-30 * (1.0 + np.max(np.abs(A.diagonal().real), initial=0.0))
        for P, Q in rounds:
            c = A[P, Q]
            d = np.abs(c)
            active = d > negligible
            if not active.any():
                continue
            P, Q, c, d = P[active], Q[active], c[active], d[active]
            a = A[P, P].real
            b = A[Q, Q].real
            tau = (b - a) / (2.0 * d)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            cs = 1.0 / np.sqrt(1.0 + t * t)
            sn = t * cs
            u = np.conj(c / d)
            j_pp, j_pq, j_qp, j_qq = cs, sn, -sn * u, cs * u
            colP, colQ = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = colP * j_pp + colQ * j_qp
            A[:, Q] = colP * j_pq + colQ * j_qq
            rowP, rowQ = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = np.conj(j_pp)[:, None] * rowP + np.conj(j_qp)[:, None] * rowQ
            A[Q, :] = np.conj(j_pq)[:, None] * rowP + np.conj(j_qq)[:, None] * rowQ
            A[P, Q] = 0.0
            A[Q, P] = 0.0
            if V is not None:
                vP, vQ = V[:, P].copy(), V[:, Q].copy()
                V[:, P] = vP * j_pp + vQ * j_qp
                V[:, Q] = vP * j_pq + vQ * j_qq
    else:
        done, off = off_ok()
        if not done:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps", residual=float(off))

    w = A.diagonal().real
    order = np.argsort(w, kind="stable")
    if vectors:
        return w[order], V[:, order]
    return w[order]


def min_eigenvalue(H, tol: float = 1e-13, max_sweeps: int = 200) -> float:
    H = np.asarray(H)
    if H.size == 0:
        return np.inf
    return float(jacobi_eigh(H, tol=tol, max_sweeps=max_sweeps)[0])
