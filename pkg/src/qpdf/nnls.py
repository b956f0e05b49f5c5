"""Nonnegative least squares by the Lawson-Hanson active-set method."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NoConvergence


class NNLSResult(NamedTuple):
    x: np.ndarray
    residual: float
    iterations: int
    active_set_size: int


def nnls(A, b, max_iter: int | None = None, tol: float | None = None) -> NNLSResult:
    """Minimise ``||A x - b||_2`` subject to ``x >= 0``.

    Parameters
    ----------
    A : array_like, shape (m, n)
    b : array_like, shape (m,)
    max_iter : int, optional
        Cap on the total number of (outer + inner) iterations; defaults to
        ``10 * n``.  Running out raises :class:`NoConvergence`.
    tol : float, optional
        Threshold on the dual vector ``A^T (b - A x)`` below which a
        variable is not worth freeing.

    Returns
    -------
    NNLSResult
        ``x``, the residual norm, the iteration count and the size of the
        final passive set (the variables allowed to be positive).
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if max_iter is None:
        max_iter = 10 * n
    if tol is None:
        tol = 10.0 * np.finfo(float).eps * max(m, n) * max(1.0, np.abs(A).max(initial=0.0)) * max(1.0, np.linalg.norm(b))

    x = np.zeros(n)
    passive = np.zeros(n, dtype=bool)
    w = A.T @ b
    iterations = 0

    def solve(mask):
        z = np.zeros(n)
        if mask.any():
            z[mask] = np.linalg.lstsq(A[:, mask], b, rcond=None)[0]
        return z

    while True:
        candidates = ~passive & (w > tol)
        if not candidates.any():
            break
        iterations += 1
        if iterations > max_iter:
            raise NoConvergence("NNLS iteration limit reached", residual=float(np.linalg.norm(A @ x - b)))
        j = int(np.argmax(np.where(candidates, w, -np.inf)))
        passive[j] = True
        z = solve(passive)
        if z[j] <= 0.0:
            # round-off made the freed variable useless; keep x and stop
            # offering it until the residual changes
            passive[j] = False
            w[j] = 0.0
            continue
        while np.any(z[passive] <= 0.0):
            iterations += 1
            if iterations > max_iter:
                raise NoConvergence("NNLS iteration limit reached", residual=float(np.linalg.norm(A @ x - b)))
            blocking = passive & (z <= 0.0)
            alpha = np.min(x[blocking] / (x[blocking] - z[blocking]))
            x = x + alpha * (z - x)
            passive &= x > 1e-15 * max(1.0, np.abs(x).max())
            x[~passive] = 0.0
            z = solve(passive)
        x = z
        w = A.T @ (b - A @ x)

    return NNLSResult(x, float(np.linalg.norm(A @ x - b)), iterations, int(passive.sum()))
