"""Quaternion-valued functions on a group and the positive-definiteness test.

A function is positive definite when every Gram matrix
``A[i, j] = phi(s_j - s_i)`` is positive semidefinite as a quaternion
matrix.  The decision goes through the complex adjoint of the Gram matrix
and the Jacobi eigensolver in :mod:`qpdf.adjoint`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .adjoint import adjoint_complex, min_eigenvalue
from .errors import NonRealAtIdentity, NotHermitian, NotInSlice, OutOfWindow
from .group import FiniteGroup, GroupSpec, ZWindow
from .quat import ImaginaryUnit, Quaternion, qabs, qconj, qmul, project_slice_array

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class QFunction:
    """A quaternion-valued function tabulated on every element of ``group``.

    ``values[i]`` holds the four components of the value at
    ``group.elements()[i]``.
    """

    group: GroupSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.group.size, 4):
            raise ValueError(f"values must have shape ({self.group.size}, 4), got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, group: GroupSpec, f: Callable) -> QFunction:
        """Tabulate ``f(g)``; ``f`` may return a Quaternion, a real or a 4-sequence."""
        rows = [_as_components(f(g)) for g in group.elements()]
        return cls(group, np.array(rows))

    @classmethod
    def from_mapping(cls, group: GroupSpec, mapping, default=0.0) -> QFunction:
        vals = np.zeros((group.size, 4))
        vals[:, 0] = default
        for g, q in mapping.items():
            vals[group.index(g)] = _as_components(q)
        return cls(group, vals)

    @classmethod
    def constant(cls, group: GroupSpec, c=1.0) -> QFunction:
        return cls(group, np.tile(_as_components(c), (group.size, 1)))

    def __call__(self, g) -> Quaternion:
        return Quaternion.from_array(self.values[self.group.index(g)])

    def at(self, g) -> np.ndarray:
        return self.values[self.group.index(g)]

    @property
    def at_identity(self) -> Quaternion:
        return self(self.group.identity)

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return self.at_identity.isclose(1.0, tol)

    def __add__(self, other: QFunction) -> QFunction:
        _same_group(self, other)
        return QFunction(self.group, self.values + other.values)

    def __sub__(self, other: QFunction) -> QFunction:
        _same_group(self, other)
        return QFunction(self.group, self.values - other.values)

    def __mul__(self, s: float) -> QFunction:
        return QFunction(self.group, self.values * float(s))

    __rmul__ = __mul__

    def sup_distance(self, other: QFunction) -> float:
        _same_group(self, other)
        return float(np.max(qabs(self.values - other.values), initial=0.0))

    def __repr__(self) -> str:
        return f"QFunction(group={self.group}, values=<{self.values.shape[0]} x 4>)"


def _as_components(q) -> np.ndarray:
    if isinstance(q, Quaternion):
        return q.to_array()
    if np.isscalar(q):
        return np.array([float(q), 0.0, 0.0, 0.0])
    arr = np.asarray(q, dtype=float)
    if arr.shape != (4,):
        raise ValueError(f"cannot read {q!r} as a quaternion")
    return arr


def _same_group(f: QFunction, g: QFunction):
    if f.group != g.group:
        raise ValueError(f"functions live on different groups ({f.group} vs {g.group})")


def default_points(group: GroupSpec) -> list:
    if isinstance(group, ZWindow):
        return group.centered_points()
    return group.elements()


def gram_matrix(phi: QFunction, points: Sequence | None = None) -> np.ndarray:
    """``A[i, j] = phi(points[j] - points[i])`` as a ``(k, k, 4)`` array."""
    G = phi.group
    if points is None:
        points = default_points(G)
    if isinstance(G, FiniteGroup):
        if len(points) == G.size and list(points) == G.elements():
            return phi.values[G.sub_table]
        coords = np.array([G.element(p) for p in points])
        idx = G.index_array(coords[None, :, :] - coords[:, None, :])
        return phi.values[idx]
    n = np.array([G.element(p)[0] for p in points])
    diff = n[None, :] - n[:, None]
    if diff.size and np.max(np.abs(diff)) > G.radius:
        raise OutOfWindow(f"point differences reach {np.max(np.abs(diff))}, beyond {G}")
    return phi.values[diff + G.radius]


def hermitian_defect(phi: QFunction) -> float:
    G = phi.group
    if isinstance(G, FiniteGroup):
        neg = phi.values[G.neg_index]
    else:
        neg = phi.values[::-1]
    return float(np.max(np.abs(neg - qconj(phi.values)), initial=0.0))


def is_hermitian(phi: QFunction, tol: float = 1e-12) -> bool:
    """``phi(-g) == conj(phi(g))`` for every g, within ``tol`` per component."""
    return hermitian_defect(phi) <= tol


@dataclass(frozen=True)
class PDVerdict:
    ok: bool
    min_eig: float
    tol: float
    points: int

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "min_eig": self.min_eig, "tol": self.tol, "points": self.points}


def is_positive_definite(phi: QFunction, points: Sequence | None = None, tol: float = DEFAULT_TOL) -> PDVerdict:
    """Decide positive definiteness of ``phi`` on ``points``.

    ``points`` defaults to the whole group, or to ``-N/2..N/2`` on a window
    of radius N.  A window can only certify the points it was given.
    The threshold is ``-tol * max(1, |phi(0)|)``.
    """
    if points is None:
        points = default_points(phi.group)
    scale = max(1.0, abs(phi.at_identity))
    defect = hermitian_defect(phi)
    if defect > max(tol, 1e-12) * scale:
        raise NotHermitian(f"phi(-g) != conj(phi(g)) (defect {defect:.3g})")
    A = gram_matrix(phi, points)
    H = adjoint_complex(A, tol=np.inf)
    lam = min_eigenvalue(H)
    return PDVerdict(bool(lam >= -tol * scale), lam, tol, len(points))


def bound_check(phi: QFunction, tol: float = 1e-12) -> bool:
    """``|phi(g)| <= phi(0)`` everywhere, the bound every PD function on a group obeys."""
    e = phi.at_identity
    if abs(e.imag) > tol or e.real < -tol:
        raise NonRealAtIdentity(f"phi(0) = {e!r} is not a nonnegative real")
    return bool(np.all(qabs(phi.values) <= e.real + tol))


def conjugate_transform(phi: QFunction, t: Sequence, p: Sequence) -> QFunction:
    """``psi(s) = sum_{j,k} conj(p_j) phi(s + t_k - t_j) p_k``.

    Preserves positive definiteness.  On a window of radius N the result
    lives on the window of radius ``N - (max t - min t)``.
    """
    if len(t) != len(p) or not t:
        raise ValueError("t and p must be nonempty and of equal length")
    G = phi.group
    P = np.array([_as_components(q) for q in p])
    if isinstance(G, FiniteGroup):
        coords = np.array([G.element(x) for x in t])
        shift = coords[None, :, :] - coords[:, None, :]  # [j, k] -> t_k - t_j
        out_group = G
        base = G.coords
        idx = G.index_array(base[:, None, None, :] + shift[None, :, :, :])
    else:
        ts = np.array([G.element(x)[0] for x in t])
        span = int(ts.max() - ts.min())
        if span >= G.radius:
            raise OutOfWindow(f"shifts spanning {span} leave no room inside {G}")
        out_group = ZWindow(G.radius - span)
        base = out_group.coords[:, 0]
        args = base[:, None, None] + (ts[None, :] - ts[:, None])[None, :, :]
        if np.max(np.abs(args)) > G.radius:
            raise OutOfWindow("conjugate transform needs values outside the window")
        idx = args + G.radius
    vals = phi.values[idx]  # (n, j, k, 4)
    terms = qmul(qmul(qconj(P)[None, :, None, :], vals), P[None, None, :, :])
    return QFunction(out_group, terms.sum(axis=(1, 2)))


def project_pdf(phi: QFunction, axis) -> QFunction:
    """Pointwise slice projection ``q -> (q - I q I)/2``."""
    axis = ImaginaryUnit.of(axis)
    return QFunction(phi.group, project_slice_array(phi.values, axis))


def is_real_valued(phi: QFunction, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(phi.values[:, 1:]), initial=0.0) <= tol)


def semigroup_sense_reality_check(phi: QFunction, tol: float = 1e-12) -> bool:
    """Hermitian symmetry for the identity involution (``s* = s``) means
    ``phi(s) == conj(phi(s))``, i.e. ``phi`` is real valued."""
    return is_real_valued(phi, tol)


def slice_values(phi: QFunction, axis, tol: float = 1e-9) -> np.ndarray:
    """Read a slice-valued function as complex numbers ``a + b i`` for ``a + b I``."""
    axis = ImaginaryUnit.of(axis)
    u = axis.vector
    b = phi.values[:, 1:] @ u
    resid = phi.values[:, 1:] - b[:, None] * u
    if np.max(np.abs(resid), initial=0.0) > tol * max(1.0, float(np.max(qabs(phi.values)))):
        raise NotInSlice(f"values of phi leave the slice of {axis!r}")
    return phi.values[:, 0] + 1j * b
