"""Quaternionic characters: homomorphisms from a group into the unit quaternions.

The image of an abelian group under such a homomorphism is a commuting set
of unit quaternions, hence sits in one complex slice.  So every character
is a classical character ``g -> exp(i*theta(g))`` read inside a slice
``C_I``: ``gamma(g) = cos(theta(g)) + sin(theta(g)) * I``.  A character is
stored as the pair (classical index, axis I), with ``(k, I)`` and
``(-k, -I)`` identified; the stored axis is the canonical one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NoFit, TooLarge
from .group import MAX_ELEMENTS, FiniteGroup, GroupSpec, ZWindow
from .pdf import QFunction
from .quat import (
    I1,
    ImaginaryUnit,
    Quaternion,
    axes_close,
    canonical_sign,
    qabs,
    qmul,
    rotate,
)

TWO_PI = 2.0 * math.pi

#: returned by :func:`slice_of_range` for real-valued functions
REAL = "real"


@dataclass(frozen=True, eq=False)
class QCharacter:
    """A point of the quaternionic dual of ``group``.

    ``index`` is the classical index vector ``k`` (finite groups, with
    ``theta(g) = 2*pi*sum(k_i g_i / n_i)``) or the angle ``theta`` (windows
    of Z, with ``theta(n) = n*theta``).
    """

    group: GroupSpec
    index: tuple | float
    axis: ImaginaryUnit = I1

    def __post_init__(self):
        G = self.group
        if isinstance(G, FiniteGroup):
            idx = G.reduce(self.index)
        else:
            idx = float(self.index) % TWO_PI
            for special in (0.0, math.pi, TWO_PI):
                if abs(idx - special) <= 1e-12:
                    idx = special % TWO_PI
        axis = ImaginaryUnit.of(self.axis)
        object.__setattr__(self, "index", idx)
        if self.real_valued:
            axis = I1
        elif canonical_sign(axis) < 0:
            axis = -axis
            object.__setattr__(self, "index", _negate_index(G, idx))
        object.__setattr__(self, "axis", axis)

    # --- structure -----------------------------------------------------------
    @property
    def real_valued(self) -> bool:
        if isinstance(self.group, FiniteGroup):
            return all((2 * k) % n == 0 for k, n in zip(self.index, self.group.orders))
        return self.index in (0.0, math.pi)

    def conj(self) -> QCharacter:
        """The involution ``gamma* = conj(gamma)``."""
        return QCharacter(self.group, _negate_index(self.group, self.index), self.axis)

    def rotated(self, r: Quaternion) -> QCharacter:
        """The character ``g -> r gamma(g) r^-1``."""
        if self.real_valued:
            return self
        return QCharacter(self.group, self.index, ImaginaryUnit.of(rotate(self.axis, r)))

    def equals(self, other: QCharacter, tol: float = 1e-9) -> bool:
        if self.group != other.group or self.real_valued != other.real_valued:
            return False
        if isinstance(self.group, FiniteGroup):
            same_index = self.index == other.index
        else:
            d = abs(self.index - other.index) % TWO_PI
            same_index = min(d, TWO_PI - d) <= tol
        return same_index and (self.real_valued or axes_close(self.axis, other.axis, tol))

    def key(self) -> tuple:
        """Hashable, rounded identity used for de-duplication on grids."""
        idx = self.index if isinstance(self.group, FiniteGroup) else round(self.index, 9)
        if self.real_valued:
            return (idx,)
        return (idx, *(round(c, 9) + 0.0 for c in self.axis.vector))

    # --- evaluation ----------------------------------------------------------
    def angles(self, coords=None) -> np.ndarray:
        """``theta(g)`` for all elements (canonical order) or for given coordinates."""
        G = self.group
        if coords is None:
            coords = G.coords
        coords = np.asarray(coords)
        if isinstance(G, FiniteGroup):
            num, den = self._rational_angles(coords)
            return TWO_PI * num / den
        return coords[..., 0] * self.index

    def _rational_angles(self, coords):
        G = self.group
        L = G.exponent()
        weights = np.array([k * (L // n) for k, n in zip(self.index, G.orders)], dtype=np.int64)
        return np.mod(np.asarray(coords) @ weights, L), L

    def table(self, coords=None) -> np.ndarray:
        """Values as a ``(n, 4)`` array, exact at multiples of pi/2."""
        G = self.group
        if coords is None:
            coords = G.coords
        if isinstance(G, FiniteGroup):
            num, den = self._rational_angles(coords)
            theta = TWO_PI * num / den
            c, s = np.cos(theta), np.sin(theta)
            if den % 4 == 0:
                quarter = num % (den // 4) == 0
                q = (num // (den // 4)) % 4
                c = np.where(quarter, np.array([1.0, 0.0, -1.0, 0.0])[q], c)
                s = np.where(quarter, np.array([0.0, 1.0, 0.0, -1.0])[q], s)
            elif den % 2 == 0:
                half = num % (den // 2) == 0
                c = np.where(half, np.where(num == 0, 1.0, -1.0), c)
                s = np.where(half, 0.0, s)
            else:
                c = np.where(num == 0, 1.0, c)
                s = np.where(num == 0, 0.0, s)
        else:
            n = np.asarray(coords)[..., 0]
            if self.index == 0.0:
                c, s = np.ones(n.shape), np.zeros(n.shape)
            elif self.index == math.pi:
                c, s = np.where(n % 2 == 0, 1.0, -1.0), np.zeros(n.shape)
            else:
                theta = n * self.index
                c, s = np.cos(theta), np.sin(theta)
        out = np.empty(c.shape + (4,))
        out[..., 0] = c
        out[..., 1:] = s[..., None] * self.axis.vector
        return out

    def as_function(self) -> QFunction:
        return QFunction(self.group, self.table())

    def __call__(self, g) -> Quaternion:
        return evaluate(self, g)

    def to_json(self) -> dict:
        if isinstance(self.group, FiniteGroup):
            head = {"k": list(self.index)}
        else:
            head = {"theta": self.index}
        return {**head, "axis": self.axis.to_list(), "real": self.real_valued}

    @classmethod
    def from_json(cls, group: GroupSpec, obj: dict) -> QCharacter:
        index = tuple(obj["k"]) if "k" in obj else float(obj["theta"])
        return cls(group, index, ImaginaryUnit.of(obj.get("axis", [0.0, 1.0, 0.0, 0.0])))

    def __repr__(self) -> str:
        idx = self.index if isinstance(self.group, FiniteGroup) else f"theta={self.index:.6g}"
        if self.real_valued:
            return f"QCharacter({self.group}, {idx}, real)"
        return f"QCharacter({self.group}, {idx}, axis={tuple(round(float(c), 6) + 0.0 for c in self.axis.vector)})"


def _negate_index(G: GroupSpec, idx):
    if isinstance(G, FiniteGroup):
        return tuple((-k) % n for k, n in zip(idx, G.orders))
    return (-idx) % TWO_PI


def evaluate(gamma: QCharacter, g) -> Quaternion:
    coords = np.array([gamma.group.element(g)])
    return Quaternion.from_array(gamma.table(coords)[0])


# --- tests on functions ---------------------------------------------------


def is_character(phi: QFunction, tol: float = 1e-9) -> bool:
    """Unit modulus everywhere and ``phi(a+b) == phi(a) phi(b)`` on all pairs.

    These are exactly the extreme points of the normalised positive
    definite functions.  On a window only pairs with ``a+b`` inside count.
    """
    v = phi.values
    if np.max(np.abs(qabs(v) - 1.0), initial=0.0) > tol:
        return False
    G = phi.group
    if isinstance(G, FiniteGroup):
        table = G.add_table
        for start in range(0, G.size, 256):
            rows = slice(start, start + 256)
            prod = qmul(v[rows, None, :], v[None, :, :])
            if np.max(np.abs(prod - v[table[rows]]), initial=0.0) > tol:
                return False
        return True
    N = G.radius
    n = np.arange(-N, N + 1)
    s = n[:, None] + n[None, :]
    ok = np.abs(s) <= N
    prod = qmul(v[:, None, :], v[None, :, :])
    target = v[np.clip(s, -N, N) + N]
    return bool(np.max(np.abs(prod - target)[ok], initial=0.0) <= tol)


is_extreme = is_character


def dominant_axis(vectors: np.ndarray) -> ImaginaryUnit | None:
    """Canonical unit along the principal direction of a set of 3-vectors."""
    vectors = np.asarray(vectors, dtype=float)
    if vectors.size == 0 or np.max(np.abs(vectors)) == 0.0:
        return None
    _, _, vt = np.linalg.svd(vectors, full_matrices=False)
    return ImaginaryUnit.from_vector(vt[0]).canonical()


def slice_of_range(phi: QFunction, tol: float = 1e-9):
    """The slice containing every value of ``phi``.

    Returns :data:`REAL` for real-valued functions, the canonical axis when
    one slice holds the whole range, and ``None`` otherwise.
    """
    im = phi.values[:, 1:]
    if np.max(np.abs(im), initial=0.0) <= tol:
        return REAL
    u = dominant_axis(im)
    resid = im - (im @ u.vector)[:, None] * u.vector
    scale = np.maximum(1.0, qabs(phi.values))
    if np.all(np.sqrt(np.sum(resid**2, axis=1)) <= tol * scale):
        return u
    return None


class ProductToSum(NamedTuple):
    max_residual_re: float
    max_residual_im: float


def product_to_sum_check(phi: QFunction) -> ProductToSum:
    """Residuals of the identities every extreme point satisfies::

        2 Re phi(b) Re phi(a) = Re phi(a+b) + Re phi(a-b)
        2 Re phi(b) Im phi(a) = Im phi(a+b) + Im phi(a-b)

    taken over all pairs with ``a+b`` and ``a-b`` evaluatable.
    """
    v = phi.values
    G = phi.group
    if isinstance(G, FiniteGroup):
        plus = v[G.add_table]  # [a, b]
        minus = v[G.sub_table.T]  # sub_table[i, j] = j - i, so .T[a, b] = a - b
        ok = np.ones(plus.shape[:2], dtype=bool)
    else:
        N = G.radius
        n = np.arange(-N, N + 1)
        s, d = n[:, None] + n[None, :], n[:, None] - n[None, :]
        ok = (np.abs(s) <= N) & (np.abs(d) <= N)
        plus = v[np.clip(s, -N, N) + N]
        minus = v[np.clip(d, -N, N) + N]
    re_b = v[None, :, 0]
    lhs_re = 2.0 * re_b * v[:, None, 0]
    lhs_im = 2.0 * re_b[..., None] * v[:, None, 1:]
    r_re = np.abs(lhs_re - plus[..., 0] - minus[..., 0])
    r_im = np.sqrt(np.sum((lhs_im - plus[..., 1:] - minus[..., 1:]) ** 2, axis=-1))
    return ProductToSum(float(np.max(r_re[ok], initial=0.0)), float(np.max(r_im[ok], initial=0.0)))


class SliceCosineFit(NamedTuple):
    theta: float
    t: float
    axis: ImaginaryUnit
    residual: float


def _orbit(phi: QFunction, a) -> tuple[np.ndarray, np.ndarray]:
    G = phi.group
    a = G.element(a)
    if isinstance(G, FiniteGroup):
        n = np.arange(G.order_of(a))
        return n, phi.values[G.index_array(n[:, None] * np.array(a))]
    if a[0] == 0:
        n = np.array([0])
    else:
        m = G.radius // abs(a[0])
        n = np.arange(-m, m + 1)
    return n, phi.values[n * a[0] + G.radius]


def fit_slice_cosine(phi: QFunction, a, max_residual: float = 1e-6) -> SliceCosineFit:
    """Fit ``phi(n*a) ~ cos(n theta) + t sin(n theta) I`` along the orbit of ``a``.

    ``theta`` is in ``[0, 2 pi)``, ``t`` in ``[0, 1]`` and ``I`` is canonical.
    Orbits with no imaginary part report ``t = 0`` and ``I = i1``.  The
    residual is the largest pointwise error; above ``max_residual`` the fit
    is rejected with :class:`NoFit`.
    """
    n, F = _orbit(phi, a)
    re, im = F[:, 0], F[:, 1:]
    axis = dominant_axis(im) if np.max(np.abs(im), initial=0.0) > 1e-12 else None
    s = im @ axis.vector if axis is not None else np.zeros(len(n))
    u = axis.vector if axis is not None else np.zeros(3)

    def profile(theta):
        S = np.sin(n * theta)
        denom = S @ S
        t = float(np.clip((s @ S) / denom, 0.0, 1.0)) if denom > 1e-14 else 0.0
        model_im = t * S[:, None] * u
        err = np.sqrt((re - np.cos(n * theta)) ** 2 + np.sum((im - model_im) ** 2, axis=1))
        return t, float(np.max(err, initial=0.0))

    if len(n) > 1 and 1 in n:
        theta0 = math.acos(float(np.clip(re[list(n).index(1)], -1.0, 1.0)))
    else:
        theta0 = 0.0
    best = None
    for theta in {theta0, (TWO_PI - theta0) % TWO_PI}:
        t, err = profile(theta)
        if best is None or err < best[2]:
            best = (theta, t, err)
    if best[2] > 1e-13 and len(n) > 1:
        lo, hi = best[0] - 1e-3, best[0] + 1e-3
        res = minimize_scalar(lambda th: profile(th)[1], bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
        t, err = profile(res.x)
        if err < best[2]:
            best = (float(res.x) % TWO_PI, t, err)
    theta, t, err = best
    if err > max_residual:
        raise NoFit(f"orbit of {a} does not follow cos + t sin I (residual {err:.3g})", residual=err)
    return SliceCosineFit(theta, t, axis if axis is not None else I1, err)


# --- the dual as a finite dictionary --------------------------------------


def fibonacci_axes(m: int) -> list[ImaginaryUnit]:
    """``m`` nearly uniform imaginary units (spherical Fibonacci lattice)."""
    golden = math.pi * (3.0 - math.sqrt(5.0))
    i = np.arange(m)
    z = 1.0 - (2.0 * i + 1.0) / m
    r = np.sqrt(1.0 - z * z)
    phi = i * golden
    pts = np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=-1)
    return [ImaginaryUnit.from_vector(p) for p in pts]


def dual_dictionary(
    group: GroupSpec,
    sphere_grid: int = 64,
    z_angles: int = 128,
    angles=None,
    axes=None,
) -> list[QCharacter]:
    """A finite sample of the quaternionic dual.

    Every classical character (finite groups) or ``z_angles`` equally spaced
    angles in ``[0, pi]`` (windows; pass ``angles`` to override) is paired
    with ``sphere_grid`` Fibonacci axes (or explicit ``axes``).  Entries are
    de-duplicated up to ``(k, I) ~ (-k, -I)``; real characters appear once.
    """
    axes = fibonacci_axes(sphere_grid) if axes is None else [ImaginaryUnit.of(a) for a in axes]
    if isinstance(group, FiniteGroup):
        if group.size > MAX_ELEMENTS:
            raise TooLarge(f"{group} is too large for a full character enumeration")
        indices = [k for k in group.elements() if k <= _negate_index(group, k)]
    else:
        indices = list(np.linspace(0.0, math.pi, z_angles)) if angles is None else [float(a) for a in angles]
    out, seen = [], set()
    for idx in indices:
        first = QCharacter(group, idx)
        for axis in [I1] if first.real_valued else axes:
            chi = QCharacter(group, idx, axis)
            key = chi.key()
            if key not in seen:
                seen.add(key)
                out.append(chi)
    return out
