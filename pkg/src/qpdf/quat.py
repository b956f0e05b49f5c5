"""Real quaternions in the basis (1, i1, i2, i3) with i3 = i1*i2.

Two layers live here.  The :class:`Quaternion` value type is used for
scalar bookkeeping (character axes, rotors, single values).  Bulk work
(function tables, Gram matrices) uses plain float arrays whose last axis
holds the four components ``(a0, a1, a2, a3)``; :func:`qmul` and
:func:`qconj` are the vectorised counterparts of ``*`` and :meth:`conj`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroRotor

#: a purity / nonzero threshold used for axes
PURE_TOL = 1e-12


def qmul(p, q):
    """Hamilton product of two broadcastable ``(..., 4)`` arrays."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p0, p1, p2, p3 = np.moveaxis(p, -1, 0)
    q0, q1, q2, q3 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
            p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
        ],
        axis=-1,
    )


def qconj(q):
    q = np.array(q, dtype=float, copy=True)
    q[..., 1:] *= -1.0
    return q


def qabs(q):
    return np.sqrt(np.sum(np.square(q), axis=-1))


@dataclass(frozen=True, slots=True, eq=False)
class Quaternion:
    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    @classmethod
    def from_array(cls, a) -> Quaternion:
        a0, a1, a2, a3 = (float(x) for x in a)
        return cls(a0, a1, a2, a3)

    def to_array(self) -> np.ndarray:
        return np.array([self.a0, self.a1, self.a2, self.a3])

    def to_list(self) -> list[float]:
        return [self.a0, self.a1, self.a2, self.a3]

    def __iter__(self):
        return iter((self.a0, self.a1, self.a2, self.a3))

    @property
    def real(self) -> float:
        return self.a0

    @property
    def imag(self) -> Quaternion:
        return Quaternion(0.0, self.a1, self.a2, self.a3)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3])

    def norm2(self) -> float:
        return self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def conj(self) -> Quaternion:
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def inverse(self) -> Quaternion:
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return Quaternion(self.a0 / n2, -self.a1 / n2, -self.a2 / n2, -self.a3 / n2)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.a0 + other.a0, self.a1 + other.a1, self.a2 + other.a2, self.a3 + other.a3)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.a0 - other.a0, self.a1 - other.a1, self.a2 - other.a2, self.a3 - other.a3)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            s = float(other)
            return Quaternion(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * (1.0 / float(other))
        if isinstance(other, Quaternion):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, n: int) -> Quaternion:
        if not isinstance(n, (int, np.integer)):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(int(n))):
            out = out * base
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (self.a0, self.a1, self.a2, self.a3) == (other.a0, other.a1, other.a2, other.a3)

    def __hash__(self):
        return hash((self.a0, self.a1, self.a2, self.a3))

    def isclose(self, other, atol: float = 1e-12) -> bool:
        other = _coerce(other)
        return max(abs(x - y) for x, y in zip(self, other)) <= atol

    def __repr__(self) -> str:
        return f"Quaternion({self.a0!r}, {self.a1!r}, {self.a2!r}, {self.a3!r})"


def _coerce(x):
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return Quaternion(float(x))
    return NotImplemented


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p*q``."""
    return Quaternion(
        p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
        p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
        p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
        p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0,
    )


def conj(q: Quaternion) -> Quaternion:
    return q.conj()


class ImaginaryUnit(Quaternion):
    """A pure unit quaternion ``I`` (so ``I*I == -1``).

    The input is renormalised; a real component is tolerated only when it
    is at most ``1e-12`` after normalisation, and is then set to exactly 0.
    """

    __slots__ = ()

    def __init__(self, a0: float = 0.0, a1: float = 0.0, a2: float = 0.0, a3: float = 0.0):
        n = math.sqrt(a0**2 + a1**2 + a2**2 + a3**2)
        if n == 0.0 or not math.isfinite(n):
            raise ValueError("an imaginary unit needs a nonzero finite vector")
        if abs(a0 / n) > PURE_TOL:
            raise ValueError(f"not a pure quaternion (real part {a0!r})")
        v = np.array([a1, a2, a3], dtype=float)
        v = v / np.linalg.norm(v) + 0.0  # drop signed zeros
        object.__setattr__(self, "a0", 0.0)
        object.__setattr__(self, "a1", float(v[0]))
        object.__setattr__(self, "a2", float(v[1]))
        object.__setattr__(self, "a3", float(v[2]))

    @classmethod
    def from_vector(cls, v) -> ImaginaryUnit:
        x, y, z = (float(c) for c in v)
        return cls(0.0, x, y, z)

    @classmethod
    def of(cls, q) -> ImaginaryUnit:
        """Coerce a Quaternion, 3-vector or 4-vector into an imaginary unit."""
        if isinstance(q, ImaginaryUnit):
            return q
        if isinstance(q, Quaternion):
            return cls(q.a0, q.a1, q.a2, q.a3)
        arr = [float(c) for c in q]
        if len(arr) == 3:
            return cls(0.0, *arr)
        if len(arr) == 4:
            return cls(*arr)
        raise ValueError(f"cannot build an imaginary unit from {q!r}")

    def __neg__(self) -> ImaginaryUnit:
        return ImaginaryUnit(0.0, -self.a1, -self.a2, -self.a3)

    def is_canonical(self) -> bool:
        return canonical_sign(self) > 0

    def canonical(self) -> ImaginaryUnit:
        return self if canonical_sign(self) > 0 else -self

    def __repr__(self) -> str:
        return f"ImaginaryUnit({self.a1!r}, {self.a2!r}, {self.a3!r})"


def canonical_sign(u: Quaternion) -> int:
    """+1 if the first clearly nonzero imaginary component of ``u`` is positive, else -1."""
    for c in (u.a1, u.a2, u.a3):
        if abs(c) > PURE_TOL:
            return 1 if c > 0 else -1
    return 1


ONE = Quaternion(1.0)
I1 = ImaginaryUnit(0.0, 1.0, 0.0, 0.0)
I2 = ImaginaryUnit(0.0, 0.0, 1.0, 0.0)
I3 = ImaginaryUnit(0.0, 0.0, 0.0, 1.0)


def axes_close(u: Quaternion, v: Quaternion, tol: float = 1e-9) -> bool:
    return max(abs(u.a1 - v.a1), abs(u.a2 - v.a2), abs(u.a3 - v.a3)) <= tol


class ComplexSlice:
    """The commutative subalgebra R + I*R, identified with its canonical axis.

    ``ComplexSlice(I) == ComplexSlice(-I)``.
    """

    __slots__ = ("axis",)

    def __init__(self, axis):
        self.axis = ImaginaryUnit.of(axis).canonical()

    def project(self, q: Quaternion) -> Quaternion:
        return project_slice(q, self.axis)

    def contains(self, q: Quaternion, tol: float = 1e-12) -> bool:
        return abs(q - self.project(q)) <= tol * max(1.0, abs(q))

    def __contains__(self, q) -> bool:
        return self.contains(q)

    def __eq__(self, other) -> bool:
        return isinstance(other, ComplexSlice) and axes_close(self.axis, other.axis)

    def __hash__(self):
        return hash(tuple(round(c, 9) for c in self.axis.vector))

    def __repr__(self) -> str:
        return f"ComplexSlice({self.axis!r})"


def project_slice(q: Quaternion, axis: Quaternion) -> Quaternion:
    """Projection ``(q - I q I)/2`` onto the slice spanned by 1 and ``axis``."""
    return (q - axis * q * axis) * 0.5


def project_slice_array(q, axis: Quaternion) -> np.ndarray:
    """Vectorised :func:`project_slice` for a ``(..., 4)`` array."""
    q = np.asarray(q, dtype=float)
    u = axis.vector
    out = np.zeros_like(q)
    out[..., 0] = q[..., 0]
    out[..., 1:] = (q[..., 1:] @ u)[..., None] * u
    return out


def orthogonal_imaginary_unit(axis: Quaternion, seed: int = 0) -> ImaginaryUnit:
    """An imaginary unit J with ``axis*J == -J*axis``.

    Gram-Schmidt of a seeded random pure quaternion against ``axis``, so
    the result is reproducible for a given seed.
    """
    u = ImaginaryUnit.of(axis).vector
    rng = np.random.default_rng(seed)
    while True:
        v = rng.normal(size=3)
        v = v - (v @ u) * u
        n = np.linalg.norm(v)
        if n > 1e-6:
            return ImaginaryUnit.from_vector(v / n)


def rotate(x: Quaternion, r: Quaternion) -> Quaternion:
    """Inner automorphism ``r x r^-1``."""
    if abs(r) <= 1e-14:
        raise ZeroRotor(f"rotor {r!r} is (numerically) zero")
    return r * x * r.inverse()


def exp_slice(theta: float, axis: Quaternion) -> Quaternion:
    """``cos(theta) + sin(theta)*axis``."""
    s = math.sin(theta)
    return Quaternion(math.cos(theta), s * axis.a1, s * axis.a2, s * axis.a3)
