"""Seeded random inputs: units, characters, measures, hermitian quaternion matrices."""

from __future__ import annotations

import numpy as np

from .adjoint import qconj_transpose
from .characters import QCharacter
from .group import FiniteGroup, GroupSpec
from .measures import AtomicMeasure
from .quat import ImaginaryUnit, Quaternion

#: small finite groups, all of order <= 16
SMALL_GROUPS = [
    FiniteGroup((2,)),
    FiniteGroup((3,)),
    FiniteGroup((4,)),
    FiniteGroup((5,)),
    FiniteGroup((6,)),
    FiniteGroup((7,)),
    FiniteGroup((8,)),
    FiniteGroup((2, 2)),
    FiniteGroup((2, 4)),
    FiniteGroup((3, 3)),
    FiniteGroup((9,)),
    FiniteGroup((10,)),
    FiniteGroup((12,)),
    FiniteGroup((2, 6)),
    FiniteGroup((16,)),
    FiniteGroup((4, 4)),
    FiniteGroup((2, 2, 2)),
    FiniteGroup((2, 2, 4)),
]


def random_unit(rng) -> ImaginaryUnit:
    return ImaginaryUnit.from_vector(rng.normal(size=3))


def random_quaternion(rng, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_array(scale * rng.normal(size=4))


def random_group(rng, max_size: int = 16) -> FiniteGroup:
    pool = [G for G in SMALL_GROUPS if G.size <= max_size]
    return pool[rng.integers(len(pool))]


def random_character(group: GroupSpec, rng, axis=None) -> QCharacter:
    axis = random_unit(rng) if axis is None else axis
    if isinstance(group, FiniteGroup):
        k = tuple(int(rng.integers(n)) for n in group.orders)
        return QCharacter(group, k, axis)
    return QCharacter(group, float(rng.uniform(0.0, 2.0 * np.pi)), axis)


def random_measure(group: GroupSpec, rng, max_atoms: int = 6, dictionary=None, probability: bool = True) -> AtomicMeasure:
    """Between 1 and ``max_atoms`` atoms with positive weights."""
    n = int(rng.integers(1, max_atoms + 1))
    if dictionary is None:
        chars = [random_character(group, rng) for _ in range(n)]
    else:
        chars = [dictionary[i] for i in rng.choice(len(dictionary), size=min(n, len(dictionary)), replace=False)]
    w = rng.uniform(0.05, 1.0, size=len(chars))
    if probability:
        w = w / w.sum()
    return AtomicMeasure(tuple(zip(chars, w)))


def random_hermitian_qmatrix(k: int, rng, bound: float = 2.0) -> np.ndarray:
    """A ``(k, k, 4)`` quaternion-hermitian matrix with entries of modulus <= ``bound``.

    Off-diagonal components are uniform in ``[-bound/2, bound/2]``; the
    diagonal is real and uniform in ``[-bound, bound]``.
    """
    A = rng.uniform(-bound / 2, bound / 2, size=(k, k, 4))
    A = 0.5 * (A + qconj_transpose(A))
    d = np.arange(k)
    A[d, d] = 0.0
    A[d, d, 0] = rng.uniform(-bound, bound, size=k)
    return A
