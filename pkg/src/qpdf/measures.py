"""Atomic measures on the quaternionic dual.

A nonnegative measure ``mu`` on the dual represents the function
``phi(g) = sum_i w_i gamma_i(g)``.  Every such function is positive
definite and every positive definite function has a representing measure,
but the measure is unique only on groups of exponent <= 2.  This module
synthesises functions from measures, recovers measures from functions by
nonnegative least squares over a character dictionary, and builds explicit
pairs of different measures with the same function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .characters import QCharacter
from .errors import NotHermitian, NotPositiveDefinite, NotReal, RealCharacter, WrongExponent
from .group import FiniteGroup, GroupSpec
from .nnls import nnls
from .pdf import QFunction, hermitian_defect, slice_values
from .quat import ONE, ImaginaryUnit, Quaternion, orthogonal_imaginary_unit

#: weights at or below this are dropped after a recovery
DROP_WEIGHT = 1e-12


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Finitely many weighted characters.

    Atoms that are the same character (up to ``1e-9``) are merged on
    construction, so atoms are pairwise distinct.  Weights must be >= 0.
    """

    atoms: tuple[tuple[QCharacter, float], ...] = ()

    def __post_init__(self):
        merged: list[list] = []
        for chi, w in self.atoms:
            w = float(w)
            if w < 0.0 or not math.isfinite(w):
                raise ValueError(f"atom weight {w!r} is not a nonnegative number")
            for slot in merged:
                if slot[0].equals(chi):
                    slot[1] += w
                    break
            else:
                merged.append([chi, w])
        groups = {chi.group for chi, _ in merged}
        if len(groups) > 1:
            raise ValueError(f"atoms live on different groups: {sorted(map(str, groups))}")
        object.__setattr__(self, "atoms", tuple((c, w) for c, w in merged))

    @classmethod
    def dirac(cls, chi: QCharacter, weight: float = 1.0) -> AtomicMeasure:
        return cls(((chi, weight),))

    @classmethod
    def from_weights(cls, characters: Sequence[QCharacter], weights: Iterable[float], drop: float = 0.0) -> AtomicMeasure:
        return cls(tuple((c, float(w)) for c, w in zip(characters, weights) if w > drop))

    @property
    def characters(self) -> list[QCharacter]:
        return [c for c, _ in self.atoms]

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])

    @property
    def total_mass(self) -> float:
        return float(sum(w for _, w in self.atoms))

    def is_probability(self, tol: float = 1e-10) -> bool:
        return abs(self.total_mass - 1.0) <= tol

    def weight_of(self, chi: QCharacter, tol: float = 1e-9) -> float:
        return sum(w for c, w in self.atoms if c.equals(chi, tol))

    def __len__(self) -> int:
        return len(self.atoms)

    def __add__(self, other: AtomicMeasure) -> AtomicMeasure:
        return AtomicMeasure(self.atoms + other.atoms)

    def __mul__(self, s: float) -> AtomicMeasure:
        return AtomicMeasure(tuple((c, w * s) for c, w in self.atoms))

    __rmul__ = __mul__

    def involution(self) -> AtomicMeasure:
        """Push-forward under ``gamma -> conj(gamma)``."""
        return AtomicMeasure(tuple((c.conj(), w) for c, w in self.atoms))

    def rotated(self, r: Quaternion) -> AtomicMeasure:
        """Push-forward under ``gamma -> r gamma r^-1``."""
        return AtomicMeasure(tuple((c.rotated(r), w) for c, w in self.atoms))

    def to_json(self) -> dict:
        return {"atoms": [{"character": c.to_json(), "weight": w} for c, w in self.atoms]}

    @classmethod
    def from_json(cls, group: GroupSpec, obj: dict) -> AtomicMeasure:
        return cls(tuple((QCharacter.from_json(group, a["character"]), float(a["weight"])) for a in obj["atoms"]))

    def __repr__(self) -> str:
        return f"AtomicMeasure({len(self.atoms)} atoms, mass={self.total_mass:.6g})"


def synthesize(mu: AtomicMeasure, group: GroupSpec | None = None) -> QFunction:
    """``phi(g) = sum_i w_i gamma_i(g)``; positive definite with ``phi(0)`` = total mass."""
    if group is None:
        if not mu.atoms:
            raise ValueError("an empty measure needs an explicit group")
        group = mu.atoms[0][0].group
    vals = np.zeros((group.size, 4))
    for chi, w in mu.atoms:
        if chi.group != group:
            raise ValueError(f"atom {chi!r} does not live on {group}")
        vals += w * chi.table()
    return QFunction(group, vals)


def measure_distance(mu1: AtomicMeasure, mu2: AtomicMeasure, tol: float = 1e-9) -> float:
    """Total variation ``sum |w1 - w2|`` after matching equal atoms."""
    rest = [[c, w] for c, w in mu2.atoms]
    total = 0.0
    for chi, w in mu1.atoms:
        for slot in rest:
            if slot[0].equals(chi, tol):
                total += abs(w - slot[1])
                slot[1] = None
                break
        else:
            total += w
        rest = [s for s in rest if s[1] is not None]
    return total + sum(w for _, w in rest)


class RecoveryResult(NamedTuple):
    weights: np.ndarray
    residual: float
    iterations: int
    active_set_size: int
    measure: AtomicMeasure
    success: bool

    def to_json(self) -> dict:
        return {
            "residual": self.residual,
            "iterations": self.iterations,
            "active_set_size": self.active_set_size,
            "success": self.success,
            "measure": self.measure.to_json(),
        }


def design_matrix(dictionary: Sequence[QCharacter]) -> np.ndarray:
    """Columns are the stacked components of each character over the whole group."""
    return np.stack([chi.table().ravel() for chi in dictionary], axis=1)


def recover(phi: QFunction, dictionary: Sequence[QCharacter], tol: float = 1e-8) -> RecoveryResult:
    """Find nonnegative weights on ``dictionary`` that synthesise ``phi``.

    Solves ``min ||A w - b||`` with ``w >= 0`` where ``A`` stacks the four
    components of every character on every group element.  Success means
    the residual is at most ``tol``.
    """
    if not dictionary:
        raise ValueError("dictionary is empty")
    defect = hermitian_defect(phi)
    if defect > 1e-9 * max(1.0, abs(phi.at_identity)):
        raise NotHermitian(f"phi is not hermitian (defect {defect:.3g}); no measure can represent it")
    for chi in dictionary:
        if chi.group != phi.group:
            raise ValueError(f"dictionary atom {chi!r} does not live on {phi.group}")
    A = design_matrix(dictionary)
    res = nnls(A, phi.values.ravel())
    mu = AtomicMeasure.from_weights(dictionary, res.x, drop=DROP_WEIGHT)
    return RecoveryResult(res.x, res.residual, res.iterations, res.active_set_size, mu, res.residual <= tol)


class Witness(NamedTuple):
    mu1: AtomicMeasure
    mu2: AtomicMeasure
    phi: QFunction
    rotor: Quaternion


def nonuniqueness_witness(gamma: QCharacter, group: GroupSpec | None = None, seed: int = 0) -> Witness:
    """Two different probability measures with the same function ``Re gamma``.

    With ``J`` anticommuting with the axis of ``gamma`` and ``r = (1+J)/sqrt 2``::

        mu1 = (delta[gamma] + delta[gamma*]) / 2
        mu2 = (delta[r gamma r^-1] + delta[r gamma* r^-1]) / 2

    The four atoms are distinct, so the measures are a total variation of
    2 apart, yet both synthesise the real part of ``gamma``.
    """
    if group is not None and group != gamma.group:
        raise ValueError(f"{gamma!r} does not live on {group}")
    if gamma.real_valued:
        raise RealCharacter(f"{gamma!r} is real valued; the construction needs a non-real character")
    J = orthogonal_imaginary_unit(gamma.axis, seed)
    r = (ONE + J) * (1.0 / math.sqrt(2.0))
    mu1 = AtomicMeasure(((gamma, 0.5), (gamma.conj(), 0.5)))
    mu2 = mu1.rotated(r)
    return Witness(mu1, mu2, synthesize(mu1, gamma.group), r)


def real_characters(group: FiniteGroup) -> list[QCharacter]:
    return [chi for chi in (QCharacter(group, k) for k in group.elements()) if chi.real_valued]


def unique_representation_exp2(phi: QFunction, group: GroupSpec | None = None) -> AtomicMeasure:
    """The representing measure on a group of exponent <= 2, by Fourier inversion.

    All characters are then real (+-1 valued) and the character table is
    invertible, so ``w(chi) = mean_g phi(g) chi(g)`` is the only solution.
    """
    G = phi.group if group is None else group
    if G != phi.group:
        raise ValueError(f"phi lives on {phi.group}, not {G}")
    if not isinstance(G, FiniteGroup) or not G.is_exponent_le_2():
        raise WrongExponent(f"{G} does not have exponent <= 2")
    if np.max(np.abs(phi.values[:, 1:]), initial=0.0) > 1e-12 * max(1.0, abs(phi.at_identity)):
        raise NotReal("on a group of exponent <= 2 a positive definite function must be real valued")
    chars = real_characters(G)
    table = np.stack([chi.table()[:, 0] for chi in chars])  # [chi, g]
    w = table @ phi.values[:, 0] / G.size
    if np.any(w < -1e-10):
        raise NotPositiveDefinite(f"Fourier weights go negative (min {w.min():.3g})")
    return AtomicMeasure.from_weights(chars, np.clip(w, 0.0, None), drop=DROP_WEIGHT)


def classical_fourier_weights(phi: QFunction, axis, group: GroupSpec | None = None) -> list[tuple[tuple[int, ...], Quaternion]]:
    """Classical Fourier coefficients of a slice-valued function.

    Reads the values ``a + b I`` as complex numbers and returns, for every
    index ``k``, ``mean_g phi(g) conj(chi_k(g))`` back inside the slice.
    """
    G = phi.group if group is None else group
    if not isinstance(G, FiniteGroup) or G != phi.group:
        raise ValueError("classical Fourier weights need phi on a finite group")
    axis = ImaginaryUnit.of(axis)
    z = slice_values(phi, axis).reshape(G.orders)
    coef = np.fft.fftn(z) / G.size
    out = []
    for k in G.elements():
        c = coef[k]
        out.append((k, Quaternion(float(c.real)) + axis * float(c.imag)))
    return out
