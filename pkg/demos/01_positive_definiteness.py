"""Deciding positive definiteness of a quaternion-valued function.

Run with ``python demos/01_positive_definiteness.py``.
"""

import numpy as np

from qpdf import FiniteGroup, QFunction, is_positive_definite, project_pdf, slice_of_range
from qpdf.adjoint import adjoint_complex
from qpdf.functions import format_quaternion, lemma_exp2
from qpdf.pdf import gram_matrix, hermitian_defect
from qpdf.quat import I1

G = FiniteGroup((4,))

# phi is 1 at 0, i2/2 at 1 and -i2/2 at 3. It is hermitian
# (phi(-g) = conj phi(g)) but its values are not in the complex slice of i1.
phi = lemma_exp2(G)
print("phi on Z4:")
for g in G.elements():
    print(f"  {g[0]}: {format_quaternion(phi(g), 3)}")
print("hermitian defect:", hermitian_defect(phi))

# The Gram matrix [phi(s - t)] is a 4x4 quaternion matrix. Its complex
# adjoint is an 8x8 hermitian matrix, and each eigenvalue appears twice.
H = adjoint_complex(gram_matrix(phi))
print("adjoint eigenvalues:", np.round(np.linalg.eigvalsh(H), 12) + 0.0)

verdict = is_positive_definite(phi)
print(f"positive definite: {verdict.ok} (min eigenvalue {verdict.min_eig:.3g})")

# All values lie in one slice, the one through i2.
print("slice of the range:", slice_of_range(phi))

# Projecting onto the slice of i1 keeps the real part here and stays PD.
proj = project_pdf(phi, I1)
print("projection onto C_i1 still PD:", is_positive_definite(proj).ok)

# A function with |phi(1)| > phi(0) cannot be positive definite.
bad = QFunction.from_mapping(G, {0: 1.0, 1: 2.0, 3: 2.0})
v = is_positive_definite(bad)
print(f"phi(0)=1, phi(+-1)=2: positive definite {v.ok}, min eigenvalue {v.min_eig:.3f}")
