"""The reproducing kernel space of a positive definite function.

Translates of phi span a quaternionic inner product space where the group
acts by unitary shifts and ``<lambda(s) phi_0, phi_0> = phi(s)``.

Run with ``python demos/04_kernel_space.py``.
"""

from qpdf import FiniteGroup
from qpdf import rkhs
from qpdf.functions import lemma_exp2

for n in (4, 6):
    G = FiniteGroup((n,))
    ks = rkhs.build(lemma_exp2(G))
    report = rkhs.report(ks)
    norms = ", ".join(f"{v:.12f}" for _, v in report["norms"])
    print(f"{G}: rank {report['rank']} of {G.size}, reproduce error {report['reproduce_error']:.1e}")
    print(f"  shift norms: {norms}")

# on Z4 the Gram spectrum is 1 - sin(pi k / 2), so one direction is null
