"""From measures to functions and back.

A probability measure on quaternionic characters gives a positive
definite function by integration. Recovery finds nonnegative weights on a
finite dictionary of characters that reproduce a given function.

Run with ``python demos/02_representing_measures.py``.
"""

import math

import numpy as np

from qpdf import AtomicMeasure, FiniteGroup, QCharacter, ZWindow, dual_dictionary, recover, synthesize
from qpdf.functions import cosine
from qpdf.quat import I1, I2, I3

G = FiniteGroup((6,))
D = dual_dictionary(G, sphere_grid=16)
print(f"dictionary on {G}: {len(D)} characters")

# three atoms on the dictionary grid
rng = np.random.default_rng(1)
picked = [D[i] for i in rng.choice(len(D), 3, replace=False)]
mu = AtomicMeasure(tuple(zip(picked, [0.2, 0.3, 0.5])))
print("measure:")
for chi, w in mu.atoms:
    print(f"  {w:.2f} on {chi}")

phi = synthesize(mu)
res = recover(phi, D)
print(f"recovered with residual {res.residual:.2e} after {res.iterations} NNLS iterations")
print("recovered measure:")
for chi, w in res.measure.atoms:
    print(f"  {w:.6f} on {chi}")
print("re-synthesis error:", synthesize(res.measure, G).sup_distance(phi))

# cos n on the window -10..10 needs the angle 1 in the dictionary
W = ZWindow(10)
D = dual_dictionary(W, axes=[I1, -I1, I2, -I2, I3, -I3], angles=[0.0, 0.5, 1.0, 2.0, math.pi])
res = recover(cosine(W), D)
print(f"cos n on {W}: residual {res.residual:.2e}")
for chi, w in res.measure.atoms:
    print(f"  weight {w:.4f} on theta={chi.index:.4f}, axis {chi.axis}")
