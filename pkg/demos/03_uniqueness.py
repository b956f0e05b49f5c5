"""When is the representing measure unique?

If some element has order > 2, rotating the axis of a character changes
the measure but not the function. If every element has order <= 2 all
characters are real and the measure is unique.

Run with ``python demos/03_uniqueness.py``.
"""

from qpdf import (
    AtomicMeasure,
    FiniteGroup,
    QCharacter,
    ZWindow,
    measure_distance,
    nonuniqueness_witness,
    synthesize,
    unique_representation_exp2,
)
from qpdf.characters import fibonacci_axes
from qpdf.functions import cosine
from qpdf.quat import I1

Z3 = FiniteGroup((3,))
w = nonuniqueness_witness(QCharacter(Z3, (1,), I1))
for name, mu in (("mu1", w.mu1), ("mu2", w.mu2)):
    print(name + ":", ", ".join(f"{wt:.2f} on {chi}" for chi, wt in mu.atoms))
print("both give phi =", [round(float(x), 12) for x in w.phi.values[:, 0]])
print("sup difference:", synthesize(w.mu2, Z3).sup_distance(w.phi))
print("total variation distance:", measure_distance(w.mu1, w.mu2))

# cos n has one representing measure per imaginary unit
W = ZWindow(20)
for axis in fibonacci_axes(4):
    mu = AtomicMeasure(((QCharacter(W, 1.0, axis), 0.5), (QCharacter(W, -1.0, axis), 0.5)))
    print(f"axis {axis}: error {synthesize(mu, W).sup_distance(cosine(W)):.1e}")

# exponent 2: weights come straight out of the Fourier transform
K = FiniteGroup((2, 2))
chars = [QCharacter(K, k) for k in K.elements()]
mu = AtomicMeasure.from_weights(chars, [0.1, 0.2, 0.3, 0.4])
got = unique_representation_exp2(synthesize(mu, K))
print("on Z2xZ2 the unique measure is", ", ".join(f"{wt:.2f} on k={chi.index}" for chi, wt in got.atoms))
