"""Property suites run by ``qpdf verify-all``.

Each suite draws its inputs from a generator seeded by ``(seed, suite
index)``, checks one theorem-level property on many cases and records the
number of failures and the worst observed error.  Reports carry no
timings, so a given seed always produces the same bytes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import rkhs
from .adjoint import adjoint_complex, min_eigenvalue, sampled_form_extremes
from .characters import (
    REAL,
    QCharacter,
    dual_dictionary,
    fibonacci_axes,
    fit_slice_cosine,
    is_character,
    product_to_sum_check,
    slice_of_range,
)
from .errors import NoFit
from .functions import const1, cosine, lemma_exp2
from .group import FiniteGroup, ZWindow
from .measures import (
    AtomicMeasure,
    measure_distance,
    nonuniqueness_witness,
    real_characters,
    recover,
    synthesize,
    unique_representation_exp2,
)
from .pdf import (
    QFunction,
    bound_check,
    conjugate_transform,
    gram_matrix,
    hermitian_defect,
    is_positive_definite,
    is_real_valued,
    project_pdf,
    slice_values,
)
from .quat import I2, axes_close, qabs
from .sampling import (
    random_character,
    random_group,
    random_hermitian_qmatrix,
    random_measure,
    random_quaternion,
    random_unit,
)

SIZES = ("small", "default")


@dataclass
class SuiteResult:
    suite: str
    claim: str
    cases: int
    failures: int
    worst: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {**asdict(self), "passed": self.passed}


class _Tally:
    def __init__(self):
        self.cases = 0
        self.failures = 0
        self.worst = 0.0

    def check(self, ok: bool, err: float = 0.0):
        self.cases += 1
        self.failures += not ok
        if math.isfinite(err):
            self.worst = max(self.worst, float(err))


@dataclass(frozen=True)
class Config:
    max_group: int
    n_random: int
    n_matrices: int
    n_samples: int
    sphere_grid: int

    @classmethod
    def for_sizes(cls, sizes: str) -> Config:
        if sizes == "small":
            return cls(max_group=8, n_random=20, n_matrices=40, n_samples=2000, sphere_grid=8)
        if sizes == "default":
            return cls(max_group=16, n_random=100, n_matrices=200, n_samples=10_000, sphere_grid=16)
        raise ValueError(f"sizes must be one of {SIZES}, got {sizes!r}")


def _random_pd(rng, cfg: Config) -> QFunction:
    G = random_group(rng, cfg.max_group)
    return synthesize(random_measure(G, rng), G)


def _finite(cfg: Config, candidates) -> list[FiniteGroup]:
    return [G for G in candidates if G.size <= cfg.max_group]


# --- suites ---------------------------------------------------------------


def suite_pd_oracle(rng, cfg: Config) -> _Tally:
    """The adjoint-eigenvalue verdict never flips against the sampled quadratic form."""
    tally = _Tally()
    for i in range(cfg.n_matrices):
        k = 2 + i % 7
        if i % 2 == 0:
            A = random_hermitian_qmatrix(k, rng)
        else:
            phi = _random_pd(rng, cfg)
            G = phi.group
            pts = [G.elements()[j] for j in rng.choice(G.size, size=min(k, G.size), replace=False)]
            A = gram_matrix(phi, pts)
        lam = min_eigenvalue(adjoint_complex(A))
        lo, _ = sampled_form_extremes(A, cfg.n_samples, rng)
        flip = (lam >= 1e-4 and lo <= -1e-4) or (lam <= -1e-4 and lo >= 1e-4)
        # the sampled minimum can never undercut the true minimum
        tally.check(not flip and lo >= lam - 1e-9, max(lam - lo, 0.0))
    return tally


def suite_hermitian_bound(rng, cfg: Config) -> _Tally:
    """Positive definite functions are hermitian and bounded by their value at 0."""
    tally = _Tally()
    for _ in range(cfg.n_random):
        phi = _random_pd(rng, cfg)
        d = hermitian_defect(phi)
        tally.check(d <= 1e-12 and bound_check(phi), d)
    return tally


def suite_conjugate_transform(rng, cfg: Config) -> _Tally:
    """``sum conj(p_j) phi(s + t_k - t_j) p_k`` is again positive definite."""
    tally = _Tally()
    for _ in range(cfg.n_random // 2):
        phi = _random_pd(rng, cfg)
        G = phi.group
        m = int(rng.integers(1, 4))
        t = [G.elements()[j] for j in rng.integers(G.size, size=m)]
        p = [random_quaternion(rng) for _ in range(m)]
        psi = conjugate_transform(phi, t, p)
        v = is_positive_definite(psi)
        tally.check(v.ok, max(-v.min_eig, 0.0))
    return tally


def suite_rkhs(rng, cfg: Config) -> _Tally:
    """Reproduction, unit operator norms, Cauchy-Schwarz and point evaluation."""
    tally = _Tally()
    funcs = []
    for G in _finite(cfg, [FiniteGroup((4,)), FiniteGroup((6,))]):
        funcs += [const1(G), lemma_exp2(G)]
        funcs += [random_character(G, rng).as_function() for _ in range(3)]
    funcs += [_random_pd(rng, cfg) for _ in range(cfg.n_random // 10)]
    for phi in funcs:
        ks = rkhs.build(phi)
        err = rkhs.reproduce_check(ks)
        tally.check(err <= 1e-12, err)
        for s in ks.basis:
            nrm = rkhs.operator_norm(ks, s)
            tally.check(abs(nrm - 1.0) <= 1e-9, abs(nrm - 1.0))
        G = ks.group
        for _ in range(5):
            f, g = rng.normal(size=(2, ks.dim, 4))
            ff, gg = rkhs.inner(ks, f, f).real, rkhs.inner(ks, g, g).real
            cs = abs(rkhs.inner(ks, f, g)) - math.sqrt(max(ff, 0.0) * max(gg, 0.0))
            tally.check(cs <= 1e-9, max(cs, 0.0))
            point = float(np.max(qabs(rkhs.evaluate(ks, f))))
            bound = math.sqrt(max(ff, 0.0) * phi.at_identity.real)
            tally.check(point <= bound + 1e-9, max(point - bound, 0.0))
            a, b = G.elements()[rng.integers(G.size)], G.elements()[rng.integers(G.size)]
            composed = ks.shift(a).compose(ks.shift(b), G)
            tally.check(np.array_equal(composed.permutation, ks.shift(G.add(a, b)).permutation))
    return tally


def suite_slice_equivalence(rng, cfg: Config) -> _Tally:
    """For slice-valued functions the quaternionic and complex verdicts coincide."""
    tally = _Tally()
    for i in range(cfg.n_random // 2):
        G = random_group(rng, cfg.max_group)
        I = random_unit(rng)
        if i % 2 == 0:
            chars = [QCharacter(G, tuple(int(rng.integers(n)) for n in G.orders), I) for _ in range(3)]
            phi = synthesize(AtomicMeasure(tuple(zip(chars, rng.uniform(0.1, 1.0, 3)))), G)
        else:
            z = rng.normal(size=G.size) + 1j * rng.normal(size=G.size)
            z = 0.5 * (z + np.conj(z[G.neg_index]))
            z[G.index(G.identity)] = abs(z[G.index(G.identity)].real) + 1.0
            vals = np.zeros((G.size, 4))
            vals[:, 0] = z.real
            vals[:, 1:] = z.imag[:, None] * I.vector
            phi = QFunction(G, vals)
        zc = slice_values(phi, I)
        complex_min = float(np.linalg.eigvalsh(zc[G.sub_table])[0])
        quat_min = is_positive_definite(phi).min_eig
        tally.check(abs(quat_min - complex_min) <= 1e-9 * max(1.0, abs(complex_min)), abs(quat_min - complex_min))
    return tally


def suite_projection(rng, cfg: Config) -> _Tally:
    """The slice projection ``(q - I q I)/2`` of a PD function is complex PD."""
    tally = _Tally()
    for _ in range(cfg.n_random):
        phi = _random_pd(rng, cfg)
        I = random_unit(rng)
        proj = project_pdf(phi, I)
        v = is_positive_definite(proj)
        where = slice_of_range(proj)
        in_slice = where == REAL or (where is not None and axes_close(where, I.canonical(), 1e-6))
        tally.check(v.ok and in_slice, max(-v.min_eig, 0.0))
    return tally


def suite_extreme_points(rng, cfg: Config) -> _Tally:
    """Dictionary characters are PD and multiplicative; proper mixtures are not."""
    tally = _Tally()
    groups = _finite(cfg, [FiniteGroup((3,)), FiniteGroup((4,)), FiniteGroup((6,)), FiniteGroup((2, 4))])
    for G in groups:
        D = dual_dictionary(G, cfg.sphere_grid)
        for chi in D:
            phi = chi.as_function()
            v = is_positive_definite(phi)
            tally.check(is_character(phi) and v.ok, max(-v.min_eig, 0.0))
        for _ in range(cfg.n_random // 10):
            i, j = rng.choice(len(D), size=2, replace=False)
            lam = rng.uniform(0.1, 0.9)
            mix = synthesize(AtomicMeasure(((D[i], lam), (D[j], 1.0 - lam))), G)
            tally.check(not is_character(mix))
    return tally


def suite_slice_confinement(rng, cfg: Config) -> _Tally:
    """A character's range sits in one slice, follows ``cos + t sin I`` and the product-to-sum rules."""
    tally = _Tally()
    groups = _finite(cfg, [FiniteGroup((8,)), FiniteGroup((2, 4)), FiniteGroup((3, 3))]) + [ZWindow(12)]
    for G in groups:
        for _ in range(cfg.n_random // 10):
            chi = random_character(G, rng)
            phi = chi.as_function()
            tally.check(slice_of_range(phi) is not None)
            r = product_to_sum_check(phi)
            err = max(r)
            tally.check(err <= 1e-11, err)
            a = G.elements()[rng.integers(G.size)] if isinstance(G, FiniteGroup) else (int(rng.integers(1, 4)),)
            try:
                fit = fit_slice_cosine(phi, a)
                tally.check(fit.residual <= 1e-9, fit.residual)
            except NoFit as exc:
                tally.check(False, exc.residual)
    return tally


def suite_integral_representation(rng, cfg: Config) -> _Tally:
    """Measures synthesise PD functions with ``phi(0)`` = mass; NNLS recovers a representing measure."""
    tally = _Tally()
    for _ in range(cfg.n_random):
        G = random_group(rng, cfg.max_group)
        mu = random_measure(G, rng, probability=False)
        phi = synthesize(mu, G)
        v = is_positive_definite(phi)
        mass_err = abs(phi.at_identity.real - mu.total_mass)
        tally.check(v.ok and mass_err <= 1e-12, max(mass_err, -v.min_eig))
    for G in _finite(cfg, [FiniteGroup((6,)), FiniteGroup((2, 4)), FiniteGroup((3, 3))]):
        D = dual_dictionary(G, cfg.sphere_grid)
        for _ in range(cfg.n_random // 10):
            phi = synthesize(random_measure(G, rng, dictionary=D), G)
            res = recover(phi, D)
            err = synthesize(res.measure, G).sup_distance(phi)
            tally.check(res.success and err <= 1e-8, max(res.residual, err))
    W = ZWindow(10)
    D = dual_dictionary(W, 8, angles=np.linspace(0.0, math.pi, 7).tolist() + [1.0])
    res = recover(cosine(W), D)
    tally.check(res.success, res.residual)
    return tally


def suite_exponent_lemma(rng, cfg: Config) -> _Tally:
    """Exponent > 2 admits PD functions outside the slice of i1; exponent <= 2 forces real values."""
    tally = _Tally()
    for m in range(3, 9):
        phi = lemma_exp2(FiniteGroup((m,)))
        v = is_positive_definite(phi)
        tally.check(v.ok and v.min_eig >= -1e-10 and slice_of_range(phi) == I2, max(-v.min_eig, 0.0))
    for G in _finite(cfg, [FiniteGroup((2,)), FiniteGroup((2, 2)), FiniteGroup((2, 2, 2))]):
        for _ in range(cfg.n_random // 10):
            phi = synthesize(random_measure(G, rng), G)
            tally.check(is_real_valued(phi), float(np.max(np.abs(phi.values[:, 1:]))))
    return tally


def suite_non_uniqueness(rng, cfg: Config) -> _Tally:
    """On exponent > 2, two disjoint probability measures give the same function."""
    tally = _Tally()
    groups = _finite(cfg, [FiniteGroup((3,)), FiniteGroup((4,)), FiniteGroup((5,))]) + [ZWindow(10)]
    for G in groups:
        for chi in dual_dictionary(G, 4, z_angles=9):
            if chi.real_valued:
                continue
            w = nonuniqueness_witness(chi)
            gap = synthesize(w.mu2, G).sup_distance(w.phi)
            dist = measure_distance(w.mu1, w.mu2)
            tally.check(gap <= 1e-12 and dist == 2.0, max(gap, abs(dist - 2.0)))
    W = ZWindow(20)
    target = cosine(W)
    for axis in fibonacci_axes(8):
        mu = AtomicMeasure(((QCharacter(W, 1.0, axis), 0.5), (QCharacter(W, -1.0, axis), 0.5)))
        err = synthesize(mu, W).sup_distance(target)
        tally.check(err <= 1e-12, err)
    return tally


def suite_unique_exp2(rng, cfg: Config) -> _Tally:
    """On exponent <= 2 the representing measure is unique."""
    tally = _Tally()
    for G in _finite(cfg, [FiniteGroup((2,)), FiniteGroup((2, 2)), FiniteGroup((2, 2, 2))]):
        chars = real_characters(G)
        enlarged = [QCharacter(G, chi.index, axis) for chi in chars for axis in fibonacci_axes(4)]
        for _ in range(cfg.n_random // 5):
            w = rng.uniform(0.0, 1.0, size=len(chars)) * (rng.random(len(chars)) < 0.7)
            mu = AtomicMeasure.from_weights(chars, w)
            phi = synthesize(mu, G)
            got = unique_representation_exp2(phi)
            err = max((abs(got.weight_of(c) - mu.weight_of(c)) for c in chars), default=0.0)
            tally.check(err <= 1e-10, err)
            res = recover(phi, enlarged)
            err2 = max((abs(res.measure.weight_of(c) - mu.weight_of(c)) for c in chars), default=0.0)
            tally.check(err2 <= 1e-8, err2)
    return tally


SUITES: list[tuple[str, str, Callable]] = [
    ("pd-oracle", "adjoint eigenvalues agree with the sampled quaternionic form", suite_pd_oracle),
    ("hermitian-bound", "PD functions are hermitian with |phi| <= phi(0)", suite_hermitian_bound),
    ("conjugate-transform", "conjugate transforms preserve positive definiteness", suite_conjugate_transform),
    ("rkhs", "reproducing identity, unit shift norms, Cauchy-Schwarz", suite_rkhs),
    ("slice-equivalence", "complex PD iff quaternionic PD on a slice", suite_slice_equivalence),
    ("slice-projection", "slice projections of PD functions are PD", suite_projection),
    ("extreme-points", "extreme points are exactly the characters", suite_extreme_points),
    ("slice-confinement", "a character lives in one slice as cos + t sin I", suite_slice_confinement),
    ("integral-representation", "PD functions are integrals of characters", suite_integral_representation),
    ("exponent-lemma", "real-valuedness holds iff the exponent is <= 2", suite_exponent_lemma),
    ("non-uniqueness", "representing measures are not unique for exponent > 2", suite_non_uniqueness),
    ("uniqueness-exp2", "representing measures are unique for exponent <= 2", suite_unique_exp2),
]


def verify_all(seed: int = 0, sizes: str = "default", only: list[str] | None = None) -> dict:
    cfg = Config.for_sizes(sizes)
    rows = []
    for i, (name, claim, fn) in enumerate(SUITES):
        if only and name not in only:
            continue
        rng = np.random.default_rng([seed, i])
        tally = fn(rng, cfg)
        rows.append(SuiteResult(name, claim, tally.cases, tally.failures, tally.worst).to_json())
    return {"seed": seed, "sizes": sizes, "suites": rows, "passed": all(r["passed"] for r in rows)}


def render_table(report: dict) -> str:
    rows = report["suites"]
    width = max(len(r["suite"]) for r in rows) if rows else 5
    lines = [f"{'suite':<{width}}  {'cases':>6}  {'fail':>4}  {'worst':>9}  result  claim"]
    for r in rows:
        lines.append(
            f"{r['suite']:<{width}}  {r['cases']:>6}  {r['failures']:>4}  {r['worst']:>9.2e}  "
            f"{'PASS' if r['passed'] else 'FAIL':<6}  {r['claim']}"
        )
    lines.append(f"overall: {'PASS' if report['passed'] else 'FAIL'} (seed {report['seed']}, sizes {report['sizes']})")
    return "\n".join(lines)
