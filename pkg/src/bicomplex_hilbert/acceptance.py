"""Property suites exercised by ``bicomplex-hilbert selftest`` and the test suite.

Each suite takes a numpy ``Generator`` and returns a list of :class:`Check`
records.  Tolerances are fixed; sample counts are keyword arguments whose
defaults are the full acceptance sizes.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .core import (
    E1,
    E2,
    I1,
    I2,
    J,
    ONE,
    Bicomplex,
    ConjKind,
    ModulusKind,
    NumberClass,
    classify,
    conjugate,
    euclid_norm,
    modulus_sq,
    project,
)
from .function_space import coeff_distance, commutator_XP, evaluate, f, norm
from .oscillator import OscillatorParams, apply_H, eigenfunction, eigenvalue, gram_matrix
from .tmodule import (
    DependentComponent,
    LinearFunctional,
    TVector,
    functional_apply,
    orthonormalize,
    parseval_residual,
    projected_product,
    riesz_representer,
    scalar_product,
    schwarz_gap,
    t_norm,
    vk_part,
)
from . import tmodule

EPS = np.finfo(float).eps


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    value: float
    limit: float
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.suite}: {self.name} (value={self.value:.3g}, limit={self.limit:.3g})"


def _check(suite, name, value, limit, *, upper=True, seconds=0.0) -> Check:
    value = float(value)
    ok = value <= limit if upper else value >= limit
    return Check(suite, name, bool(ok and not math.isnan(value)), value, limit, seconds)


# -- random inputs ----------------------------------------------------------

def random_bicomplex(rng, size=None, lo=1e-3, hi=1e3) -> Bicomplex:
    """Cartesian parts with log-uniform magnitudes in ``[lo, hi]`` and random signs."""
    shape = (4,) if size is None else (4, size)
    mag = 10.0 ** rng.uniform(math.log10(lo), math.log10(hi), shape)
    parts = mag * rng.choice([-1.0, 1.0], shape)
    return Bicomplex.from_cartesian(parts[0] + 1j * parts[1], parts[2] + 1j * parts[3])


def random_tvector(rng, n: int) -> TVector:
    z = rng.standard_normal((4, n))
    return TVector(z[0] + 1j * z[1], z[2] + 1j * z[3])


def random_positive_weights(rng, n: int) -> Bicomplex:
    return Bicomplex(rng.uniform(0.5, 2.0, n), rng.uniform(0.5, 2.0, n))


def _rel(a: Bicomplex, b: Bicomplex) -> float:
    diff = euclid_norm(a - b)
    ref = np.maximum(euclid_norm(b), np.finfo(float).tiny)
    return float(np.max(diff / ref))


# -- suites -----------------------------------------------------------------

def suite_algebra(rng, n: int = 100_000) -> list[Check]:
    name = "1 algebra"
    tol = 1e-12
    start = time.perf_counter()
    s, t = random_bicomplex(rng, n), random_bicomplex(rng, n)
    checks = []

    worst = 0.0
    for kind in ConjKind:
        worst = max(
            worst,
            _rel(conjugate(s + t, kind), conjugate(s, kind) + conjugate(t, kind)),
            _rel(conjugate(conjugate(s, kind), kind), s),
            _rel(conjugate(s * t, kind), conjugate(s, kind) * conjugate(t, kind)),
        )
    checks.append(_check(name, "conjugation laws (rel)", worst, tol))

    worst = 0.0
    for k in (1, 2):
        pk = lambda w: np.asarray(project(w, k))  # noqa: E731
        denom = np.maximum(np.abs(pk(s)) + np.abs(pk(t)), np.finfo(float).tiny)
        worst = max(
            worst,
            float(np.max(np.abs(pk(s + t) - (pk(s) + pk(t))) / denom)),
            float(np.max(np.abs(pk(s * t) - pk(s) * pk(t)) / np.maximum(np.abs(pk(s) * pk(t)), 1e-300))),
            float(np.max(np.abs(pk(Bicomplex.from_complex(pk(s))) - pk(s)) / np.maximum(np.abs(pk(s)), 1e-300))),
        )
    worst = max(worst, _rel(E1 * project(s, 1) + E2 * project(s, 2), s))
    checks.append(_check(name, "projector laws (rel)", worst, tol))

    table = max(
        float(euclid_norm(I1 * I2 - J)),
        float(euclid_norm(I1 * J + I2)),
        float(euclid_norm(I2 * J + I1)),
        float(euclid_norm(J * J - ONE)),
        float(euclid_norm(I1 * I1 + ONE)),
        float(euclid_norm(I2 * I2 + ONE)),
    )
    checks.append(_check(name, "unit table", table, tol))

    worst = max(_rel(modulus_sq(s * t, k), modulus_sq(s, k) * modulus_sq(t, k)) for k in ModulusKind)
    checks.append(_check(name, "modulus multiplicativity (rel)", worst, tol))

    ns, nt = euclid_norm(s), euclid_norm(t)
    tri = float(np.max((euclid_norm(s + t) - (ns + nt)) / (ns + nt)))
    prod = float(np.max((euclid_norm(s * t) - math.sqrt(2) * ns * nt) / (ns * nt)))
    attained = abs(float(euclid_norm(E1 * E1)) - math.sqrt(2) * float(euclid_norm(E1)) ** 2)
    checks.append(_check(name, "triangle inequality excess (rel)", tri, tol))
    checks.append(_check(name, "product bound excess (rel)", prod, tol))
    checks.append(_check(name, "product bound attained at e1", attained, tol))

    z1, z2 = s.cartesian
    back = Bicomplex.from_cartesian(z1, z2)
    scale_ = np.maximum(np.abs(z1), np.abs(z2))
    rt = max(float(np.max(np.abs(back.z1 - z1) / scale_)), float(np.max(np.abs(back.z2 - z2) / scale_)))
    checks.append(_check(name, "cartesian/idempotent round trip (eps units)", rt / EPS, 4.0))
    cart = np.sqrt(np.abs(z1) ** 2 + np.abs(z2) ** 2)
    n7 = float(np.max(np.abs(euclid_norm(s) - cart) / cart))
    checks.append(_check(name, "Euclidean norm, both forms (eps units)", n7 / EPS, 4.0))

    elapsed = time.perf_counter() - start
    checks.append(_check(name, "runtime seconds", elapsed, 5.0, seconds=elapsed))
    return checks


def suite_scalar_product(rng, n: int = 10_000, max_order: int = 32) -> list[Check]:
    name = "2 scalar product"
    tol = 1e-12
    start = time.perf_counter()
    recomb = axioms = 0.0
    positivity_failures = 0
    gap_min = math.inf
    alphas = random_bicomplex(rng, n, lo=0.1, hi=10.0)
    scalars = random_bicomplex(rng, n, lo=0.1, hi=10.0)
    for i in range(n):
        order = int(rng.integers(1, max_order + 1))
        psi, phi, chi = (random_tvector(rng, order) for _ in range(3))
        alpha = alphas[i]
        tp, tf, tc = t_norm(psi), t_norm(phi), t_norm(chi)
        sp = scalar_product(psi, phi)

        rebuilt = E1 * projected_product(vk_part(psi, 1), vk_part(phi, 1), 1) + E2 * projected_product(
            vk_part(psi, 2), vk_part(phi, 2), 2
        )
        recomb = max(recomb, float(euclid_norm(sp - rebuilt)) / (tp * tf) / EPS)

        add = scalar_product(psi, phi + chi) - sp - scalar_product(psi, chi)
        hom = scalar_product(psi, alpha * phi) - alpha * sp
        herm = sp - conjugate(scalar_product(phi, psi), ConjKind.DAG3)
        axioms = max(
            axioms,
            float(euclid_norm(add)) / (tp * (tf + tc)),
            float(euclid_norm(hom)) / (float(euclid_norm(alpha)) * tp * tf),
            float(euclid_norm(herm)) / (tp * tf),
        )

        self_sp = scalar_product(psi, psi)
        if classify(self_sp) is not NumberClass.HYPERBOLIC_POSITIVE or not (
            self_sp.z1_hat.real > 0 and self_sp.z2_hat.real > 0
        ):
            positivity_failures += 1

        w = scalars[i]
        parallel = w * psi
        near = parallel + 1e-8 * phi
        # one-channel kets reach equality in the Schwarz bound
        edge = vk_part(psi, 1)
        edge_parallel = w * edge
        gap_min = min(
            gap_min,
            schwarz_gap(psi, phi) / (tp * tf),
            schwarz_gap(psi, parallel) / (tp * t_norm(parallel)),
            schwarz_gap(psi, near) / (tp * t_norm(near)),
            schwarz_gap(edge, edge_parallel) / (t_norm(edge) * t_norm(edge_parallel)),
        )
    zero = TVector.zeros(4)
    if float(euclid_norm(scalar_product(zero, zero))) != 0.0:
        positivity_failures += 1
    elapsed = time.perf_counter() - start
    return [
        _check(name, "recombination e1(.,.)_1 + e2(.,.)_2 (eps units)", recomb, 4.0),
        _check(name, "linearity and dag3-hermiticity (rel)", axioms, tol),
        _check(name, "D+ positivity / nondegeneracy failures", positivity_failures, 0),
        _check(name, "min Schwarz gap", gap_min, -1e-12, upper=False),
        _check(name, "runtime seconds", elapsed, 5.0, seconds=elapsed),
    ]


def _resolve_riesz(f: LinearFunctional, probes: list[TVector], weights) -> TVector:
    # Independent route: solve the linear system (psi, probe_i) = f(probe_i) per channel.
    channels = []
    for k in (1, 2):
        rows = np.array([p.hat1 if k == 1 else p.hat2 for p in probes])
        if weights is not None:
            rows = rows * (weights.z1_hat.real if k == 1 else weights.z2_hat.real)
        rhs = np.array([complex(project(functional_apply(f, p), k)) for p in probes])
        channels.append(np.conj(np.linalg.solve(rows, rhs)))
    return TVector(*channels)


def suite_riesz(rng, n: int = 1000, probes: int = 100, max_order: int = 32) -> list[Check]:
    name = "3 Riesz"
    start = time.perf_counter()
    recon = unique = 0.0
    for i in range(n):
        order = int(rng.integers(1, max_order + 1))
        z = rng.standard_normal((4, order))
        fn = LinearFunctional(z[0] + 1j * z[1], z[2] + 1j * z[3])
        weights = random_positive_weights(rng, order) if i % 2 else None
        psi = riesz_representer(fn, weights)
        for _ in range(probes):
            phi = random_tvector(rng, order)
            diff = functional_apply(fn, phi) - scalar_product(psi, phi, weights)
            recon = max(recon, float(euclid_norm(diff)))
        z = rng.standard_normal((2, order, order))
        q = np.linalg.qr(z[0] + 1j * z[1])[0]
        basis = [TVector(row, row) for row in q]
        other = _resolve_riesz(fn, basis, weights)
        unique = max(unique, t_norm(psi - other))
    elapsed = time.perf_counter() - start
    return [
        _check(name, "max reconstruction error", recon, 1e-11),
        _check(name, "representer uniqueness (T-norm)", unique, 1e-11, seconds=elapsed),
    ]


def suite_orthonormalization(rng, n: int = 1000, max_size: int = 12) -> list[Check]:
    name = "4 orthonormalization"
    start = time.perf_counter()
    worst = 0.0
    for _ in range(n):
        size = int(rng.integers(1, max_size + 1))
        order = int(rng.integers(size, size + 5))
        kets = [random_tvector(rng, order) for _ in range(size)]
        out = orthonormalize(kets)
        g = tmodule.gram_matrix(out)
        worst = max(worst, float(np.max(euclid_norm(g - Bicomplex(np.eye(size), np.eye(size))))))
    try:
        orthonormalize([TVector.from_coeffs([E1, 0, 0])])
        dependent = False
    except DependentComponent as exc:
        dependent = (exc.component, exc.index) == (2, 0)
    elapsed = time.perf_counter() - start
    return [
        _check(name, "max Gram deviation from identity", worst, 1e-10, seconds=elapsed),
        _check(name, "(e1, 0, ...) raises DependentComponent(2, 0)", 0.0 if dependent else 1.0, 0.0),
    ]


def suite_parseval(rng, n: int = 1000, length: int = 1000) -> list[Check]:
    name = "5 Parseval"
    start = time.perf_counter()
    worst = 0.0
    for _ in range(n):
        parts = rng.uniform(-5.0, 5.0, (4, length))
        psi = TVector.from_bicomplex(Bicomplex.from_cartesian(parts[0] + 1j * parts[1], parts[2] + 1j * parts[3]))
        worst = max(worst, parseval_residual(psi))
    elapsed = time.perf_counter() - start
    return [_check(name, "max residual", worst, 1e-10, seconds=elapsed)]


def _quad_channel(u, v, k: int) -> complex:
    def integrand(x, part):
        a = evaluate(u, x)
        b = evaluate(v, x)
        val = np.conj(project(a, k)) * project(b, k)
        return val.real if part == 0 else val.imag

    opts = dict(epsabs=1e-13, epsrel=1e-12, limit=200)
    re = integrate.quad(integrand, -np.inf, np.inf, args=(0,), **opts)[0]
    im = integrate.quad(integrand, -np.inf, np.inf, args=(1,), **opts)[0]
    return complex(re, im)


def suite_oscillator(rng=None) -> list[Check]:
    name = "6 oscillator"
    start = time.perf_counter()
    p = OscillatorParams.from_components(1.0, 1.0, 1.0, 1.0, 2.0)
    g = gram_matrix(8, p)
    gram_dev = float(np.max(euclid_norm(g - Bicomplex(np.eye(9), np.eye(9)))))

    quad_dev = 0.0
    for i, j in ((0, 0), (2, 4), (5, 5)):
        phi_i, phi_j = eigenfunction(i, p), eigenfunction(j, p)
        for k in (1, 2):
            quad_dev = max(quad_dev, abs(_quad_channel(phi_i, phi_j, k) - complex(project(g[i, j], k))))

    resid = 0.0
    for l in range(11):
        phi = eigenfunction(l, p)
        resid = max(resid, norm(apply_H(phi, p) - eigenvalue(l, p) * phi) / norm(phi))

    comm = 0.0
    for params in (OscillatorParams(), p):
        hx = I1 * (params.hbar * params.xi)
        for nn in range(7):
            for alpha in (0.5, 1.0, 2.0):
                u = f(nn, alpha)
                comm = max(comm, coeff_distance(commutator_XP(u, params.hbar, params.xi), hx * u))
    elapsed = time.perf_counter() - start
    return [
        _check(name, "Gram l<=8 deviation from identity", gram_dev, 1e-10),
        _check(name, "Gram vs adaptive quadrature (3 entries)", quad_dev, 1e-8),
        _check(name, "eigen-residual l<=10 (T-norm)", resid, 1e-9),
        _check(name, "commutator residual on f_{n,alpha}", comm, 1e-12),
        _check(name, "runtime seconds", elapsed, 30.0, seconds=elapsed),
    ]


SUITES = {
    "algebra": suite_algebra,
    "scalar_product": suite_scalar_product,
    "riesz": suite_riesz,
    "orthonormalization": suite_orthonormalization,
    "parseval": suite_parseval,
    "oscillator": suite_oscillator,
}


def run_all(seed: int = 0) -> list[Check]:
    checks = []
    for i, suite in enumerate(SUITES.values()):
        checks.extend(suite(np.random.default_rng([seed, i])))
    return checks
