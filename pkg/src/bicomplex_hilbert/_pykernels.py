"""Pure-Python/numpy kernels.

Same interface as the compiled ``_ckernels`` module.  All reductions go
through :func:`math.fsum`, so results are correctly rounded and do not
depend on summation order.  Every kernel works on one idempotent channel
(complex arrays over i1) at a time.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

NAME = "python"


def _csum(values: np.ndarray) -> complex:
    # interleaved (re, im) pairs; a single tolist is cheaper than two
    flat = np.ascontiguousarray(values, dtype=np.complex128).view(np.float64).tolist()
    return complex(math.fsum(flat[0::2]), math.fsum(flat[1::2]))


def gaussian_moment(n: int, beta: float) -> float:
    """Integral of ``x**n * exp(-beta*x**2)`` over the real line."""
    if n % 2:
        return 0.0
    m = math.sqrt(math.pi / beta)
    for k in range(2, n + 1, 2):
        m *= (k - 1) / (2.0 * beta)
    return m


def sp_channel(a, b, w=None) -> complex:
    """``sum_l w_l * conj(a_l) * b_l``."""
    prod = np.conj(a) * b
    if w is not None:
        prod = w * prod
    return _csum(prod)


def sp_pair(a1, b1, a2, b2) -> tuple[complex, complex]:
    """Unweighted products of both idempotent channels."""
    n = 2 * len(a1)
    flat = np.concatenate((np.conj(a1) * b1, np.conj(a2) * b2)).view(np.float64).tolist()
    fsum = math.fsum
    return (complex(fsum(flat[0:n:2]), fsum(flat[1:n:2])),
            complex(fsum(flat[n::2]), fsum(flat[n + 1::2])))


def gram_channel(rows, w=None) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.complex128)
    k = rows.shape[0]
    out = np.empty((k, k), dtype=np.complex128)
    for i in range(k):
        left = np.conj(rows[i]) if w is None else w * np.conj(rows[i])
        for j in range(k):
            out[i, j] = _csum(left * rows[j])
    return out


def mgs_channel(rows, w=None, rel_tol: float = 1e-10):
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Returns ``(q, failed)``; ``failed`` is the index of the first row whose
    residual norm falls below ``rel_tol`` times its input norm, or -1.
    """
    rows = np.asarray(rows, dtype=np.complex128)
    q = np.zeros_like(rows)
    for i in range(rows.shape[0]):
        v = rows[i].copy()
        in_norm = math.sqrt(max(sp_channel(v, v, w).real, 0.0))
        for _ in range(2):
            for j in range(i):
                r = sp_channel(q[j], v, w)
                v = v - r * q[j]
        nrm = math.sqrt(max(sp_channel(v, v, w).real, 0.0))
        if nrm <= rel_tol * in_norm:
            return q, i
        q[i] = v / nrm
    return q, -1


def _moment_ratio(n: int, beta: Fraction) -> Fraction:
    # moment / sqrt(pi/beta) = (n-1)!! / (2 beta)^(n/2)
    r = Fraction(1)
    for k in range(2, n + 1, 2):
        r *= Fraction(k - 1) / (2 * beta)
    return r


def gauss_channel(nu, au, cu, nv, av, cv) -> complex:
    """``sum_ij conj(cu_i) cv_j * moment(nu_i + nv_j, au_i + av_j)``.

    Evaluated exactly in rationals per decay rate, then scaled by the common
    ``sqrt(pi/beta)``; high-order Hermite expansions cancel too strongly for
    a plain floating-point sum.
    """
    groups: dict[float, list] = {}
    for i in range(len(nu)):
        ci = complex(cu[i]).conjugate()
        if ci == 0:
            continue
        xr, xi = Fraction(ci.real), Fraction(ci.imag)
        for j in range(len(nv)):
            cj = complex(cv[j])
            if cj == 0:
                continue
            n = int(nu[i]) + int(nv[j])
            if n % 2:
                continue
            beta = float(au[i]) + float(av[j])
            yr, yi = Fraction(cj.real), Fraction(cj.imag)
            r = _moment_ratio(n, Fraction(beta))
            acc = groups.setdefault(beta, [Fraction(0), Fraction(0)])
            acc[0] += (xr * yr - xi * yi) * r
            acc[1] += (xr * yi + xi * yr) * r
    re = [float(a) * math.sqrt(math.pi / b) for b, (a, _) in groups.items()]
    im = [float(c) * math.sqrt(math.pi / b) for b, (_, c) in groups.items()]
    return complex(math.fsum(re), math.fsum(im))
