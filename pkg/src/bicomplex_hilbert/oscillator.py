"""The bicomplex quantum harmonic oscillator on Gaussian polynomials.

``H = P**2/(2m) + m omega**2 X**2 / 2`` with ``P = -i1 hbar xi d/dx`` and
``xi = xi1*e1 + xi2*e2`` strictly positive.  In channel ``k`` this is the
ordinary oscillator with ``hbar`` replaced by ``hbar*xi_k``, so channel
eigenfunctions are the usual Hermite functions with width
``alpha_k = m omega / (2 hbar xi_k)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Bicomplex, E1, E2
from .function_space import (
    GaussPoly,
    GaussTerm,
    InvalidXi,
    apply_P,
    apply_X,
    check_xi,
    inner_product,
)

__all__ = [
    "OscillatorParams",
    "IndexTooLarge",
    "HERMITE_MAX",
    "GRAM_MAX",
    "hermite_coeffs",
    "eigenfunction",
    "apply_H",
    "eigenvalue",
    "gram_matrix",
    "expand",
]

HERMITE_MAX = 40
GRAM_MAX = 20


class IndexTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OscillatorParams:
    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    xi: Bicomplex = Bicomplex(1 + 0j, 1 + 0j)

    def __post_init__(self):
        for name in ("m", "omega", "hbar"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a positive real, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not isinstance(self.xi, Bicomplex):
            raise InvalidXi("xi must be a Bicomplex")
        check_xi(self.xi)

    @classmethod
    def from_components(cls, m=1.0, omega=1.0, hbar=1.0, xi1=1.0, xi2=1.0) -> "OscillatorParams":
        return cls(m, omega, hbar, Bicomplex.hyperbolic(xi1, xi2))

    @property
    def xi_components(self) -> tuple[float, float]:
        return self.xi.z1_hat.real, self.xi.z2_hat.real

    def alpha(self, k: int) -> float:
        """Gaussian width ``m omega / (2 hbar xi_k)`` of channel ``k``."""
        return self.m * self.omega / (2.0 * self.hbar * self.xi_components[k - 1])


def _check_index(l: int, limit: int) -> int:
    if int(l) != l or l < 0:
        raise ValueError(f"index must be a nonnegative integer, got {l!r}")
    if l > limit:
        raise IndexTooLarge(f"index {l} exceeds the supported maximum {limit}")
    return int(l)


def hermite_coeffs(l: int) -> list[int]:
    """Physicists' Hermite polynomial ``H_l``, lowest power first."""
    l = _check_index(l, HERMITE_MAX)
    prev, cur = [1], [0, 2]
    if l == 0:
        return prev
    for k in range(1, l):
        # H_{k+1} = 2 t H_k - 2 k H_{k-1}
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, nxt
    return cur


def _channel_terms(l: int, p: OscillatorParams, k: int, weight: Bicomplex) -> list[GaussTerm]:
    xi_k = p.xi_components[k - 1]
    scale = p.m * p.omega / (p.hbar * xi_k)
    alpha = p.alpha(k)
    s = math.sqrt(scale)
    norm = (scale / math.pi) ** 0.25 / math.sqrt(float(2**l * math.factorial(l)))
    terms = []
    for i, h in enumerate(hermite_coeffs(l)):
        if h:
            terms.append(GaussTerm(i, alpha, (norm * h * s**i) * weight))
    return terms


def eigenfunction(l: int, p: OscillatorParams) -> GaussPoly:
    """``phi_l = e1 phi_{l,1} + e2 phi_{l,2}``, normalized Hermite functions per channel."""
    l = _check_index(l, HERMITE_MAX)
    return GaussPoly(tuple(_channel_terms(l, p, 1, E1) + _channel_terms(l, p, 2, E2)))


def apply_H(u: GaussPoly, p: OscillatorParams) -> GaussPoly:
    kinetic = apply_P(apply_P(u, p.hbar, p.xi), p.hbar, p.xi) * (1.0 / (2.0 * p.m))
    potential = apply_X(apply_X(u)) * (0.5 * p.m * p.omega**2)
    return kinetic + potential


def eigenvalue(l: int, p: OscillatorParams) -> Bicomplex:
    """``(l + 1/2) hbar omega xi``."""
    l = _check_index(l, HERMITE_MAX)
    return ((l + 0.5) * p.hbar * p.omega) * p.xi


def gram_matrix(lmax: int, p: OscillatorParams) -> Bicomplex:
    """Inner products of ``phi_0 .. phi_lmax`` as a 2-D :class:`Bicomplex`."""
    lmax = _check_index(lmax, GRAM_MAX)
    phis = [eigenfunction(l, p) for l in range(lmax + 1)]
    size = lmax + 1
    g1 = np.empty((size, size), dtype=np.complex128)
    g2 = np.empty((size, size), dtype=np.complex128)
    for i in range(size):
        for j in range(size):
            ip = inner_product(phis[i], phis[j])
            g1[i, j] = ip.z1_hat
            g2[i, j] = ip.z2_hat
    return Bicomplex(g1, g2)


def expand(u: GaussPoly, lmax: int, p: OscillatorParams) -> list[Bicomplex]:
    """Coefficients ``w_l = (phi_l, u)`` for ``l <= lmax``."""
    lmax = _check_index(lmax, HERMITE_MAX)
    return [inner_product(eigenfunction(l, p), u) for l in range(lmax + 1)]
