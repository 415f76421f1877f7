"""Exact calculus on finite sums of ``c * x**n * exp(-alpha*x**2)``.

Coefficients are bicomplex, decay rates are positive reals.  A bicomplex
function ``u = e1*u1 + e2*u2`` whose channels use different widths is simply
a :class:`GaussPoly` whose terms carry coefficients on the null cone.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _backend
from .core import (
    Bicomplex,
    I1,
    ONE,
    ZERO,
    euclid_norm,
    format_bicomplex,
    parse_bicomplex,
)

__all__ = [
    "GaussTerm",
    "GaussPoly",
    "InvalidXi",
    "DROP_TOL",
    "f",
    "gp_ops",
    "evaluate",
    "gaussian_moment",
    "inner_product",
    "norm",
    "apply_X",
    "apply_P",
    "commutator_XP",
    "coeff_distance",
    "check_xi",
]

DROP_TOL = 1e-14


class InvalidXi(ValueError):
    """xi must be hyperbolic with both idempotent components > 0."""


def check_xi(xi: Bicomplex) -> Bicomplex:
    a, b = complex(xi.z1_hat), complex(xi.z2_hat)
    if a.imag != 0 or b.imag != 0 or not (a.real > 0 and b.real > 0):
        raise InvalidXi(f"xi = {xi} is not a strictly positive hyperbolic number")
    return xi


@dataclass(frozen=True)
class GaussTerm:
    n: int
    alpha: float
    coeff: Bicomplex = ONE

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {self.n}")
        if not self.alpha > 0:
            raise ValueError(f"decay rate must be positive, got {self.alpha}")
        coeff = self.coeff if isinstance(self.coeff, Bicomplex) else Bicomplex.from_complex(self.coeff)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "coeff", coeff)

    @property
    def key(self) -> tuple[float, int]:
        return (self.alpha, self.n)


def _canonical(terms: Iterable[GaussTerm]) -> tuple[GaussTerm, ...]:
    merged: dict[tuple[float, int], list[complex]] = {}
    for t in terms:
        acc = merged.setdefault(t.key, [0j, 0j])
        acc[0] += t.coeff.z1_hat
        acc[1] += t.coeff.z2_hat
    out = []
    for (alpha, n), (a, b) in sorted(merged.items()):
        c = Bicomplex(a, b)
        if euclid_norm(c) > DROP_TOL:
            out.append(GaussTerm(n, alpha, c))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class GaussPoly:
    """Canonical sum of Gaussian terms: sorted by ``(alpha, n)``, merged, nonzero."""

    terms: tuple[GaussTerm, ...] = ()

    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical(self.terms))

    @classmethod
    def zero(cls) -> "GaussPoly":
        return cls(())

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other):
        if not isinstance(other, GaussPoly):
            return NotImplemented
        return GaussPoly(self.terms + other.terms)

    def __sub__(self, other):
        if not isinstance(other, GaussPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return GaussPoly(tuple(GaussTerm(t.n, t.alpha, -t.coeff) for t in self.terms))

    def __mul__(self, w):
        if isinstance(w, GaussPoly):
            return NotImplemented
        w = w if isinstance(w, Bicomplex) else Bicomplex.from_complex(w)
        return GaussPoly(tuple(GaussTerm(t.n, t.alpha, w * t.coeff) for t in self.terms))

    __rmul__ = __mul__

    def __call__(self, x):
        return evaluate(self, x)

    def component(self, k: int) -> "GaussPoly":
        """The channel ``u_k`` as a function with C(i1) coefficients."""
        if k not in (1, 2):
            raise ValueError("k must be 1 or 2")
        pick = (lambda c: c.z1_hat) if k == 1 else (lambda c: c.z2_hat)
        return GaussPoly(tuple(GaussTerm(t.n, t.alpha, Bicomplex.from_complex(pick(t.coeff))) for t in self.terms))

    def channel_arrays(self, k: int):
        """``(n, alpha, P_k(coeff))`` arrays, in canonical order."""
        n = np.array([t.n for t in self.terms], dtype=np.int_)
        a = np.array([t.alpha for t in self.terms], dtype=np.float64)
        c = np.array([t.coeff.z1_hat if k == 1 else t.coeff.z2_hat for t in self.terms], dtype=np.complex128)
        return n, a, c

    def to_records(self) -> list[dict]:
        return [
            {"n": t.n, "alpha": t.alpha, "coeff": format_bicomplex(t.coeff, "idempotent")}
            for t in self.terms
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_json(cls, text: str) -> "GaussPoly":
        records = json.loads(text)
        return cls(tuple(
            GaussTerm(int(r["n"]), float(r["alpha"]), parse_bicomplex(str(r["coeff"])))
            for r in records
        ))

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{format_bicomplex(t.coeff, 'idempotent')} * x^{t.n} * exp(-{t.alpha!r} x^2)"
            for t in self.terms
        )

    def __str__(self):
        return self.pretty()


def f(n: int, alpha: float, coeff=ONE) -> GaussPoly:
    """The single term ``coeff * x**n * exp(-alpha*x**2)``."""
    return GaussPoly((GaussTerm(n, alpha, coeff),))


def gp_ops(a: GaussPoly, b: GaussPoly | None, w=None, op: str = "add") -> GaussPoly:
    if op == "add":
        return a + b
    if op == "scale":
        return a * w
    raise ValueError(f"unknown operation {op!r}")


def evaluate(u: GaussPoly, x) -> Bicomplex:
    """Pointwise value; ``x`` may be a scalar or an array."""
    x = np.asarray(x, dtype=np.float64)
    s1 = np.zeros(x.shape, dtype=np.complex128)
    s2 = np.zeros(x.shape, dtype=np.complex128)
    for t in u.terms:
        g = x**t.n * np.exp(-t.alpha * x * x)
        s1 = s1 + t.coeff.z1_hat * g
        s2 = s2 + t.coeff.z2_hat * g
    if x.ndim == 0:
        return Bicomplex(complex(s1), complex(s2))
    return Bicomplex(s1, s2)


def gaussian_moment(n: int, beta: float) -> float:
    """Integral of ``x**n exp(-beta x**2)`` over the real line."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    if not beta > 0:
        raise ValueError("beta must be positive")
    return _backend.kernels.gaussian_moment(int(n), float(beta))


def inner_product(u: GaussPoly, v: GaussPoly) -> Bicomplex:
    """Integral of ``u^dag3(x) v(x)``, computed in closed form per channel."""
    k = _backend.kernels
    parts = []
    for ch in (1, 2):
        nu, au, cu = u.channel_arrays(ch)
        nv, av, cv = v.channel_arrays(ch)
        parts.append(k.gauss_channel(nu, au, cu, nv, av, cv))
    return Bicomplex(*parts)


def norm(u: GaussPoly) -> float:
    """T-norm induced by :func:`inner_product`."""
    p = inner_product(u, u)
    return math.sqrt(max(0.5 * (p.z1_hat.real + p.z2_hat.real), 0.0))


def apply_X(u: GaussPoly) -> GaussPoly:
    return GaussPoly(tuple(GaussTerm(t.n + 1, t.alpha, t.coeff) for t in u.terms))


def _derivative(u: GaussPoly) -> GaussPoly:
    # d/dx x^n e^{-a x^2} = n x^{n-1} e^{-a x^2} - 2a x^{n+1} e^{-a x^2}
    out = []
    for t in u.terms:
        if t.n > 0:
            out.append(GaussTerm(t.n - 1, t.alpha, t.n * t.coeff))
        out.append(GaussTerm(t.n + 1, t.alpha, (-2.0 * t.alpha) * t.coeff))
    return GaussPoly(tuple(out))


def apply_P(u: GaussPoly, hbar: float, xi: Bicomplex) -> GaussPoly:
    """``-i1 hbar xi du/dx``."""
    check_xi(xi)
    return (-I1 * (hbar * xi)) * _derivative(u)


def commutator_XP(u: GaussPoly, hbar: float, xi: Bicomplex) -> GaussPoly:
    """``X(P u) - P(X u)``, which should equal ``i1 hbar xi u``."""
    return apply_X(apply_P(u, hbar, xi)) - apply_P(apply_X(u), hbar, xi)


def coeff_distance(u: GaussPoly, v: GaussPoly) -> float:
    """Largest ``euclid_norm`` of a coefficient difference, matched on ``(alpha, n)``.

    No small-term dropping is applied, so rounding-level residuals survive.
    """
    cu = {t.key: t.coeff for t in u.terms}
    cv = {t.key: t.coeff for t in v.terms}
    worst = 0.0
    for key in cu.keys() | cv.keys():
        d = cu.get(key, ZERO) - cv.get(key, ZERO)
        worst = max(worst, float(euclid_norm(d)))
    return worst
