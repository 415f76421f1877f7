"""Finite truncations of bicomplex Hilbert modules.

A :class:`TVector` is a ket ``sum_l w_l |m_l>`` over an implicit orthonormal
basis, truncated to ``N`` coefficients.  Coefficients are kept as two
complex arrays, the idempotent channels ``P_1(w_l)`` and ``P_2(w_l)``; the
module then splits as ``M = V_1 (+) V_2`` with ``V_k = e_k M`` and every
bicomplex-valued quantity is assembled from one complex computation per
channel.

The default scalar product is ``(psi, phi) = sum_l w_l^dag3 v_l``.  Most
functions accept ``weights``, a diagonal of hyperbolic numbers, giving
``sum_l d_l w_l^dag3 v_l``.  Norms, orthonormalization and Riesz
representers need the weights strictly inside the positive cone.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _backend
from .core import (
    Bicomplex,
    E1,
    E2,
    euclid_norm,
    format_bicomplex,
    parse_bicomplex,
)

__all__ = [
    "TVector",
    "LinearFunctional",
    "DimensionMismatch",
    "DependentComponent",
    "PreconditionViolation",
    "add",
    "scale",
    "module_ops",
    "pad",
    "vk_part",
    "v_projection",
    "scalar_product",
    "projected_product",
    "t_norm",
    "schwarz_gap",
    "gram_matrix",
    "orthonormalize",
    "riesz_representer",
    "functional_apply",
    "parseval_residual",
    "is_c1_closed_sample",
    "tvector_to_json",
    "tvector_from_json",
    "write_gram_csv",
]


class DimensionMismatch(ValueError):
    pass


class PreconditionViolation(ValueError):
    pass


class DependentComponent(ValueError):
    """The ``index``-th ket's channel-``component`` projection is dependent.

    Normalizing such a ket would need a scalar on the null cone.
    """

    def __init__(self, component: int, index: int):
        super().__init__(
            f"ket {index} is linearly dependent on its predecessors in channel {component}"
        )
        self.component = component
        self.index = index


def _channel_array(x) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.ndim == 1 and x.dtype == np.complex128 and not x.flags.writeable:
        return x
    arr = np.array(x, dtype=np.complex128).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TVector:
    """Truncated ket; ``hat1[l] = P_1(w_l)``, ``hat2[l] = P_2(w_l)``."""

    hat1: np.ndarray
    hat2: np.ndarray

    __array_ufunc__ = None

    def __post_init__(self):
        a, b = _channel_array(self.hat1), _channel_array(self.hat2)
        if a.shape != b.shape:
            raise DimensionMismatch("idempotent channels differ in length")
        object.__setattr__(self, "hat1", a)
        object.__setattr__(self, "hat2", b)

    @classmethod
    def _wrap(cls, a: np.ndarray, b: np.ndarray) -> "TVector":
        # fast path for freshly computed 1-D complex128 arrays of equal length
        a.setflags(write=False)
        b.setflags(write=False)
        obj = object.__new__(cls)
        object.__setattr__(obj, "hat1", a)
        object.__setattr__(obj, "hat2", b)
        return obj

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "TVector":
        coeffs = list(coeffs)
        if not coeffs:
            return cls(np.empty(0), np.empty(0))
        w = Bicomplex.stack(coeffs)
        return cls(w.z1_hat, w.z2_hat)

    @classmethod
    def from_bicomplex(cls, w: Bicomplex) -> "TVector":
        return cls(w.z1_hat, w.z2_hat)

    @classmethod
    def from_complex(cls, z) -> "TVector":
        """Ket of V: every coefficient in C(i1)."""
        return cls(z, z)

    @classmethod
    def zeros(cls, n: int) -> "TVector":
        return cls(np.zeros(n), np.zeros(n))

    @classmethod
    def basis(cls, n: int, l: int) -> "TVector":
        e = np.zeros(n, dtype=np.complex128)
        e[l] = 1.0
        return cls(e, e)

    @property
    def order(self) -> int:
        return self.hat1.shape[0]

    def __len__(self):
        return self.order

    def __getitem__(self, l) -> Bicomplex:
        return Bicomplex(self.hat1[l], self.hat2[l])

    @property
    def coeffs(self) -> list[Bicomplex]:
        return [Bicomplex(a, b) for a, b in zip(self.hat1, self.hat2)]

    def as_bicomplex(self) -> Bicomplex:
        return Bicomplex(self.hat1, self.hat2)

    def __add__(self, other):
        if not isinstance(other, TVector):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, TVector):
            return NotImplemented
        _check_orders(self, other)
        return TVector._wrap(self.hat1 - other.hat1, self.hat2 - other.hat2)

    def __neg__(self):
        return TVector._wrap(-self.hat1, -self.hat2)

    def __mul__(self, w):
        if isinstance(w, TVector):
            return NotImplemented
        return scale(self, w)

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ", ".join(format_bicomplex(c, "idempotent") for c in self.coeffs) + ")"


@dataclass(frozen=True, eq=False)
class LinearFunctional:
    """Functional fixed by its values ``f(|m_l>)`` on the basis kets."""

    hat1: np.ndarray
    hat2: np.ndarray

    def __post_init__(self):
        a, b = _channel_array(self.hat1), _channel_array(self.hat2)
        if a.shape != b.shape:
            raise DimensionMismatch("idempotent channels differ in length")
        object.__setattr__(self, "hat1", a)
        object.__setattr__(self, "hat2", b)

    @classmethod
    def from_values(cls, values: Iterable) -> "LinearFunctional":
        w = Bicomplex.stack(list(values))
        return cls(w.z1_hat, w.z2_hat)

    @property
    def order(self) -> int:
        return self.hat1.shape[0]

    @property
    def values(self) -> list[Bicomplex]:
        return [Bicomplex(a, b) for a, b in zip(self.hat1, self.hat2)]

    def __call__(self, phi: TVector) -> Bicomplex:
        return functional_apply(self, phi)


def _check_orders(*vs) -> int:
    n = vs[0].hat1.shape[0]
    for v in vs[1:]:
        if v.hat1.shape[0] != n:
            raise DimensionMismatch(f"truncation orders differ: {n} vs {v.order}")
    return n


def _as_bicomplex(w) -> Bicomplex:
    return w if isinstance(w, Bicomplex) else Bicomplex.from_complex(w)


def add(a: TVector, b: TVector) -> TVector:
    _check_orders(a, b)
    return TVector._wrap(a.hat1 + b.hat1, a.hat2 + b.hat2)


def scale(psi: TVector, w) -> TVector:
    w = _as_bicomplex(w)
    if type(w.z1_hat) is complex:
        return TVector._wrap(w.z1_hat * psi.hat1, w.z2_hat * psi.hat2)
    return TVector(w.z1_hat * psi.hat1, w.z2_hat * psi.hat2)


def module_ops(a: TVector, b: TVector | None, w=None, op: str = "add") -> TVector:
    if op == "add":
        return add(a, b)
    if op == "scale":
        return scale(a, w)
    raise ValueError(f"unknown operation {op!r}")


def pad(psi: TVector, n: int) -> TVector:
    """Zero-pad ``psi`` to truncation order ``n``."""
    if n < psi.order:
        raise DimensionMismatch(f"cannot pad order {psi.order} down to {n}")
    extra = np.zeros(n - psi.order)
    return TVector(np.concatenate([psi.hat1, extra]), np.concatenate([psi.hat2, extra]))


def vk_part(psi: TVector, k: int) -> TVector:
    """``e_k psi``, the component of ``psi`` in ``V_k``."""
    if k == 1:
        return scale(psi, E1)
    if k == 2:
        return scale(psi, E2)
    raise ValueError("k must be 1 or 2")


def v_projection(psi: TVector, k: int) -> TVector:
    """Ket of V with coefficients ``P_k(w_l)``."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    z = psi.hat1 if k == 1 else psi.hat2
    return TVector(z, z)


# -- scalar products ------------------------------------------------------

def _weights(weights, n: int, *, strict: bool):
    if weights is None:
        return None, None
    if isinstance(weights, TVector):
        w = weights.as_bicomplex()
    elif isinstance(weights, Bicomplex):
        w = weights
    else:
        items = list(weights)
        w = Bicomplex.stack(items) if items else Bicomplex(np.empty(0), np.empty(0))
    w1 = np.broadcast_to(np.asarray(w.z1_hat), (n,))
    w2 = np.broadcast_to(np.asarray(w.z2_hat), (n,))
    if np.any(np.abs(w1.imag) > 0) or np.any(np.abs(w2.imag) > 0):
        raise ValueError("scalar-product weights must be hyperbolic numbers")
    w1 = np.ascontiguousarray(w1.real)
    w2 = np.ascontiguousarray(w2.real)
    if strict and (np.any(w1 <= 0) or np.any(w2 <= 0)):
        raise ValueError("scalar-product weights must be strictly positive hyperbolic numbers")
    return w1, w2


def _channel_products(psi, phi, weights, strict=False) -> tuple[complex, complex]:
    n = _check_orders(psi, phi)
    if weights is None:
        return _backend.kernels.sp_pair(psi.hat1, phi.hat1, psi.hat2, phi.hat2)
    w1, w2 = _weights(weights, n, strict=strict)
    k = _backend.kernels
    return k.sp_channel(psi.hat1, phi.hat1, w1), k.sp_channel(psi.hat2, phi.hat2, w2)


def scalar_product(psi: TVector, phi: TVector, weights=None) -> Bicomplex:
    """Bicomplex scalar product, antilinear (dag3) in ``psi``."""
    return Bicomplex(*_channel_products(psi, phi, weights))


def projected_product(psi: TVector, phi: TVector, k: int, weights=None) -> complex:
    """``P_k((psi, phi))``; a standard inner product on ``V_k``."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    n = _check_orders(psi, phi)
    w1, w2 = _weights(weights, n, strict=False)
    if k == 1:
        return _backend.kernels.sp_channel(psi.hat1, phi.hat1, w1)
    return _backend.kernels.sp_channel(psi.hat2, phi.hat2, w2)


def t_norm(psi: TVector, weights=None) -> float:
    p1, p2 = _channel_products(psi, psi, weights, strict=True)
    return math.sqrt(max(0.5 * (p1.real + p2.real), 0.0))


def schwarz_gap(psi: TVector, phi: TVector, weights=None) -> float:
    """``sqrt(2) |psi| |phi| - |(psi, phi)|``; never negative beyond rounding."""
    sp = scalar_product(psi, phi, weights)
    return math.sqrt(2) * t_norm(psi, weights) * t_norm(phi, weights) - float(euclid_norm(sp))


def gram_matrix(kets: Sequence[TVector], weights=None) -> Bicomplex:
    """Matrix ``G[i, j] = (kets[i], kets[j])`` as a 2-D :class:`Bicomplex`."""
    if not kets:
        return Bicomplex(np.empty((0, 0)), np.empty((0, 0)))
    n = _check_orders(*kets)
    w1, w2 = _weights(weights, n, strict=False)
    k = _backend.kernels
    g1 = k.gram_channel(np.array([v.hat1 for v in kets]), w1)
    g2 = k.gram_channel(np.array([v.hat2 for v in kets]), w2)
    return Bicomplex(g1, g2)


def orthonormalize(kets: Sequence[TVector], weights=None, rel_tol: float = 1e-10) -> list[TVector]:
    """Orthonormalize ``kets`` channel by channel.

    Gram-Schmidt runs independently in ``V_1`` and ``V_2`` (modified variant,
    one re-orthogonalization pass) and the two orthonormal families are
    recombined as ``e_1 s_i(1) + e_2 s_i(2)``.  Raises
    :class:`DependentComponent` if a ket's residual in some channel drops
    below ``rel_tol`` times its norm there.
    """
    if not kets:
        return []
    n = _check_orders(*kets)
    w1, w2 = _weights(weights, n, strict=True)
    k = _backend.kernels
    q1, bad1 = k.mgs_channel(np.array([v.hat1 for v in kets]), w1, rel_tol)
    q2, bad2 = k.mgs_channel(np.array([v.hat2 for v in kets]), w2, rel_tol)
    failures = [(i, c) for c, i in ((1, bad1), (2, bad2)) if i >= 0]
    if failures:
        index, component = min(failures)
        raise DependentComponent(component, index)
    return [TVector(a, b) for a, b in zip(q1, q2)]


def _riesz_channel(values: np.ndarray, w) -> np.ndarray:
    # standard Riesz in V_k: (psi_k, m_l)_k = w_l conj(psi_k[l]) must equal f_k(m_l)
    if w is None:
        return np.conj(values)
    return np.conj(values / w)


def riesz_representer(f: LinearFunctional, weights=None) -> TVector:
    """The unique ``psi`` with ``(psi, phi) = f(phi)`` for every ``phi``.

    Each channel ``P_k(f)`` is represented in ``V_k`` on its own and the two
    representers are summed.
    """
    w1, w2 = _weights(weights, f.order, strict=True)
    psi1 = _riesz_channel(f.hat1, w1)
    psi2 = _riesz_channel(f.hat2, w2)
    return TVector(psi1, psi2)


def functional_apply(f: LinearFunctional, phi: TVector) -> Bicomplex:
    if f.order != phi.order:
        raise DimensionMismatch(f"functional of order {f.order} applied to ket of order {phi.order}")
    k = _backend.kernels
    # sp_channel conjugates its first argument
    return Bicomplex(
        k.sp_channel(np.conj(f.hat1), phi.hat1),
        k.sp_channel(np.conj(f.hat2), phi.hat2),
    )


def parseval_residual(coeffs) -> float:
    """``|t_norm(psi)^2 - sum_l |w_l|^2|`` for ``psi`` on the coordinate basis."""
    psi = coeffs if isinstance(coeffs, TVector) else TVector.from_coeffs(coeffs)
    w = psi.as_bicomplex()
    z1, z2 = w.cartesian
    rhs = math.fsum((np.abs(z1) ** 2).tolist()) + math.fsum((np.abs(z2) ** 2).tolist())
    return abs(t_norm(psi) ** 2 - rhs)


def is_c1_closed_sample(kets: Sequence[TVector], tol: float = 1e-12, weights=None) -> bool:
    """Check that the product of any two kets of V stays in C(i1).

    ``kets`` must lie in V (both channels equal).  A value ``a e1 + b e2``
    is in C(i1) iff ``a = b``; its i2- and j-parts are ``(a - b) / 2``.
    """
    for i, v in enumerate(kets):
        if np.any(np.abs(v.hat1 - v.hat2) > tol):
            raise PreconditionViolation(f"ket {i} has a coefficient outside C(i1)")
    for i in range(len(kets)):
        for j in range(i, len(kets)):
            p1, p2 = _channel_products(kets[i], kets[j], weights)
            if abs(p1 - p2) / 2 > tol:
                return False
    return True


# -- serialization --------------------------------------------------------

def tvector_to_json(psi: TVector, form: str = "idempotent") -> str:
    return json.dumps([format_bicomplex(c, form) for c in psi.coeffs])


def tvector_from_json(text: str) -> TVector:
    items = json.loads(text)
    if not isinstance(items, list):
        raise ValueError("expected a JSON array of bicomplex strings")
    return TVector.from_coeffs(parse_bicomplex(str(s)) for s in items)


def write_gram_csv(gram: Bicomplex, fh) -> None:
    """Write a 2-D :class:`Bicomplex` as CSV with ``z1hat;z2hat`` cells."""
    writer = csv.writer(fh, lineterminator="\n")
    rows, cols = gram.shape
    for i in range(rows):
        writer.writerow(format_bicomplex(gram[i, j], "pair") for j in range(cols))
