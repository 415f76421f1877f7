"""Bicomplex numbers.

A bicomplex number ``w = z1 + z2*i2`` (``z1, z2`` complex over ``i1``) is
stored through its idempotent decomposition ``w = z1_hat*e1 + z2_hat*e2``
with ``e1 = (1+j)/2`` and ``e2 = (1-j)/2``.  In that form multiplication,
inversion and roots act componentwise.

Components may be Python complex scalars or numpy arrays of equal shape, in
which case a single :class:`Bicomplex` holds a whole batch (or a matrix) of
values and every operation below is applied elementwise.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Bicomplex",
    "ConjKind",
    "ModulusKind",
    "NumberClass",
    "NullConeError",
    "ZERO",
    "ONE",
    "E1",
    "E2",
    "I1",
    "I2",
    "J",
    "arithmetic",
    "conjugate",
    "modulus_sq",
    "euclid_norm",
    "inverse",
    "is_null_cone",
    "nth_root_principal",
    "classify",
    "project",
    "approx_eq",
    "format_complex",
    "parse_complex",
    "format_bicomplex",
    "parse_bicomplex",
]

DEFAULT_TOL = 1e-12

Component = Union[complex, np.ndarray]


class NullConeError(ZeroDivisionError):
    """Raised when inverting a zero divisor (an idempotent component is 0)."""


class ConjKind(enum.Enum):
    DAG1 = 1
    DAG2 = 2
    DAG3 = 3


class ModulusKind(enum.Enum):
    I1 = "i1"
    I2 = "i2"
    J = "j"


class NumberClass(str, enum.Enum):
    GENERAL = "general"
    HYPERBOLIC = "hyperbolic"
    HYPERBOLIC_POSITIVE = "hyperbolic_positive"
    COMPLEX_I1 = "complex_i1"


def _component(x) -> Component:
    if type(x) is complex:
        return x
    if isinstance(x, np.ndarray):
        if x.ndim == 0:
            return complex(x)
        if x.dtype == np.complex128 and not x.flags.writeable:
            return x
    elif np.ndim(x) == 0:
        return complex(x)
    arr = np.array(x, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Bicomplex:
    """Bicomplex number (or batch of them) in idempotent form."""

    z1_hat: Component = 0j
    z2_hat: Component = 0j

    # make ndarray * Bicomplex defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        a = _component(self.z1_hat)
        b = _component(self.z2_hat)
        if type(a) is complex and type(b) is complex:
            pass
        elif np.shape(a) != np.shape(b):
            a, b = (_component(x) for x in np.broadcast_arrays(a, b))
        object.__setattr__(self, "z1_hat", a)
        object.__setattr__(self, "z2_hat", b)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_cartesian(cls, z1, z2=0j) -> "Bicomplex":
        z1 = np.asarray(z1, dtype=np.complex128) if np.ndim(z1) else complex(z1)
        z2 = np.asarray(z2, dtype=np.complex128) if np.ndim(z2) else complex(z2)
        return cls(z1 - 1j * z2, z1 + 1j * z2)

    @classmethod
    def from_complex(cls, z) -> "Bicomplex":
        """Embed ``z`` in C(i1): both idempotent components equal ``z``."""
        return cls(z, z)

    @classmethod
    def hyperbolic(cls, x1: float, x2: float) -> "Bicomplex":
        """``x1*e1 + x2*e2`` with real ``x1, x2``."""
        return cls(complex(x1), complex(x2))

    @classmethod
    def stack(cls, values) -> "Bicomplex":
        values = [_lift_strict(v) for v in values]
        return cls(
            np.array([v.z1_hat for v in values], dtype=np.complex128),
            np.array([v.z2_hat for v in values], dtype=np.complex128),
        )

    # -- views -------------------------------------------------------
    @property
    def z1(self) -> Component:
        return (self.z1_hat + self.z2_hat) / 2

    @property
    def z2(self) -> Component:
        return 1j * (self.z1_hat - self.z2_hat) / 2

    @property
    def cartesian(self) -> tuple[Component, Component]:
        return self.z1, self.z2

    @property
    def shape(self) -> tuple[int, ...]:
        return np.shape(self.z1_hat)

    def __getitem__(self, index) -> "Bicomplex":
        return Bicomplex(self.z1_hat[index], self.z2_hat[index])

    def conj(self, kind: ConjKind = ConjKind.DAG3) -> "Bicomplex":
        return conjugate(self, kind)

    # -- arithmetic --------------------------------------------------
    def __add__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Bicomplex(self.z1_hat + o[0], self.z2_hat + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Bicomplex(self.z1_hat - o[0], self.z2_hat - o[1])

    def __rsub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Bicomplex(o[0] - self.z1_hat, o[1] - self.z2_hat)

    def __mul__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Bicomplex(self.z1_hat * o[0], self.z2_hat * o[1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self * inverse(Bicomplex(*o))

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return Bicomplex(*o) * inverse(self)

    def __neg__(self):
        return Bicomplex(-self.z1_hat, -self.z2_hat)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if int(n) != n:
            return NotImplemented
        n = int(n)
        if n < 0:
            return inverse(self) ** (-n)
        return Bicomplex(self.z1_hat**n, self.z2_hat**n)

    def __abs__(self):
        return euclid_norm(self)

    def __str__(self):
        if self.shape:
            return repr(self)
        return format_bicomplex(self, "idempotent")


def _lift(x):
    if isinstance(x, Bicomplex):
        return x.z1_hat, x.z2_hat
    if isinstance(x, (int, float, complex, np.number)):
        z = complex(x)
        return z, z
    if isinstance(x, np.ndarray) and x.dtype.kind in "biufc":
        return x, x
    return None


def _lift_strict(x) -> Bicomplex:
    if isinstance(x, Bicomplex):
        return x
    o = _lift(x)
    if o is None:
        raise TypeError(f"cannot interpret {type(x).__name__} as a bicomplex number")
    return Bicomplex(*o)


ZERO = Bicomplex(0j, 0j)
ONE = Bicomplex(1 + 0j, 1 + 0j)
E1 = Bicomplex(1 + 0j, 0j)
E2 = Bicomplex(0j, 1 + 0j)
I1 = Bicomplex(1j, 1j)
I2 = Bicomplex(-1j, 1j)
J = Bicomplex(1 + 0j, -1 + 0j)


def arithmetic(a: Bicomplex, b: Bicomplex, op: str) -> Bicomplex:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def conjugate(w: Bicomplex, kind: ConjKind) -> Bicomplex:
    """The three bicomplex conjugations.

    DAG1 conjugates ``z1`` and ``z2``; DAG2 flips the sign of ``z2``; DAG3
    does both.  On idempotent components DAG1 swaps and conjugates, DAG2
    swaps, DAG3 conjugates in place.
    """
    w = _lift_strict(w)
    kind = ConjKind(kind)
    a, b = w.z1_hat, w.z2_hat
    if kind is ConjKind.DAG1:
        return Bicomplex(np.conj(b), np.conj(a))
    if kind is ConjKind.DAG2:
        return Bicomplex(b, a)
    return Bicomplex(np.conj(a), np.conj(b))


_MODULUS_CONJ = {
    ModulusKind.I1: ConjKind.DAG2,
    ModulusKind.I2: ConjKind.DAG1,
    ModulusKind.J: ConjKind.DAG3,
}


def modulus_sq(w: Bicomplex, kind: ModulusKind) -> Bicomplex:
    """``w * w^dag`` for the conjugation paired with ``kind``.

    I1 lands in C(i1), I2 in C(i2) and J in the positive hyperbolic cone.
    """
    w = _lift_strict(w)
    return w * conjugate(w, _MODULUS_CONJ[ModulusKind(kind)])


def euclid_norm(w: Bicomplex):
    """Euclidean R^4 norm, ``sqrt(|z1|^2 + |z2|^2)``."""
    w = _lift_strict(w)
    return np.sqrt(0.5 * (np.abs(w.z1_hat) ** 2 + np.abs(w.z2_hat) ** 2))


def inverse(w: Bicomplex) -> Bicomplex:
    w = _lift_strict(w)
    if np.any(w.z1_hat == 0) or np.any(w.z2_hat == 0):
        raise NullConeError(f"{w} lies on the null cone and has no inverse")
    return Bicomplex(1 / w.z1_hat, 1 / w.z2_hat)


def is_null_cone(w: Bicomplex, tol: float = 0.0):
    """True when an idempotent component vanishes (``w = 0`` included)."""
    w = _lift_strict(w)
    return (np.abs(w.z1_hat) <= tol) | (np.abs(w.z2_hat) <= tol)


def _principal_root(z, n: int):
    if n == 1:
        return z
    if n == 2:
        return np.sqrt(z)
    r = np.abs(z) ** (1.0 / n)
    return r * np.exp(1j * np.angle(z) / n)


def nth_root_principal(w: Bicomplex, n: int) -> Bicomplex:
    """Componentwise principal n-th root.

    Any choice of root per component gives an n-th root of ``w``; this picks
    the principal branch of both.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    w = _lift_strict(w)
    return Bicomplex(_principal_root(w.z1_hat, n), _principal_root(w.z2_hat, n))


def classify(w: Bicomplex, tol: float = DEFAULT_TOL) -> NumberClass:
    w = _lift_strict(w)
    if w.shape:
        raise ValueError("classify expects a single bicomplex number")
    a, b = w.z1_hat, w.z2_hat
    if abs(a.imag) <= tol and abs(b.imag) <= tol:
        if a.real >= -tol and b.real >= -tol:
            return NumberClass.HYPERBOLIC_POSITIVE
        return NumberClass.HYPERBOLIC
    if abs(a - b) <= 2 * tol:
        return NumberClass.COMPLEX_I1
    return NumberClass.GENERAL


def project(w: Bicomplex, k: int):
    """Idempotent projection ``P_k``: the ``k``-th idempotent component."""
    w = _lift_strict(w)
    if k == 1:
        return w.z1_hat
    if k == 2:
        return w.z2_hat
    raise ValueError("k must be 1 or 2")


def approx_eq(a, b, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.all(euclid_norm(_lift_strict(a) - _lift_strict(b)) <= tol))


# -- text forms ---------------------------------------------------------

def _fmt_real(x: float) -> str:
    return format(float(x) + 0.0, ".17g")


def format_complex(z: complex) -> str:
    """``re+imi1`` with 17 significant digits."""
    z = complex(z)
    im = z.imag + 0.0
    sign = "-" if im < 0 else "+"
    return f"{_fmt_real(z.real)}{sign}{_fmt_real(abs(im))}i1"


_UNIT_RE = re.compile(r"(?<![0-9.])(i1|i)(?![0-9])")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi1`` (also ``a+bi``, ``a+bj`` or a bare real)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex number")
    s = _UNIT_RE.sub(r"1\1", s)
    s = s.replace("i1", "j").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"malformed complex number {text!r}") from None


_NAMED = {"0": ZERO, "1": ONE, "e1": E1, "e2": E2, "i1": I1, "i2": I2, "j": J}
_CART_RE = re.compile(r"^\((?P<z1>[^()]*)\)\s*\+\s*\((?P<z2>[^()]*)\)\s*\*?\s*i2$")
_IDEM_RE = re.compile(r"^\[(?P<a>[^,\[\]]*),(?P<b>[^,\[\]]*)\]$")


def format_bicomplex(w: Bicomplex, form: str = "idempotent") -> str:
    if form == "idempotent":
        return f"[{format_complex(w.z1_hat)}, {format_complex(w.z2_hat)}]"
    if form == "cartesian":
        return f"({format_complex(w.z1)}) + ({format_complex(w.z2)}) i2"
    if form == "pair":
        return f"{format_complex(w.z1_hat)};{format_complex(w.z2_hat)}"
    raise ValueError(f"unknown format {form!r}")


def parse_bicomplex(text: str) -> Bicomplex:
    """Parse the cartesian, idempotent or ``z1hat;z2hat`` forms.

    The unit names ``e1``, ``e2``, ``i1``, ``i2``, ``j`` are also accepted,
    optionally with a leading sign.  A plain complex number is read as an element of C(i1).
    """
    s = text.strip()
    if s.lower() in _NAMED:
        return _NAMED[s.lower()]
    if s[:1] in "+-" and s[1:].strip().lower() in _NAMED:
        unit = _NAMED[s[1:].strip().lower()]
        return -unit if s[0] == "-" else unit
    m = _CART_RE.match(s)
    if m:
        return Bicomplex.from_cartesian(parse_complex(m["z1"]), parse_complex(m["z2"]))
    m = _IDEM_RE.match(s)
    if m:
        return Bicomplex(parse_complex(m["a"]), parse_complex(m["b"]))
    if s.count(";") == 1:
        a, b = s.split(";")
        return Bicomplex(parse_complex(a), parse_complex(b))
    try:
        return Bicomplex.from_complex(parse_complex(s))
    except ValueError:
        raise ValueError(f"malformed bicomplex number {text!r}") from None
