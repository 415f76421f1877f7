"""Bicomplex numbers, truncated bicomplex Hilbert modules and the bicomplex
harmonic oscillator."""
from . import _backend
from .core import (
    E1,
    E2,
    I1,
    I2,
    J,
    ONE,
    ZERO,
    Bicomplex,
    ConjKind,
    ModulusKind,
    NullConeError,
    NumberClass,
    approx_eq,
    classify,
    conjugate,
    euclid_norm,
    inverse,
    is_null_cone,
    modulus_sq,
    nth_root_principal,
    parse_bicomplex,
    format_bicomplex,
    project,
)
from .function_space import GaussPoly, GaussTerm, InvalidXi, inner_product
from .oscillator import OscillatorParams, eigenfunction, eigenvalue
from .tmodule import (
    DependentComponent,
    DimensionMismatch,
    LinearFunctional,
    TVector,
    orthonormalize,
    riesz_representer,
    scalar_product,
    t_norm,
)

__version__ = "0.1.0"


def backend() -> str:
    """Name of the active kernel backend (``"compiled"`` or ``"python"``)."""
    return _backend.current()
