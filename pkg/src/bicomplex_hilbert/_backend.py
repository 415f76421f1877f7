"""Kernel backend selection.

The compiled Cython kernels are used when importable; setting
``BICOMPLEX_HILBERT_PURE=1`` forces the pure-Python kernels.  Callers look
up ``kernels`` on this module at call time so :func:`use_backend` can swap
it temporarily (tests, benchmarks).
"""
from __future__ import annotations

import contextlib
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_AVAILABLE = {"python": _pykernels}
if _ckernels is not None:
    _AVAILABLE["compiled"] = _ckernels

_force_pure = os.environ.get("BICOMPLEX_HILBERT_PURE", "").strip().lower() not in ("", "0", "false", "no")

if _ckernels is not None and not _force_pure:
    kernels = _ckernels
else:
    kernels = _pykernels


def available() -> list[str]:
    return sorted(_AVAILABLE)


def current() -> str:
    return kernels.NAME


def set_backend(name: str) -> None:
    global kernels
    try:
        kernels = _AVAILABLE[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available()}") from None


@contextlib.contextmanager
def use_backend(name: str):
    previous = kernels.NAME
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)
