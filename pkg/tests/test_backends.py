import os
import subprocess
import sys

import numpy as np
import pytest

from bicomplex_hilbert import _backend, _pykernels
from bicomplex_hilbert.oscillator import OscillatorParams, eigenfunction

compiled = pytest.importorskip("bicomplex_hilbert._ckernels")
K = {"python": _pykernels, "compiled": compiled}


def cvec(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_compiled_is_default():
    env = {k: v for k, v in os.environ.items() if k != "BICOMPLEX_HILBERT_PURE"}
    out = subprocess.run([sys.executable, "-c", "import bicomplex_hilbert as b; print(b.backend())"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "compiled"


@pytest.mark.parametrize("value, expected", [("1", "python"), ("0", "compiled")])
def test_env_var_selects_backend(value, expected):
    env = dict(os.environ, BICOMPLEX_HILBERT_PURE=value)
    out = subprocess.run([sys.executable, "-c", "import bicomplex_hilbert as b; print(b.backend())"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == expected


def test_use_backend_restores():
    before = _backend.current()
    with _backend.use_backend("python"):
        assert _backend.current() == "python"
    assert _backend.current() == before
    with pytest.raises(ValueError):
        _backend.set_backend("fortran")


@pytest.mark.parametrize("weighted", [False, True])
def test_sp_and_gram_agree(rng, weighted):
    rows = cvec(rng, 7, 40)
    w = rng.uniform(0.1, 3, 40) if weighted else None
    a = [K[name].sp_channel(rows[0], rows[1], w) for name in K]
    assert abs(a[0] - a[1]) <= 1e-14 * abs(a[0])
    g = [K[name].gram_channel(rows, w) for name in K]
    assert np.allclose(g[0], g[1], rtol=1e-14, atol=1e-13)


def test_mgs_agree(rng):
    rows = cvec(rng, 9, 12)
    (q0, f0), (q1, f1) = (K[name].mgs_channel(rows, None, 1e-10) for name in K)
    assert f0 == f1 == -1
    assert np.allclose(q0, q1, atol=1e-13)
    rows[4] = rows[1] - 2j * rows[2]
    assert [K[name].mgs_channel(rows, None, 1e-10)[1] for name in K] == [4, 4]


def test_moments_agree():
    for n in range(0, 30):
        for beta in (0.25, 1.0, 3.5):
            a, b = (K[name].gaussian_moment(n, beta) for name in K)
            assert a == pytest.approx(b, rel=1e-14)


def test_gauss_channel_agree():
    p = OscillatorParams.from_components(xi1=1.0, xi2=2.0)
    phis = [eigenfunction(l, p) for l in (0, 7, 15, 20)]
    for u in phis:
        for v in phis:
            args = u.channel_arrays(2) + v.channel_arrays(2)
            a, b = (K[name].gauss_channel(*args) for name in K)
            assert abs(a - b) <= 1e-11


def test_sp_pair_agrees(rng):
    a1, b1, a2, b2 = cvec(rng, 4, 25)
    for name in K:
        p1, p2 = K[name].sp_pair(a1, b1, a2, b2)
        assert p1 == pytest.approx(K[name].sp_channel(a1, b1), rel=1e-15)
        assert p2 == pytest.approx(K[name].sp_channel(a2, b2), rel=1e-15)


SMALL = {
    "algebra": {"n": 2000},
    "scalar_product": {"n": 200},
    "riesz": {"n": 20},
    "orthonormalization": {"n": 50},
    "parseval": {"n": 20},
    "oscillator": {},
}


@pytest.mark.parametrize("suite", list(SMALL))
def test_fallback_passes_reduced_suites(suite):
    from bicomplex_hilbert import acceptance

    with _backend.use_backend("python"):
        checks = acceptance.SUITES[suite](np.random.default_rng(7), **SMALL[suite])
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, failed
