import numpy as np
import pytest
from hypothesis import settings, strategies as st

from bicomplex_hilbert import Bicomplex
from bicomplex_hilbert.tmodule import TVector

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
bicomplexes = st.builds(Bicomplex, complexes, complexes)


@st.composite
def tvectors(draw, n=None):
    if n is None:
        n = draw(st.integers(1, 6))
    a = draw(st.lists(complexes, min_size=n, max_size=n))
    b = draw(st.lists(complexes, min_size=n, max_size=n))
    return TVector(np.array(a), np.array(b))


@st.composite
def tvector_pairs(draw):
    n = draw(st.integers(1, 6))
    return draw(tvectors(n)), draw(tvectors(n))


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def close(a: Bicomplex, b: Bicomplex, tol=1e-12) -> bool:
    """Relative closeness in the Euclidean norm of both idempotent channels."""
    scale = max(1.0, abs(a), abs(b))
    return abs(a - b) <= tol * scale
