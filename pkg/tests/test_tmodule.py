import io
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from bicomplex_hilbert import E1, E2, I1, J, ONE, ZERO, Bicomplex, ConjKind, conjugate, euclid_norm
from bicomplex_hilbert.core import NumberClass, classify
from bicomplex_hilbert.tmodule import (
    DependentComponent,
    DimensionMismatch,
    LinearFunctional,
    PreconditionViolation,
    TVector,
    functional_apply,
    gram_matrix,
    is_c1_closed_sample,
    module_ops,
    orthonormalize,
    parseval_residual,
    projected_product,
    riesz_representer,
    scalar_product,
    scale,
    schwarz_gap,
    t_norm,
    tvector_from_json,
    tvector_to_json,
    v_projection,
    vk_part,
    write_gram_csv,
)

from conftest import bicomplexes, close, tvector_pairs, tvectors


def vclose(a: TVector, b: TVector, tol=1e-12) -> bool:
    scale_ = max(1.0, np.max(np.abs(a.hat1), initial=0), np.max(np.abs(a.hat2), initial=0))
    return (
        a.order == b.order
        and np.allclose(a.hat1, b.hat1, rtol=0, atol=tol * scale_)
        and np.allclose(a.hat2, b.hat2, rtol=0, atol=tol * scale_)
    )


def sp_oracle(psi: TVector, phi: TVector) -> Bicomplex:
    # straight from the definition using ring arithmetic
    total = ZERO
    for a, b in zip(psi.coeffs, phi.coeffs):
        total = total + conjugate(a, ConjKind.DAG3) * b
    return total


def kets(*rows):
    return TVector.from_coeffs(rows)


# -- examples -------------------------------------------------------------

def test_scale_examples():
    psi = kets(1 + 2j, J, E1)
    assert vclose(scale(psi, ONE), psi)
    assert vclose(scale(psi, E1) + scale(psi, E2), psi)
    assert vclose(module_ops(psi, None, E1, "scale"), scale(psi, E1))
    assert vclose(module_ops(psi, psi, op="add"), 2 * psi)


def test_vk_part_examples():
    assert vclose(vk_part(kets(ONE, J), 2), kets(E2, -E2))
    psi = kets(1 + 2j, J)
    assert vclose(vk_part(vk_part(psi, 1), 1), vk_part(psi, 1))
    assert vclose(vk_part(psi, 1) + vk_part(psi, 2), psi)


def test_v_projection_examples():
    assert vclose(v_projection(kets(J, ZERO), 2), kets(-ONE, ZERO))
    psi = TVector.from_complex([1 + 1j, -2])
    assert vclose(v_projection(psi, 1), psi)
    assert vclose(v_projection(psi, 2), psi)


def test_scalar_product_examples():
    assert close(scalar_product(kets(ONE, ZERO), kets(ZERO, ONE)), ZERO)
    v = kets(Bicomplex.hyperbolic(1, 2), ZERO)
    sp = scalar_product(v, v)
    assert close(sp, Bicomplex.hyperbolic(1, 4))
    assert classify(sp) is NumberClass.HYPERBOLIC_POSITIVE


def test_projected_product_examples():
    assert projected_product(kets(ONE, ZERO), kets(ONE, ZERO), 1) == 1
    assert projected_product(kets(J, ZERO), kets(J, ZERO), 2) == 1


def test_t_norm_examples():
    assert t_norm(kets(ONE, ZERO)) == pytest.approx(1.0)
    assert t_norm(kets(Bicomplex.hyperbolic(1, 2), ZERO)) == pytest.approx(math.sqrt(2.5))


def test_schwarz_examples():
    psi = kets(Bicomplex.hyperbolic(1, 3), 2j)
    a, b = 1 + 4, 9 + 4
    # closed form from the two channel norms
    expected = (a + b) / math.sqrt(2) - math.sqrt((a * a + b * b) / 2)
    assert schwarz_gap(psi, psi) == pytest.approx(expected)
    assert schwarz_gap(psi, TVector.zeros(2)) == 0.0
    # with equal channel norms the gap is (sqrt(2) - 1) t_norm**2
    v = kets(1 + 2j, J)
    assert schwarz_gap(v, v) == pytest.approx((math.sqrt(2) - 1) * t_norm(v) ** 2)


def test_orthonormalize_examples():
    out = orthonormalize([kets(ONE, ZERO), kets(ONE, ONE)])
    assert vclose(out[0], kets(ONE, ZERO)) and vclose(out[1], kets(ZERO, ONE))
    basis = [TVector.basis(3, l) for l in range(3)]
    for a, b in zip(orthonormalize(basis), basis):
        assert vclose(a, b)
    with pytest.raises(DependentComponent) as info:
        orthonormalize([kets(E1, ZERO, ZERO)])
    assert (info.value.component, info.value.index) == (2, 0)
    assert orthonormalize([]) == []


def test_orthonormalize_reports_first_failure():
    with pytest.raises(DependentComponent) as info:
        orthonormalize([kets(ONE, ZERO), kets(E2, ZERO), kets(ONE, ONE)])
    assert (info.value.component, info.value.index) == (1, 1)


def test_riesz_examples():
    psi = riesz_representer(LinearFunctional.from_values([ONE, ZERO, ZERO]))
    assert vclose(psi, kets(ONE, ZERO, ZERO))
    psi = riesz_representer(LinearFunctional.from_values([J, I1]))
    assert vclose(psi, kets(J, -I1))


def test_functional_apply_on_basis():
    f = LinearFunctional.from_values([J, 2 + 1j, E1])
    assert close(functional_apply(f, TVector.basis(3, 0)), J)
    assert close(f(TVector.basis(3, 2)), E1)


def test_parseval_examples():
    assert parseval_residual([ONE]) == 0.0
    assert parseval_residual([E1, E2]) == pytest.approx(0.0, abs=1e-16)
    assert t_norm(kets(E1, E2)) ** 2 == pytest.approx(1.0)


def test_c1_closed_examples():
    coords = [TVector.basis(3, l) for l in range(3)]
    assert is_c1_closed_sample(coords)
    assert is_c1_closed_sample([])
    w = [J, ONE, ONE]
    assert not is_c1_closed_sample(coords[:1], weights=w)
    assert is_c1_closed_sample(coords[1:], weights=w)
    with pytest.raises(PreconditionViolation):
        is_c1_closed_sample([kets(J)])


def test_dimension_mismatch():
    a, b = TVector.zeros(2), TVector.zeros(3)
    for call in (lambda: a + b, lambda: scalar_product(a, b), lambda: schwarz_gap(a, b),
                 lambda: orthonormalize([a, b]), lambda: functional_apply(LinearFunctional.from_values([ONE]), a)):
        with pytest.raises(DimensionMismatch):
            call()


def test_weight_validation():
    v = kets(ONE, ONE)
    with pytest.raises(ValueError):
        scalar_product(v, v, [I1, ONE])
    with pytest.raises(ValueError):
        t_norm(v, [J, ONE])
    with pytest.raises(ValueError):
        orthonormalize([v], [E1, ONE])


def test_weighted_product():
    w = [Bicomplex.hyperbolic(2, 3), Bicomplex.hyperbolic(0.5, 1)]
    psi, phi = kets(1 + 1j, J), kets(I1, 2)
    expected = ZERO
    for wl, a, b in zip(w, psi.coeffs, phi.coeffs):
        expected = expected + wl * conjugate(a, ConjKind.DAG3) * b
    assert close(scalar_product(psi, phi, w), expected)
    f = LinearFunctional.from_values([2 + 1j, J])
    rep = riesz_representer(f, w)
    assert close(scalar_product(rep, phi, w), f(phi))
    g = gram_matrix(orthonormalize([psi, phi], w), w)
    assert np.allclose(g.z1_hat, np.eye(2)) and np.allclose(g.z2_hat, np.eye(2))


# -- properties -----------------------------------------------------------

@given(tvector_pairs())
def test_product_matches_definition(pair):
    psi, phi = pair
    assert close(scalar_product(psi, phi), sp_oracle(psi, phi), 1e-9)


@given(tvector_pairs())
def test_recombination(pair):
    psi, phi = pair
    sp = scalar_product(psi, phi)
    parts = E1 * projected_product(psi, phi, 1) + E2 * projected_product(psi, phi, 2)
    assert close(sp, parts, 1e-15)


@given(tvector_pairs(), bicomplexes)
def test_product_axioms(pair, w):
    psi, phi = pair
    sp = scalar_product(psi, phi)
    assert close(scalar_product(phi, psi), conjugate(sp, ConjKind.DAG3), 1e-12)
    assert close(scalar_product(psi, w * phi), w * sp, 1e-9)
    assert close(scalar_product(psi, psi + phi), scalar_product(psi, psi) + sp, 1e-9)


@given(tvectors())
def test_self_product_hyperbolic_positive(psi):
    assert classify(scalar_product(psi, psi)) is NumberClass.HYPERBOLIC_POSITIVE
    for k in (1, 2):
        assert projected_product(psi, psi, k).real >= 0


@given(tvector_pairs(), bicomplexes)
def test_schwarz_gap_nonnegative(pair, w):
    psi, phi = pair
    assert schwarz_gap(psi, phi) >= -1e-12 * max(1.0, t_norm(psi) * t_norm(phi))
    near = w * psi
    assert schwarz_gap(psi, near) >= -1e-12 * max(1.0, t_norm(psi) * t_norm(near))


@given(tvectors(), bicomplexes)
def test_t_norm_scaling_bound(psi, w):
    assert t_norm(w * psi) <= math.sqrt(2) * euclid_norm(w) * t_norm(psi) * (1 + 1e-12) + 1e-300


@given(tvector_pairs(), bicomplexes, bicomplexes, st.sampled_from([1, 2]))
def test_v_projection_linear(pair, s, t, k):
    from bicomplex_hilbert import project

    psi, phi = pair
    left = v_projection(s * psi + t * phi, k)
    right = project(s, k) * v_projection(psi, k) + project(t, k) * v_projection(phi, k)
    assert vclose(left, right, 1e-9)


@given(tvectors())
def test_v_projection_reconstructs(psi):
    assert vclose(E1 * v_projection(psi, 1) + E2 * v_projection(psi, 2), psi, 1e-15)


@given(st.lists(st.builds(Bicomplex, st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10)),
                min_size=1, max_size=30))
def test_parseval(coeffs):
    assert parseval_residual(coeffs) <= 1e-10


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_orthonormalize_random(n, k, seed):
    assume(k <= n)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((4, k, n))
    vs = [TVector(z[0, i] + 1j * z[1, i], z[2, i] + 1j * z[3, i]) for i in range(k)]
    g = gram_matrix(orthonormalize(vs))
    assert np.max(euclid_norm(g - Bicomplex(np.eye(k), np.eye(k)))) <= 1e-10


@given(tvector_pairs())
def test_riesz_reproduces_functional(pair):
    values, phi = pair
    f = LinearFunctional(values.hat1, values.hat2)
    assert close(scalar_product(riesz_representer(f), phi), f(phi), 1e-9)


@given(tvectors(), bicomplexes)
def test_functional_is_linear(phi, w):
    f = LinearFunctional(phi.hat2[::-1], phi.hat1)
    assert close(f(w * phi), w * f(phi), 1e-9)


def test_c1_closed_canonical_random(rng):
    vs = [TVector.from_complex(rng.standard_normal(5) + 1j * rng.standard_normal(5)) for _ in range(6)]
    assert is_c1_closed_sample(vs, tol=1e-12)


# -- serialization --------------------------------------------------------

@pytest.mark.parametrize("form", ["idempotent", "cartesian", "pair"])
def test_json_round_trip(form):
    psi = kets(1 + 2j, J, Bicomplex(1e-300, -3.25e7j))
    back = tvector_from_json(tvector_to_json(psi, form))
    assert vclose(back, psi, 1e-15)


def test_gram_csv_cells():
    buf = io.StringIO()
    write_gram_csv(gram_matrix([kets(ONE, ZERO), kets(J, ONE)]), buf)
    rows = buf.getvalue().splitlines()
    assert rows[0] == "1+0i1;1+0i1,1+0i1;-1+0i1"
    assert len(rows) == 2
