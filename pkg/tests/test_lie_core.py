import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.linalg import expm

from jacobi_geometry import lie_core as lc

small = st.floats(min_value=-1.5, max_value=1.5, allow_nan=False)


def test_sl2_brackets_by_hand():
    assert np.array_equal(lc.commutator(lc.H, lc.F), 2 * lc.F)
    assert np.array_equal(lc.commutator(lc.H, lc.G), -2 * lc.G)
    assert np.array_equal(lc.commutator(lc.F, lc.G), lc.H)


def test_heisenberg_brackets_by_hand():
    assert np.array_equal(lc.commutator(lc.P, lc.Q), 2 * lc.R)
    assert not np.any(lc.commutator(lc.P, lc.R))
    assert not np.any(lc.commutator(lc.Q, lc.R))


def test_jacobi_algebra_mixed_brackets():
    expected = {
        ("F", "P"): -lc.Q, ("G", "Q"): -lc.P, ("H", "P"): -lc.P, ("H", "Q"): lc.Q,
        ("F", "Q"): 0 * lc.Q, ("G", "P"): 0 * lc.P,
    }
    gens = dict(zip(lc.JACOBI.labels, lc.JACOBI.generators))
    for (a, b), value in expected.items():
        assert np.allclose(lc.commutator(gens[a], gens[b]), value), (a, b)


@pytest.mark.parametrize("basis", lc.REGISTERED, ids=lambda b: b.name)
def test_jacobi_identity(basis):
    assert lc.jacobi_identity_residual(basis) < 1e-12


def test_structure_constants_are_antisymmetric_and_reconstruct_brackets():
    c = lc.JACOBI.structure_constants
    assert np.allclose(c, -np.transpose(c, (0, 2, 1)))
    gens = lc.JACOBI.generators
    for i in range(6):
        for j in range(6):
            rebuilt = sum(c[k, i, j] * gens[k] for k in range(6))
            assert np.allclose(rebuilt, lc.commutator(gens[i], gens[j]))


def test_killing_form_of_sl2_from_the_trace():
    k = lc.killing_matrix(lc.SL2)
    oracle = np.array([[4 * np.trace(a @ b) for b in lc.SL2.generators] for a in lc.SL2.generators])
    assert np.allclose(k, oracle)
    assert k[2, 2] == pytest.approx(8.0)
    assert k[0, 1] == pytest.approx(4.0)


def test_killing_forms_of_the_compact_and_noncompact_real_forms():
    assert np.allclose(lc.killing_matrix(lc.SU2), -8 * np.eye(3))
    assert np.allclose(lc.killing_matrix(lc.SU11), np.diag([-8.0, 8.0, 8.0]))
    assert np.allclose(lc.killing_matrix(lc.K_BASIS), [[2, 0, 0], [0, 0, -4], [0, -4, 0]])


@given(small, small, small)
def test_killing_quadratic_form_on_sl2(a, b, c):
    x = a * lc.H + b * lc.F + c * lc.G
    coeffs = lc.SL2.coefficients(x)
    assert lc.killing_form(lc.SL2, coeffs, coeffs) == pytest.approx(8 * (a * a + b * c), abs=1e-10)


@pytest.mark.parametrize("t", [-2.0, -0.5, 0.0, 0.7, 2.0])
def test_matrix_exp_against_closed_forms(t):
    for name, (gen, closed) in lc.exp_closed_forms(t).items():
        assert np.max(np.abs(lc.matrix_exp(gen) - closed)) < 1e-12, name


@given(st.lists(small, min_size=6, max_size=6))
def test_exp_inverse_and_determinant(coeffs):
    x = lc.JACOBI.element(coeffs)
    g = lc.matrix_exp(x)
    assert np.allclose(g @ lc.matrix_exp(-x), np.eye(4), atol=1e-10)
    assert np.linalg.det(g) == pytest.approx(np.exp(np.trace(x)), rel=1e-10)


@given(st.lists(small, min_size=6, max_size=6), st.lists(small, min_size=6, max_size=6))
def test_ad_is_a_representation(u, v):
    x, y = np.array(u), np.array(v)
    bracket = lc.JACOBI.coefficients(lc.commutator(lc.JACOBI.element(x), lc.JACOBI.element(y)))
    ax, ay = lc.ad_matrix(lc.JACOBI, x), lc.ad_matrix(lc.JACOBI, y)
    assert np.allclose(lc.ad_matrix(lc.JACOBI, bracket), ax @ ay - ay @ ax, atol=1e-10)


@given(st.lists(small, min_size=6, max_size=6))
def test_adjoint_of_an_exponential_is_the_exponential_of_ad(u):
    x = np.array(u)
    g = lc.matrix_exp(lc.JACOBI.element(x))
    assert np.allclose(lc.adjoint_matrix(lc.JACOBI, g), expm(lc.ad_matrix(lc.JACOBI, x)), atol=1e-9)


def test_decompose_rejects_matrices_outside_the_span():
    with pytest.raises(ValueError):
        lc.SL2.coefficients(np.eye(4))


def test_adjoint_rejects_singular_matrices():
    with pytest.raises(lc.Singular):
        lc.adjoint_matrix(lc.JACOBI, np.zeros((4, 4)))


def test_scaled_sl2_basis_brackets():
    alpha, beta = 1.7, 0.6
    e = lc.e_basis(alpha, beta)
    c = e.structure_constants
    sa, sb = np.sqrt(alpha), np.sqrt(beta)
    for i in range(3):
        for j in range(3):
            rebuilt = sum(c[k, i, j] * e.generators[k] for k in range(3))
            assert np.allclose(rebuilt, lc.commutator(e.generators[i], e.generators[j]))
    # [F + G, H] = -2 (F - G), so [e1, e2] = 2 alpha [F + G, H] = -(4 alpha / sqrt(beta)) e3
    assert c[2, 0, 1] == pytest.approx(-4 * sa * sa / sb)
