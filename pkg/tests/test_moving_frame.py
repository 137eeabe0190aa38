import numpy as np
import pytest
from hypothesis import given

from jacobi_geometry import jets
from jacobi_geometry import moving_frame as mf
from jacobi_geometry.group_atlas import MetricParams, random_element, random_point
from jacobi_geometry.metric_lab import acting_group
from conftest import full_params, seeds


def params_for(space, params):
    return None if space == "H1" else params.restrict(space)


@pytest.mark.parametrize("space", mf.SPACES)
@given(seed=seeds, params=full_params())
def test_closed_coframe_and_frame_are_dual(space, seed, params):
    point = random_point(np.random.default_rng(seed), mf.SPACE_CHART[space])
    assert mf.closed_coframe(space, point, params_for(space, params)).pairing_error() < 1e-10


@pytest.mark.parametrize("space", mf.SPACES)
@given(seed=seeds, params=full_params())
def test_numeric_coframe_agrees_with_closed_form(space, seed, params):
    point = random_point(np.random.default_rng(seed), mf.SPACE_CHART[space])
    use = params_for(space, params)
    numeric = mf.numeric_coframe(space, point, "left", use)
    closed = mf.closed_coframe(space, point, use)
    assert np.max(np.abs(numeric.coframe - closed.coframe)) < 1e-10


@pytest.mark.parametrize("space", mf.GROUP_SPACES)
def test_maurer_cartan_equations(space, rng):
    params = params_for(space, MetricParams(1.7, 0.6, 1.3, 0.8))
    for _ in range(10):
        point = random_point(rng, mf.SPACE_CHART[space])
        assert mf.maurer_cartan_residual(space, params, point) < 1e-10


@pytest.mark.parametrize("space", mf.GROUP_SPACES)
def test_left_invariance(space, rng):
    for _ in range(10):
        g = random_element(rng, acting_group(space))
        point = random_point(rng, mf.SPACE_CHART[space])
        assert mf.left_invariance_residual(space, g.matrix.tolist(), point) < 1e-9


def test_vector_field_bracket_against_finite_differences():
    x = mf.VectorField(lambda v: [v[1] * v[1], np.sin(v[0])], 2)
    y = mf.VectorField(lambda v: [v[0] * v[1], np.exp(v[1])], 2)
    point = np.array([0.4, -0.3])
    dx = jets.central_difference(lambda v: np.array([v[1] ** 2, np.sin(v[0])]), point)
    dy = jets.central_difference(lambda v: np.array([v[0] * v[1], np.exp(v[1])]), point)
    oracle = dy @ x.at(point) - dx @ y.at(point)
    assert np.allclose(mf.vf_bracket(x, y, point), oracle, atol=1e-8)


def test_frame_brackets_equal_matrix_brackets_and_differ_from_print_in_two_entries(rng):
    params = MetricParams(1.7, 0.6, 1.3, 0.8)
    points = [random_point(rng, "S").coords for _ in range(6)]
    rep = mf.frame_structure_constants("GJ1", params, points)
    assert np.max(np.abs(rep.constants - mf.algebra_frame_constants("GJ1", params))) < 1e-10
    sa, sb = np.sqrt(params.alpha), np.sqrt(params.beta)
    entries = {(i, j, k): (printed, computed) for i, j, k, printed, computed in rep.mismatches}
    assert set(entries) == {(2, 3, 1), (3, 4, 5)}
    assert entries[(2, 3, 1)] == pytest.approx((1 / (2 * sb), 1 / sb))
    assert entries[(3, 4, 5)] == pytest.approx((-1 / (2 * sa), -1 / (2 * sb)))


def test_heisenberg_frame_brackets():
    points = [random_point(np.random.default_rng(i), "Heisenberg").coords for i in range(5)]
    rep = mf.frame_structure_constants("H1", None, points)
    # [Lp, Lq] = 2 Lr as for the generators P, Q, R
    assert rep.constants[2, 0, 1] == pytest.approx(2.0)


def test_structure_constants_need_a_group():
    with pytest.raises(ValueError):
        mf.frame_structure_constants("XJ1", MetricParams(1.0, None, 1.0), [(0, 1, 0, 0)] * 5)


def test_dual_frame_rejects_singular_coframes():
    with pytest.raises(mf.Singular):
        mf.dual_frame(np.array([[1.0, 2.0], [2.0, 4.0]]))


@given(seeds)
def test_exterior_derivative_against_differences(seed):
    rng = np.random.default_rng(seed)
    point = random_point(rng, "S").coords
    params = MetricParams(1.3, 0.7, 1.1, 0.9)
    form = mf.closed_coframe_field("GJ1", params, 4)
    exact = mf.exterior_derivative(form, point)
    jac = jets.central_difference(lambda v: np.array([jets.value_of(c) for c in form(list(v))], float), point)
    assert np.allclose(exact, jac.T - jac, atol=1e-6)
