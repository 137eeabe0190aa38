import numpy as np
import pytest
from hypothesis import given, strategies as st

from jacobi_geometry import transform_lab as tl
from jacobi_geometry.group_atlas import ChartPoint, MetricParams, OutOfDomain, random_element, random_point

from conftest import positive, seeds


def close(a, b, tol=1e-14):
    return np.max(np.abs(np.asarray(a, float) - np.asarray(b, float))) < tol


def test_cayley_sends_i_to_the_origin():
    assert close(tl.apply_map("Cayley", ChartPoint("ComplexHP", (0, 1, 0, 0))).coords, (0, 0, 0, 0))


def test_fc_is_the_identity_over_the_disk_center():
    assert close(tl.apply_map("FC", ChartPoint("DiskFiber", (0, 0, 0.3, -0.7))).coords, (0, 0, 0.3, -0.7))


def test_fc1_inverse_at_i():
    assert close(tl.apply_map("FC1Inv", ChartPoint("ComplexHP", (0, 1, 0, 1))).coords, (0, 1, 0, 1))


def test_phi_prime_swaps_the_fiber_pair():
    assert tl.apply_map("PhiPrime", ChartPoint("SJPlane", (0.1, 2.0, 0.3, 0.4))).coords == (0.1, 2.0, 0.4, 0.3)


@pytest.mark.parametrize("tag", sorted(tl.MAPS))
@given(seed=seeds)
def test_round_trips(tag, seed):
    point = tl.random_map_point(np.random.default_rng(seed), tag)
    assert tl.round_trip_residual(tag, point) < 1e-12


@given(seed=seeds)
def test_the_square_commutes(seed):
    assert tl.diagram_residual(random_point(np.random.default_rng(seed), "Disk")) < 1e-11


def test_the_square_near_the_boundary():
    assert tl.diagram_residual(ChartPoint("Disk", (0.999 * np.cos(0.7), 0.999 * np.sin(0.7), 0.3, -0.2))) < 1e-8


@given(seed=seeds)
def test_fc_one_form(seed):
    assert tl.fc_one_form_residual(random_point(np.random.default_rng(seed), "DiskFiber")) < 1e-12


def test_maps_check_their_charts():
    with pytest.raises(OutOfDomain):
        tl.apply_map("Cayley", ChartPoint("Disk", (0, 0, 0, 0)))
    with pytest.raises(ValueError):
        tl.apply_map("Nope", ChartPoint("Disk", (0, 0, 0, 0)))
    with pytest.raises(OutOfDomain):
        tl.cayley_inv([1.0, 0.0, 0.0, 0.0])


def test_kahler_form_at_the_base_point():
    form = tl.kahler_form_at("XJ1", MetricParams(alpha=1.0, gamma=1.0), (0, 1, 0, 0)).matrix
    expected = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    assert close(form, expected)


@given(seed=seeds, alpha=positive, gamma=positive)
def test_kahler_form_agrees_with_metric_potential_and_disk(seed, alpha, gamma):
    params = MetricParams(alpha=alpha, gamma=gamma)
    point = random_point(np.random.default_rng(seed), "SJPlane").coords
    form = tl.kahler_form_at("XJ1", params, point).matrix
    scale = max(1.0, float(np.max(np.abs(form))))
    assert tl.metric_consistency_residual(params, point) < 1e-9 * scale
    assert np.max(np.abs(tl.kahler_from_potential(params, point).matrix - form)) < 1e-9 * scale
    assert tl.cayley_pullback_residual(params, point) < 1e-9 * scale


@given(seed=seeds)
def test_kahler_form_is_linear_in_the_weights(seed):
    point = random_point(np.random.default_rng(seed), "SJPlane").coords

    def form(a, g):
        return tl.kahler_form_at("XJ1", MetricParams(alpha=a, gamma=g), point).matrix

    assert np.allclose(form(1.5, 0.5) + form(0.7, 2.0), form(0.7, 0.5) + form(1.5, 2.0), atol=1e-10)
    assert np.allclose(form(2.4, 1.8), 3 * form(0.8, 0.6), atol=1e-10)


def test_the_other_potential_sign_disagrees():
    params = MetricParams(alpha=1.0, gamma=1.0)
    point = (0.3, 1.2, 0.4, -0.5)
    wrong = tl.kahler_from_potential(params, point, log_sign=1.0).matrix
    assert np.max(np.abs(wrong - tl.kahler_form_at("XJ1", params, point).matrix)) > 0.1


def test_the_other_wedge_order_is_indefinite():
    params = MetricParams(alpha=1.0, gamma=1.0)
    point = (0.3, 1.2, 0.4, -0.5)
    flipped = tl.hermitian_to_real(tl.half_plane_hermitian(params, point, base_sign=-1.0), tl.sj_holomorphic_jacobian(point))
    g = flipped @ tl.complex_structure("XJ1", point)
    eig = np.linalg.eigvalsh((g + g.T) / 2)
    assert eig.min() < 0 < eig.max()


@given(seed=seeds)
def test_kahler_form_is_invariant(seed):
    rng = np.random.default_rng(seed)
    params = MetricParams(alpha=1.3, gamma=0.7)
    assert tl.invariance_residual(params, random_element(rng, "GJ1"), random_point(rng, "SJPlane").coords) < 1e-9


@given(seed=seeds, t=st.floats(-3, 3), s=st.floats(-1.5, 1.5), phase=st.floats(-3, 3))
def test_disk_form_is_invariant(seed, t, s, phase):
    rng = np.random.default_rng(seed)
    p, q = np.cosh(s) * np.exp(1j * t), np.sinh(s) * np.exp(1j * phase)
    alpha = complex(*rng.normal(size=2))
    point = random_point(rng, "Disk").coords
    params = MetricParams(alpha=1.1, gamma=0.8)
    assert tl.disk_invariance_residual(params, p, q, alpha, point) < 1e-9


def test_kahler_form_is_closed(rng):
    params = MetricParams(alpha=1.3, gamma=0.7)
    for _ in range(3):
        point = random_point(rng, "SJPlane").coords
        assert tl.closedness_residual(lambda c: tl.kahler_from_potential(params, c).matrix, point) < 1e-7
        assert tl.closedness_residual(lambda c: tl.kahler_form_at("XJ1", params, c).matrix, point) < 1e-7


def test_a_non_closed_form_is_detected():
    def form(c):
        m = np.zeros((4, 4))
        m[0, 1], m[1, 0] = c[2], -c[2]
        return m

    assert tl.closedness_residual(form, np.array([0.1, 1.0, 0.2, 0.3])) > 0.5
