import numpy as np
from hypothesis import given, strategies as st

from jacobi_geometry import jets
from conftest import coordinate, height


def sample_function(v):
    x, y, z = v
    return [x * y + np.sin(z), np.exp(x) / y, np.log(y) * z**2 + np.sqrt(y), np.arctan2(y, x + 3.0)]


@given(coordinate, height, coordinate)
def test_first_derivatives_match_central_differences(x, y, z):
    point = np.array([x, y, z])
    _, jac, _ = jets.evaluate(sample_function, point)
    approx = jets.central_difference(sample_function, point)
    assert np.allclose(jac, approx, rtol=1e-6, atol=1e-7)


@given(coordinate, height, coordinate)
def test_second_derivatives_match_differences_of_gradients(x, y, z):
    point = np.array([x, y, z])
    _, _, hess = jets.evaluate(sample_function, point)
    grad = lambda v: jets.evaluate(sample_function, v)[1]  # noqa: E731
    approx = jets.central_difference(grad, point)
    assert np.allclose(hess, approx, rtol=1e-6, atol=1e-6)
    assert np.allclose(hess, np.transpose(hess, (0, 2, 1)))


@given(coordinate, height)
def test_first_order_jets_agree_with_second_order(x, y):
    point = np.array([x, y, 0.3])
    v1, j1 = jets.evaluate_first(sample_function, point)
    v2, j2, _ = jets.evaluate(sample_function, point)
    assert np.allclose(v1, v2) and np.allclose(j1, j2)


def test_complex_values_differentiate_like_holomorphic_maps():
    # f(x, y) = (x + iy)^2 has df = 2(x + iy)(dx + i dy)
    _, jac, _ = jets.evaluate(lambda v: [(v[0] + 1j * v[1]) ** 2], [0.3, -0.7])
    z = 0.3 - 0.7j
    assert np.allclose(jac[0], [2 * z, 2j * z])


def test_constant_and_value_helpers():
    c = jets.constant(2.5, 3)
    assert jets.value_of(c) == 2.5
    assert np.all(c.grad == 0)
    assert jets.value_of(4.0) == 4.0
