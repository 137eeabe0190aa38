import numpy as np
import pytest
from hypothesis import given, strategies as st

from jacobi_geometry import contact_lab as cl
from jacobi_geometry.group_atlas import MetricParams, random_point

from conftest import positive, seeds

small = st.floats(-1, 1, allow_nan=False)


def blair_example():
    """eta = (dz - y dx)/2 on R^3 with xi = 2 d_z: the standard Sasakian structure."""
    def phi(v):
        x, y, z = v
        zero = 0.0 * x
        return [[zero, 1.0 + zero, zero], [-1.0 + zero, zero, zero], [zero, y, zero]]

    return cl.AlmostContactStructure(
        "R3", 3, phi,
        lambda v: [0.0 * v[0], 0.0 * v[0], 2.0 + 0.0 * v[0]],
        lambda v: [-0.5 * v[1], 0.0 * v[0], 0.5 + 0.0 * v[0]],
    )


def polynomial_structure(coeffs):
    """Arbitrary smooth (Phi, xi, eta), no axioms imposed."""
    c = np.asarray(coeffs).reshape(3, 3, 3)

    def phi(v):
        return [[c[i, j, 0] + c[i, j, 1] * v[(i + j) % 3] + c[i, j, 2] * v[i] * v[j] for j in range(3)] for i in range(3)]

    return cl.AlmostContactStructure(
        "R3", 3, phi,
        lambda v: [v[1] * v[2], 1.0 + v[0] * v[0], v[0] - v[2]],
        lambda v: [v[2], v[0] * v[1], 1.0 + v[1]],
    )


def test_top_form_of_darboux_forms():
    # eta = dz + x dy on R^3 and dz + x1 dy1 + x2 dy2 on R^5
    eta3 = lambda v: [0.0 * v[0], v[0], 1.0 + 0.0 * v[0]]  # noqa: E731
    assert cl.contact_top_form("R3", eta3, (0.3, -0.2, 0.5)) == pytest.approx(1.0, abs=1e-14)
    eta5 = lambda v: [0.0 * v[0], v[0], 0.0 * v[0], v[2], 1.0 + 0.0 * v[0]]  # noqa: E731
    assert abs(cl.contact_top_form("R5", eta5, (0.3, -0.2, 0.5, 0.1, 0.7))) == pytest.approx(2.0, abs=1e-14)


def test_closed_one_form_is_not_contact():
    eta = lambda v: [v[1], v[0], 1.0 + 0.0 * v[0]]  # noqa: E731  d(xy) + dz
    assert cl.contact_top_form("R3", eta, (0.3, 0.4, 0.1)) == 0.0


def test_standard_sasakian_example_is_normal():
    s = blair_example()
    for p in [(0.1, 0.2, 0.3), (-1.0, 2.0, 0.5)]:
        ac = cl.almost_contact_residuals(s, p)
        assert max(ac["eta_xi"], ac["phi_squared"], ac["phi_xi"], ac["eta_phi"]) < 1e-15
        assert np.max(np.abs(cl.nijenhuis_n1(s, p))) < 1e-14
        assert np.max(np.abs(cl.nijenhuis_direct(s, p))) < 1e-14


@given(st.lists(small, min_size=27, max_size=27), st.tuples(small, small, small))
def test_component_formula_matches_vector_field_brackets(coeffs, point):
    s = polynomial_structure(coeffs)
    assert np.allclose(cl.nijenhuis_n1(s, point), cl.nijenhuis_direct(s, point), atol=1e-12)


@given(seeds, positive)
def test_sl2_structure_axioms(seed, beta):
    s = cl.sl2_structure(MetricParams(alpha=1.3, beta=beta))
    point = random_point(np.random.default_rng(seed), "S").coords[:3]
    ac = cl.almost_contact_residuals(s, point)
    assert max(ac["eta_xi"], ac["phi_squared"], ac["phi_xi"], ac["eta_phi"]) < 1e-12
    assert ac["rank"] == 2
    y = point[1]
    assert cl.contact_top_form("SL2R", s.eta, point) == pytest.approx(2 * beta / y**2, rel=1e-12)
    assert np.max(np.abs(cl.nijenhuis_n1(s, point))) < 1e-10
    assert cl.xi_killing_residual(s, point) < 1e-10
    assert cl.compatibility_residual(s, point) < 1e-12
    assert cl.phi_hat_antisymmetry(s, point) < 1e-12
    assert cl.contact_distribution_check(s, point) < 1e-12


def test_sl2_contact_coefficient_at_the_base_point():
    s = cl.sl2_structure(MetricParams(alpha=1.0, beta=1.0))
    assert cl.contact_top_form("SL2R", s.eta, (0.0, 1.0, 0.0)) == pytest.approx(2.0, abs=1e-12)


def test_sign_convention_matters():
    s = cl.sl2_structure(MetricParams(alpha=1.0, beta=1.0))
    assert np.max(np.abs(cl.nijenhuis_n1(s, (0.2, 1.1, 0.3), convention="negative"))) > 0.1
    with pytest.raises(ValueError):
        cl.nijenhuis_n1(s, (0.2, 1.1, 0.3), formula="other")


def test_cone_is_kahler():
    s = cl.sl2_structure(MetricParams(alpha=1.0, beta=1.0))
    out = cl.cone_checks(s, 1.7, (0.2, 1.1, 0.3))
    assert out["closed"] < 1e-12
    assert abs(out["det"]) > 1e-3
    assert out["phibar_squared"] < 1e-12


def test_verdicts(rng):
    points = [random_point(rng, "S").coords for _ in range(5)]
    sl2 = cl.sasaki_report("SL2R", MetricParams(alpha=1.0, beta=1.0), [p[:3] for p in points])
    assert sl2.verdict == "Sasaki"
    ext = cl.sasaki_report("ExtXJ1", MetricParams(alpha=1.0, gamma=1.0, delta=1.0), [p[:5] for p in points])
    assert ext.verdict == "Negative"
    assert ext.residuals["max_rank"] < 4
    assert ext.residuals["max_top_form"] < 1e-10
    with pytest.raises(ValueError):
        cl.sasaki_report("XJ1", MetricParams(alpha=1.0, gamma=1.0), points)


def test_legacy_formula_differs_on_a_generic_structure():
    s = polynomial_structure(np.linspace(-1, 1, 27))
    point = (0.3, -0.2, 0.5)
    legacy = cl.nijenhuis_n1(s, point, formula="legacy")
    assert np.max(np.abs(legacy - cl.nijenhuis_direct(s, point))) > 1e-3
    sl2 = cl.sl2_structure(MetricParams(alpha=1.0, beta=1.0))
    assert np.max(np.abs(cl.nijenhuis_n1(sl2, (0.2, 1.1, 0.3), formula="legacy"))) < 1e-12
