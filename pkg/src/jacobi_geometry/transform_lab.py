"""Biholomorphisms between the Siegel-Jacobi disk and half-plane, and Kahler forms.

Complex coordinates are carried as (real, imaginary) pairs of chart
coordinates.  Every map below is written with plain complex arithmetic, so it
runs on jets as well as floats and pullbacks come from one jet evaluation.

Charts used here:

* ``Disk``: (w, z), |w| < 1
* ``DiskFiber``: (w, eta), the disk times the complex plane
* ``ComplexHP``: (v, u), Im v > 0
* ``HalfPlaneFiber``: (v, eta)
* ``SJPlane``: (x, y, p, q) with v = x + i y and u = p v + q

Kahler forms follow the convention -i omega = sum h_ab dz^a ^ dz^b-bar,
with h hermitian and positive definite.  Real components are returned as
an antisymmetric matrix Omega with omega(X, Y) = X^T Omega Y, normalised so
that g(X, Y) = omega(X, J Y) is the Riemannian metric.  The representation
labels are k = 2 alpha and mu = gamma (see ``MetricParams.k`` and ``.mu``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets
from .group_atlas import (
    CHART_DIMS,
    ChartPoint,
    GroupElement,
    MetricParams,
    OutOfDomain,
    act_coords,
)
from .metric_lab import closed_metric

ANTISYMMETRY_TOL = 1e-14


def _c(re, im):
    return re + 1j * im


def _split(z):
    return [z.real, z.imag] if isinstance(z, (jets.Jet, jets.Jet1)) else [np.real(z), np.imag(z)]


def _conj(z):
    return z.conjugate() if isinstance(z, (jets.Jet, jets.Jet1)) else np.conj(z)


def _abs2(z):
    return (z * _conj(z)).real


def _check_nonzero(den, what):
    if abs(jets.value_of(den)) < 1e-300:
        raise OutOfDomain(f"{what} vanishes")


# closed forms on coordinate lists


def cayley(c):
    """(v, u) -> (w, z), w = (v - i)/(v + i), z = 2 i u/(v + i)."""
    v, u = _c(c[0], c[1]), _c(c[2], c[3])
    den = v + 1j
    _check_nonzero(den, "v + i")
    return _split((v - 1j) / den) + _split(2j * u / den)


def cayley_inv(c):
    """(w, z) -> (v, u), v = i (1 + w)/(1 - w), u = z/(1 - w)."""
    w, z = _c(c[0], c[1]), _c(c[2], c[3])
    den = 1 - w
    _check_nonzero(den, "1 - w")
    return _split(1j * (1 + w) / den) + _split(z / den)


def fc(c):
    """(w, eta) -> (w, z), z = eta - w conj(eta)."""
    w, eta = _c(c[0], c[1]), _c(c[2], c[3])
    return _split(w) + _split(eta - w * _conj(eta))


def fc_inv(c):
    """(w, z) -> (w, eta), eta = (z + conj(z) w)/(1 - |w|^2)."""
    w, z = _c(c[0], c[1]), _c(c[2], c[3])
    den = 1 - _abs2(w)
    _check_nonzero(den, "1 - |w|^2")
    return _split(w) + _split((z + _conj(z) * w) / den)


def fc1(c):
    """(v, eta) -> (v, u) with 2 i u = (v + i) eta - (v - i) conj(eta)."""
    v, eta = _c(c[0], c[1]), _c(c[2], c[3])
    return _split(v) + _split(((v + 1j) * eta - (v - 1j) * _conj(eta)) / 2j)


def fc1_inv(c):
    """(v, u) -> (v, eta), eta = (u conj(v) - conj(u) v + i (conj(u) - u))/(conj(v) - v)."""
    v, u = _c(c[0], c[1]), _c(c[2], c[3])
    vb, ub = _conj(v), _conj(u)
    den = vb - v
    _check_nonzero(den, "Im v")
    return _split(v) + _split((u * vb - ub * v + 1j * (ub - u)) / den)


def phi_prime(c):
    """(x, y, p, q) -> (x, y, eta) with eta = q + i p."""
    return [c[0], c[1], c[3], c[2]]


def phi_prime_inv(c):
    """(x, y, eta) -> (x, y, p, q) with p = Im eta, q = Re eta."""
    return [c[0], c[1], c[3], c[2]]


@dataclass(frozen=True)
class MapSpec:
    fn: Callable
    source: str
    target: str
    inverse: str


MAPS = {
    "Cayley": MapSpec(cayley, "ComplexHP", "Disk", "CayleyInv"),
    "CayleyInv": MapSpec(cayley_inv, "Disk", "ComplexHP", "Cayley"),
    "FC": MapSpec(fc, "DiskFiber", "Disk", "FCInv"),
    "FCInv": MapSpec(fc_inv, "Disk", "DiskFiber", "FC"),
    "FC1": MapSpec(fc1, "HalfPlaneFiber", "ComplexHP", "FC1Inv"),
    "FC1Inv": MapSpec(fc1_inv, "ComplexHP", "HalfPlaneFiber", "FC1"),
    "PhiPrime": MapSpec(phi_prime, "SJPlane", "HalfPlaneFiber", "PhiPrimeInv"),
    "PhiPrimeInv": MapSpec(phi_prime_inv, "HalfPlaneFiber", "SJPlane", "PhiPrime"),
}


def apply_map(tag: str, point: ChartPoint) -> ChartPoint:
    if tag not in MAPS:
        raise ValueError(f"unknown map {tag!r}")
    spec = MAPS[tag]
    if point.chart != spec.source:
        raise OutOfDomain(f"{tag} acts on the {spec.source} chart, got {point.chart}")
    return ChartPoint(spec.target, [float(x) for x in spec.fn(list(point.coords))])


def round_trip_residual(tag: str, point: ChartPoint) -> float:
    back = apply_map(MAPS[tag].inverse, apply_map(tag, point))
    return float(np.max(np.abs(back.array - point.array)))


def diagram_residual(point: ChartPoint) -> float:
    """Both legs of the square from the disk to (v; p, q), compared in the SJPlane chart.

    One leg splits the fiber on the disk and then moves the base to the
    half-plane; the other applies the partial Cayley transform first and
    splits the fiber on the half-plane.
    """
    if point.chart != "Disk":
        raise OutOfDomain("the diagram starts on the Disk chart")
    w_eta = apply_map("FCInv", point)
    v = apply_map("CayleyInv", ChartPoint("Disk", [point.coords[0], point.coords[1], 0.0, 0.0]))
    leg_a = apply_map("PhiPrimeInv", ChartPoint("HalfPlaneFiber", list(v.coords[:2]) + list(w_eta.coords[2:])))
    leg_b = apply_map("PhiPrimeInv", apply_map("FC1Inv", apply_map("CayleyInv", point)))
    return float(np.max(np.abs(leg_a.array - leg_b.array)))


def fc_one_form_residual(point: ChartPoint) -> float:
    """Pull A = dz + conj(eta) dw back along FC and compare with d eta - w d conj(eta).

    ``point`` is in the DiskFiber chart; both one-forms are written as complex
    rows on (d Re w, d Im w, d Re eta, d Im eta).
    """
    c = np.asarray(point.coords, float)
    _, jac, _ = jets.evaluate(lambda v: [_c(*fc(v)[2:])], c)
    dz = jac[0]
    w, eta = _c(c[0], c[1]), _c(c[2], c[3])
    dw = np.array([1, 1j, 0, 0])
    deta = np.array([0, 0, 1, 1j])
    lhs = dz + np.conj(eta) * dw
    rhs = deta - w * np.conj(deta)
    return float(np.max(np.abs(lhs - rhs)))


# Kahler two-forms


@dataclass(frozen=True)
class TwoFormAtPoint:
    matrix: np.ndarray
    point: tuple
    params: MetricParams | None
    chart: str

    def __post_init__(self):
        m = np.asarray(self.matrix, float)
        if np.max(np.abs(m + m.T), initial=0.0) > ANTISYMMETRY_TOL * max(1.0, np.max(np.abs(m))):
            raise ValueError("two-form components must be antisymmetric")
        object.__setattr__(self, "matrix", m)

    def component(self, i: int, j: int) -> float:
        return float(self.matrix[i, j])


def hermitian_to_real(h: np.ndarray, holo_jac: np.ndarray) -> np.ndarray:
    """Real components of omega with -i omega = h_ab dz^a ^ dz^b-bar.

    ``holo_jac[a]`` is the row d z^a written on the real coordinate
    differentials.
    """
    j = np.asarray(holo_jac, complex)
    c = 1j * j.T @ np.asarray(h, complex) @ np.conj(j)
    # omega = sum C_ij dx^i ^ dx^j; the factor 1/2 makes omega(X, JY) the metric
    return np.real(c - c.T) / 2


def _params(params: MetricParams, space: str) -> tuple[float, float]:
    p = params.restrict(space)
    return p.k, p.mu


def disk_hermitian(params: MetricParams, coords) -> np.ndarray:
    """Coefficients of the invariant form on (w, z)."""
    k, mu = _params(params, "DJ1")
    w, z = _c(coords[0], coords[1]), _c(coords[2], coords[3])
    b = 1 - abs(w) ** 2
    eta = (z + np.conj(z) * w) / b
    return np.array([
        [2 * k / b**2 + mu * abs(eta) ** 2 / b, mu * np.conj(eta) / b],
        [mu * eta / b, mu / b],
    ])


def half_plane_hermitian(params: MetricParams, coords, base_sign: float = 1.0) -> np.ndarray:
    """Coefficients of the invariant form on (v, u), with B = du - p dv.

    The base term is 2k/(conj(v) - v)^2 dv-bar ^ dv.  ``base_sign=-1`` takes
    the wedge the other way round, which makes the form indefinite.
    """
    k, mu = _params(params, "XJ1")
    y, p = coords[1], coords[2]
    return np.array([
        [base_sign * k / (2 * y * y) + mu * p * p / y, -mu * p / y],
        [-mu * p / y, mu / y],
    ])


def sj_holomorphic_jacobian(coords) -> np.ndarray:
    """Rows dv and du on (dx, dy, dp, dq), for u = p v + q."""
    x, y, p, _ = coords
    v = x + 1j * y
    return np.array([[1, 1j, 0, 0], [p, 1j * p, v, 1]])


PAIR_JACOBIAN = np.array([[1, 1j, 0, 0], [0, 0, 1, 1j]])


def kahler_form_at(space: str, params: MetricParams, point) -> TwoFormAtPoint:
    coords = np.asarray(point.coords if isinstance(point, ChartPoint) else point, float)
    if space == "DJ1":
        ChartPoint("Disk", coords)
        m = hermitian_to_real(disk_hermitian(params, coords), PAIR_JACOBIAN)
    elif space == "XJ1":
        ChartPoint("SJPlane", coords)
        m = hermitian_to_real(half_plane_hermitian(params, coords), sj_holomorphic_jacobian(coords))
    else:
        raise ValueError("Kahler forms exist for DJ1 and XJ1")
    return TwoFormAtPoint(m, tuple(coords), params, space)


STANDARD_J = np.array([[0.0, -1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, -1.0], [0.0, 0.0, 1.0, 0.0]])


def complex_structure(space: str, coords) -> np.ndarray:
    """Matrix of J on real tangent vectors (J d/dRe = d/dIm)."""
    if space == "DJ1":
        return STANDARD_J.copy()
    holo = sj_holomorphic_jacobian(coords)
    # real coordinates (Re v, Im v, Re u, Im u) as functions of (x, y, p, q)
    real = np.vstack([holo[0].real, holo[0].imag, holo[1].real, holo[1].imag])
    return np.linalg.solve(real, STANDARD_J @ real)


def associated_metric(form: TwoFormAtPoint) -> np.ndarray:
    """g(X, Y) = omega(X, J Y)."""
    j = complex_structure(form.chart, form.point)
    g = form.matrix @ j
    return (g + g.T) / 2


def metric_consistency_residual(params: MetricParams, point) -> float:
    form = kahler_form_at("XJ1", params, point)
    g = np.array(closed_metric("XJ1", list(form.point), params.restrict("XJ1")), dtype=float)
    return float(np.max(np.abs(associated_metric(form) - g)))


def potential(params: MetricParams, coords, log_sign: float = -1.0):
    """Kahler potential on (x, y, xi, eta) with xi + i eta = z.

    ``log_sign=-1`` gives a positive form; ``+1`` is the other sign of the
    logarithmic term, kept for comparison.
    """
    p = params.restrict("XJ1")
    _, y, _, eta = coords
    return log_sign * p.c1 * np.log(y) + 2 * p.c2 * eta * eta / y


def _potential_hermitian(params, tz_coords, log_sign):
    """d dbar f from the real Hessian in (Re tau, Im tau, Re z, Im z)."""
    _, _, hess = jets.evaluate(lambda v: [potential(params, v, log_sign)], np.asarray(tz_coords, float))
    hs = np.real(hess[0])
    h = np.zeros((2, 2), complex)
    for a in range(2):
        for b in range(2):
            xa, ya, xb, yb = 2 * a, 2 * a + 1, 2 * b, 2 * b + 1
            h[a, b] = (hs[xa, xb] + hs[ya, yb] + 1j * (hs[xa, yb] - hs[ya, xb])) / 4
    return h


def kahler_from_potential(params: MetricParams, point, log_sign: float = -1.0) -> TwoFormAtPoint:
    coords = np.asarray(point.coords if isinstance(point, ChartPoint) else point, float)
    ChartPoint("SJPlane", coords)
    x, y, p, q = coords
    h = _potential_hermitian(params, [x, y, p * x + q, p * y], log_sign)
    m = hermitian_to_real(h, sj_holomorphic_jacobian(coords))
    return TwoFormAtPoint(m, tuple(coords), params, "XJ1")


def closedness_residual(form_fn: Callable, point, step: float = 1e-4) -> float:
    """max |d omega| by central differences of the component matrix."""
    point = np.asarray(point, float)
    n = len(point)
    deriv = np.zeros((n, n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = step
        deriv[i] = (form_fn(point + e) - form_fn(point - e)) / (2 * step)
    cyc = deriv + np.transpose(deriv, (1, 2, 0)) + np.transpose(deriv, (2, 0, 1))
    return float(np.max(np.abs(cyc)))


def pullback_form(form_fn: Callable, mapping: Callable, point) -> np.ndarray:
    """(F^* omega)(point) for a jet-capable map F on coordinate lists."""
    point = np.asarray(point, float)
    image = np.array([jets.value_of(c) for c in mapping(list(point))], dtype=float)
    jac = np.real(jets.jacobian(mapping, point))
    return jac.T @ form_fn(image) @ jac


def cayley_pullback_residual(params: MetricParams, point) -> float:
    """Disk form pulled back to (x, y, p, q) against the half-plane form."""
    def to_disk(c):
        x, y, p, q = c
        return cayley([x, y, p * x + q, p * y])

    disk = lambda c: kahler_form_at("DJ1", params, c).matrix  # noqa: E731
    pulled = pullback_form(disk, to_disk, point)
    return float(np.max(np.abs(pulled - kahler_form_at("XJ1", params, point).matrix)))


def invariance_residual(params: MetricParams, g: GroupElement, point) -> float:
    """g^* omega - omega on the half-plane, for the reduced Jacobi group action."""
    entries = g.matrix.tolist()
    form = lambda c: kahler_form_at("XJ1", params, c).matrix  # noqa: E731
    pulled = pullback_form(form, lambda c: act_coords(entries, "SJPlane", c), point)
    return float(np.max(np.abs(pulled - form(np.asarray(point, float)))))


def disk_action(p: complex, q: complex, alpha: complex, coords):
    """SU(1,1) x C acting on (w, z); (p, q) is the first row of the SU(1,1) matrix."""
    w, z = _c(coords[0], coords[1]), _c(coords[2], coords[3])
    den = np.conj(q) * w + np.conj(p)
    return _split((p * w + q) / den) + _split((z + alpha - np.conj(alpha) * w) / den)


def disk_invariance_residual(params: MetricParams, p: complex, q: complex, alpha: complex, point) -> float:
    form = lambda c: kahler_form_at("DJ1", params, c).matrix  # noqa: E731
    pulled = pullback_form(form, lambda c: disk_action(p, q, alpha, c), point)
    return float(np.max(np.abs(pulled - form(np.asarray(point, float)))))


def random_map_point(rng: np.random.Generator, tag: str) -> ChartPoint:
    from .group_atlas import random_point

    return random_point(rng, MAPS[tag].source)


assert all(CHART_DIMS[m.source] == CHART_DIMS[m.target] == 4 for m in MAPS.values())
