"""Geodesics, one-parameter orbits and natural reductivity.

A vector X in the Lie algebra is a geodesic vector when the orbit
t -> exp(tX).o through the base point is a geodesic.  Three independent
routes are provided:

* the algebraic residual system for the coefficients (a, b, c, d, e, f) of X
  on the frame L^1..L^6, as printed;
* the same condition recomputed from the numerically derived frame brackets
  (``geodesic_lemma_residual``);
* direct comparison of the orbit with an RK4 solution of the geodesic
  equation (``orbit_vs_geodesic_residual``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import jets
from .group_atlas import ChartPoint, MetricParams, OutOfDomain, act_coords
from .lie_core import AlgebraVector, matrix_exp
from .metric_lab import (
    FundamentalField,
    _params_for,
    check_point,
    christoffels,
    closed_metric,
)
from .moving_frame import (
    SPACE_CHART,
    VectorField,
    bracket_coefficients,
    closed_frame_columns,
    frame_basis,
)


class LeftDomain(OutOfDomain):
    def __init__(self, message: str, exit_time: float):
        super().__init__(message)
        self.exit_time = exit_time


class BadRow(ValueError):
    pass


@dataclass(frozen=True)
class GeoVector6:
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self):
        if not all(np.isfinite(self.as_array())):
            raise ValueError("geodesic vector components must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d, self.e, self.f], dtype=float)

    @classmethod
    def from_array(cls, v) -> "GeoVector6":
        return cls(*[float(x) for x in v])


@dataclass
class GeodesicPath:
    space: object
    params: MetricParams | None
    times: np.ndarray
    points: np.ndarray
    velocities: np.ndarray
    energies: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.energies is None:
            self.energies = np.array([
                v @ np.array(closed_metric(self.space, list(p), self.params), float) @ v
                for p, v in zip(self.points, self.velocities)
            ])

    @property
    def samples(self):
        return list(zip(self.times, self.points, self.velocities))

    def energy_drift(self) -> float:
        e0 = self.energies[0]
        scale = abs(e0) if abs(e0) > 0 else 1.0
        return float(np.max(np.abs(self.energies - e0)) / scale)


def _domain_ok(space, coords) -> bool:
    try:
        check_point(space, coords)
    except OutOfDomain:
        return False
    return True


def integrate_geodesic(space, params, start, velocity, t_max: float = 1.0, steps: int = 1000) -> GeodesicPath:
    """Classical RK4 for x'' = -Gamma(x', x')."""
    if steps < 10:
        raise ValueError("need at least 10 steps")
    params = _params_for(space, params)
    x = np.array(start.coords if isinstance(start, ChartPoint) else start, dtype=float)
    v = np.array(velocity, dtype=float)
    check_point(space, x)
    if v.shape != x.shape:
        raise ValueError("velocity and point dimensions differ")
    h = t_max / steps

    def accel(pos, vel):
        gam = christoffels(space, params, pos)
        return -np.einsum("kij,i,j->k", gam, vel, vel)

    times, xs, vs = [0.0], [x.copy()], [v.copy()]
    for n in range(steps):
        k1x, k1v = v, accel(x, v)
        p2 = x + 0.5 * h * k1x
        if not _domain_ok(space, p2):
            raise LeftDomain("geodesic left the chart domain", times[-1])
        k2x, k2v = v + 0.5 * h * k1v, accel(p2, v + 0.5 * h * k1v)
        p3 = x + 0.5 * h * k2x
        if not _domain_ok(space, p3):
            raise LeftDomain("geodesic left the chart domain", times[-1])
        k3x, k3v = v + 0.5 * h * k2v, accel(p3, v + 0.5 * h * k2v)
        p4 = x + h * k3x
        if not _domain_ok(space, p4):
            raise LeftDomain("geodesic left the chart domain", times[-1])
        k4x, k4v = v + h * k3v, accel(p4, v + h * k3v)
        x = x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v = v + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if not _domain_ok(space, x):
            raise LeftDomain("geodesic left the chart domain", (n + 1) * h)
        times.append((n + 1) * h)
        xs.append(x.copy())
        vs.append(v.copy())
    return GeodesicPath(space, params, np.array(times), np.array(xs), np.array(vs))


# orbits


def _algebra_matrix(x) -> np.ndarray:
    if isinstance(x, AlgebraVector):
        return x.matrix()
    return np.asarray(x, dtype=float)


def orbit_curve(space: str, x, base, t: float) -> ChartPoint:
    """exp(tX) acting on ``base``."""
    chart = SPACE_CHART[space]
    coords = base.coords if isinstance(base, ChartPoint) else tuple(base)
    g = matrix_exp(t * _algebra_matrix(x))
    return ChartPoint(chart, act_coords(g.tolist(), chart, list(coords)))


def _completed(params: MetricParams) -> MetricParams:
    vals = {n: getattr(params, n) if getattr(params, n) is not None else 1.0 for n in MetricParams.NAMES}
    return MetricParams(**vals)


def geovector_matrix(x: GeoVector6, params: MetricParams) -> np.ndarray:
    """sum of coefficients times the frame elements at the identity."""
    return frame_basis("GJ1", _completed(params)).element(x.as_array())


def orbit_vs_geodesic_residual(space: str, params: MetricParams, x, base=None, t_max: float = 1.0,
                               steps: int = 1000, samples: int = 20) -> float:
    """Sup coordinate distance between the orbit of X and the geodesic with the same start."""
    if isinstance(x, GeoVector6):
        xm = geovector_matrix(x, params)
    else:
        xm = _algebra_matrix(x)
    if base is None:
        base = {"X1": (0.0, 1.0), "XJ1": (0.0, 1.0, 0.0, 0.0), "ExtXJ1": (0.0, 1.0, 0.0, 0.0, 0.0)}[space]
    coords = np.array(base.coords if isinstance(base, ChartPoint) else base, float)
    if not np.any(xm):
        return 0.0
    v0 = FundamentalField(space, xm).at(coords)
    path = integrate_geodesic(space, params.restrict(space), coords, v0, t_max, steps)
    idx = np.linspace(0, steps, samples + 1).round().astype(int)
    worst = 0.0
    for i in idx:
        orb = np.array(orbit_curve(space, xm, coords, path.times[i]).coords)
        worst = max(worst, float(np.max(np.abs(orb - path.points[i]))))
    return worst


# algebraic conditions


def geodesic_vector_residual(x: GeoVector6, params: MetricParams) -> np.ndarray:
    """The printed system of algebraic equations for a geodesic vector."""
    r = np.sqrt(params.get("alpha") / params.get("beta"))
    a, b, c, d, e, _ = x.as_array()
    return np.array([
        r * b * c + d * e,
        -r * a * c + d * d - e * e,
        b * d + e * (a + c),
        r * c * d + b * e - a * d,
    ])


M_INDICES = (0, 1, 3, 4)
H_INDICES = (2, 5)


def frame_constants(params: MetricParams) -> np.ndarray:
    return frame_basis("GJ1", _completed(params)).structure_constants


def geodesic_lemma_residual(x: GeoVector6, params: MetricParams) -> np.ndarray:
    """B([X, Y]_m, X_m) for Y = L1, L2, L4, L5 using the matrix brackets."""
    c = frame_constants(params)
    v = x.as_array()
    xm = np.zeros(6)
    xm[list(M_INDICES)] = v[list(M_INDICES)]
    out = []
    for j in M_INDICES:
        br = np.einsum("ki,i->k", c[:, :, j], v)
        out.append(float(br[list(M_INDICES)] @ xm[list(M_INDICES)]))
    return np.array(out)


def corrected_residual(x: GeoVector6, params: MetricParams) -> np.ndarray:
    """Closed form of the lemma residual, rescaled like the printed system."""
    r = np.sqrt(params.get("alpha") / params.get("beta"))
    a, b, c, d, e, _ = x.as_array()
    return np.array([
        r * b * c + d * e,
        -2 * r * a * c + d * d - e * e,
        b * d + e * (a + r * c),
        r * c * d + b * e - a * d,
    ])


def table1_family(row: int, params: MetricParams, free, signs=()) -> GeoVector6:
    """Parametric geodesic vectors, one family per table row.

    ``free`` holds (c, f) for rows 1 and 3, (a, b, f) for row 2, (a, f) for
    row 4 and (e, f) for row 5; ``signs`` holds the sign choices of rows 3-5.
    """
    r = np.sqrt(params.get("alpha") / params.get("beta"))
    free = [float(v) for v in free]
    signs = [int(s) for s in signs]
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs are +1 or -1")
    if row == 1:
        c, f = free
        return GeoVector6(0, 0, c, 0, 0, f)
    if row == 2:
        a, b, f = free
        return GeoVector6(a, b, 0, 0, 0, f)
    if row == 3:
        c, f = free
        (s,) = signs or (1,)
        return GeoVector6(r * c, 0, c, s * r * c, 0, f)
    if row == 4:
        a, f = free
        (eps,) = signs or (1,)
        return GeoVector6(a, 0, -a, 0, eps * np.sqrt(r) * a, f)
    if row == 5:
        e, f = free
        e1, e2 = signs or (1, 1)
        return GeoVector6(
            e1 * e2 * (1 - r) / np.sqrt(r) * e, e1 * e, -e1 * e2 * e / np.sqrt(r), e2 * np.sqrt(r) * e, e, f
        )
    raise BadRow(f"rows are numbered 1..5, got {row}")


TABLE1_FREE_COUNT = {1: 2, 2: 3, 3: 2, 4: 2, 5: 2}
TABLE1_SIGN_COUNT = {1: 0, 2: 0, 3: 1, 4: 1, 5: 2}


def random_table1(rng: np.random.Generator, row: int, params: MetricParams) -> GeoVector6:
    free = rng.uniform(-2, 2, TABLE1_FREE_COUNT[row])
    signs = rng.choice([-1, 1], TABLE1_SIGN_COUNT[row])
    return table1_family(row, params, free, signs)


# natural reductivity


@dataclass(frozen=True)
class ReductivityReport:
    space: str
    split: str
    verdict: str
    max_residual: float
    witness: tuple | None
    witness_value: float | None


def _reductivity_from_constants(c: np.ndarray, m: tuple, labels, space: str, split: str, tol: float):
    worst, witness, value = 0.0, None, None
    # B is the identity on m; [U, V]_m keeps only the m-components
    for xi, yi, zi in product(m, repeat=3):
        xz = c[list(m), xi, zi]
        zy = c[list(m), zi, yi]
        ex = np.zeros(len(m))
        ey = np.zeros(len(m))
        ex[m.index(xi)] = 1
        ey[m.index(yi)] = 1
        v = float(xz @ ey + ex @ zy)
        if abs(v) > worst + tol:
            worst, witness, value = abs(v), (labels[xi], labels[yi], labels[zi]), v
    verdict = "HOLDS" if worst < tol else "FAILS"
    return ReductivityReport(space, split, verdict, worst, witness if verdict == "FAILS" else None,
                             value if verdict == "FAILS" else None)


def _product_fields(params: MetricParams) -> list[VectorField]:
    """Frame of SL(2, R) x R^2 in coordinates (x, y, theta, p, q)."""
    p = MetricParams(alpha=params.get("alpha"), beta=params.beta or 1.0)
    g = params.get("gamma")

    def col(v, j):
        zero = 0.0 * v[0]
        if j < 3:
            return closed_frame_columns("SL2R", v[:3], p)[j] + [zero, zero]
        unit = [zero] * 5
        unit[j] = zero + 1 / np.sqrt(g)
        return unit

    return [VectorField(lambda v, j=j: col(v, j), 5, f"T{j}") for j in range(5)]


def natural_reductivity_report(space: str, params: MetricParams, split: str = "frame",
                               tol: float = 1e-10, points=None) -> ReductivityReport:
    """Check B([X,Z]_m, Y) + B(X, [Z,Y]_m) = 0 over frame triples of m.

    ``split`` is ``frame`` (the L-frame split), ``generator`` (m spanned by
    F, G, P, Q with B the identity on those generators) or ``product`` (the
    same quotient with the flat metric on the fibre, i.e. the FC coordinates).
    """
    rng = np.random.default_rng(0)
    if points is None:
        points = [(rng.uniform(-1, 1), rng.uniform(0.5, 2), rng.uniform(-3, 3), rng.uniform(-1, 1),
                   rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(5)]
    if space == "X1":
        p = MetricParams(alpha=params.get("alpha"), beta=params.beta or 1.0)
        fields = [VectorField(lambda v, j=j: closed_frame_columns("SL2R", v, p)[j], 3, f"L{j + 1}") for j in range(3)]
        c = np.mean([bracket_coefficients(fields, pt[:3]) for pt in points], axis=0)
        return _reductivity_from_constants(c, (0, 1), ("L1", "L2", "L3"), space, split, tol)
    if space != "XJ1":
        raise ValueError("natural reductivity is checked on X1 and XJ1")
    if split == "frame":
        full = _completed(params)
        fields = [VectorField(lambda v, j=j: closed_frame_columns("GJ1", v, full)[j], 6, f"L{j + 1}") for j in range(6)]
        c = np.mean([bracket_coefficients(fields, pt) for pt in points], axis=0)
        return _reductivity_from_constants(c, M_INDICES, ("L1", "L2", "L3", "L4", "L5", "L6"), space, split, tol)
    if split == "generator":
        from .lie_core import JACOBI

        c = JACOBI.structure_constants
        return _reductivity_from_constants(c, (0, 1, 3, 4), JACOBI.labels, space, split, tol)
    if split == "product":
        fields = _product_fields(params)
        c = np.mean([bracket_coefficients(fields, pt[:5]) for pt in points], axis=0)
        return _reductivity_from_constants(c, (0, 1, 3, 4), ("L1", "L2", "L3", "Tp", "Tq"), space, split, tol)
    raise ValueError(f"unknown split {split!r}")


def equivariance_residual(space: str, params: MetricParams, element, start, velocity,
                          t_max: float = 0.5, steps: int = 200) -> float:
    """Distance between g.geodesic(p, v) and geodesic(g.p, dg v)."""
    chart = SPACE_CHART[space]
    entries = element.matrix.tolist()
    p = np.asarray(start, float)
    val, jac, _ = jets.evaluate(lambda v: act_coords(entries, chart, v), p)
    path = integrate_geodesic(space, params, p, velocity, t_max, steps)
    moved = integrate_geodesic(space, params, np.real(val), np.real(jac) @ np.asarray(velocity, float), t_max, steps)
    worst = 0.0
    for i in range(0, steps + 1, max(1, steps // 20)):
        img = np.array(act_coords(entries, chart, list(path.points[i])), float)
        worst = max(worst, float(np.max(np.abs(img - moved.points[i]))))
    return worst
