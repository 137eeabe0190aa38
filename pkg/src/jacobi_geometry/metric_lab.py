"""Invariant metrics, Christoffel symbols, Killing fields and isometries.

The six Jacobi-related spaces carry the metrics built from the scaled
coframe; each is also written out in closed form so the two can be compared.
A small corpus of classical examples (round sphere, Poincare disk, flat
plane, Bianchi-Cartan-Vranceanu family, Poincare half-space) shares the
same machinery.

Metric functions take coordinates that may be jets and return nested lists,
so Christoffel symbols and Lie derivatives come out of one jet evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets
from .group_atlas import (
    ACTIVE_PARAMS,
    CHART_DIMS,
    ChartPoint,
    GroupElement,
    MetricParams,
    OutOfDomain,
    act_coords,
)
from .lie_core import HEISENBERG, JACOBI, SL2, AlgebraBasis, AlgebraVector, NotClosed
from .moving_frame import SPACE_CHART, SPACES, VectorField, closed_coframe_rows, vf_bracket


class BadGenerator(ValueError):
    pass


@dataclass(frozen=True)
class BCV:
    """Bianchi-Cartan-Vranceanu space with curvature ``kappa`` and bundle twist ``tau``."""

    kappa: float
    tau: float


@dataclass(frozen=True)
class CayleyBCV:
    """BCV space with negative ``kappa`` in half-plane coordinates (a, b, z)."""

    kappa: float
    tau: float

    def __post_init__(self):
        if not self.kappa < 0:
            raise ValueError("the half-plane chart needs kappa < 0")


@dataclass(frozen=True)
class PoincareHalfSpace:
    dim: int = 3


CORPUS = ("Sphere2", "Sphere2Stereo", "Disk1", "Plane2")


def space_dim(space) -> int:
    if isinstance(space, (BCV, CayleyBCV)):
        return 3
    if isinstance(space, PoincareHalfSpace):
        return space.dim
    if space in CORPUS:
        return 2
    return CHART_DIMS[SPACE_CHART[space]]


def check_point(space, coords) -> None:
    c = np.asarray([jets.value_of(v) for v in coords], dtype=float)
    if c.shape != (space_dim(space),) or not np.all(np.isfinite(c)):
        raise OutOfDomain(f"{space} needs {space_dim(space)} finite coordinates")
    if space in SPACES:
        ChartPoint(SPACE_CHART[space], c)
    elif space == "Sphere2" and not 0 < c[0] < np.pi:
        raise OutOfDomain("polar angle must lie in (0, pi)")
    elif space == "Disk1" and not c @ c < 1:
        raise OutOfDomain("the disk needs |w| < 1")
    elif isinstance(space, PoincareHalfSpace) and not c[0] > 0:
        raise OutOfDomain("the half-space needs x1 > 0")
    elif isinstance(space, BCV) and not 1 + space.kappa * (c[0] ** 2 + c[1] ** 2) / 4 > 0:
        raise OutOfDomain("outside the BCV chart")
    elif isinstance(space, CayleyBCV) and not c[1] > 0:
        raise OutOfDomain("half-plane chart needs b > 0")


# metrics in closed form, jet-capable


def _sym(n, entries, zero):
    m = [[zero] * n for _ in range(n)]
    for (i, j), v in entries.items():
        m[i][j] = v
        m[j][i] = v
    return m


def closed_metric(space, coords, params: MetricParams | None = None) -> list:
    """Metric components written out per space."""
    c = list(coords)
    zero = 0.0 * c[0]
    if space == "H1":
        lam, mu, _ = c
        return _sym(3, {
            (0, 0): 1 + mu * mu, (1, 1): 1 + lam * lam, (2, 2): 1.0 + zero,
            (0, 1): -lam * mu, (0, 2): mu, (1, 2): -lam,
        }, zero)
    if space in ("SL2R", "X1", "XJ1", "ExtXJ1", "GJ1"):
        a = params.get("alpha")
        x, y = c[0], c[1]
        if space == "X1":
            return _sym(2, {(0, 0): a / (y * y), (1, 1): a / (y * y)}, zero)
        if space in ("SL2R", "GJ1"):
            b = params.get("beta")
            block = {(0, 0): (a + b) / (y * y), (1, 1): a / (y * y), (2, 2): 4 * b + zero, (0, 2): 2 * b / y}
            if space == "SL2R":
                return _sym(3, block, zero)
            offset = 3
        else:
            block = {(0, 0): a / (y * y), (1, 1): a / (y * y)}
            offset = 2
        g = params.get("gamma")
        p, q = c[offset], c[offset + 1]
        fib = {(0, 0): g * (x * x + y * y) / y, (1, 1): g / y, (0, 1): g * x / y}
        if space != "XJ1":
            d = params.get("delta")
            fib[(0, 0)] = fib[(0, 0)] + d * q * q
            fib[(1, 1)] = fib[(1, 1)] + d * p * p
            fib[(0, 1)] = fib[(0, 1)] - d * p * q
            fib.update({(0, 2): d * q, (1, 2): -d * p, (2, 2): d + zero})
        entries = dict(block)
        entries.update({(i + offset, j + offset): v for (i, j), v in fib.items()})
        return _sym(len(c), entries, zero)
    if space == "Sphere2":
        s = np.sin(c[0])
        return _sym(2, {(0, 0): 1.0 + zero, (1, 1): s * s}, zero)
    if space == "Sphere2Stereo":
        f = 4 / (1 + c[0] * c[0] + c[1] * c[1]) ** 2
        return _sym(2, {(0, 0): f, (1, 1): f}, zero)
    if space == "Disk1":
        f = 4 / (1 - c[0] * c[0] - c[1] * c[1]) ** 2
        return _sym(2, {(0, 0): f, (1, 1): f}, zero)
    if space == "Plane2":
        return _sym(2, {(0, 0): 1.0 + zero, (1, 1): 1.0 + zero}, zero)
    if isinstance(space, PoincareHalfSpace):
        f = 1 / (c[0] * c[0])
        return _sym(space.dim, {(i, i): f for i in range(space.dim)}, zero)
    if isinstance(space, (BCV, CayleyBCV)):
        rows = bcv_coframe_rows(space, c)
        return _gram(rows)
    raise ValueError(f"unknown space {space!r}")


def _gram(rows) -> list:
    n = len(rows[0])
    return [[sum(r[i] * r[j] for r in rows) for j in range(n)] for i in range(n)]


def coframe_metric(space, coords, params: MetricParams | None = None) -> list:
    """Sum of squares of the scaled closed coframe."""
    return _gram(closed_coframe_rows(space, coords, params))


def _params_for(space, params):
    if space == "H1":
        return params.require("H1") if params is not None else MetricParams()
    if space in SPACES:
        if params is None:
            raise ValueError(f"{space} needs metric parameters")
        return params.require(space) if space != "H1" else params.require("H1")
    if params is not None and params.active():
        raise ValueError(f"{space} takes no metric parameters")
    return None


@dataclass(frozen=True)
class MetricAtPoint:
    matrix: np.ndarray
    point: tuple
    space: object


def metric_at(space, params: MetricParams | None, point) -> MetricAtPoint:
    params = _params_for(space, params)
    coords = point.coords if isinstance(point, ChartPoint) else tuple(float(v) for v in point)
    check_point(space, coords)
    m = np.array(closed_metric(space, list(coords), params), dtype=float)
    if np.linalg.eigvalsh(m).min() <= 0:
        raise OutOfDomain("metric is not positive definite here")
    return MetricAtPoint(m, tuple(coords), space)


def metric_jet(space, params, coords):
    """Metric values and first derivatives: (g, dg) with dg[i, j, k] = d_k g_ij."""
    val, jac, _ = jets.evaluate(lambda v: closed_metric(space, v, params), np.asarray(coords, float))
    return np.real(val), np.real(jac)


def metric_first_jet(space, params, coords):
    val, jac = jets.evaluate_first(lambda v: closed_metric(space, v, params), np.asarray(coords, float))
    return np.real(val), np.real(jac)


def christoffels(space, params, coords) -> np.ndarray:
    """Gamma[k, i, j] of the Levi-Civita connection."""
    g, dg = metric_first_jet(space, params, coords)
    gi = np.linalg.inv(g)
    # lowered[l, i, j] = d_i g_lj + d_j g_li - d_l g_ij
    lowered = dg.transpose(0, 2, 1) + dg - dg.transpose(2, 0, 1)
    return 0.5 * np.einsum("kl,lij->kij", gi, lowered)


def christoffels_at(space, params: MetricParams | None, point) -> np.ndarray:
    params = _params_for(space, params)
    coords = point.coords if isinstance(point, ChartPoint) else tuple(point)
    check_point(space, coords)
    return christoffels(space, params, coords)


def lie_derivative_of_metric(field: VectorField, space, params, coords) -> np.ndarray:
    coords = np.asarray(coords, float)
    g, dg = metric_jet(space, params, coords)
    xv, dx = field.jet(coords)
    return np.einsum("m,ijm->ij", xv, dg) + dx.T @ g + g @ dx


def killing_residual(field: VectorField, space, params: MetricParams | None, point) -> np.ndarray:
    """The symmetric matrix L_X g at ``point``; zero for a Killing field."""
    params = _params_for(space, params)
    coords = point.coords if isinstance(point, ChartPoint) else tuple(point)
    check_point(space, coords)
    return lie_derivative_of_metric(field, space, params, coords)


def killing_norm(field: VectorField, space, params: MetricParams | None, point) -> float:
    return float(np.max(np.abs(killing_residual(field, space, params, point))))


# parameter sectors

SECTOR_INDICES = {
    "SL2R": (0, 1, 2),
    "X1": (0, 1),
    "XJ1": (0, 1, 3, 4),
    "ExtXJ1": (0, 1, 3, 4, 5),
    "GJ1": (0, 1, 2, 3, 4, 5),
}


class _RawParams:
    """Parameter lookup that allows zeros; only used to switch sectors off."""

    def __init__(self, values: dict):
        self.values = values

    def get(self, name: str) -> float:
        return self.values[name]


def sector_consistency_residual(space: str, params: MetricParams, coords6) -> float:
    """GJ1 metric with the inactive weights of ``space`` set to zero, restricted to its chart.

    Returns the sup distance to the metric of ``space`` together with the
    size of the entries that the restriction drops.
    """
    params = params.require(space)
    active = ACTIVE_PARAMS[space]
    values = {n: (params.get(n) if n in active else 0.0) for n in MetricParams.NAMES}
    full = np.array(closed_metric("GJ1", list(coords6), _RawParams(values)), dtype=float)
    keep = list(SECTOR_INDICES[space])
    drop = [i for i in range(6) if i not in keep]
    sub = full[np.ix_(keep, keep)]
    own = np.array(closed_metric(space, [coords6[i] for i in keep], params), dtype=float)
    dropped = float(np.max(np.abs(full[drop])) if drop else 0.0)
    return max(float(np.max(np.abs(sub - own))), dropped)


# fundamental fields

ACTING_ALGEBRA = {
    "H1": HEISENBERG,
    "SL2R": SL2,
    "X1": SL2,
    "XJ1": JACOBI,
    "ExtXJ1": JACOBI,
    "GJ1": JACOBI,
}
GENERATORS = dict(zip(JACOBI.labels, JACOBI.generators))


def generator_matrix(generator) -> np.ndarray:
    if isinstance(generator, AlgebraVector):
        return generator.matrix()
    if isinstance(generator, str):
        if generator not in GENERATORS:
            raise BadGenerator(f"unknown generator {generator!r}")
        return GENERATORS[generator]
    return np.asarray(generator, dtype=float)


class FundamentalField(VectorField):
    """Velocity field of t -> exp(tX) . p, differentiated with jets."""

    def __init__(self, space: str, generator, name: str | None = None):
        if space not in SPACES:
            raise BadGenerator(f"no group action registered on {space!r}")
        x = generator_matrix(generator)
        if x.shape != (4, 4):
            raise BadGenerator("generators are 4x4 matrices")
        try:
            ACTING_ALGEBRA[space].coefficients(x)
        except NotClosed as exc:
            raise BadGenerator(f"generator is not in the algebra acting on {space}") from exc
        self.space = space
        self.matrix = x
        chart = SPACE_CHART[space]
        n = CHART_DIMS[chart]

        def moved(v):
            t = v[0]
            entries = [[(1.0 if i == j else 0.0) + t * x[i, j] if x[i, j] else (1.0 if i == j else 0.0)
                        for j in range(4)] for i in range(4)]
            return act_coords(entries, chart, v[1:])

        self._moved = moved
        super().__init__(self._components, n, name or "X*")

    def _components(self, coords):
        raise TypeError("fundamental fields are evaluated through jet(); they do not nest")

    def jet(self, point):
        point = np.asarray(point, float)
        _, jac, hess = jets.evaluate(self._moved, np.concatenate([[0.0], point]))
        return np.real(jac[:, 0]), np.real(hess[:, 0, 1:])

    def at(self, point):
        return self.jet(point)[0]


def fundamental_field(space: str, generator, point=None):
    """Fundamental field of ``generator`` on ``space``; evaluated if ``point`` given."""
    field = FundamentalField(space, generator)
    if point is None:
        return field
    coords = point.coords if isinstance(point, ChartPoint) else point
    return field.at(coords)


def closed_fundamental_fields(space: str) -> dict[str, Callable]:
    """Fundamental fields written out in closed form (oracles for the jet version)."""
    def x1_fields(x, y, zero):
        return {
            "F": [1.0 + zero, zero],
            "G": [y * y - x * x, -2 * x * y],
            "H": [2 * x, 2 * y],
        }

    if space == "X1":
        return {k: (lambda v, k=k: x1_fields(v[0], v[1], 0.0 * v[0])[k]) for k in "FGH"}
    if space == "SL2R":
        def f(v, k):
            x, y, t = v
            zero = 0.0 * x
            base = x1_fields(x, y, zero)[k]
            extra = {"F": zero, "G": -y, "H": zero}[k]
            return base + [extra]

        return {k: (lambda v, k=k: f(v, k)) for k in "FGH"}
    if space in ("XJ1", "ExtXJ1"):
        def g(v, k):
            x, y, p, q = v[:4]
            zero = 0.0 * x
            fld = {
                "F": x1_fields(x, y, zero)["F"] + [zero, -p],
                "G": x1_fields(x, y, zero)["G"] + [-q, zero],
                "H": x1_fields(x, y, zero)["H"] + [-p, q],
                "P": [zero, zero, 1.0 + zero, zero],
                "Q": [zero, zero, zero, 1.0 + zero],
                "R": [zero, zero, zero, zero],
            }[k]
            if space == "ExtXJ1":
                fld = fld + [{"P": q, "Q": -p, "R": 1.0 + zero}.get(k, zero)]
            return fld

        return {k: (lambda v, k=k: g(v, k)) for k in "FGHPQR"}
    if space == "H1":
        def h(v, k):
            lam, mu, _ = v
            zero = 0.0 * lam
            return {"P": [1.0 + zero, zero, mu], "Q": [zero, 1.0 + zero, -lam], "R": [zero, zero, 1.0 + zero]}[k]

        return {k: (lambda v, k=k: h(v, k)) for k in "PQR"}
    raise ValueError(f"no closed fundamental fields for {space}")


def isometry_pullback_residual(space: str, params: MetricParams, g: GroupElement, point) -> float:
    """sup |J^T g(act(g, p)) J - g(p)| for the action of ``g``."""
    params = _params_for(space, params)
    coords = np.asarray(point.coords if isinstance(point, ChartPoint) else point, float)
    check_point(space, coords)
    chart = SPACE_CHART[space]
    entries = g.matrix.tolist()
    val, jac, _ = jets.evaluate(lambda v: act_coords(entries, chart, v), coords)
    moved = np.real(val)
    jac = np.real(jac)
    g1 = np.array(closed_metric(space, list(moved), params), dtype=float)
    g0 = np.array(closed_metric(space, list(coords), params), dtype=float)
    return float(np.max(np.abs(jac.T @ g1 @ jac - g0)))


def acting_group(space: str) -> str:
    return {"H1": "H1", "SL2R": "SL2R", "X1": "SL2R"}.get(space, "GJ1")


# corpus


def bcv_denominator(kappa, x, y):
    return 1 + kappa * (x * x + y * y) / 4


def bcv_coframe_rows(space, c) -> list:
    """Orthonormal coframe of a BCV space (or its half-plane chart)."""
    zero = 0.0 * c[0]
    if isinstance(space, CayleyBCV):
        x, y, _ = cayley_bcv_point(space.kappa, c)
        (dx, dy) = _cayley_bcv_jacobian(space.kappa, c)
        d = bcv_denominator(space.kappa, x, y)
        tau = space.tau
        r1 = [dx[0] / d, dx[1] / d, zero]
        r2 = [dy[0] / d, dy[1] / d, zero]
        r3 = [tau * (y * dx[0] - x * dy[0]) / d, tau * (y * dx[1] - x * dy[1]) / d, 1.0 + zero]
        return [r1, r2, r3]
    x, y, _ = c
    d = bcv_denominator(space.kappa, x, y)
    tau = space.tau
    return [[1 / d, zero, zero], [zero, 1 / d, zero], [tau * y / d, -tau * x / d, 1.0 + zero]]


def bcv_frame_columns(space: BCV, c) -> list:
    x, y, _ = c
    zero = 0.0 * x
    d = bcv_denominator(space.kappa, x, y)
    tau = space.tau
    return [[d, zero, -tau * y], [zero, d, tau * x], [zero, zero, 1.0 + zero]]


def cayley_bcv_point(kappa, c):
    """(a, b, z) -> (x, y, z) through sqrt(-kappa/4) zeta = (v - i)/(v + i)."""
    a, b, z = c
    e = a * a + (b + 1) * (b + 1)
    s = 2 / np.sqrt(-kappa)
    # (v - i)/(v + i) = (a^2 + b^2 - 1 - 2 i a)/E
    return s * (a * a + b * b - 1) / e, s * (-2 * a) / e, z


def _cayley_bcv_jacobian(kappa, c):
    """Rows (dx/da, dx/db), (dy/da, dy/db) in closed form."""
    a, b, _ = c
    e = a * a + (b + 1) * (b + 1)
    s = 2 / np.sqrt(-kappa)
    num_x = a * a + b * b - 1
    dxa = s * (2 * a * e - num_x * 2 * a) / (e * e)
    dxb = s * (2 * b * e - num_x * 2 * (b + 1)) / (e * e)
    dya = s * (-2 * e + 2 * a * 2 * a) / (e * e)
    dyb = s * (2 * a * 2 * (b + 1)) / (e * e)
    return (dxa, dxb), (dya, dyb)


def cayley_bcv_printed_coframe(space: CayleyBCV, c) -> list:
    """The half-plane coframe as printed, for comparison."""
    a, b, _ = c
    k, tau = space.kappa, space.tau
    zero = 0.0 * a
    e = a * a + (b + 1) * (b + 1)
    w = np.sqrt(-k) / 4
    return [
        [w * (-a * a + b * b + 2 * b + 1) / (b * e), w * (-2 * a * (b + 1)) / (b * e), zero],
        [w * (a * a - b * b - 2 * b - 1) / (b * e), w * (2 * a) / (b * e), zero],
        [(2 * tau / k) * (a * a - b * b + 1) / (b * e), (2 * tau / k) * (2 * a * b) / (b * e), 1.0 + zero],
    ]


def cayley_bcv_printed_metric(space: CayleyBCV, c) -> list:
    """-(1/kappa)(da^2 + db^2)/b^2 + (printed omega3)^2."""
    a, b, _ = c
    zero = 0.0 * a
    f = -1 / (space.kappa * b * b)
    w3 = cayley_bcv_printed_coframe(space, c)[2]
    base = [[f, zero, zero], [zero, f, zero], [zero, zero, zero]]
    return [[base[i][j] + w3[i] * w3[j] for j in range(3)] for i in range(3)]


def _fn_field(fn, dim, name):
    return VectorField(fn, dim, name)


def corpus_fields(space) -> dict[str, VectorField]:
    """Killing fields (or frame fields for BCV) of a corpus space."""
    if space == "Sphere2":
        def comps(v, k):
            t, ph = v
            zero = 0.0 * t
            cot = np.cos(t) / np.sin(t)
            return {
                "X": [zero, 1.0 + zero],
                "Y": [np.sin(ph), np.cos(ph) * cot],
                "Z": [np.cos(ph), -np.sin(ph) * cot],
            }[k]
    elif space == "Sphere2Stereo":
        def comps(v, k):
            xi, eta = v
            return {
                "X": [-eta, xi],
                "Y": [xi * eta, 0.5 * (1 - xi * xi + eta * eta)],
                "Z": [-0.5 * (1 + xi * xi - eta * eta), -xi * eta],
            }[k]
    elif space == "Disk1":
        def comps(v, k):
            xi, eta = v
            return {
                "X": [0.5 * (xi * xi - eta * eta - 1), xi * eta],
                "Y": [xi * eta, 0.5 * (eta * eta - xi * xi - 1)],
                "Z": [eta, -xi],
            }[k]
    elif space == "Plane2":
        def comps(v, k):
            x1, x2 = v
            zero = 0.0 * x1
            return {"X": [-x2, x1], "Y": [1.0 + zero, zero], "Z": [zero, 1.0 + zero]}[k]
    elif isinstance(space, BCV):
        return {
            f"e{j + 1}": VectorField(lambda v, j=j: bcv_frame_columns(space, v)[j], 3, f"e{j + 1}")
            for j in range(3)
        }
    else:
        raise ValueError(f"no corpus fields for {space!r}")
    return {k: VectorField(lambda v, k=k: comps(v, k), 2, k) for k in "XYZ"}


def bcv_killing_fields(space: BCV) -> dict[str, VectorField]:
    """Generators of the isometry algebra of a BCV space."""
    k, tau = space.kappa, space.tau

    def comps(v, name):
        x, y, z = v
        zero = 0.0 * x
        if name == "K_z":
            return [zero, zero, 1.0 + zero]
        if name == "K_rot":
            return [-y, x, zero]
        # transvections of the base lifted to the bundle
        if name == "K_1":
            return [1 + k * (x * x - y * y) / 4, k * x * y / 2, tau * y]
        if name == "K_2":
            return [k * x * y / 2, 1 - k * (x * x - y * y) / 4, -tau * x]
        raise KeyError(name)

    return {n: VectorField(lambda v, n=n: comps(v, n), 3, n) for n in ("K_1", "K_2", "K_rot", "K_z")}


def printed_bracket_table(space) -> dict:
    """Printed brackets as {(A, B): callable(point, fields) -> vector}."""
    def combo(coeffs):
        return lambda pt, f: sum(c * f[n].at(pt) for n, c in coeffs.items()) if coeffs else np.zeros(len(pt))

    if space == "Sphere2":
        return {("X", "Y"): combo({"Z": 1}), ("Z", "X"): combo({"Y": 1}), ("Y", "Z"): combo({"X": 1})}
    if space == "Sphere2Stereo":
        # the printed stereographic Y is minus the transported spherical Y,
        # so the sphere table holds with Y -> -Y
        return {("X", "Y"): combo({"Z": -1}), ("Z", "X"): combo({"Y": -1}), ("Y", "Z"): combo({"X": -1})}
    if space == "Disk1":
        return {("X", "Y"): combo({"Z": -1}), ("Y", "Z"): combo({"X": 1}), ("Z", "X"): combo({"Y": 1})}
    if space == "Plane2":
        return {("X", "Y"): combo({"Z": -1}), ("Y", "Z"): combo({}), ("Z", "X"): combo({"Y": -1})}
    if isinstance(space, BCV):
        kap, tau = space.kappa, space.tau

        def e12(pt, f):
            x, y, _ = pt
            return (kap / 2) * (-y * f["e1"].at(pt) + x * f["e2"].at(pt)) + 2 * tau * f["e3"].at(pt)

        return {("e1", "e2"): e12, ("e2", "e3"): combo({}), ("e3", "e1"): combo({})}
    raise ValueError(f"no printed table for {space!r}")


def stereographic_map(v):
    """(theta, phi) -> (xi, eta) with xi - i eta = cot(theta/2) exp(-i phi)."""
    t, ph = v
    r = np.cos(t / 2) / np.sin(t / 2)
    return [r * np.cos(ph), r * np.sin(ph)]


def stereographic_transfer_residual(points) -> dict:
    """Printed stereographic fields minus the transported spherical ones."""
    sphere, stereo = corpus_fields("Sphere2"), corpus_fields("Sphere2Stereo")
    out = {n: 0.0 for n in "XYZ"}
    for pt in points:
        for n in "XYZ":
            image, v = pushforward(sphere[n], stereographic_map, pt)
            out[n] = max(out[n], float(np.max(np.abs(stereo[n].at(image) - v))))
    return out


def stereographic_metric_residual(points) -> float:
    worst = 0.0
    for pt in points:
        val, jac, _ = jets.evaluate(stereographic_map, np.asarray(pt, float))
        pulled = jac.T @ np.array(closed_metric("Sphere2Stereo", list(val)), float) @ jac
        worst = max(worst, float(np.max(np.abs(pulled - np.array(closed_metric("Sphere2", list(pt)), float)))))
    return worst


def cayley_bcv_report(space: CayleyBCV, points) -> dict:
    """Pulled-back BCV metric and coframe against the printed half-plane forms."""
    bcv = BCV(space.kappa, space.tau)
    out = {"metric_vs_pullback": 0.0, "metric_vs_printed": 0.0, "coframe_vs_printed": [0.0, 0.0, 0.0]}
    for pt in points:
        pt = np.asarray(pt, float)
        val, jac, _ = jets.evaluate(lambda v: list(cayley_bcv_point(space.kappa, v)), pt)
        pulled = jac.T @ np.array(closed_metric(bcv, list(val)), float) @ jac
        mine = np.array(closed_metric(space, list(pt)), float)
        printed = np.array(cayley_bcv_printed_metric(space, list(pt)), float)
        out["metric_vs_pullback"] = max(out["metric_vs_pullback"], float(np.max(np.abs(pulled - mine))))
        out["metric_vs_printed"] = max(out["metric_vs_printed"], float(np.max(np.abs(pulled - printed))))
        rows = np.array(bcv_coframe_rows(bcv, list(val)), float) @ jac
        prow = np.array(cayley_bcv_printed_coframe(space, list(pt)), float)
        for i in range(3):
            out["coframe_vs_printed"][i] = max(out["coframe_vs_printed"][i], float(np.max(np.abs(rows[i] - prow[i]))))
    return out


def pushforward(field: VectorField, mapping: Callable, point) -> tuple[np.ndarray, np.ndarray]:
    """(image point, pushed vector) of ``field`` at ``point``."""
    val, jac, _ = jets.evaluate(mapping, np.asarray(point, float))
    return np.real(val), np.real(jac) @ field.at(point)


def corpus_killing_suite(space, points) -> dict:
    """Killing residuals and printed-bracket residuals over sample points."""
    fields = corpus_fields(space)
    check = bcv_killing_fields(space) if isinstance(space, BCV) else fields
    killing = {n: 0.0 for n in check}
    brackets = {f"[{a},{b}]": 0.0 for a, b in printed_bracket_table(space)}
    table = printed_bracket_table(space)
    for pt in points:
        pt = np.asarray(pt, float)
        for n, f in check.items():
            killing[n] = max(killing[n], float(np.max(np.abs(lie_derivative_of_metric(f, space, None, pt)))))
        for (a, b), expect in table.items():
            r = vf_bracket(fields[a], fields[b], pt) - expect(pt, fields)
            key = f"[{a},{b}]"
            brackets[key] = max(brackets[key], float(np.max(np.abs(r))))
    return {"killing": killing, "brackets": brackets}


def random_corpus_point(rng: np.random.Generator, space) -> np.ndarray:
    if space == "Sphere2":
        return np.array([rng.uniform(0.2, np.pi - 0.2), rng.uniform(-np.pi, np.pi)])
    if space == "Disk1":
        r, ph = 0.9 * np.sqrt(rng.uniform()), rng.uniform(-np.pi, np.pi)
        return np.array([r * np.cos(ph), r * np.sin(ph)])
    if space in ("Sphere2Stereo", "Plane2"):
        return rng.uniform(-2, 2, 2)
    if isinstance(space, PoincareHalfSpace):
        v = rng.uniform(-2, 2, space.dim)
        v[0] = rng.uniform(0.2, 3)
        return v
    if isinstance(space, BCV):
        lim = 1.5 if space.kappa >= 0 else 0.9 * 2 / np.sqrt(-space.kappa)
        r, ph = lim * np.sqrt(rng.uniform()), rng.uniform(-np.pi, np.pi)
        return np.array([r * np.cos(ph), r * np.sin(ph), rng.uniform(-2, 2)])
    if isinstance(space, CayleyBCV):
        return np.array([rng.uniform(-2, 2), rng.uniform(0.2, 3), rng.uniform(-2, 2)])
    raise ValueError(f"no sampler for {space!r}")
