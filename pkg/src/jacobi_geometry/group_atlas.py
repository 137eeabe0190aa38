"""Concrete groups, charts and actions.

The Heisenberg group H1, SL(2, R) and the Jacobi group G^J_1 are all
realised as 4x4 real matrices

    [[a, 0, b,  q],
     [l, 1, m,  k],
     [c, 0, d, -p],
     [0, 0, 0,  1]]

with ad - bc = 1, (l, m) = (p, q) M and the SL(2) block M = [[a, b], [c, d]].
H1 elements have M = I, SL(2, R) elements have zero Heisenberg part.

Coordinates live in :class:`ChartPoint`.  The group charts are ``EZ``
(x, y, theta, lambda, mu, kappa), ``S`` (x, y, theta, p, q, kappa),
``Iwasawa`` (x, y, theta) and ``Heisenberg`` (lambda, mu, kappa).  The base
charts are ``HalfPlane`` (x, y), ``SJPlane`` (x, y, p, q), ``ExtSJPlane``
(x, y, p, q, kappa), ``ComplexHP`` (Re tau, Im tau, Re z, Im z), ``Disk``
(Re w, Im w, Re z, Im z), and the split charts ``DiskFiber`` (Re w, Im w,
Re eta, Im eta) and ``HalfPlaneFiber`` (x, y, Re eta, Im eta).

Every coordinate formula here uses plain arithmetic and numpy ufuncs, so it
also runs on :class:`~jacobi_geometry.jets.Jet` inputs.  That is how the
fundamental vector fields and all pullbacks get their derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .jets import Jet, value_of

DEGENERACY_GUARD = 1e-300
PATTERN_TOL = 1e-12


class BadChart(ValueError):
    pass


class Degenerate(ValueError):
    pass


class GroupMismatch(ValueError):
    pass


class OutOfDomain(ValueError):
    pass


CHART_DIMS = {
    "EZ": 6,
    "S": 6,
    "Iwasawa": 3,
    "Heisenberg": 3,
    "HalfPlane": 2,
    "SJPlane": 4,
    "ExtSJPlane": 5,
    "ComplexHP": 4,
    "Disk": 4,
    "DiskFiber": 4,
    "HalfPlaneFiber": 4,
}
GROUP_CHARTS = ("EZ", "S", "Iwasawa", "Heisenberg")
BASE_CHARTS = ("HalfPlane", "SJPlane", "ExtSJPlane", "ComplexHP", "Disk", "DiskFiber", "HalfPlaneFiber")
UPPER_CHARTS = ("EZ", "S", "Iwasawa", "HalfPlane", "SJPlane", "ExtSJPlane", "ComplexHP", "HalfPlaneFiber")
CHART_GROUP = {"EZ": "GJ1", "S": "GJ1", "Iwasawa": "SL2R", "Heisenberg": "H1"}
GROUPS = ("H1", "SL2R", "GJ1")


def wrap_angle(theta):
    """Map an angle into (-pi, pi]."""
    t = np.mod(theta + np.pi, 2 * np.pi) - np.pi
    return np.where(t == -np.pi, np.pi, t) if np.ndim(t) else (np.pi if t == -np.pi else float(t))


@dataclass(frozen=True)
class ChartPoint:
    chart: str
    coords: tuple

    def __post_init__(self):
        if self.chart not in CHART_DIMS:
            raise BadChart(f"unknown chart {self.chart!r}")
        coords = tuple(float(c) for c in np.asarray(self.coords, dtype=float).reshape(-1))
        if len(coords) != CHART_DIMS[self.chart]:
            raise BadChart(f"{self.chart} needs {CHART_DIMS[self.chart]} coordinates, got {len(coords)}")
        if not all(np.isfinite(coords)):
            raise OutOfDomain("coordinates must be finite")
        check_domain(self.chart, coords)
        object.__setattr__(self, "coords", coords)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords)

    def __len__(self) -> int:
        return len(self.coords)


def check_domain(chart: str, coords: Sequence[float]) -> None:
    if chart in UPPER_CHARTS:
        if not coords[1] > 0:
            raise OutOfDomain(f"{chart} needs y > 0, got {coords[1]}")
    if chart in ("Disk", "DiskFiber") and not coords[0] ** 2 + coords[1] ** 2 < 1:
        raise OutOfDomain("Disk chart needs |w| < 1")


@dataclass(frozen=True)
class GroupElement:
    matrix: np.ndarray
    group: str

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError("group elements are 4x4 matrices")
        if self.group not in GROUPS:
            raise GroupMismatch(f"unknown group {self.group!r}")
        _check_pattern(m, self.group)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def block(self) -> np.ndarray:
        return self.matrix[np.ix_([0, 2], [0, 2])]

    @property
    def abcd(self) -> tuple[float, float, float, float]:
        m = self.matrix
        return m[0, 0], m[0, 2], m[2, 0], m[2, 2]

    @property
    def heisenberg(self) -> tuple[float, float, float]:
        """(lambda, mu, kappa)."""
        m = self.matrix
        return m[1, 0], m[1, 2], m[1, 3]

    @property
    def pq(self) -> tuple[float, float]:
        return -self.matrix[2, 3], self.matrix[0, 3]

    @classmethod
    def identity(cls, group: str = "GJ1") -> "GroupElement":
        return cls(np.eye(4), group)


def _check_pattern(m: np.ndarray, group: str) -> None:
    scale = max(1.0, float(np.max(np.abs(m))))
    tol = PATTERN_TOL * scale * scale
    fixed = [(0, 1, 0.0), (1, 1, 1.0), (2, 1, 0.0), (3, 0, 0.0), (3, 1, 0.0), (3, 2, 0.0), (3, 3, 1.0)]
    for i, j, v in fixed:
        if abs(m[i, j] - v) > tol:
            raise ValueError(f"entry ({i + 1},{j + 1}) must be {v} for a {group} element")
    a, b, c, d = m[0, 0], m[0, 2], m[2, 0], m[2, 2]
    if abs(a * d - b * c - 1.0) > tol:
        raise ValueError(f"SL(2) block must have determinant 1, got {a * d - b * c}")
    lam, mu = m[1, 0], m[1, 2]
    p, q = lam * d - mu * c, -lam * b + mu * a
    if abs(m[0, 3] - q) > tol or abs(m[2, 3] + p) > tol:
        raise ValueError("translation column inconsistent with (lambda, mu) M^-1")
    if group == "H1" and np.max(np.abs(np.array([a - 1, b, c, d - 1]))) > tol:
        raise ValueError("H1 elements have identity SL(2) block")
    if group == "SL2R" and max(abs(lam), abs(mu), abs(m[1, 3])) > tol:
        raise ValueError("SL2R elements have zero Heisenberg part")


@dataclass(frozen=True)
class MetricParams:
    """Positive metric weights; ``None`` marks an inactive parameter."""

    alpha: float | None = None
    beta: float | None = None
    gamma: float | None = None
    delta: float | None = None

    NAMES = ("alpha", "beta", "gamma", "delta")

    def __post_init__(self):
        for name in self.NAMES:
            v = getattr(self, name)
            if v is not None:
                v = float(v)
                if not (np.isfinite(v) and v > 0):
                    raise ValueError(f"{name} must be a positive real, got {v}")
                object.__setattr__(self, name, v)

    @classmethod
    def unit(cls) -> "MetricParams":
        return cls(1.0, 1.0, 1.0, 1.0)

    def active(self) -> tuple[str, ...]:
        return tuple(n for n in self.NAMES if getattr(self, n) is not None)

    def restrict(self, space: str) -> "MetricParams":
        """Keep only the parameters the given space uses; they must be present."""
        needed = ACTIVE_PARAMS[space]
        missing = [n for n in needed if getattr(self, n) is None]
        if missing:
            raise ValueError(f"{space} needs {', '.join(missing)}")
        return MetricParams(**{n: getattr(self, n) for n in needed})

    def require(self, space: str) -> "MetricParams":
        """Strict check: exactly the active parameters of ``space``."""
        needed = ACTIVE_PARAMS[space]
        extra = [n for n in self.active() if n not in needed]
        if extra:
            raise ValueError(f"{space} does not use {', '.join(extra)}")
        return self.restrict(space)

    def get(self, name: str) -> float:
        v = getattr(self, name)
        if v is None:
            raise ValueError(f"parameter {name} is inactive")
        return v

    @property
    def c1(self) -> float:
        return 4 * self.get("alpha")

    @property
    def c2(self) -> float:
        return self.get("gamma")

    # Representation labels of the Kahler two-forms on the disk and the
    # half-plane.  These are the values that make the two-form, the potential
    # and the metric agree.
    @property
    def k(self) -> float:
        return self.c1 / 2

    @property
    def mu(self) -> float:
        return self.c2

    def as_dict(self) -> dict:
        return {n: getattr(self, n) for n in self.active()}


ACTIVE_PARAMS = {
    "H1": (),
    "SL2R": ("alpha", "beta"),
    "X1": ("alpha",),
    "XJ1": ("alpha", "gamma"),
    "ExtXJ1": ("alpha", "gamma", "delta"),
    "GJ1": ("alpha", "beta", "gamma", "delta"),
    "DJ1": ("alpha", "gamma"),
}


# coordinate formulas, jet-capable


def iwasawa_block(x, y, theta):
    """(a, b, c, d) of the SL(2) element with Iwasawa coordinates."""
    s, c = np.sin(theta), np.cos(theta)
    ry = np.sqrt(y)
    return ry * c - x * s / ry, ry * s + x * c / ry, -s / ry, c / ry


def iwasawa_coords(a, b, c, d):
    n2 = c * c + d * d
    if abs(value_of(n2)) <= DEGENERACY_GUARD:
        raise Degenerate("c^2 + d^2 vanishes")
    return (a * c + b * d) / n2, 1.0 / n2, np.arctan2(-c, d)


def pq_from_lm(lam, mu, a, b, c, d):
    return lam * d - mu * c, -lam * b + mu * a


def lm_from_pq(p, q, a, b, c, d):
    return p * a + q * c, p * b + q * d


def matrix_entries(a, b, c, d, lam, mu, kappa):
    """Nested 4x4 list; entries may be jets."""
    p, q = pq_from_lm(lam, mu, a, b, c, d)
    return [
        [a, 0.0, b, q],
        [lam, 1.0, mu, kappa],
        [c, 0.0, d, -p],
        [0.0, 0.0, 0.0, 1.0],
    ]


def embed_coords(chart: str, coords):
    """Group-chart coordinates to nested 4x4 matrix entries."""
    if chart == "Iwasawa":
        x, y, t = coords
        return matrix_entries(*iwasawa_block(x, y, t), 0.0, 0.0, 0.0)
    if chart == "Heisenberg":
        lam, mu, kappa = coords
        return matrix_entries(1.0, 0.0, 0.0, 1.0, lam, mu, kappa)
    if chart == "EZ":
        x, y, t, lam, mu, kappa = coords
        return matrix_entries(*iwasawa_block(x, y, t), lam, mu, kappa)
    if chart == "S":
        x, y, t, p, q, kappa = coords
        a, b, c, d = iwasawa_block(x, y, t)
        lam, mu = lm_from_pq(p, q, a, b, c, d)
        return matrix_entries(a, b, c, d, lam, mu, kappa)
    raise BadChart(f"{chart} is not a group chart")


def read_coords(chart: str, m):
    """Nested 4x4 entries to group-chart coordinates."""
    a, b, c, d = m[0][0], m[0][2], m[2][0], m[2][2]
    lam, mu, kappa = m[1][0], m[1][2], m[1][3]
    if chart == "Heisenberg":
        return [lam, mu, kappa]
    x, y, t = iwasawa_coords(a, b, c, d)
    if chart == "Iwasawa":
        return [x, y, t]
    if chart == "EZ":
        return [x, y, t, lam, mu, kappa]
    if chart == "S":
        p, q = pq_from_lm(lam, mu, a, b, c, d)
        return [x, y, t, p, q, kappa]
    raise BadChart(f"{chart} is not a group chart")


def matmul(a, b):
    """Product of nested-list matrices whose entries may be jets."""
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = 0.0
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if _is_zero(x) or _is_zero(y):
                    continue
                s = s + x * y
            row.append(s)
        out.append(row)
    return out


def _is_zero(x) -> bool:
    return not isinstance(x, Jet) and x == 0


# public operations on values


def _require_group_chart(point: ChartPoint) -> None:
    if point.chart not in GROUP_CHARTS:
        raise BadChart(f"{point.chart} is a base-space chart")


def chart_embed(point: ChartPoint) -> GroupElement:
    _require_group_chart(point)
    m = np.array(embed_coords(point.chart, point.coords), dtype=float)
    return GroupElement(m, CHART_GROUP[point.chart])


def chart_read(g: GroupElement, chart: str) -> ChartPoint:
    if chart not in GROUP_CHARTS:
        raise BadChart(f"{chart} is a base-space chart")
    if CHART_GROUP[chart] != g.group and not (g.group != "GJ1" and chart in ("EZ", "S")):
        raise GroupMismatch(f"cannot read a {g.group} element in the {chart} chart")
    coords = read_coords(chart, g.matrix.tolist())
    if chart in ("Iwasawa", "EZ", "S"):
        coords[2] = wrap_angle(coords[2])
    return ChartPoint(chart, coords)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.group != h.group:
        raise GroupMismatch(f"cannot compose {g.group} with {h.group}")
    return GroupElement(g.matrix @ h.matrix, g.group)


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(np.linalg.inv(g.matrix), g.group)


def inverse_closed_form(g: GroupElement) -> np.ndarray:
    """Inverse assembled from (M^-1, -Y, -kappa)."""
    a, b, c, d = g.abcd
    lam, mu, kappa = g.heisenberg
    p, q = g.pq
    return np.array([[d, 0, -b, -mu], [-p, 1, -q, -kappa], [-c, 0, a, lam], [0, 0, 0, 1.0]])


def compose_coords(m1, x1, k1, m2, x2, k2):
    """Composition law on (M, X, kappa) with X = (lambda, mu) a row vector."""
    m1, m2 = np.asarray(m1, float), np.asarray(m2, float)
    x1, x2 = np.asarray(x1, float), np.asarray(x2, float)
    xm = x1 @ m2
    return m1 @ m2, xm + x2, k1 + k2 + (xm[0] * x2[1] - xm[1] * x2[0])


def element_from_parts(m, x, kappa, group: str = "GJ1") -> GroupElement:
    (a, b), (c, d) = np.asarray(m, float)
    return GroupElement(np.array(matrix_entries(a, b, c, d, x[0], x[1], kappa), float), group)


def parts_of(g: GroupElement):
    """(M, X, kappa) of an element."""
    lam, mu, kappa = g.heisenberg
    return g.block.copy(), np.array([lam, mu]), kappa


def ez_s_convert(point: ChartPoint, direction: str = "ez_to_s") -> ChartPoint:
    x, y, t, u, v, kappa = point.coords
    a, b, c, d = iwasawa_block(x, y, t)
    if direction == "ez_to_s":
        if point.chart != "EZ":
            raise BadChart("expected an EZ point")
        return ChartPoint("S", (x, y, t, *pq_from_lm(u, v, a, b, c, d), kappa))
    if direction == "s_to_ez":
        if point.chart != "S":
            raise BadChart("expected an S point")
        return ChartPoint("EZ", (x, y, t, *lm_from_pq(u, v, a, b, c, d), kappa))
    raise ValueError(f"unknown direction {direction!r}")


def reduced_part(g: GroupElement):
    """Image in G^J(R)_0: the pair (M, X), dropping kappa."""
    m, x, _ = parts_of(g)
    return m, x


def reduced_compose(mx1, mx2):
    (m1, x1), (m2, x2) = mx1, mx2
    return m1 @ m2, x1 @ m2 + x2


# actions


def act_coords(entries, chart: str, coords):
    """Action of the element with matrix ``entries`` on chart coordinates.

    ``entries`` is a nested 4x4 list (floats or jets); the result is a list of
    coordinates, jets if any input was a jet.
    """
    a, b, c, d = entries[0][0], entries[0][2], entries[2][0], entries[2][2]
    lam, mu, kappa = entries[1][0], entries[1][2], entries[1][3]
    if chart in GROUP_CHARTS:
        return read_coords(chart, matmul(entries, embed_coords(chart, coords)))
    if chart == "HalfPlane":
        return list(_mobius(a, b, c, d, coords[0], coords[1]))
    if chart == "ComplexHP":
        tx, ty, zx, zy = coords
        p, q = pq_from_lm(lam, mu, a, b, c, d)
        x1, y1 = _mobius(a, b, c, d, tx, ty)
        # z1 = (z + lam tau + mu) / (c tau + d)
        nr, ni = zx + lam * tx + mu, zy + lam * ty
        dr, di = c * tx + d, c * ty
        den = dr * dr + di * di
        _guard(den)
        return [x1, y1, (nr * dr + ni * di) / den, (ni * dr - nr * di) / den]
    if chart in ("SJPlane", "ExtSJPlane"):
        x, y, p1, q1 = coords[:4]
        x1, y1 = _mobius(a, b, c, d, x, y)
        p, q = pq_from_lm(lam, mu, a, b, c, d)
        out = [x1, y1, p + d * p1 - c * q1, q - b * p1 + a * q1]
        if chart == "ExtSJPlane":
            out.append(kappa + coords[4] + lam * q1 - mu * p1)
        return out
    if chart == "Disk":
        raise BadChart("act on the disk chart goes through transform_lab")
    raise BadChart(f"unknown chart {chart!r}")


def _guard(den):
    if abs(value_of(den)) <= DEGENERACY_GUARD:
        raise Degenerate("|c tau + d| vanishes")


def _mobius(a, b, c, d, x, y):
    """tau -> (a tau + b)/(c tau + d) on real and imaginary parts."""
    cx = c * x + d
    lam = cx * cx + (c * y) * (c * y)
    _guard(lam)
    return ((a * x + b) * cx + a * c * y * y) / lam, y / lam


def iwasawa_action(a, b, c, d, x, y, theta):
    """Left multiplication written out on (x, y, theta)."""
    cx = c * x + d
    lam = cx * cx + (c * y) * (c * y)
    _guard(lam)
    x1 = ((a * x + b) * cx + a * c * y * y) / lam
    y1 = y / lam
    r = np.sqrt(lam)
    s = (cx * np.sin(theta) - c * y * np.cos(theta)) / r
    co = (c * y * np.sin(theta) + cx * np.cos(theta)) / r
    return x1, y1, np.arctan2(s, co)


def act(g: GroupElement, point: ChartPoint) -> ChartPoint:
    if point.chart == "Iwasawa":
        out = list(iwasawa_action(*g.abcd, *point.coords))
    else:
        if point.chart in GROUP_CHARTS and CHART_GROUP[point.chart] != g.group:
            if not (g.group in ("H1", "SL2R") and CHART_GROUP[point.chart] == "GJ1"):
                raise GroupMismatch(f"{g.group} does not act on the {point.chart} chart")
        out = act_coords(g.matrix.tolist(), point.chart, point.coords)
    if point.chart in ("Iwasawa", "EZ", "S"):
        out[2] = wrap_angle(out[2])
    return ChartPoint(point.chart, out)


def point_distance(p1: ChartPoint, p2: ChartPoint) -> float:
    """Sup distance, with angle differences taken modulo 2 pi."""
    if p1.chart != p2.chart:
        raise BadChart("points live in different charts")
    diff = np.array(p1.coords) - np.array(p2.coords)
    if p1.chart in ("Iwasawa", "EZ", "S"):
        diff[2] = (diff[2] + np.pi) % (2 * np.pi) - np.pi
    return float(np.max(np.abs(diff)))


def action_is_homomorphism_residual(g: GroupElement, h: GroupElement, point: ChartPoint) -> float:
    return point_distance(act(compose(g, h), point), act(g, act(h, point)))


# random sampling helpers shared by tests, suites and the CLI


def random_point(rng: np.random.Generator, chart: str, scale: float = 2.0) -> ChartPoint:
    n = CHART_DIMS[chart]
    v = rng.uniform(-scale, scale, n)
    if chart in UPPER_CHARTS:
        v[1] = np.exp(rng.uniform(np.log(0.2), np.log(5.0)))
    if chart in ("EZ", "S", "Iwasawa"):
        v[2] = rng.uniform(-np.pi, np.pi)
    if chart in ("Disk", "DiskFiber"):
        r, phi = 0.9 * np.sqrt(rng.uniform()), rng.uniform(-np.pi, np.pi)
        v[0], v[1] = r * np.cos(phi), r * np.sin(phi)
    return ChartPoint(chart, v)


def random_element(rng: np.random.Generator, group: str = "GJ1", scale: float = 1.5) -> GroupElement:
    if group == "H1":
        return chart_embed(random_point(rng, "Heisenberg", scale))
    if group == "SL2R":
        return chart_embed(random_point(rng, "Iwasawa", scale))
    return chart_embed(random_point(rng, "EZ", scale))
