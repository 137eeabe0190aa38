"""Invariant coframes and frames.

Numeric coframes come from the Maurer-Cartan form: the jets of the chart
embedding give dg, and g^-1 dg (or dg g^-1) is decomposed on the algebra
basis.  Closed-form coframes and frames are written out per space and
checked against the numeric ones.

Row ``i`` of a coframe matrix is the one-form lambda_i on the coordinate
differentials; column ``j`` of a frame matrix is the vector field L^j on the
coordinate partials.

Scaled forms use the metric weights:

    lambda_1 = sqrt(alpha) (lambda^f + lambda^g)    lambda_4 = sqrt(gamma) lambda^P
    lambda_2 = 2 sqrt(alpha) lambda^h                lambda_5 = sqrt(gamma) lambda^Q
    lambda_3 = sqrt(beta) (lambda^f - lambda^g)      lambda_6 = sqrt(delta) lambda^R

so the dual frame corresponds to the algebra basis returned by
:func:`frame_basis`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import jets
from .group_atlas import CHART_DIMS, ChartPoint, MetricParams, act_coords, embed_coords, iwasawa_block
from .lie_core import F, G, H, HEISENBERG, JACOBI, P, Q, R, SL2, AlgebraBasis, Singular

SPACES = ("H1", "SL2R", "X1", "XJ1", "ExtXJ1", "GJ1")
GROUP_SPACES = ("H1", "SL2R", "GJ1")
SPACE_CHART = {
    "H1": "Heisenberg",
    "SL2R": "Iwasawa",
    "X1": "HalfPlane",
    "XJ1": "SJPlane",
    "ExtXJ1": "ExtSJPlane",
    "GJ1": "S",
}
# which scaled forms live on each space, by index into lambda_1..lambda_6
FRAME_INDICES = {
    "SL2R": (0, 1, 2),
    "X1": (0, 1),
    "XJ1": (0, 1, 3, 4),
    "ExtXJ1": (0, 1, 3, 4, 5),
    "GJ1": (0, 1, 2, 3, 4, 5),
}
FRAME_LABELS = {
    "H1": ("Lp", "Lq", "Lr"),
    **{s: tuple(f"L{i + 1}" for i in idx) for s, idx in FRAME_INDICES.items()},
}
DECOMPOSITION_TOL = 1e-10
INVARIANCE_SPREAD = 1e-8
CONDITION_LIMIT = 1e12


class NotInAlgebra(ValueError):
    pass


class NotInvariant(ValueError):
    pass


@dataclass(frozen=True)
class FramePacket:
    point: ChartPoint
    coframe: np.ndarray
    frame: np.ndarray

    def __post_init__(self):
        if not (np.all(np.isfinite(self.coframe)) and np.all(np.isfinite(self.frame))):
            raise ValueError("frame packet entries must be finite")

    def pairing_error(self) -> float:
        n = self.coframe.shape[0]
        return float(np.max(np.abs(self.coframe @ self.frame - np.eye(n))))


class VectorField:
    """A vector field given by a jet-capable component function."""

    def __init__(self, fn: Callable, dim: int, name: str = "X"):
        self.fn = fn
        self.dim = dim
        self.name = name

    def __call__(self, coords):
        return self.fn(coords)

    def at(self, point) -> np.ndarray:
        return np.array([jets.value_of(v) for v in self.fn(list(np.asarray(point, float)))], dtype=float)

    def jet(self, point) -> tuple[np.ndarray, np.ndarray]:
        """Components and their Jacobian (row i = gradient of component i)."""
        val, jac, _ = jets.evaluate(self.fn, np.asarray(point, float))
        return np.real_if_close(val).astype(float), np.real_if_close(jac).astype(float)

    def __repr__(self) -> str:
        return f"VectorField({self.name})"


def vf_bracket(x: VectorField, y: VectorField, point) -> np.ndarray:
    """[X, Y]^j = X^i d_i Y^j - Y^i d_i X^j."""
    xv, xj = x.jet(point)
    yv, yj = y.jet(point)
    return yj @ xv - xj @ yv


def _point_coords(point) -> np.ndarray:
    return np.array(point.coords if isinstance(point, ChartPoint) else point, dtype=float)


def _as_point(space: str, point) -> ChartPoint:
    if isinstance(point, ChartPoint):
        return point
    return ChartPoint(SPACE_CHART[space], point)


# algebra bases


def raw_basis(space: str) -> AlgebraBasis:
    if space == "H1":
        return HEISENBERG
    if space == "SL2R":
        return SL2
    return JACOBI


def scaling_matrix(params: MetricParams, indices: Sequence[int] = range(6)) -> np.ndarray:
    """Rows: scaled forms lambda_i; columns: raw forms f, g, h, P, Q, R."""
    def w(name):
        return np.sqrt(params.get(name))

    rows = {
        0: lambda: [w("alpha"), w("alpha"), 0, 0, 0, 0],
        1: lambda: [0, 0, 2 * w("alpha"), 0, 0, 0],
        2: lambda: [w("beta"), -w("beta"), 0, 0, 0, 0],
        3: lambda: [0, 0, 0, w("gamma"), 0, 0],
        4: lambda: [0, 0, 0, 0, w("gamma"), 0],
        5: lambda: [0, 0, 0, 0, 0, w("delta")],
    }
    return np.array([rows[i]() for i in indices], dtype=float)


def frame_basis(space: str, params: MetricParams | None = None) -> AlgebraBasis:
    """Algebra elements dual to the scaled forms (the frame at the identity)."""
    if space == "H1":
        return HEISENBERG
    sa = np.sqrt(params.get("alpha"))
    sb = np.sqrt(params.get("beta"))
    gens = [(F + G) / (2 * sa), H / (2 * sa), (F - G) / (2 * sb)]
    if space == "SL2R":
        return AlgebraBasis("sl2-frame", gens, FRAME_LABELS["SL2R"])
    sg = np.sqrt(params.get("gamma"))
    sd = np.sqrt(params.get("delta"))
    gens += [P / sg, Q / sg, R / sd]
    return AlgebraBasis("gJ1-frame", gens, FRAME_LABELS["GJ1"])


# numeric coframes


def section_coords(space: str, coords) -> tuple[str, list]:
    """Group chart and coordinates of the point or of its section lift.

    Homogeneous spaces are lifted with theta = 0 (and kappa = 0 on the
    reduced Siegel-Jacobi space) into the S chart.
    """
    c = list(coords)
    if space in GROUP_SPACES:
        return SPACE_CHART[space], c
    zero = 0.0 * c[0]
    if space == "X1":
        return "S", [c[0], c[1], zero, zero, zero, zero]
    if space == "XJ1":
        return "S", [c[0], c[1], zero, c[2], c[3], zero]
    if space == "ExtXJ1":
        return "S", [c[0], c[1], zero, c[2], c[3], c[4]]
    raise ValueError(f"unknown space {space!r}")


def _embedding_jet(space: str, coords):
    def fn(v):
        chart, lifted = section_coords(space, v)
        return embed_coords(chart, lifted)

    val, jac, _ = jets.evaluate(fn, coords)
    return val, jac


def raw_coframe(space: str, point, side: str = "left") -> np.ndarray:
    """Components of g^-1 dg (left) or dg g^-1 (right) on the algebra basis."""
    if side not in ("left", "right"):
        raise ValueError("side is 'left' or 'right'")
    if side == "right" and space not in GROUP_SPACES:
        raise ValueError("right coframes are defined on the group spaces only")
    coords = _point_coords(point)
    g, dg = _embedding_jet(space, coords)
    gi = np.linalg.inv(g)
    basis = raw_basis(space)
    rows = []
    for i in range(len(coords)):
        form = gi @ dg[..., i] if side == "left" else dg[..., i] @ gi
        coef, res = basis.decompose(form)
        if res > DECOMPOSITION_TOL * max(1.0, np.max(np.abs(form))):
            raise NotInAlgebra(f"Maurer-Cartan component off the algebra (residual {res:.2e})")
        rows.append(coef)
    return np.array(rows).T


def numeric_coframe(space: str, point, side: str = "left", params: MetricParams | None = None) -> FramePacket:
    """Numeric coframe at ``point``.

    Without ``params`` the rows are the raw algebra components (f, g, h, P, Q,
    R order, or p, q, r on H1).  With ``params`` they are the scaled forms
    restricted to the space, comparable with :func:`closed_coframe`.
    """
    pt = _as_point(space, point)
    raw = raw_coframe(space, pt, side)
    if params is not None and space != "H1":
        idx = FRAME_INDICES[space]
        s = scaling_matrix(params, idx)
        if space == "SL2R":
            s = s[:, :3]
        raw = s @ raw
    if raw.shape[0] != raw.shape[1]:
        raise ValueError(f"raw coframe of {space} is not square; pass params")
    return FramePacket(pt, raw, dual_frame(raw))


def dual_frame(coframe: np.ndarray) -> np.ndarray:
    coframe = np.asarray(coframe, dtype=float)
    if coframe.shape[0] != coframe.shape[1]:
        raise Singular("coframe must be square")
    cond = np.linalg.cond(coframe)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise Singular(f"coframe is singular (condition number {cond:.3e})")
    return np.linalg.inv(coframe)


# closed forms


def _sl2_rows(x, y, t, zero, sa, sb):
    c2, s2 = np.cos(2 * t), np.sin(2 * t)
    return [
        [sa * c2 / y, sa * s2 / y, zero],
        [-sa * s2 / y, sa * c2 / y, zero],
        [sb / y, zero, 2 * sb + zero],
    ]


def _sl2_fields(x, y, t, zero, sa, sb):
    c2, s2 = np.cos(2 * t), np.sin(2 * t)
    return [
        [y * c2 / sa, y * s2 / sa, -0.5 * c2 / sa],
        [-y * s2 / sa, y * c2 / sa, 0.5 * s2 / sa],
        [zero, zero, zero + 0.5 / sb],
    ]


def _weights(params: MetricParams | None, names):
    return [np.sqrt(params.get(n)) for n in names]


def closed_coframe_rows(space: str, coords, params: MetricParams | None = None) -> list:
    """Scaled closed-form coframe rows; jet-capable."""
    c = list(coords)
    zero = 0.0 * c[0]
    if space == "H1":
        lam, mu, _ = c
        return [[1.0 + zero, zero, zero], [zero, 1.0 + zero, zero], [mu, -lam, 1.0 + zero]]
    if space == "SL2R":
        sa, sb = _weights(params, ("alpha", "beta"))
        return _sl2_rows(*c, zero, sa, sb)
    if space == "X1":
        (sa,) = _weights(params, ("alpha",))
        x, y = c
        return [[sa / y, zero], [zero, sa / y]]
    if space in ("XJ1", "ExtXJ1"):
        sa, sg = _weights(params, ("alpha", "gamma"))
        x, y, p, q = c[:4]
        ry = np.sqrt(y)
        rows = [
            [sa / y, zero, zero, zero],
            [zero, sa / y, zero, zero],
            [zero, zero, sg * ry, zero],
            [zero, zero, sg * x / ry, sg / ry],
        ]
        if space == "XJ1":
            return rows
        (sd,) = _weights(params, ("delta",))
        rows = [r + [zero] for r in rows]
        rows.append([zero, zero, sd * q, -sd * p, sd + zero])
        return rows
    if space == "GJ1":
        sa, sb, sg, sd = _weights(params, ("alpha", "beta", "gamma", "delta"))
        x, y, t, p, q, _ = c
        rows = [r + [zero, zero, zero] for r in _sl2_rows(x, y, t, zero, sa, sb)]
        a, b, cc, d = iwasawa_block(x, y, t)
        rows.append([zero, zero, zero, sg * a, sg * cc, zero])
        rows.append([zero, zero, zero, sg * b, sg * d, zero])
        rows.append([zero, zero, zero, sd * q, -sd * p, sd + zero])
        return rows
    raise ValueError(f"unknown space {space!r}")


def closed_frame_columns(space: str, coords, params: MetricParams | None = None) -> list:
    """Closed-form frame fields, one component list per field; jet-capable."""
    c = list(coords)
    zero = 0.0 * c[0]
    one = 1.0 + zero
    if space == "H1":
        lam, mu, _ = c
        return [[one, zero, -mu], [zero, one, lam], [zero, zero, one]]
    if space == "SL2R":
        sa, sb = _weights(params, ("alpha", "beta"))
        return _sl2_fields(*c, zero, sa, sb)
    if space == "X1":
        (sa,) = _weights(params, ("alpha",))
        x, y = c
        return [[y / sa, zero], [zero, y / sa]]
    if space in ("XJ1", "ExtXJ1"):
        sa, sg = _weights(params, ("alpha", "gamma"))
        x, y, p, q = c[:4]
        ry = np.sqrt(y)
        cols = [
            [y / sa, zero, zero, zero],
            [zero, y / sa, zero, zero],
            [zero, zero, 1 / (sg * ry), -x / (sg * ry)],
            [zero, zero, zero, ry / sg],
        ]
        if space == "XJ1":
            return cols
        (sd,) = _weights(params, ("delta",))
        cols[0].append(zero)
        cols[1].append(zero)
        cols[2].append(-(p * x + q) / (sg * ry))
        cols[3].append(p * ry / sg)
        cols.append([zero, zero, zero, zero, one / sd])
        return cols
    if space == "GJ1":
        sa, sb, sg, sd = _weights(params, ("alpha", "beta", "gamma", "delta"))
        x, y, t, p, q, _ = c
        cols = [f + [zero, zero, zero] for f in _sl2_fields(x, y, t, zero, sa, sb)]
        a, b, cc, d = iwasawa_block(x, y, t)
        cols.append([zero, zero, zero, d / sg, -b / sg, -(p * b + q * d) / sg])
        cols.append([zero, zero, zero, -cc / sg, a / sg, (p * a + q * cc) / sg])
        cols.append([zero, zero, zero, zero, zero, one / sd])
        return cols
    raise ValueError(f"unknown space {space!r}")


def closed_coframe(space: str, point, params: MetricParams | None = None) -> FramePacket:
    pt = _as_point(space, point)
    coords = list(pt.coords)
    cof = np.array(closed_coframe_rows(space, coords, params), dtype=float)
    frame = np.array(closed_frame_columns(space, coords, params), dtype=float).T
    return FramePacket(pt, cof, frame)


def closed_frame_fields(space: str, params: MetricParams | None = None) -> list[VectorField]:
    n = CHART_DIMS[SPACE_CHART[space]]
    fields = []
    for j, label in enumerate(FRAME_LABELS[space]):
        fields.append(VectorField(lambda v, j=j: closed_frame_columns(space, v, params)[j], n, label))
    return fields


def closed_coframe_field(space: str, params: MetricParams | None, index: int) -> Callable:
    return lambda v: closed_coframe_rows(space, v, params)[index]


# brackets and structure constants


def algebra_frame_constants(space: str, params: MetricParams | None = None) -> np.ndarray:
    """Structure constants c[k, i, j] of the frame basis, from matrix brackets."""
    return frame_basis(space, params).structure_constants


def printed_frame_table(params: MetricParams) -> np.ndarray:
    """The bracket table of the scaled frame as it appears in print."""
    sa, sb, sg = np.sqrt(params.get("alpha")), np.sqrt(params.get("beta")), params.get("gamma")
    sd = np.sqrt(params.get("delta"))
    alpha = params.get("alpha")
    c = np.zeros((6, 6, 6))

    def put(i, j, k, v):
        c[k - 1, i - 1, j - 1] = v
        c[k - 1, j - 1, i - 1] = -v

    put(1, 2, 3, -sb / alpha)
    put(2, 3, 1, 1 / (2 * sb))
    put(3, 1, 2, 1 / sb)
    put(1, 4, 5, -1 / (2 * sa))
    put(1, 5, 4, -1 / (2 * sa))
    put(2, 4, 4, -1 / (2 * sa))
    put(2, 5, 5, 1 / (2 * sa))
    put(3, 4, 5, -1 / (2 * sa))
    put(3, 5, 4, 1 / (2 * sb))
    put(4, 5, 6, 2 * sd / sg)
    return c


def bracket_coefficients(fields: Sequence[VectorField], point) -> np.ndarray:
    """c[k, i, j] with [L_i, L_j] = c^k_ij L_k at one point."""
    n = len(fields)
    point = np.asarray(point, float)
    jet_cache = [f.jet(point) for f in fields]
    frame = np.array([v for v, _ in jet_cache]).T
    c = np.zeros((n, n, n))
    for i in range(n):
        xv, xj = jet_cache[i]
        for j in range(i + 1, n):
            yv, yj = jet_cache[j]
            br = yj @ xv - xj @ yv
            coef = np.linalg.solve(frame, br)
            c[:, i, j] = coef
            c[:, j, i] = -coef
    return c


@dataclass(frozen=True)
class StructureReport:
    constants: np.ndarray
    spread: float
    mismatches: list  # (i, j, k, printed, computed), 1-based indices


def frame_structure_constants(space: str, params: MetricParams | None, points) -> StructureReport:
    if space not in GROUP_SPACES:
        raise ValueError("structure constants need an invariant frame on a group")
    points = [_point_coords(p) for p in points]
    if len(points) < 5:
        raise ValueError("need at least 5 sample points")
    fields = closed_frame_fields(space, params)
    samples = np.array([bracket_coefficients(fields, p) for p in points])
    spread = float(np.max(samples.max(axis=0) - samples.min(axis=0)))
    if spread > INVARIANCE_SPREAD:
        raise NotInvariant(f"frame brackets vary across points (spread {spread:.2e})")
    const = samples.mean(axis=0)
    mismatches = []
    if space != "H1":
        printed = printed_frame_table(_full(params))
        n = const.shape[0]
        printed = printed[:n, :n, :n]
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    if abs(printed[k, i, j] - const[k, i, j]) > 1e-8:
                        mismatches.append((i + 1, j + 1, k + 1, float(printed[k, i, j]), float(const[k, i, j])))
    return StructureReport(const, spread, mismatches)


def _full(params: MetricParams) -> MetricParams:
    """Fill inactive weights with 1 so the printed table can be evaluated."""
    vals = {n: (getattr(params, n) if getattr(params, n) is not None else 1.0) for n in MetricParams.NAMES}
    return MetricParams(**vals)


def exterior_derivative(form: Callable, point) -> np.ndarray:
    """Component matrix D[j, k] = d_j w_k - d_k w_j of a one-form."""
    _, jac, _ = jets.evaluate(form, np.asarray(point, float))
    jac = np.real(jac)
    return jac.T - jac


def maurer_cartan_residual(space: str, params: MetricParams | None, point) -> float:
    """sup |d lambda_a + 1/2 c^a_bc lambda_b ^ lambda_c| for the closed coframe."""
    if space not in GROUP_SPACES:
        raise ValueError("Maurer-Cartan equations hold on the group spaces")
    point = _point_coords(point)
    c = algebra_frame_constants(space, params)
    lam = np.array(closed_coframe_rows(space, list(point), params), dtype=float)
    worst = 0.0
    for a in range(len(lam)):
        d = exterior_derivative(closed_coframe_field(space, params, a), point)
        wedge = np.einsum("bc,bj,ck->jk", c[a], lam, lam)
        worst = max(worst, float(np.max(np.abs(d + wedge))))
    return worst


def left_invariance_residual(space: str, element_entries, point) -> float:
    """Pullback of the numeric left coframe under left translation, minus itself."""
    chart = SPACE_CHART[space]
    point = _point_coords(point)
    val, jac, _ = jets.evaluate(lambda v: act_coords(element_entries, chart, v), point)
    moved = np.real(val)
    here = raw_coframe(space, point)
    there = raw_coframe(space, moved)
    return float(np.max(np.abs(there @ np.real(jac) - here)))
