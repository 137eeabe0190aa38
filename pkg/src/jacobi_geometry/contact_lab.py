"""Almost contact, contact and Sasaki checks.

An almost contact structure is a triple (Phi, xi, eta): a (1,1) tensor, a
vector field and a one-form.  Each is a jet-capable function of the chart
coordinates, so derivative-based quantities (d eta, the tensor N^1) come
from one jet evaluation.

Two-form conventions.  ``d_eta_matrix`` returns D[i, j] = d_i eta_j - d_j eta_i,
the components of d eta on dx^i (x) dx^j with the usual wedge.  The associated
skew tensor is taken as Phi_hat = D / 2, so that d eta = Phi_hat_ij dx^i ^ dx^j
and N^1 = [Phi, Phi] + 2 d eta (x) xi uses d eta(X, Y) = Phi_hat(X, Y).  The
opposite sign, Phi_hat = -D / 2, is available as ``convention="negative"``
for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable

import numpy as np

from . import jets
from .group_atlas import MetricParams
from .metric_lab import closed_metric, lie_derivative_of_metric
from .moving_frame import VectorField, closed_coframe_rows, closed_frame_columns

RANK_TOL = 1e-8


@dataclass(frozen=True)
class AlmostContactStructure:
    space: str
    dim: int
    phi: Callable
    xi: Callable
    eta: Callable
    params: MetricParams | None = None

    def values(self, point):
        p = list(np.asarray(point, float))
        phi = np.array(self.phi(p), dtype=float)
        xi = np.array(self.xi(p), dtype=float)
        eta = np.array(self.eta(p), dtype=float)
        return phi, xi, eta

    def phi_jet(self, point):
        val, jac, _ = jets.evaluate(self.phi, np.asarray(point, float))
        return np.real(val), np.real(jac)

    def xi_jet(self, point):
        val, jac, _ = jets.evaluate(self.xi, np.asarray(point, float))
        return np.real(val), np.real(jac)


def sl2_structure(params: MetricParams) -> AlmostContactStructure:
    """(Phi', L^3, lambda_3) on SL(2, R) in Iwasawa coordinates."""
    p = params.restrict("SL2R")

    def phi(v):
        x, y, _ = v
        zero = 0.0 * x
        return [[zero, 1.0 + zero, zero], [-1.0 + zero, zero, zero], [zero, -1 / (2 * y), zero]]

    return AlmostContactStructure(
        "SL2R", 3, phi,
        lambda v: closed_frame_columns("SL2R", v, p)[2],
        lambda v: closed_coframe_rows("SL2R", v, p)[2],
        p,
    )


def extxj1_candidate(params: MetricParams) -> AlmostContactStructure:
    """eta = lambda_6, xi = L^6 and the tensor forced by d eta(X, Y) = g(X, Phi Y)."""
    p = params.restrict("ExtXJ1")
    eta = lambda v: closed_coframe_rows("ExtXJ1", v, p)[4]  # noqa: E731

    def phi(v):
        g = np.array([[jets.value_of(e) for e in row] for row in closed_metric("ExtXJ1", v, p)])
        d = _d_eta_numeric(eta, [jets.value_of(c) for c in v])
        return (np.linalg.solve(g, 0.5 * d)).tolist()

    return AlmostContactStructure(
        "ExtXJ1", 5, phi,
        lambda v: closed_frame_columns("ExtXJ1", v, p)[4],
        eta,
        p,
    )


def _d_eta_numeric(eta: Callable, point) -> np.ndarray:
    _, jac, _ = jets.evaluate(eta, np.asarray(point, float))
    jac = np.real(jac)  # jac[j, i] = d_i eta_j
    return jac.T - jac


def d_eta_matrix(eta: Callable, point) -> np.ndarray:
    return _d_eta_numeric(eta, point)


def phi_hat(eta: Callable, point, convention: str = "half") -> np.ndarray:
    d = d_eta_matrix(eta, point)
    if convention == "half":
        return 0.5 * d
    if convention == "negative":
        return -0.5 * d
    raise ValueError(f"unknown convention {convention!r}")


def almost_contact_residuals(s: AlmostContactStructure, point) -> dict:
    phi, xi, eta = s.values(point)
    n = s.dim
    sv = np.linalg.svd(phi, compute_uv=False)
    return {
        "eta_xi": float(abs(eta @ xi - 1)),
        "phi_squared": float(np.max(np.abs(phi @ phi + np.eye(n) - np.outer(xi, eta)))),
        "phi_xi": float(np.max(np.abs(phi @ xi))),
        "eta_phi": float(np.max(np.abs(eta @ phi))),
        "rank": int(np.sum(sv > RANK_TOL)),
        "expected_rank": n - 1,
    }


def _perm_sign(p) -> int:
    sign, seen = 1, list(p)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def top_form_coefficient(eta: np.ndarray, d: np.ndarray) -> float:
    """Coefficient of eta ^ (d eta)^n on dx^1 ^ ... ^ dx^(2n+1).

    ``d`` holds the components D[i, j] with d eta = sum_{i<j} D[i, j] dx^i ^ dx^j.
    """
    m = len(eta)
    if m % 2 == 0:
        raise ValueError("contact forms live on odd-dimensional spaces")
    n = (m - 1) // 2
    total = 0.0
    for perm in permutations(range(m)):
        term = eta[perm[0]]
        for k in range(n):
            term *= d[perm[2 * k + 1], perm[2 * k + 2]]
        if term:
            total += _perm_sign(perm) * term
    # each D[a, b] with a < b appears twice with matching sign
    return total / 2**n


def contact_top_form(space: str, eta: Callable, point) -> float:
    point = np.asarray(point, float)
    e = np.array([jets.value_of(v) for v in eta(list(point))], dtype=float)
    return top_form_coefficient(e, d_eta_matrix(eta, point))


def nijenhuis_n1(s: AlmostContactStructure, point, formula: str = "corrected",
                 convention: str = "half") -> np.ndarray:
    """Components N[i, j, k] of N^1 in coordinates."""
    point = np.asarray(point, float)
    phi, dphi = s.phi_jet(point)  # dphi[i, j, h] = d_h Phi^i_j
    xi, dxi = s.xi_jet(point)  # dxi[i, h] = d_h xi^i
    eta = np.array([jets.value_of(v) for v in s.eta(list(point))], dtype=float)
    if formula == "corrected":
        ph = phi_hat(s.eta, point, convention)
        term1 = np.einsum("hj,ikh->ijk", phi, dphi)
        term2 = np.einsum("hk,ijh->ijk", phi, dphi)
        term3 = np.einsum("ih,hjk->ijk", phi, dphi) - np.einsum("ih,hkj->ijk", phi, dphi)
        return term1 - term2 + term3 + 2 * np.einsum("jk,i->ijk", ph, xi)
    if formula == "legacy":
        a = np.einsum("hk,ijh->ijk", phi, dphi) - np.einsum("hk,ihj->ijk", phi, dphi)
        b = np.einsum("hj,ikh->ijk", phi, dphi) - np.einsum("hj,ihk->ijk", phi, dphi)
        c = np.einsum("ij,k->ijk", dxi, eta) - np.einsum("ik,j->ijk", dxi, eta)
        return a - b + c
    raise ValueError(f"unknown formula {formula!r}")


def nijenhuis_direct(s: AlmostContactStructure, point) -> np.ndarray:
    """[Phi, Phi](d_j, d_k) + d eta(d_j, d_k) xi from vector-field brackets.

    An oracle for :func:`nijenhuis_n1`: it never differentiates Phi by
    index gymnastics, only through brackets of the fields Phi d_j.
    """
    point = np.asarray(point, float)
    n = s.dim
    phi = np.array(s.phi(list(point)), dtype=float)

    def phi_col(j):
        return VectorField(lambda v, j=j: [row[j] for row in s.phi(v)], n)

    def coord(j):
        return VectorField(lambda v, j=j: [(1.0 if i == j else 0.0) + 0.0 * v[0] for i in range(n)], n)

    from .moving_frame import vf_bracket

    xi = np.array(s.xi(list(point)), dtype=float)
    d = d_eta_matrix(s.eta, point)
    out = np.zeros((n, n, n))
    for j in range(n):
        for k in range(n):
            b = vf_bracket(phi_col(j), phi_col(k), point)
            c = phi @ vf_bracket(phi_col(j), coord(k), point)
            e = phi @ vf_bracket(coord(j), phi_col(k), point)
            out[:, j, k] = b - c - e + d[j, k] * xi
    return out


def compatibility_residual(s: AlmostContactStructure, point) -> float:
    """sup |Phi^T g Phi - g + eta^T eta|."""
    phi, _, eta = s.values(point)
    g = np.array(closed_metric(s.space, list(np.asarray(point, float)), s.params), dtype=float)
    return float(np.max(np.abs(phi.T @ g @ phi - g + np.outer(eta, eta))))


def phi_hat_antisymmetry(s: AlmostContactStructure, point) -> float:
    phi, _, _ = s.values(point)
    g = np.array(closed_metric(s.space, list(np.asarray(point, float)), s.params), dtype=float)
    m = g @ phi
    return float(np.max(np.abs(m + m.T)))


def contact_distribution_check(s: AlmostContactStructure, point, rng=None) -> float:
    """eta(V1) = eta(V2) = 0 and Phi X = B V1 - A V2 for X = (A, B, C)."""
    rng = rng or np.random.default_rng(0)
    x, y, _ = np.asarray(point, float)
    phi, _, eta = s.values(point)
    v1 = np.array([1.0, 0.0, -1 / (2 * y)])
    v2 = np.array([0.0, 1.0, 0.0])
    worst = max(abs(eta @ v1), abs(eta @ v2))
    for _ in range(5):
        a, b, c = rng.normal(size=3)
        worst = max(worst, float(np.max(np.abs(phi @ np.array([a, b, c]) - (b * v1 - a * v2)))))
    return float(worst)


# cone


def cone_form(s: AlmostContactStructure):
    """omega = d(r^2 eta) on coordinates (r, chart...)."""
    def alpha(v):
        r = v[0]
        e = s.eta(v[1:])
        return [0.0 * r] + [r * r * c for c in e]

    return alpha


def cone_checks(s: AlmostContactStructure, r: float, point) -> dict:
    """Closedness and nondegeneracy of omega, and Phi_bar^2 = -1 on the cone."""
    pt = np.concatenate([[r], np.asarray(point, float)])
    _, jac, hess = jets.evaluate(cone_form(s), pt)
    jac, hess = np.real(jac), np.real(hess)
    omega = jac.T - jac
    # d omega_ijk from second derivatives of alpha: d_i omega_jk = d_i d_j a_k - d_i d_k a_j
    domega = np.einsum("kji->ijk", hess) - np.einsum("jki->ijk", hess)
    cyc = domega + np.transpose(domega, (1, 2, 0)) + np.transpose(domega, (2, 0, 1))
    phi, xi, eta = s.values(point)
    n = s.dim
    phibar = np.zeros((n + 1, n + 1))
    phibar[1:, 1:] = phi
    phibar[0, 1:] = r * eta  # eta(Y) Psi with Psi = r d_r
    phibar[1:, 0] = -xi / r  # Phi_bar(d_r) = -xi / r
    return {
        "closed": float(np.max(np.abs(cyc))),
        "det": float(np.linalg.det(omega)),
        "phibar_squared": float(np.max(np.abs(phibar @ phibar + np.eye(n + 1)))),
    }


def xi_killing_residual(s: AlmostContactStructure, point) -> float:
    field = VectorField(s.xi, s.dim, "xi")
    return float(np.max(np.abs(lie_derivative_of_metric(field, s.space, s.params, point))))


@dataclass(frozen=True)
class SasakiReport:
    space: str
    verdict: str
    reason: str
    residuals: dict


def sasaki_report(space: str, params: MetricParams, points) -> SasakiReport:
    points = [np.asarray(p, float) for p in points]
    if space == "SL2R":
        s = sl2_structure(params)
        res = {"eta_xi": 0.0, "phi_squared": 0.0, "phi_xi": 0.0, "eta_phi": 0.0, "n1": 0.0,
               "xi_killing": 0.0, "compatibility": 0.0, "min_top_form": np.inf}
        for p in points:
            ac = almost_contact_residuals(s, p)
            for k in ("eta_xi", "phi_squared", "phi_xi", "eta_phi"):
                res[k] = max(res[k], ac[k])
            res["n1"] = max(res["n1"], float(np.max(np.abs(nijenhuis_n1(s, p)))))
            res["xi_killing"] = max(res["xi_killing"], xi_killing_residual(s, p))
            res["compatibility"] = max(res["compatibility"], compatibility_residual(s, p))
            res["min_top_form"] = min(res["min_top_form"], abs(contact_top_form(space, s.eta, p)))
        ok = (max(res[k] for k in ("eta_xi", "phi_squared", "phi_xi", "eta_phi", "n1", "xi_killing")) < 1e-10
              and res["min_top_form"] > 1e-10)
        reason = "normal contact structure, xi Killing" if ok else "a Sasaki axiom failed"
        return SasakiReport(space, "Sasaki" if ok else "NotSasaki", reason, res)
    if space == "ExtXJ1":
        s = extxj1_candidate(params)
        ranks = [almost_contact_residuals(s, p)["rank"] for p in points]
        tops = [abs(contact_top_form(space, s.eta, p)) for p in points]
        res = {"max_rank": max(ranks), "max_top_form": max(tops),
               "phi_squared": max(almost_contact_residuals(s, p)["phi_squared"] for p in points)}
        if max(ranks) < 4:
            return SasakiReport(space, "Negative", f"rank(Phi) = {max(ranks)} < 4", res)
        return SasakiReport(space, "Inconclusive", "rank condition met", res)
    raise ValueError("Sasaki reports exist for SL2R and ExtXJ1")
