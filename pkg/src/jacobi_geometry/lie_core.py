"""Matrix Lie algebra substrate.

The six generators of the Jacobi algebra are 4x4 real matrices inside
sp(2, R).  ``F, G, H`` span sl(2, R) and ``P, Q, R`` span the Heisenberg
algebra; the registered bases below also cover su(1, 1) and su(2) as
complex 2x2 realisations.

All maps to coefficient space use least squares on the flattened
matrices (real and imaginary parts stacked), so a basis is accepted only if
the decomposition residual is tiny.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import expm

CLOSURE_TOL = 1e-10


class NotClosed(ValueError):
    """A bracket of basis elements does not decompose on the basis."""


class Singular(ValueError):
    """A matrix that must be invertible is not."""


def unit(i: int, j: int, n: int = 4) -> np.ndarray:
    """Matrix unit E_ij with 1-based indices."""
    m = np.zeros((n, n))
    m[i - 1, j - 1] = 1.0
    return m


F = unit(1, 3)
G = unit(3, 1)
H = unit(1, 1) - unit(3, 3)
P = unit(2, 1) - unit(3, 4)
Q = unit(1, 4) + unit(2, 3)
R = unit(2, 4)

# 2x2 versions, convenient for the sl(2) closed forms
F2 = np.array([[0.0, 1.0], [0.0, 0.0]])
G2 = np.array([[0.0, 0.0], [1.0, 0.0]])
H2 = np.array([[1.0, 0.0], [0.0, -1.0]])


def embed_sl2(m2: np.ndarray) -> np.ndarray:
    """Place a 2x2 block in rows/columns 1 and 3 of the 4x4 identity."""
    m2 = np.asarray(m2)
    out = np.eye(4, dtype=np.result_type(m2, float))
    out[np.ix_([0, 2], [0, 2])] = m2
    return out


def embed_sl2_algebra(x2: np.ndarray) -> np.ndarray:
    x2 = np.asarray(x2)
    out = np.zeros((4, 4), dtype=np.result_type(x2, float))
    out[np.ix_([0, 2], [0, 2])] = x2
    return out


def block_sl2(m4: np.ndarray) -> np.ndarray:
    return np.asarray(m4)[np.ix_([0, 2], [0, 2])]


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch {x.shape} vs {y.shape}")
    return x @ y - y @ x


def _flatten(mats) -> np.ndarray:
    flat = np.array([np.asarray(m).reshape(-1) for m in mats]).T
    if np.iscomplexobj(flat):
        return np.vstack([flat.real, flat.imag])
    return flat


@dataclass(frozen=True)
class AlgebraBasis:
    name: str
    generators: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        gens = tuple(np.asarray(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"X{i + 1}" for i in range(len(gens))))
        if np.linalg.matrix_rank(_flatten(gens)) != len(gens):
            raise ValueError(f"generators of {self.name} are linearly dependent")

    def __len__(self) -> int:
        return len(self.generators)

    def __hash__(self):
        return hash((self.name, self.labels))

    def __eq__(self, other):
        return self is other

    @cached_property
    def _design(self) -> np.ndarray:
        return _flatten(self.generators)

    def decompose(self, x: np.ndarray) -> tuple[np.ndarray, float]:
        """Coefficients of ``x`` on the basis and the least-squares residual."""
        a = self._design
        b = _flatten([x])[:, 0]
        coef, *_ = np.linalg.lstsq(a, b, rcond=None)
        return coef, float(np.max(np.abs(a @ coef - b), initial=0.0))

    def coefficients(self, x: np.ndarray, tol: float = CLOSURE_TOL) -> np.ndarray:
        coef, res = self.decompose(x)
        if res > tol * max(1.0, np.max(np.abs(x))):
            raise NotClosed(f"element not in {self.name} (residual {res:.3e})")
        return coef

    def element(self, coef) -> np.ndarray:
        coef = np.asarray(coef)
        return np.tensordot(coef, np.array(self.generators), axes=1)

    @cached_property
    def structure_constants(self) -> np.ndarray:
        return structure_constants(self)


@dataclass(frozen=True)
class AlgebraVector:
    basis: AlgebraBasis
    coefficients: np.ndarray

    def __post_init__(self):
        coef = np.asarray(self.coefficients, dtype=float)
        if coef.shape != (len(self.basis),):
            raise ValueError(f"expected {len(self.basis)} coefficients, got {coef.shape}")
        object.__setattr__(self, "coefficients", coef)

    def matrix(self) -> np.ndarray:
        return self.basis.element(self.coefficients)


def structure_constants(basis: AlgebraBasis, tol: float = CLOSURE_TOL) -> np.ndarray:
    """c[k, i, j] with [X_i, X_j] = c^k_ij X_k."""
    n = len(basis)
    c = np.zeros((n, n, n))
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            coef, res = basis.decompose(commutator(basis.generators[i], basis.generators[j]))
            worst = max(worst, res)
            c[:, i, j] = coef
            c[:, j, i] = -coef
    if worst > tol:
        raise NotClosed(f"{basis.name} is not closed under brackets (residual {worst:.3e})")
    return c


def jacobi_identity_residual(basis: AlgebraBasis) -> float:
    gens = basis.generators
    worst = 0.0
    for a in gens:
        for b in gens:
            for c in gens:
                r = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
                worst = max(worst, float(np.max(np.abs(r))))
    return worst


def matrix_exp(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if not np.all(np.isfinite(x)):
        raise ValueError("matrix_exp needs finite entries")
    return expm(x)


def ad_matrix(basis: AlgebraBasis, x: AlgebraVector | np.ndarray) -> np.ndarray:
    """Matrix of ad(X); column j holds the coefficients of [X, X_j]."""
    xm = x.matrix() if isinstance(x, AlgebraVector) else basis.element(x)
    cols = [basis.coefficients(commutator(xm, g)) for g in basis.generators]
    return np.array(cols).T


def adjoint_matrix(basis: AlgebraBasis, g: np.ndarray) -> np.ndarray:
    """Matrix of Ad(g) = g X g^-1; column j holds the image of X_j."""
    g = np.asarray(g)
    if abs(np.linalg.det(g)) < 1e-300 or np.linalg.cond(g) > 1e14:
        raise Singular("Ad(g) needs an invertible g")
    gi = np.linalg.inv(g)
    cols = [basis.coefficients(g @ x @ gi) for x in basis.generators]
    return np.array(cols).T


def killing_form(basis: AlgebraBasis, x, y) -> float:
    return float(np.trace(ad_matrix(basis, x) @ ad_matrix(basis, y)))


def killing_matrix(basis: AlgebraBasis) -> np.ndarray:
    n = len(basis)
    eye = np.eye(n)
    ads = [ad_matrix(basis, eye[i]) for i in range(n)]
    return np.array([[np.trace(a @ b) for b in ads] for a in ads])


SL2 = AlgebraBasis("sl2", (F, G, H), ("F", "G", "H"))
SL2_HFG = AlgebraBasis("sl2-HFG", (H, F, G), ("H", "F", "G"))
HEISENBERG = AlgebraBasis("h1", (P, Q, R), ("P", "Q", "R"))
JACOBI = AlgebraBasis("gJ1", (F, G, H, P, Q, R), ("F", "G", "H", "P", "Q", "R"))

SU11 = AlgebraBasis("su11", (1j * H2, 1j * (F2 - G2), F2 + G2), ("G1", "G2", "G3"))
SU2 = AlgebraBasis("su2", (1j * H2, -F2 + G2, 1j * (F2 + G2)), ("X1", "X2", "X3"))
K_BASIS = AlgebraBasis(
    "su11-K", (0.5 * H2, 1j * F2, 1j * G2), ("K0", "K+", "K-")
)


def e_basis(alpha: float, beta: float) -> AlgebraBasis:
    """sl(2) basis scaled by the metric parameters."""
    sa, sb = np.sqrt(alpha), np.sqrt(beta)
    return AlgebraBasis("sl2-e", (sa * (F + G), 2 * sa * H, sb * (F - G)), ("e1", "e2", "e3"))


REGISTERED = (SL2, SL2_HFG, HEISENBERG, JACOBI, SU11, SU2, K_BASIS)


def exp_closed_forms(t: float) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Known exponentials of sl(2) elements as 2x2 matrices: generator, exp."""
    c, s = np.cos(t), np.sin(t)
    ch, sh = np.cosh(t), np.sinh(t)
    return {
        "F": (t * F2, np.array([[1.0, t], [0.0, 1.0]])),
        "G": (t * G2, np.array([[1.0, 0.0], [t, 1.0]])),
        "H": (t * H2, np.diag([np.exp(t), np.exp(-t)])),
        "F+G": (t * (F2 + G2), np.array([[ch, sh], [sh, ch]])),
        "F-G": (t * (F2 - G2), np.array([[c, s], [-s, c]])),
        "G1": (t * 1j * H2, np.diag([np.exp(1j * t), np.exp(-1j * t)])),
        "G2": (t * 1j * (F2 - G2), np.array([[np.cosh(t), 1j * np.sinh(t)], [-1j * np.sinh(t), np.cosh(t)]])),
        "G3": (t * (F2 + G2), np.array([[ch, sh], [sh, ch]])),
    }
