"""Second-order forward-mode jets.

A :class:`Jet` carries the value, gradient and Hessian of a scalar with
respect to a fixed set of seed variables.  Arithmetic and the numpy ufuncs
used by the geometry code propagate all three exactly, so every partial
derivative in the package comes from here rather than from finite
differences.

Values may be complex; the seed variables are always real.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np


class Jet:
    """Value, gradient and Hessian of a scalar function of ``n`` variables."""

    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad, hess):
        self.val = val
        self.grad = grad
        self.hess = hess

    @property
    def n(self) -> int:
        return self.grad.shape[0]

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        z = np.zeros(self.n, dtype=np.result_type(self.grad, other))
        return Jet(other, z, np.zeros((self.n, self.n), dtype=z.dtype))

    def _chain(self, f0, f1, f2) -> "Jet":
        g = self.grad
        return Jet(f0, f1 * g, f1 * self.hess + f2 * np.outer(g, g))

    def __repr__(self) -> str:
        return f"Jet({self.val!r}, grad={self.grad!r})"

    # arithmetic
    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.grad + other.grad, self.hess + other.hess)
        return Jet(self.val + other, self.grad, self.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            h = (
                self.val * other.hess
                + other.val * self.hess
                + np.outer(self.grad, other.grad)
                + np.outer(other.grad, self.grad)
            )
            return Jet(self.val * other.val, self.val * other.grad + other.val * self.grad, h)
        return Jet(self.val * other, self.grad * other, self.hess * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        v = self.val
        return self._chain(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet(self.val / other, self.grad / other, self.hess / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, Jet):
            return (self.log() * p).exp()
        if p == 0:
            return self._lift(1.0 + 0 * self.val)
        if p == 1:
            return self
        if p == 2:
            return self * self
        v = self.val
        return self._chain(v**p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2))

    def __rpow__(self, base):
        return (self * np.log(base)).exp()

    # elementary functions
    def sin(self):
        s, c = np.sin(self.val), np.cos(self.val)
        return self._chain(s, c, -s)

    def cos(self):
        s, c = np.sin(self.val), np.cos(self.val)
        return self._chain(c, -s, -c)

    def tan(self):
        return self.sin() / self.cos()

    def exp(self):
        e = np.exp(self.val)
        return self._chain(e, e, e)

    def log(self):
        v = self.val
        return self._chain(np.log(v), 1.0 / v, -1.0 / v**2)

    def sqrt(self):
        r = np.sqrt(self.val)
        return self._chain(r, 0.5 / r, -0.25 / (r * self.val))

    def sinh(self):
        s, c = np.sinh(self.val), np.cosh(self.val)
        return self._chain(s, c, s)

    def cosh(self):
        s, c = np.sinh(self.val), np.cosh(self.val)
        return self._chain(c, s, c)

    def arctan(self):
        v = self.val
        d = 1.0 / (1.0 + v * v)
        return self._chain(np.arctan(v), d, -2.0 * v * d * d)

    def arctan2(self, x):
        """Two-argument arctangent with ``self`` as the ordinate."""
        y = self
        if not isinstance(x, Jet):
            x = y._lift(x)
        xv, yv = x.val, y.val
        r2 = xv * xv + yv * yv
        ty, tx = xv / r2, -yv / r2
        tyy, txx, txy = -2 * xv * yv / r2**2, 2 * xv * yv / r2**2, (yv * yv - xv * xv) / r2**2
        gx, gy = x.grad, y.grad
        hess = (
            ty * y.hess + tx * x.hess
            + tyy * np.outer(gy, gy) + txx * np.outer(gx, gx)
            + txy * (np.outer(gx, gy) + np.outer(gy, gx))
        )
        return Jet(np.arctan2(yv, xv), ty * gy + tx * gx, hess)

    def conjugate(self):
        return Jet(np.conj(self.val), np.conj(self.grad), np.conj(self.hess))

    conj = conjugate

    @property
    def real(self):
        return Jet(np.real(self.val), np.real(self.grad), np.real(self.hess))

    @property
    def imag(self):
        return Jet(np.imag(self.val), np.imag(self.grad), np.imag(self.hess))

    # numpy interoperability: np.sin(jet), np.float64(2) * jet, ...
    _UNARY = {
        "sin": "sin", "cos": "cos", "tan": "tan", "exp": "exp", "log": "log",
        "sqrt": "sqrt", "sinh": "sinh", "cosh": "cosh", "arctan": "arctan",
        "negative": "__neg__", "conjugate": "conjugate", "positive": "__pos__",
    }
    _BINARY = {
        "add": lambda a, b: a + b,
        "subtract": lambda a, b: a - b,
        "multiply": lambda a, b: a * b,
        "true_divide": lambda a, b: a / b,
        "divide": lambda a, b: a / b,
        "power": lambda a, b: a**b,
    }

    def __array_ufunc__(self, ufunc, method, *inputs, **kwargs):
        if method != "__call__" or kwargs:
            return NotImplemented
        name = ufunc.__name__
        if name in self._UNARY and len(inputs) == 1:
            return getattr(inputs[0], self._UNARY[name])()
        if name == "square":
            return inputs[0] * inputs[0]
        if name in self._BINARY:
            a, b = inputs
            if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
                return NotImplemented
            if isinstance(a, np.generic):
                a = a.item()
            if isinstance(b, np.generic):
                b = b.item()
            return self._BINARY[name](a, b)
        if name == "arctan2":
            y, x = inputs
            if not isinstance(y, Jet):
                y = x._lift(y)
            return y.arctan2(x)
        return NotImplemented


def variables(point: Sequence[float]) -> list[Jet]:
    """Seed jets for the coordinates of ``point``."""
    n = len(point)
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return [Jet(float(point[i]), eye[i].copy(), zero.copy()) for i in range(n)]


def constant(c, n: int) -> Jet:
    return Jet(c, np.zeros(n), np.zeros((n, n)))


def parts(x, n: int):
    """(value, gradient, Hessian) of a jet or a plain number."""
    if isinstance(x, Jet):
        return x.val, x.grad, x.hess
    return x, np.zeros(n), np.zeros((n, n))


def evaluate(fn: Callable, point: Sequence[float]):
    """Evaluate ``fn`` on seeded jets.

    Returns ``(value, jacobian, hessian)`` where the output shape of ``fn``
    (any nesting of sequences) is kept and derivative axes are appended.
    """
    n = len(point)
    out = fn(variables(point))
    arr = np.asarray(out, dtype=object)
    shape = arr.shape
    flat = arr.reshape(-1)
    vals, grads, hesses = [], [], []
    for item in flat:
        v, g, h = parts(item, n)
        vals.append(v)
        grads.append(g)
        hesses.append(h)
    dtype = complex if any(np.iscomplexobj(v) for v in vals) else float
    val = np.array(vals, dtype=dtype).reshape(shape)
    jac = np.array(grads, dtype=dtype).reshape(shape + (n,))
    hes = np.array(hesses, dtype=dtype).reshape(shape + (n, n))
    return val, jac, hes


def jacobian(fn: Callable, point: Sequence[float]) -> np.ndarray:
    return evaluate(fn, point)[1]


def central_difference(fn: Callable, point: Sequence[float], step: float = 1e-5) -> np.ndarray:
    """Finite-difference Jacobian of a float-valued ``fn``; used as an oracle."""
    point = np.asarray(point, dtype=float)
    base = np.asarray(fn(point))
    out = np.zeros(base.shape + (point.size,), dtype=base.dtype)
    for i in range(point.size):
        e = np.zeros_like(point)
        e[i] = step
        out[..., i] = (np.asarray(fn(point + e)) - np.asarray(fn(point - e))) / (2 * step)
    return out


def value_of(x):
    return x.val if isinstance(x, Jet) else x


def values(xs: Iterable) -> np.ndarray:
    return np.array([value_of(x) for x in xs])


class Jet1:
    """First-order jet: value and gradient only.  Cheaper inside integrators."""

    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = val
        self.grad = grad

    def _chain(self, f0, f1):
        return Jet1(f0, f1 * self.grad)

    def __add__(self, other):
        if isinstance(other, Jet1):
            return Jet1(self.val + other.val, self.grad + other.grad)
        return Jet1(self.val + other, self.grad)

    __radd__ = __add__

    def __neg__(self):
        return Jet1(-self.val, -self.grad)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet1):
            return Jet1(self.val * other.val, self.val * other.grad + other.val * self.grad)
        return Jet1(self.val * other, self.grad * other)

    __rmul__ = __mul__

    def reciprocal(self):
        return self._chain(1.0 / self.val, -1.0 / self.val**2)

    def __truediv__(self, other):
        if isinstance(other, Jet1):
            return self * other.reciprocal()
        return Jet1(self.val / other, self.grad / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, Jet1):
            return (self.log() * p).exp()
        if p == 2:
            return self * self
        return self._chain(self.val**p, p * self.val ** (p - 1))

    def __rpow__(self, base):
        return (self * np.log(base)).exp()

    def sin(self):
        return self._chain(np.sin(self.val), np.cos(self.val))

    def cos(self):
        return self._chain(np.cos(self.val), -np.sin(self.val))

    def tan(self):
        return self.sin() / self.cos()

    def exp(self):
        e = np.exp(self.val)
        return self._chain(e, e)

    def log(self):
        return self._chain(np.log(self.val), 1.0 / self.val)

    def sqrt(self):
        r = np.sqrt(self.val)
        return self._chain(r, 0.5 / r)

    def sinh(self):
        return self._chain(np.sinh(self.val), np.cosh(self.val))

    def cosh(self):
        return self._chain(np.cosh(self.val), np.sinh(self.val))

    def arctan(self):
        return self._chain(np.arctan(self.val), 1.0 / (1.0 + self.val * self.val))

    def arctan2(self, x):
        y = self
        if not isinstance(x, Jet1):
            x = Jet1(x, np.zeros_like(y.grad))
        r2 = x.val * x.val + y.val * y.val
        return Jet1(np.arctan2(y.val, x.val), (x.val * y.grad - y.val * x.grad) / r2)

    def conjugate(self):
        return Jet1(np.conj(self.val), np.conj(self.grad))

    conj = conjugate

    @property
    def real(self):
        return Jet1(np.real(self.val), np.real(self.grad))

    @property
    def imag(self):
        return Jet1(np.imag(self.val), np.imag(self.grad))

    _UNARY = Jet._UNARY
    _BINARY = Jet._BINARY

    def __array_ufunc__(self, ufunc, method, *inputs, **kwargs):
        if method != "__call__" or kwargs:
            return NotImplemented
        name = ufunc.__name__
        if name in self._UNARY and len(inputs) == 1:
            return getattr(inputs[0], self._UNARY[name])()
        if name == "square":
            return inputs[0] * inputs[0]
        if name in self._BINARY:
            a, b = inputs
            if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
                return NotImplemented
            a = a.item() if isinstance(a, np.generic) else a
            b = b.item() if isinstance(b, np.generic) else b
            return self._BINARY[name](a, b)
        if name == "arctan2":
            y, x = inputs
            if not isinstance(y, Jet1):
                y = Jet1(y, np.zeros_like(x.grad))
            return y.arctan2(x)
        return NotImplemented


def evaluate_first(fn: Callable, point: Sequence[float]):
    """Like :func:`evaluate` but first order only: ``(value, jacobian)``."""
    n = len(point)
    eye = np.eye(n)
    out = fn([Jet1(float(point[i]), eye[i].copy()) for i in range(n)])
    arr = np.asarray(out, dtype=object)
    shape = arr.shape
    vals, grads = [], []
    for item in arr.reshape(-1):
        if isinstance(item, Jet1):
            vals.append(item.val)
            grads.append(item.grad)
        else:
            vals.append(item)
            grads.append(np.zeros(n))
    dtype = complex if any(np.iscomplexobj(v) for v in vals) else float
    return np.array(vals, dtype=dtype).reshape(shape), np.array(grads, dtype=dtype).reshape(shape + (n,))
