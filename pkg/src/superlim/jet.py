"""Second-order forward-mode jets in three variables.

A Jet carries a value, its gradient and its Hessian; arithmetic propagates all
three exactly (truncated multivariate Taylor arithmetic), so closed-form
potentials evaluated on jets yield exact first and second partials.
"""

from __future__ import annotations

import numbers

import numpy as np


class Jet:
    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad=None, hess=None):
        self.val = complex(val)
        self.grad = np.zeros(3, dtype=complex) if grad is None else np.asarray(grad, dtype=complex)
        self.hess = np.zeros((3, 3), dtype=complex) if hess is None else np.asarray(hess, dtype=complex)

    @classmethod
    def variables(cls, x) -> tuple:
        """Seed jets for the coordinates ``x = (x1, x2, x3)``."""
        return tuple(cls(x[i], np.eye(3, dtype=complex)[i]) for i in range(3))

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, numbers.Number):
            return Jet(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Jet(self.val + other.val, self.grad + other.grad, self.hess + other.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.grad, -self.hess)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            k = complex(other)
            return Jet(self.val * k, self.grad * k, self.hess * k)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        g = self.val * other.grad + other.val * self.grad
        h = (
            self.val * other.hess
            + other.val * self.hess
            + np.outer(self.grad, other.grad)
            + np.outer(other.grad, self.grad)
        )
        return Jet(self.val * other.val, g, h)

    __rmul__ = __mul__

    def _apply(self, f0, f1, f2) -> "Jet":
        """Chain rule for a scalar function with derivatives f0, f1, f2 at ``val``."""
        return Jet(f0, f1 * self.grad, f1 * self.hess + f2 * np.outer(self.grad, self.grad))

    def reciprocal(self) -> "Jet":
        v = self.val
        if v == 0:
            raise ZeroDivisionError("jet with zero value has no reciprocal")
        return self._apply(1 / v, -1 / v**2, 2 / v**3)

    def __truediv__(self, other):
        if isinstance(other, numbers.Number):
            return self * (1 / complex(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        v = self.val
        if n == 0:
            return Jet(1)
        if n < 0 and v == 0:
            raise ZeroDivisionError("negative power of a jet with zero value")
        return self._apply(v**n, n * v ** (n - 1), n * (n - 1) * v ** (n - 2) if n != 1 else 0)

    def __repr__(self) -> str:
        return f"Jet({self.val!r}, grad={self.grad!r})"
