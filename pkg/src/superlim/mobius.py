"""GL(2, C) acting on sextics and their roots, rotation generators, sphere picture.

Action on a sextic::

    act(M, q)(z) = (c z + d)**6 * q((a z + b) / (c z + d)),   M = [[a, b], [c, d]]

which sends a root ``r`` of ``q`` to ``(d r - b) / (-c r + a)``.  With this
formula ``act(M1, act(M2, q)) == act(M2 @ M1, q)`` (a right action), so the
composite ``rho(R1) rho(R2) rho(R3)`` applies R1 first.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import SingularMatrix
from .series import DEFAULT_TRUNC, EpsSeries, eps_exponent
from .sextic import INF, EpsSextic, Sextic, is_inf


@dataclass(frozen=True)
class AngleSpec:
    """Rotation angle ``t = theta + i k ln(eps)``.

    ``exp(i t / 2) = exp(i theta / 2) * eps**(-k/2)`` is then an exact
    monomial in ``delta = eps**(1/12)`` provided ``6 k`` is an integer.
    """

    theta: complex = 0j
    k: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "theta", complex(self.theta))
        object.__setattr__(self, "k", Fraction(self.k))
        eps_exponent(-self.k / 2)

    @property
    def singular(self) -> bool:
        return self.k != 0

    def half_exp(self, sign: int = 1, trunc: int = DEFAULT_TRUNC) -> EpsSeries:
        """``exp(sign * i t / 2)`` as a delta monomial."""
        return EpsSeries.eps(-sign * self.k / 2, cmath.exp(sign * 0.5j * self.theta), trunc)

    def full_exp(self, sign: int = 1, trunc: int = DEFAULT_TRUNC) -> EpsSeries:
        """``exp(sign * i t)`` as a delta monomial."""
        return EpsSeries.eps(-sign * self.k, cmath.exp(sign * 1j * self.theta), trunc)

    def value(self, eps: float) -> complex:
        """Numeric angle at a positive real ``eps`` (principal log)."""
        return self.theta + 1j * float(self.k) * math.log(eps)

    def to_json(self) -> dict:
        return {
            "theta_re": self.theta.real,
            "theta_im": self.theta.imag,
            "k_num": self.k.numerator,
            "k_den": self.k.denominator,
        }


@dataclass(frozen=True)
class ScaleSpec:
    """Scale ``c(eps) = coeff * eps**p``."""

    coeff: complex = 1.0
    p: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "p", Fraction(self.p))
        if self.coeff == 0:
            raise ValueError("scale coefficient must be nonzero")
        eps_exponent(self.p)

    def series(self, trunc: int = DEFAULT_TRUNC) -> EpsSeries:
        return EpsSeries.eps(self.p, self.coeff, trunc)

    def inverse_series(self, trunc: int = DEFAULT_TRUNC) -> EpsSeries:
        return EpsSeries.eps(-self.p, 1.0 / self.coeff, trunc)

    def value(self, eps: float) -> complex:
        return self.coeff * float(eps) ** float(self.p)

    def to_json(self) -> dict:
        return {
            "coeff_re": self.coeff.real,
            "coeff_im": self.coeff.imag,
            "p_num": self.p.numerator,
            "p_den": self.p.denominator,
        }


class GL2Element:
    """2x2 matrix ``[[a, b], [c, d]]`` with entries that are series or plain complex numbers."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, trunc: int | None = None) -> "GL2Element":
        if trunc is None:
            return cls(1 + 0j, 0j, 0j, 1 + 0j)
        one, zero = EpsSeries.const(1.0, trunc), EpsSeries.zero(trunc)
        return cls(one, zero, zero, one)

    @classmethod
    def from_array(cls, m) -> "GL2Element":
        m = np.asarray(m, dtype=complex)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    def entries(self) -> tuple:
        return self.a, self.b, self.c, self.d

    @property
    def is_series(self) -> bool:
        return any(isinstance(x, EpsSeries) for x in self.entries())

    def __matmul__(self, other: "GL2Element") -> "GL2Element":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return GL2Element(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def det(self):
        return self.a * self.d - self.b * self.c

    def array(self) -> np.ndarray:
        """Numeric matrix; series entries must be epsilon-free constants."""
        vals = []
        for x in self.entries():
            if isinstance(x, EpsSeries):
                if any(k != 0 for k in x.terms()):
                    raise ValueError("matrix entry depends on eps")
                x = x.coeff(0)
            vals.append(complex(x))
        return np.array(vals).reshape(2, 2)

    def numeric(self, eps: float) -> "GL2Element":
        return GL2Element(*(x.evaluate(eps) if isinstance(x, EpsSeries) else complex(x) for x in self.entries()))

    def __repr__(self) -> str:
        return f"GL2Element(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})"


def _half_angle_pair(t: AngleSpec, trunc):
    """``(cos(t/2), sin(t/2))`` as series, or complex numbers when ``trunc`` is None."""
    if trunc is None:
        h = t.theta / 2
        return cmath.cos(h), cmath.sin(h)
    e_plus, e_minus = t.half_exp(1, trunc), t.half_exp(-1, trunc)
    return (e_plus + e_minus) * 0.5, (e_plus - e_minus) * (-0.5j)


def rot_matrix(axis: int, t: AngleSpec, trunc: int | None = DEFAULT_TRUNC) -> GL2Element:
    """SL(2) image of the rotation about ``axis`` (1, 2 or 3) by angle ``t``.

    Singular angles (``t.k != 0``) produce Laurent-monomial entries.  With
    ``trunc=None`` the angle must be regular and plain complex entries are
    returned.
    """
    if trunc is None and t.singular:
        raise ValueError("a singular angle needs series entries")
    if axis == 3:
        if trunc is None:
            return GL2Element(cmath.exp(0.5j * t.theta), 0j, 0j, cmath.exp(-0.5j * t.theta))
        zero = EpsSeries.zero(trunc)
        return GL2Element(t.half_exp(1, trunc), zero, zero, t.half_exp(-1, trunc))
    cos, sin = _half_angle_pair(t, trunc)
    if axis == 2:
        return GL2Element(cos, -sin, sin, cos)
    if axis == 1:
        return GL2Element(cos, -1j * sin, -1j * sin, cos)
    raise ValueError(f"axis must be 1, 2 or 3, got {axis}")


def rot_matrix_numeric(axis: int, t: complex) -> np.ndarray:
    """Plain complex version for an arbitrary complex angle ``t``."""
    h = complex(t) / 2
    if axis == 3:
        return np.array([[cmath.exp(1j * h), 0], [0, cmath.exp(-1j * h)]])
    c, s = cmath.cos(h), cmath.sin(h)
    if axis == 2:
        return np.array([[c, -s], [s, c]])
    if axis == 1:
        return np.array([[c, -1j * s], [-1j * s, c]])
    raise ValueError(f"axis must be 1, 2 or 3, got {axis}")


def composite(t1: AngleSpec, t2: AngleSpec, t3: AngleSpec, trunc: int = DEFAULT_TRUNC) -> GL2Element:
    """``rho(R1(t1)) rho(R2(t2)) rho(R3(t3))``."""
    return rot_matrix(1, t1, trunc) @ rot_matrix(2, t2, trunc) @ rot_matrix(3, t3, trunc)


def _poly_mul(p: list, q: list) -> list:
    out = [None] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            term = x * y
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    return out


def _powers(lin: list, n: int, one) -> list:
    pw = [[one]]
    for _ in range(n):
        pw.append(_poly_mul(pw[-1], lin))
    return pw


def act_coeffs(M: GL2Element, coeffs) -> list:
    """Ascending coefficients of ``(c z + d)**6 q((a z + b)/(c z + d))``.

    Works over any coefficient ring supporting + and * (complex, EpsSeries).
    """
    a, b, c, d = M.entries()
    one = a * 0 + 1
    num = _powers([b, a], 6, one)
    den = _powers([d, c], 6, one)
    out = [one * 0 for _ in range(7)]
    for k, qk in enumerate(coeffs):
        if isinstance(qk, numbers.Number) and qk == 0:
            continue
        if isinstance(qk, EpsSeries) and qk.is_zero():
            continue
        term = _poly_mul(num[k], den[6 - k])
        for j, t in enumerate(term):
            out[j] = out[j] + qk * t
    return out


def _check_det(M: GL2Element):
    det = M.det()
    if isinstance(det, EpsSeries):
        if det.is_zero():
            raise SingularMatrix("determinant vanishes to truncation order")
    elif abs(det) == 0:
        raise SingularMatrix("determinant is zero")


def act(M: GL2Element, q):
    """Apply the Moebius action to a Sextic (numeric M) or an EpsSextic."""
    _check_det(M)
    if isinstance(q, Sextic):
        if M.is_series:
            return act(M, EpsSextic.constant(q))
        return Sextic(act_coeffs(M, q.coeffs))
    if isinstance(q, EpsSextic):
        trunc = q.trunc
        entries = [
            x if isinstance(x, EpsSeries) else EpsSeries.const(x, trunc) for x in M.entries()
        ]
        return EpsSextic(act_coeffs(GL2Element(*entries), q.coeffs))
    raise TypeError(f"cannot act on {type(q).__name__}")


def scale_action(s: ScaleSpec, q):
    """Multiply every coefficient by ``c(eps)**-1``."""
    if isinstance(q, Sextic):
        if s.p != 0:
            return scale_action(s, EpsSextic.constant(q))
        return q * (1.0 / s.coeff)
    # exact monomial: shift exponents and keep each coefficient's relative precision
    e = -eps_exponent(s.p)
    k = 1.0 / s.coeff
    return EpsSextic([EpsSeries(c.lo + e, np.asarray(c.coeffs) * k, c.trunc + e) for c in q.coeffs])


def transform_root(M, r: complex) -> complex:
    """Image ``(d r - b) / (-c r + a)`` of a root, computed projectively."""
    m = M.array() if isinstance(M, GL2Element) else np.asarray(M, dtype=complex)
    (a, b), (c, d) = m
    if abs(a * d - b * c) == 0:
        raise SingularMatrix("determinant is zero")
    if is_inf(r):
        num, den = d, -c
    else:
        num, den = d * r - b, -c * r + a
    if den == 0:
        return INF
    return complex(num / den)


def stereographic(z: complex) -> tuple:
    """Point on the unit sphere; infinity is the north pole."""
    if is_inf(z):
        return (0.0, 0.0, 1.0)
    x, y = z.real, z.imag
    r2 = x * x + y * y
    n = 1.0 + r2
    return (2 * x / n, 2 * y / n, (r2 - 1.0) / n)


def so3_matrix(axis: int, angle: complex) -> np.ndarray:
    t = complex(angle)
    c, s = cmath.cos(t), cmath.sin(t)
    if axis == 1:
        m = [[1, 0, 0], [0, c, -s], [0, s, c]]
    elif axis == 2:
        m = [[c, 0, s], [0, 1, 0], [-s, 0, c]]
    elif axis == 3:
        m = [[c, -s, 0], [s, c, 0], [0, 0, 1]]
    else:
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    m = np.array(m, dtype=complex)
    return m.real if np.all(m.imag == 0) else m


# Sense in which the root motion of rho(R_i(t)) rotates the Riemann sphere:
# stereographic(transform_root(rho(R_i(t)), z)) == so3_matrix(i, SPHERE_SENSE[i] * t) @ stereographic(z)
SPHERE_SENSE = {1: 1, 2: -1, 3: -1}
