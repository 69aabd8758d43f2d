"""Complex scalars with a tolerance policy and truncated Laurent series in epsilon.

Every contraction parameter appears with a fractional power of epsilon
(eps**(1/2), eps**(1/4), eps**(1/6), ...).  Series are therefore kept in the
variable ``delta = eps**(1/12)`` so that all exponents are integers.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

import numpy as np

from .errors import DivergentLimit, TruncationError, ZeroSeries

DELTA_PER_EPS = 12
DEFAULT_TRUNC = 60  # delta**60 == eps**5
DEFAULT_TOL = 1e-10


def cx_close(a: complex, b: complex, tol: float = DEFAULT_TOL) -> bool:
    """``|a - b| <= tol * max(1, |a|, |b|)``."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def eps_exponent(p) -> int:
    """Delta exponent of ``eps**p``; ``12 p`` must be an integer."""
    q = Fraction(p) * DELTA_PER_EPS
    if q.denominator != 1:
        raise ValueError(f"eps**{p} is not an integral power of eps**(1/12)")
    return int(q)


class EpsSeries:
    """Truncated Laurent series ``sum_k coeffs[k] * delta**(lo + k) + O(delta**trunc)``.

    Instances are immutable.  The zero series is stored with no coefficients
    and ``lo == trunc``.
    """

    __slots__ = ("_lo", "_c", "_trunc")

    def __init__(self, lo: int, coeffs=(), trunc: int = DEFAULT_TRUNC):
        c = np.asarray(coeffs, dtype=complex).ravel()
        n = max(0, min(len(c), trunc - lo))
        c = c[:n]
        nz = np.flatnonzero(c)
        if len(nz) == 0:
            lo, c = trunc, c[:0]
        else:
            c = c[nz[0]: nz[-1] + 1]
            lo += int(nz[0])
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        self._lo = int(lo)
        self._c = c
        self._trunc = int(trunc)

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, value, trunc: int = DEFAULT_TRUNC) -> "EpsSeries":
        return cls(0, [value], trunc)

    @classmethod
    def monomial(cls, coeff, exponent: int, trunc: int = DEFAULT_TRUNC) -> "EpsSeries":
        """``coeff * delta**exponent``."""
        return cls(exponent, [coeff], trunc)

    @classmethod
    def eps(cls, power=1, coeff=1.0, trunc: int = DEFAULT_TRUNC) -> "EpsSeries":
        """``coeff * eps**power`` for rational ``power`` with ``12*power`` integral."""
        return cls.monomial(coeff, eps_exponent(power), trunc)

    @classmethod
    def from_terms(cls, terms: dict, trunc: int = DEFAULT_TRUNC) -> "EpsSeries":
        """Build from ``{delta_exponent: coefficient}``."""
        if not terms:
            return cls.zero(trunc)
        lo = min(terms)
        c = np.zeros(max(terms) - lo + 1, dtype=complex)
        for k, v in terms.items():
            c[k - lo] += v
        return cls(lo, c, trunc)

    @classmethod
    def zero(cls, trunc: int = DEFAULT_TRUNC) -> "EpsSeries":
        return cls(0, (), trunc)

    # accessors --------------------------------------------------------
    @property
    def lo(self) -> int:
        return self._lo

    @property
    def trunc(self) -> int:
        return self._trunc

    @property
    def coeffs(self) -> tuple:
        return tuple(complex(x) for x in self._c)

    def is_zero(self) -> bool:
        return len(self._c) == 0

    def coeff(self, k: int) -> complex:
        """Coefficient of ``delta**k``; raises if ``k`` is beyond the truncation."""
        if k >= self._trunc:
            raise TruncationError(f"delta**{k} is beyond truncation delta**{self._trunc}")
        i = k - self._lo
        if 0 <= i < len(self._c):
            return complex(self._c[i])
        return 0j

    def terms(self) -> dict:
        return {self._lo + i: complex(v) for i, v in enumerate(self._c) if v != 0}

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._c))) if len(self._c) else 0.0

    def __repr__(self) -> str:
        body = " + ".join(f"({v:.6g})d^{k}" for k, v in self.terms().items()) or "0"
        return f"EpsSeries({body} + O(d^{self._trunc}))"

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "EpsSeries":
        if isinstance(other, EpsSeries):
            return other
        if isinstance(other, numbers.Number):
            return EpsSeries.const(complex(other), self._trunc)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = min(self._trunc, other._trunc)
        if self.is_zero():
            return EpsSeries(other._lo, other._c, trunc)
        if other.is_zero():
            return EpsSeries(self._lo, self._c, trunc)
        lo = min(self._lo, other._lo)
        hi = max(self._lo + len(self._c), other._lo + len(other._c))
        c = np.zeros(hi - lo, dtype=complex)
        c[self._lo - lo: self._lo - lo + len(self._c)] += self._c
        c[other._lo - lo: other._lo - lo + len(other._c)] += other._c
        return EpsSeries(lo, c, trunc)

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries(self._lo, -self._c, self._trunc)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return EpsSeries(self._lo, self._c * complex(other), self._trunc)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = min(self._trunc + other._lo, other._trunc + self._lo)
        if self.is_zero() or other.is_zero():
            return EpsSeries.zero(trunc)
        return EpsSeries(self._lo + other._lo, np.convolve(self._c, other._c), trunc)

    __rmul__ = __mul__

    def inv(self) -> "EpsSeries":
        """Multiplicative inverse; the relative precision is preserved."""
        if self.is_zero():
            raise ZeroSeries("cannot invert a series that is zero to its truncation order")
        n = self._trunc - self._lo
        a = np.zeros(n, dtype=complex)
        a[: len(self._c)] = self._c
        b = np.zeros(n, dtype=complex)
        b[0] = 1.0 / a[0]
        for k in range(1, n):
            m = min(k, len(self._c) - 1)
            b[k] = -b[0] * np.dot(a[1: m + 1], b[k - 1:: -1][:m])
        return EpsSeries(-self._lo, b, n - self._lo)

    def __truediv__(self, other):
        if isinstance(other, numbers.Number):
            if other == 0:
                raise ZeroDivisionError("series divided by zero")
            return self * (1.0 / complex(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = EpsSeries.const(1.0, self._trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # analysis ---------------------------------------------------------
    def chop(self, tol: float) -> "EpsSeries":
        """Zero coefficients below ``tol * max(1, max|c|)``."""
        scale = tol * max(1.0, self.max_abs())
        c = np.where(np.abs(self._c) <= scale, 0, self._c)
        return EpsSeries(self._lo, c, self._trunc)

    def close(self, other, tol: float = DEFAULT_TOL) -> bool:
        """Coefficientwise closeness on the common known range."""
        other = self._coerce(other)
        trunc = min(self._trunc, other._trunc)
        keys = set(self.terms()) | set(other.terms())
        return all(cx_close(self.coeff(k), other.coeff(k), tol) for k in keys if k < trunc)

    def limit(self, tol: float = 0.0) -> complex:
        return series_limit(self, tol)

    def evaluate(self, eps: float) -> complex:
        """Partial sum at ``delta = eps**(1/12)`` (real positive ``eps``)."""
        if self.is_zero():
            return 0j
        d = float(eps) ** (1.0 / DELTA_PER_EPS)
        k = np.arange(self._lo, self._lo + len(self._c))
        return complex(np.sum(self._c * d ** k.astype(float)))


def series_mul(s: EpsSeries, t: EpsSeries) -> EpsSeries:
    return s * t


def series_inv(s: EpsSeries) -> EpsSeries:
    return s.inv()


def series_limit(s: EpsSeries, tol: float = 0.0) -> complex:
    """The eps -> 0 limit.

    Coefficients of negative powers with ``|c| <= tol * max(1, max|c|)`` are
    treated as rounding residue; anything larger raises DivergentLimit.
    """
    scale = tol * max(1.0, s.max_abs())
    for k, v in s.terms().items():
        if k < 0 and abs(v) > scale:
            raise DivergentLimit(f"coefficient {v:.3e} of delta**{k} does not vanish")
    if s.trunc <= 0:
        raise TruncationError(
            f"series known only below delta**{s.trunc}; the constant term is undetermined"
        )
    return s.coeff(0)
