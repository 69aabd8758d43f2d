"""The eleven catalog potentials, their covariant sextics, and the contraction records.

Potentials are stored as five basis functions (one per parameter a..e), written
with plain arithmetic so that they evaluate on complex numbers, on Jets
(exact derivatives) and on EpsSeries alike.  The same holds for the
covariant-sextic builders and for the moving regular points of the
contractions.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import SingularPoint, UnknownContraction, UnknownSystem, UnsupportedPoint
from .jet import Jet
from .mobius import AngleSpec, ScaleSpec
from .series import DEFAULT_TOL, DEFAULT_TRUNC, EpsSeries, cx_close
from .sextic import EpsSextic, Sextic

SINGULAR_TOL = 1e-8


class SystemId(str, Enum):
    O = "O"
    A = "A"
    OO = "OO"
    VII = "VII"
    VI = "VI"
    V = "V"
    IV = "IV"
    III = "III"
    II = "II"
    I = "I"
    SW = "SW"

    def __str__(self) -> str:
        return self.value


CLASS_LABEL = {
    SystemId.O: "[0]",
    SystemId.A: "[6]",
    SystemId.OO: "[33]",
    SystemId.VII: "[51]",
    SystemId.VI: "[3111b]",
    SystemId.V: "[411]",
    SystemId.IV: "[111111c]",
    SystemId.III: "[411]",
    SystemId.II: "[3111a]",
    SystemId.I: "[111111b]",
    SystemId.SW: "[111111a]",
}


def system_id(name) -> SystemId:
    if isinstance(name, SystemId):
        return name
    try:
        return SystemId(str(name).strip())
    except ValueError:
        raise UnknownSystem(f"unknown system {name!r}") from None


# ---------------------------------------------------------------------------
# potentials

def _one(x):
    return x * 0 + 1


def _basis_O(x1, x2, x3):
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    return [r2 * 0.5, x1, x2, x3, _one(x1)]


def _basis_A(x1, x2, x3):
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    zm = x1 - 1j * x2
    return [
        r2 * 0.5 + zm**3 * (1 / 12),
        x1 + zm**2 * 0.25,
        x2 - zm**2 * 0.25j,
        x3,
        _one(x1),
    ]


def _basis_OO(x1, x2, x3):
    return [4 * x1 * x1 + 4 * x2 * x2 + x3 * x3, x1, x2, 1 / x3**2, _one(x1)]


def _basis_VII(x1, x2, x3):
    zp, zm = x1 + 1j * x2, x1 - 1j * x2
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    return [
        zp,
        3 * zp**2 + x3,
        16 * zp**3 + zm + 12 * x3 * zp,
        5 * zp**4 + r2 + 6 * zp**2 * x3,
        _one(x1),
    ]


def _basis_VI(x1, x2, x3):
    zm = x1 - 1j * x2
    return [
        x3 * x3 - 2 * zm**3 + 4 * (x1 * x1 + x2 * x2),
        2 * x1 + 2j * x2 - 3 * zm**2,
        zm,
        1 / x3**2,
        _one(x1),
    ]


def _basis_V(x1, x2, x3):
    zp, zm = x1 + 1j * x2, x1 - 1j * x2
    return [x1 * x1 + x2 * x2 + 4 * x3 * x3, x3, 1 / zp**2, zm / zp**3, _one(x1)]


def _basis_IV(x1, x2, x3):
    return [4 * x1 * x1 + x2 * x2 + x3 * x3, x1, 1 / x2**2, 1 / x3**2, _one(x1)]


def _basis_III(x1, x2, x3):
    zp = x1 + 1j * x2
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    return [r2, 1 / zp**2, x3 / zp**3, (x1 * x1 + x2 * x2 - 3 * x3 * x3) / zp**4, _one(x1)]


def _basis_II(x1, x2, x3):
    zp, zm = x1 + 1j * x2, x1 - 1j * x2
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    return [r2, zm / zp**3, 1 / zp**2, 1 / x3**2, _one(x1)]


def _basis_I(x1, x2, x3):
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    return [r2, 1 / x1**2, 1 / x2**2, 1 / x3**2, _one(x1)]


def _basis_SW(x1, x2, x3):
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    return [1 / (1 + r2) ** 2, 1 / x1**2, 1 / x2**2, 1 / x3**2, 1 / (r2 - 1) ** 2]


_X1 = ("x1", lambda x: x[0])
_X2 = ("x2", lambda x: x[1])
_X3 = ("x3", lambda x: x[2])
_ZP = ("x1+ix2", lambda x: x[0] + 1j * x[1])
_RP = ("1+r^2", lambda x: 1 + x[0] ** 2 + x[1] ** 2 + x[2] ** 2)
_RM = ("-1+r^2", lambda x: -1 + x[0] ** 2 + x[1] ** 2 + x[2] ** 2)


@dataclass(frozen=True)
class PotentialSpec:
    id: SystemId
    basis: Callable
    loci: tuple
    default_point: tuple
    formula: str

    @property
    def label(self) -> str:
        return CLASS_LABEL[self.id]


POTENTIALS = {
    s.id: s
    for s in [
        PotentialSpec(SystemId.O, _basis_O, (), (0, 0, 0),
                      "a/2 r^2 + b x1 + c x2 + d x3 + e"),
        PotentialSpec(SystemId.A, _basis_A, (), (0, 0, 0),
                      "a(r^2/2 + (x1-ix2)^3/12) + b(x1 + (x1-ix2)^2/4) + c(x2 - i(x1-ix2)^2/4) + d x3 + e"),
        PotentialSpec(SystemId.OO, _basis_OO, (_X3,), (0, 0, 1),
                      "a(4x1^2 + 4x2^2 + x3^2) + b x1 + c x2 + d/x3^2 + e"),
        PotentialSpec(SystemId.VII, _basis_VII, (), (0, 0, 0),
                      "a w + b(3w^2 + x3) + c(16w^3 + (x1-ix2) + 12 x3 w) + d(5w^4 + r^2 + 6 w^2 x3) + e,"
                      " w = x1+ix2"),
        PotentialSpec(SystemId.VI, _basis_VI, (_X3,), (0, 0, 2),
                      "a(x3^2 - 2(x1-ix2)^3 + 4(x1^2+x2^2)) + b(2x1 + 2ix2 - 3(x1-ix2)^2) + c(x1-ix2)"
                      " + d/x3^2 + e"),
        PotentialSpec(SystemId.V, _basis_V, (_ZP,), (0, 1, 0),
                      "a(x1^2 + x2^2 + 4x3^2) + b x3 + c/(x1+ix2)^2 + d(x1-ix2)/(x1+ix2)^3 + e"),
        PotentialSpec(SystemId.IV, _basis_IV, (_X2, _X3), (0, 1, 1),
                      "a(4x1^2 + x2^2 + x3^2) + b x1 + c/x2^2 + d/x3^2 + e"),
        PotentialSpec(SystemId.III, _basis_III, (_ZP,), (0, 1, 0),
                      "a r^2 + b/(x1+ix2)^2 + c x3/(x1+ix2)^3 + d(x1^2+x2^2-3x3^2)/(x1+ix2)^4 + e"),
        PotentialSpec(SystemId.II, _basis_II, (_ZP, _X3), (1, 0, 1),
                      "a r^2 + b(x1-ix2)/(x1+ix2)^3 + c/(x1+ix2)^2 + d/x3^2 + e"),
        PotentialSpec(SystemId.I, _basis_I, (_X1, _X2, _X3), (1, 1, 1),
                      "a r^2 + b/x1^2 + c/x2^2 + d/x3^2 + e"),
        PotentialSpec(SystemId.SW, _basis_SW, (_X1, _X2, _X3, _RP, _RM), (1, 1, 1),
                      "a/(1+r^2)^2 + b/x1^2 + c/x2^2 + d/x3^2 + e/(-1+r^2)^2"),
    ]
}


def potential(sid) -> PotentialSpec:
    return POTENTIALS[system_id(sid)]


def _numeric(v) -> complex:
    if isinstance(v, Jet):
        return v.val
    if isinstance(v, EpsSeries):
        return v.coeff(0) if v.lo >= 0 else complex("inf")
    return complex(v)


def check_regular(sid, x) -> None:
    """Raise SingularPoint if ``x`` is within 1e-8 of a singular locus of ``sid``."""
    spec = potential(sid)
    xs = tuple(_numeric(c) for c in x)
    for name, fn in spec.loci:
        if abs(fn(xs)) < SINGULAR_TOL:
            raise SingularPoint(name, tuple(x))


def potential_basis(sid, x) -> list:
    """The five basis functions at ``x`` (complex, Jet or EpsSeries coordinates)."""
    if len(x) != 3:
        raise ValueError("a point has three coordinates")
    check_regular(sid, x)
    return potential(sid).basis(*x)


def potential_eval(sid, params, x):
    """Value of the potential with parameters ``(a, b, c, d, e)`` at ``x``."""
    if len(params) != 5:
        raise ValueError("a potential has five parameters")
    x = tuple(complex(v) if isinstance(v, numbers.Number) else v for v in x)
    total = 0
    for p, f in zip(params, potential_basis(sid, x)):
        if p != 0:
            total = f * p + total
    return total


def potential_derivs(sid, params, x):
    """``(V, grad, hess, V_ee)`` by second-order forward-mode differentiation.

    ``hess`` is ordered ``(V11, V22, V33, V12, V13, V23)``.
    """
    jets = Jet.variables([complex(v) for v in x])
    v = potential_eval(sid, params, jets)
    if not isinstance(v, Jet):
        v = Jet(v)
    h = v.hess
    hess = np.array([h[0, 0], h[1, 1], h[2, 2], h[0, 1], h[0, 2], h[1, 2]])
    return v.val, v.grad.copy(), hess, (h[0, 0] + h[1, 1] + h[2, 2]) / 3


# ---------------------------------------------------------------------------
# covariant sextics

def _q_II(x1, x2, x3):
    zp, zm = x1 + 1j * x2, x1 - 1j * x2
    z = x1 * 0
    return [3j * zm / zp**2, z, 9j / zp, 6j / x3, z, z, z]


def _q_IV(x1, x2, x3):
    k = 0.75 / x2
    z = x1 * 0
    return [k, z, 3 * k, 6j / x3, 3 * k, z, k]


def _q_I(x1, x2, x3):
    A = 0.75j / x1
    B = 0.75 / x2
    z = x1 * 0
    return [B - A, z, 3 * A + 3 * B, 6j / x3, 3 * B - 3 * A, z, A + B]


def sw_printed(eta) -> list:
    """Diagonal SW covariant exactly as printed, ascending coefficients."""
    e4 = eta**4
    D = 1 - 9 * e4
    F = (1 - e4) / D
    w = 1 + 1j
    return [
        0.75j * w * F,
        36 * e4 / D,
        -2.25 * w * F,
        -6j * F,
        2.25j * w * F,
        -36 * e4 / D,
        -0.75 * w * F,
    ]


def _q_SW(x1, x2, x3):
    # printed family rescaled by -1/eta: homogeneous of degree -1 in the point
    # like the I, II, IV builders, and agreeing with q_I in the contraction limit
    return [-c / x1 for c in sw_printed(x1)]


_BUILDERS = {SystemId.II: _q_II, SystemId.IV: _q_IV, SystemId.I: _q_I, SystemId.SW: _q_SW}


def _table(terms: dict) -> Sextic:
    return Sextic.from_terms(terms)


# (system, point) -> printed covariant sextic at that fixed point
FIXED_POINTS = {
    SystemId.A: [((0, 0, 0), _table({6: -1j}))],
    SystemId.VII: [((0, 0, 0), _table({1: -36j}))],
    SystemId.OO: [((0, 0, 1), _table({3: 6j}))],
    SystemId.III: [((0, 1, 0), _table({0: -3, 2: -9}))],
    SystemId.V: [((0, 1, 0), _table({0: -3, 2: 9}))],
    SystemId.VI: [
        ((0, 0, 2j), _table({3: 3, 6: 3j})),
        ((0, 0, 2), _table({3: 3j, 6: 3j})),
    ],
}

# the diagonal SW sextic at (1,1,1) as printed in factored form
SW_FACTORED = _table({1: -4.5, 5: 4.5})


def _point_value(v) -> complex:
    """Constant value of a coordinate; series must be eps-free."""
    if isinstance(v, EpsSeries):
        if any(k != 0 for k in v.terms()):
            raise UnsupportedPoint("fixed-point covariant needs an eps-independent point")
        return v.coeff(0)
    return complex(v)


def _same_point(x, p, tol=DEFAULT_TOL) -> bool:
    return all(cx_close(_point_value(a), complex(b), tol) for a, b in zip(x, p))


def covariant_coeffs(sid, x0) -> list:
    """Covariant sextic coefficients at ``x0`` in the coordinates' own ring."""
    sid = system_id(sid)
    if len(x0) != 3:
        raise ValueError("a point has three coordinates")
    if sid == SystemId.O:
        return [x0[0] * 0 for _ in range(7)]
    if sid in _BUILDERS:
        if sid == SystemId.SW and not (_equal(x0[0], x0[1]) and _equal(x0[0], x0[2])):
            raise UnsupportedPoint("only the diagonal (eta, eta, eta) SW covariant is available")
        if sid == SystemId.SW:
            eta4 = _point_value_lowest(x0[0]) ** 4
            if cx_close(eta4, 1 / 9, 1e-12):
                raise SingularPoint("1-9x1^4", tuple(x0))
        try:
            return _BUILDERS[sid](*x0)
        except ZeroDivisionError:
            raise SingularPoint("covariant denominator", tuple(x0)) from None
    for point, q in FIXED_POINTS.get(sid, []):
        if _same_point(x0, point):
            return list(q.coeffs)
    raise UnsupportedPoint(f"no closed-form covariant for {sid} at {tuple(x0)!r}")


def _equal(a, b) -> bool:
    if isinstance(a, EpsSeries) or isinstance(b, EpsSeries):
        d = a - b
        return (d.is_zero() if isinstance(d, EpsSeries) else d == 0)
    return cx_close(complex(a), complex(b))


def _point_value_lowest(v) -> complex:
    if isinstance(v, EpsSeries):
        return v.coeff(0) if v.lo == 0 else (0j if v.lo > 0 else complex("inf"))
    return complex(v)


def covariant_poly(sid, x0, trunc: int = DEFAULT_TRUNC) -> EpsSextic:
    """Covariant sextic with series coefficients at a (possibly moving) point."""
    x0 = tuple(v if isinstance(v, EpsSeries) else EpsSeries.const(v, trunc) for v in x0)
    return EpsSextic(covariant_coeffs(sid, x0))


def covariant_sextic(sid, x0) -> Sextic:
    """Covariant sextic at a fixed numeric point."""
    return Sextic([complex(c) for c in covariant_coeffs(sid, tuple(complex(v) for v in x0))])


def representative(sid) -> Sextic:
    """Covariant sextic at the catalog default point."""
    return covariant_sextic(sid, potential(sid).default_point)


# ---------------------------------------------------------------------------
# contraction records

def _k(q):
    return Fraction(q)


ZERO = AngleSpec()


@dataclass(frozen=True)
class ContractionSpec:
    name: str
    source: SystemId
    target: SystemId
    t1: AngleSpec
    t2: AngleSpec
    t3: AngleSpec
    c: ScaleSpec
    x0_fn: Callable = field(repr=False)
    x0_text: str
    y0: tuple
    target_poly: Sextic
    aliases: tuple = ()

    @property
    def angles(self) -> tuple:
        return self.t1, self.t2, self.t3

    def x0(self, eps):
        """Moving regular point; ``eps`` is a float or the series ``EpsSeries.eps(1)``."""
        return tuple(self.x0_fn(eps))

    def x0_series(self, trunc: int = DEFAULT_TRUNC) -> tuple:
        pts = self.x0(EpsSeries.eps(1, 1.0, trunc))
        return tuple(p if isinstance(p, EpsSeries) else EpsSeries.const(p, trunc) for p in pts)

    def source_poly(self, trunc: int = DEFAULT_TRUNC) -> EpsSextic:
        return covariant_poly(self.source, self.x0_series(trunc), trunc)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source.value,
            "target": self.target.value,
            "source_class": CLASS_LABEL[self.source],
            "target_class": CLASS_LABEL[self.target],
            "t1": self.t1.to_json(),
            "t2": self.t2.to_json(),
            "t3": self.t3.to_json(),
            "c": self.c.to_json(),
            "x0": self.x0_text,
            "x0_series": [_series_json(s) for s in self.x0_series()],
            "y0": [[complex(v).real, complex(v).imag] for v in self.y0],
            "target_poly": self.target_poly.to_json(),
        }


def _series_json(s: EpsSeries) -> dict:
    return {
        "lo": s.lo,
        "coeffs": [[c.real, c.imag] for c in s.coeffs],
        "trunc": s.trunc,
    }


def _spec(name, source, target, *, t1=ZERO, t2=ZERO, t3=ZERO, c=ScaleSpec(), x0, x0_text, y0,
          target_poly, aliases=()):
    return ContractionSpec(name, SystemId(source), SystemId(target), t1, t2, t3, c, x0, x0_text,
                           tuple(complex(v) for v in y0), target_poly, tuple(aliases))


def _const_point(*p):
    return lambda e: p


PI = math.pi
_Q_I_111 = Sextic(_q_I(1 + 0j, 1 + 0j, 1 + 0j))

CONTRACTIONS = [
    _spec("A-to-O", "A", "O", c=ScaleSpec(1, -1),
          x0=_const_point(0, 0, 0), x0_text="(0, 0, 0)", y0=(0, 0, 0),
          target_poly=Sextic.zero()),
    _spec("VII-to-A", "VII", "A", t2=AngleSpec(PI / 2), t3=AngleSpec(0, 1), c=ScaleSpec(4.5, -3),
          x0=_const_point(0, 0, 0), x0_text="(0, 0, 0)", y0=(0, 0, 0),
          target_poly=_table({6: -1j})),
    _spec("OO-to-A", "OO", "A", t1=AngleSpec(0, 1), t2=AngleSpec(-PI / 2), c=ScaleSpec(0.75, -3),
          x0=_const_point(0, 0, 1), x0_text="(0, 0, 1)", y0=(0, 0, 0),
          target_poly=_table({6: -1j})),
    _spec("III-to-VII", "III", "VII", t1=AngleSpec(-2 * PI / 3), t2=AngleSpec(PI), t3=AngleSpec(0, -1),
          c=ScaleSpec(-9 / (32 * math.sqrt(3)), -2),
          x0=_const_point(0, 1, 0), x0_text="(0, 1, 0)", y0=(0, 0, 0),
          target_poly=_table({1: -36j})),
    _spec("VI-to-VII", "VI", "VII", t1=AngleSpec(PI / 2), t3=AngleSpec(0, _k("-1/2")), c=ScaleSpec(1j / 16, -1),
          x0=_const_point(0, 0, 2j), x0_text="(0, 0, 2i)", y0=(0, 0, 0),
          target_poly=_table({1: -36j})),
    _spec("VI-to-OO", "VI", "OO", t3=AngleSpec(0, -1), c=ScaleSpec(0.5, 0),
          x0=_const_point(0, 0, 2), x0_text="(0, 0, 2)", y0=(0, 0, 1),
          target_poly=_table({3: 6j})),
    _spec("II-to-V", "II", "V", c=ScaleSpec(1j, 0),
          x0=lambda e: (0, -1j, 1 / e), x0_text="(0, -i, 1/eps)", y0=(0, 1, 0),
          target_poly=_table({0: -3, 2: 9})),
    _spec("II-to-VI", "II", "VI", t2=AngleSpec(PI), t3=AngleSpec(0, _k("1/3")),
          x0=lambda e: (1 / e, 0, 3 * e - 2), x0_text="(1/eps, 0, 3 eps - 2)", y0=(0, 0, 2),
          target_poly=_table({3: 3j, 6: 3j})),
    _spec("IV-to-V", "IV", "V", t2=AngleSpec(-PI / 2), t3=AngleSpec(0, -1), c=ScaleSpec(-0.5, -1),
          x0=lambda e: (0, 1 / (e * e - 1), 1j / (e * e + 1)),
          x0_text="(0, 1/(eps^2 - 1), i/(eps^2 + 1))", y0=(0, 1, 0),
          target_poly=_table({0: -3, 2: 9})),
    _spec("IV-to-VI", "IV", "VI", t3=AngleSpec(0, 1),
          x0=lambda e: (0, -0.25j / e**3, 2), x0_text="(0, -i/(4 eps^3), 2)", y0=(0, 0, 2),
          target_poly=_table({3: 3j, 6: 3j})),
    _spec("I-to-II", "I", "II", t3=AngleSpec(0, -1),
          x0=lambda e: ((e * e + 1) / (2 * e), 1j * (e * e - 1) / (2 * e), 1),
          x0_text="((eps^2 + 1)/(2 eps), i(eps^2 - 1)/(2 eps), 1)", y0=(1, 0, 1),
          target_poly=_table({0: 3j, 2: 9j, 3: 6j})),
    _spec("I-to-II-geometric", "I", "II", t3=AngleSpec(0, -1), c=ScaleSpec(0.5, 0),
          x0=lambda e: (1 / e, -1j / e, 4), x0_text="(1/eps, -i/eps, 4)", y0=(0.5, -0.5j, 2),
          target_poly=_table({2: 9j, 3: 3j})),
    _spec("I-to-IV", "I", "IV", c=ScaleSpec(1, -1),
          x0=lambda e: (1, e, e), x0_text="(1, eps, eps)", y0=(0, 1, 1),
          target_poly=_table({0: 0.75, 2: 2.25, 3: 6j, 4: 2.25, 6: 0.75})),
    _spec("SW-to-I", "SW", "I", c=ScaleSpec(1, -1),
          x0=lambda e: (e, e, e), x0_text="(eps, eps, eps)", y0=(1, 1, 1),
          target_poly=_Q_I_111),
]

_BY_NAME = {s.name: s for s in CONTRACTIONS}

# edges of the limiting diagram, in the order they are drawn top to bottom
FIGURE_EDGES = [
    ("SW", "I"), ("I", "IV"), ("I", "II"), ("IV", "III/V"), ("IV", "VI"), ("II", "III/V"),
    ("II", "VI"), ("III/V", "VII"), ("VI", "VII"), ("VI", "OO"), ("VII", "A"), ("OO", "A"), ("A", "O"),
]


def _normalize_name(name: str) -> str:
    s = str(name).strip()
    for arrow in ("→", "->", "=>"):
        s = s.replace(arrow, "-to-")
    s = s.replace(" ", "")
    return s.replace("-to--to-", "-to-")


def contraction_names() -> list:
    return [s.name for s in CONTRACTIONS]


def contraction_spec(name: str) -> ContractionSpec:
    """Look up a record by name; arrows ``->`` and the unicode arrow are accepted."""
    key = _normalize_name(name)
    for spec in CONTRACTIONS:
        if spec.name == key or spec.name.lower() == key.lower():
            return spec
    raise UnknownContraction(f"unknown contraction {name!r}")
