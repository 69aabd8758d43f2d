"""Recover the structure functions {Q, S, R} at a point from a catalog potential.

The reduced Bertrand-Darboux identity

    (V11, V22, V33, V12, V13, V23)^T = M(u) (V_ee, V1, V2, V3)^T

is linear in the ten unknowns ``u``.  Each parameter direction of a potential
gives six equations at the point; stacking four directions gives a 24 x 10
least-squares problem.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .catalog import covariant_sextic, potential_derivs, system_id
from .errors import NoMatch, RankDeficient, UnsupportedPoint
from .sextic import Sextic

RANK_TOL = 1e-8
MATCH_TOL = 1e-8

SQRT_BINOM6 = tuple(math.sqrt(math.comb(6, j)) for j in range(7))


@dataclass(frozen=True)
class QSRPoint:
    Q123: complex = 0j
    S1: complex = 0j
    S2: complex = 0j
    S3: complex = 0j
    R12_1: complex = 0j
    R12_2: complex = 0j
    R13_1: complex = 0j
    R13_3: complex = 0j
    R23_2: complex = 0j
    R23_3: complex = 0j

    @classmethod
    def from_array(cls, a) -> "QSRPoint":
        return cls(*(complex(v) for v in np.asarray(a).ravel()))

    def array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=complex)

    def without_gauge(self) -> "QSRPoint":
        """Same point with the S components set to zero."""
        return QSRPoint(self.Q123, 0j, 0j, 0j, *astuple(self)[4:])

    def to_json(self) -> dict:
        return {f.name: [complex(getattr(self, f.name)).real, complex(getattr(self, f.name)).imag]
                for f in fields(self)}


@dataclass(frozen=True)
class WeightVector:
    Y3: complex
    Y2: complex
    Y1: complex
    Y0: complex
    Ym1: complex
    Ym2: complex
    Ym3: complex

    def descending(self) -> tuple:
        """``(Y3, Y2, ..., Y-3)``."""
        return astuple(self)


def bd_matrix(u: QSRPoint) -> np.ndarray:
    """The 6 x 4 reduced Bertrand-Darboux matrix at ``u``."""
    Q, S1, S2, S3 = u.Q123, u.S1, u.S2, u.S3
    R12_1, R12_2, R13_1, R13_3, R23_2, R23_3 = u.R12_1, u.R12_2, u.R13_1, u.R13_3, u.R23_2, u.R23_3
    return np.array(
        [
            [1, -4 * S1 - R12_2 - R13_3, 2 * S2 + R12_1, 2 * S3 + R13_1],
            [1, 2 * S1 + R12_2, -4 * S2 - R12_1 - R23_3, 2 * S3 + R23_2],
            [1, 2 * S1 + R13_3, 2 * S2 + R23_3, -4 * S3 - R13_1 - R23_2],
            [0, R12_1 - 3 * S2, R12_2 - 3 * S1, Q],
            [0, R13_1 - 3 * S3, Q, R13_3 - 3 * S1],
            [0, Q, R23_2 - 3 * S3, R23_3 - 3 * S2],
        ],
        dtype=complex,
    )


# variable block of bd_matrix for each unit u, shape (10, 6, 3)
_UNIT_BLOCKS = np.stack([bd_matrix(QSRPoint.from_array(e))[:, 1:] for e in np.eye(10)])


def _equations(grad: np.ndarray, hess: np.ndarray, vee: complex):
    """Rows ``L u = rhs`` contributed by one parameter direction."""
    L = np.einsum("jrk,k->rj", _UNIT_BLOCKS, grad)
    rhs = hess - vee * np.array([1, 1, 1, 0, 0, 0])
    return L, rhs


def direction_data(sid, x0) -> list:
    """``(V, grad, hess, V_ee)`` for each of the five unit parameter vectors."""
    return [potential_derivs(sid, tuple(np.eye(5)[k]), x0) for k in range(5)]


def recover_qsr(sid, x0, rank_tol: float = RANK_TOL):
    """Least-squares ``{Q, S, R}`` at ``x0`` and the max row residual.

    The four directions used span the parameter vectors with ``V(x0) = 0``.
    For flat systems this is the span of a, b, c, d; for conformal ones
    (SW) it removes the undetermined term proportional to V itself.
    """
    sid = system_id(sid)
    x0 = tuple(complex(v) for v in x0)
    data = direction_data(sid, x0)
    values = np.array([d[0] for d in data])
    grads = np.array([d[1] for d in data])
    hesses = np.array([d[2] for d in data])
    vees = np.array([d[3] for d in data])
    if np.max(np.abs(values)) == 0:
        dirs = np.eye(5)[:4]
    else:
        _, _, vh = np.linalg.svd(values.reshape(1, 5))
        dirs = vh[1:].conj()
    blocks, rhs = [], []
    for p in dirs:
        L, r = _equations(p @ grads, p @ hesses, p @ vees)
        blocks.append(L)
        rhs.append(r)
    A = np.vstack(blocks)
    b = np.concatenate(rhs)
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[0] == 0 or sv[-1] / sv[0] < rank_tol:
        raise RankDeficient(f"stacked system is rank deficient at {x0!r} (sigma ratio {sv[-1] / max(sv[0], 1e-300):.2e})")
    u, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.max(np.abs(A @ u - b)))
    return QSRPoint.from_array(u), residual


def weight_vectors(u: QSRPoint) -> WeightVector:
    s6, s15, s5 = math.sqrt(6) / 4, math.sqrt(15) / 4, math.sqrt(5) / 2
    a = u.R12_1 + u.R23_3 / 4
    b = u.R12_2 + u.R13_3 / 4
    m = 1j * (u.R13_1 - u.R23_2)
    return WeightVector(
        Y3=a + 1j * b,
        Y2=s6 * (m - 2 * u.Q123),
        Y1=s15 * (u.R23_3 - 1j * u.R13_3),
        Y0=-1j * s5 * (u.R13_1 + u.R23_2),
        Ym1=s15 * (u.R23_3 + 1j * u.R13_3),
        Ym2=s6 * (m + 2 * u.Q123),
        Ym3=a - 1j * b,
    )


def assemble_q(Y: WeightVector) -> Sextic:
    """``q(z) = sum_j (-1)^j sqrt(C(6, j)) Y_{3-j} z^{6-j}``."""
    coeffs = [0j] * 7
    for j, y in enumerate(Y.descending()):
        coeffs[6 - j] = (-1) ** j * SQRT_BINOM6[j] * y
    return Sextic(coeffs)


def match_scalar(p: Sextic, q: Sextic):
    """Least-squares ``s`` with ``p ~ s q`` and the relative defect ``|p - s q| / |p|``.

    Two zero sextics match with ``s = 1``; exactly one zero gives defect 1.
    """
    pa, qa = p.array(), q.array()
    pn, qn = np.linalg.norm(pa), np.linalg.norm(qa)
    if pn == 0 and qn == 0:
        return 1 + 0j, 0.0
    if pn == 0 or qn == 0:
        return 0j, 1.0
    s = np.vdot(qa, pa) / np.vdot(qa, qa)
    return complex(s), float(np.linalg.norm(pa - s * qa) / pn)


def projective_match(p: Sextic, q: Sextic, tol: float = MATCH_TOL) -> complex:
    """Scalar ``s`` minimizing ``|p - s q|``; raises NoMatch if the relative defect exceeds ``tol``."""
    s, defect = match_scalar(p, q)
    if defect > tol:
        raise NoMatch(defect, tol)
    return s


@dataclass
class RecoveryReport:
    system: str
    point: tuple
    qsr: QSRPoint
    residual: float
    assembled: Sextic
    catalog: Sextic | None
    match_scalar: complex | None
    defect: float | None

    def to_json(self) -> dict:
        cx = lambda z: [complex(z).real, complex(z).imag]  # noqa: E731
        return {
            "system": self.system,
            "point": [cx(v) for v in self.point],
            "qsr": self.qsr.to_json(),
            "residual": self.residual,
            "assembled_coeffs": self.assembled.to_json()["coeffs"],
            "catalog_coeffs": None if self.catalog is None else self.catalog.to_json()["coeffs"],
            "match_scalar": None if self.match_scalar is None else cx(self.match_scalar),
            "defect": self.defect,
        }


def recover(sid, x0) -> RecoveryReport:
    """Full pipeline: recovery, weight vectors, assembly, comparison with the catalog sextic."""
    sid = system_id(sid)
    x0 = tuple(complex(v) for v in x0)
    u, residual = recover_qsr(sid, x0)
    q = assemble_q(weight_vectors(u))
    try:
        cat = covariant_sextic(sid, x0)
    except UnsupportedPoint:
        cat, s, defect = None, None, None
    else:
        s, defect = match_scalar(q, cat)
    return RecoveryReport(sid.value, x0, u, residual, q, cat, s, defect)
