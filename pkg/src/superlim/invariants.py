"""Root-structure signatures, the cross-ratio test for [3111b] and the multi-ratio test.

Cross- and multi-ratios are computed from homogeneous coordinates,
``[z, w] = z0 w1 - z1 w0`` with ``z = (z, 1)`` and infinity ``= (1, 0)``,
so points at infinity need no special casing.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DegenerateCrossRatio, DegenerateQuadruple, DegenerateSextuple, WrongSignature
from .series import cx_close
from .sextic import CLUSTER_RADIUS, Sextic, is_inf, roots, signature

EQUIANHARMONIC_TOL = 1e-8
MULTI_RATIO_TOL = 1e-8
DISTINCT_TOL = 1e-12
CALIBRATION_FILE = "multi_ratio_calibration.json"

_PERMS = np.array(list(itertools.permutations(range(6))))


@dataclass(frozen=True)
class StructureLabel:
    partition: tuple
    sub: str | None = None

    @property
    def bracket(self) -> str:
        """Class-style label such as ``[51]``, ``[3111b]`` or ``[111111a/b]``."""
        if not self.partition:
            return "[0]"
        body = "".join(str(m) for m in self.partition)
        if self.sub in ("a", "b", "c"):
            return f"[{body}{self.sub}]"
        if self.sub == "non-c":
            return f"[{body}a/b]"
        return f"[{body}]"

    def matches_class(self, label: str) -> bool:
        """Whether a catalog class label such as ``[111111a]`` is consistent with this one."""
        if self.bracket == label:
            return True
        return self.sub == "non-c" and label in (self.bracket.replace("a/b", "a"), self.bracket.replace("a/b", "b"))

    def __str__(self) -> str:
        if not self.partition:
            return "[0]"
        body = "[" + "".join(str(m) for m in self.partition) + "]"
        return body if self.sub is None else f"{body} {self.sub}"

    def to_json(self) -> dict:
        return {"partition": list(self.partition), "sub": self.sub, "label": self.bracket}


def _homog(z) -> np.ndarray:
    if is_inf(z):
        return np.array([1.0 + 0j, 0j])
    z = complex(z)
    v = np.array([z, 1.0 + 0j])
    return v / np.linalg.norm(v)


def _bracket(a: np.ndarray, b: np.ndarray) -> complex:
    return complex(a[0] * b[1] - a[1] * b[0])


def _check_distinct(pts, exc):
    for i, j in itertools.combinations(range(len(pts)), 2):
        if abs(_bracket(pts[i], pts[j])) <= DISTINCT_TOL:
            raise exc(f"points {i} and {j} coincide")


def cross_ratio(z1, z2, z3, z4) -> complex:
    """``(z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3))`` on the projective line."""
    p = [_homog(z) for z in (z1, z2, z3, z4)]
    _check_distinct(p, DegenerateQuadruple)
    return _bracket(p[0], p[2]) * _bracket(p[1], p[3]) / (_bracket(p[0], p[3]) * _bracket(p[1], p[2]))


def cr_orbit(lam: complex, tol: float = 1e-10) -> list:
    """The values taken by the cross-ratio under reordering, deduplicated."""
    lam = complex(lam)
    if is_inf(lam) or cx_close(lam, 0, 1e-14) or cx_close(lam, 1, 1e-14):
        raise DegenerateCrossRatio(f"cross-ratio {lam} is degenerate")
    vals = [lam, 1 - lam, 1 / lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam]
    out = []
    for v in vals:
        if not any(cx_close(v, w, tol) for w in out):
            out.append(v)
    return out


def _distinct_values(clusters, want: tuple) -> list:
    sig = signature(clusters)
    if sig != want:
        raise WrongSignature(f"expected signature {list(want)}, got {list(sig)}")
    return [c.value for c in clusters]


def is_3111b(clusters) -> bool:
    """True iff the cross-ratio orbit of the four distinct roots contains a root of ``l^2 - l + 1``."""
    vals = _distinct_values(clusters, (3, 1, 1, 1))
    lam = cross_ratio(*vals)
    return any(abs(v * v - v + 1) <= EQUIANHARMONIC_TOL for v in cr_orbit(lam))


def multi_ratio(z) -> complex:
    """``(z1 - z2)(z3 - z4)(z5 - z6) / ((z2 - z3)(z4 - z5)(z6 - z1))``."""
    if len(z) != 6:
        raise ValueError("multi-ratio takes six points")
    p = [_homog(v) for v in z]
    _check_distinct(p, DegenerateSextuple)
    b = _bracket
    return b(p[0], p[1]) * b(p[2], p[3]) * b(p[4], p[5]) / (b(p[1], p[2]) * b(p[3], p[4]) * b(p[5], p[0]))


def multi_ratio_defect(z) -> float:
    """``min |multi_ratio + 1|`` over all 720 orderings."""
    if len(z) != 6:
        raise ValueError("multi-ratio takes six points")
    p = np.array([_homog(v) for v in z])
    for i, j in itertools.combinations(range(6), 2):
        if abs(_bracket(p[i], p[j])) <= DISTINCT_TOL:
            raise DegenerateSextuple(f"points {i} and {j} coincide")
    D = np.outer(p[:, 0], p[:, 1]) - np.outer(p[:, 1], p[:, 0])
    P = _PERMS
    num = D[P[:, 0], P[:, 1]] * D[P[:, 2], P[:, 3]] * D[P[:, 4], P[:, 5]]
    den = D[P[:, 1], P[:, 2]] * D[P[:, 3], P[:, 4]] * D[P[:, 5], P[:, 0]]
    return float(np.min(np.abs(num / den + 1)))


def multi_ratio_test(z, tol: float = MULTI_RATIO_TOL) -> bool:
    """Some ordering of the six points has multi-ratio -1 within ``tol``."""
    return multi_ratio_defect(z) <= tol


# ---------------------------------------------------------------------------
# calibration

def calibrate() -> dict:
    """Run the multi-ratio test on the roots of q_IV at its catalog point."""
    from .catalog import potential, representative

    q = representative("IV")
    cl = roots(q)
    vals = [c.value for c in cl]
    defect = multi_ratio_defect(vals)
    return {
        "system": "IV",
        "point": [[complex(v).real, complex(v).imag] for v in potential("IV").default_point],
        "signature": list(signature(cl)),
        "roots": [["inf", "inf"] if is_inf(v) else [complex(v).real, complex(v).imag] for v in vals],
        "tolerance": MULTI_RATIO_TOL,
        "best_defect": defect,
        "satisfied": defect <= MULTI_RATIO_TOL,
    }


def calibration_path() -> Path:
    return Path(str(resources.files("superlim") / "data" / CALIBRATION_FILE))


@lru_cache(maxsize=1)
def calibration() -> dict:
    """The committed calibration fixture."""
    return json.loads(calibration_path().read_text(encoding="utf-8"))


def write_calibration(path=None) -> dict:
    data = calibrate()
    path = calibration_path() if path is None else Path(path)
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    calibration.cache_clear()
    return data


# ---------------------------------------------------------------------------
# classification

def label_from_clusters(clusters) -> StructureLabel:
    sig = signature(clusters)
    sub = None
    if sig == (3, 1, 1, 1):
        sub = "b" if is_3111b(clusters) else "a"
    elif sig == (1,) * 6:
        if calibration()["satisfied"]:
            sub = "c" if multi_ratio_test([c.value for c in clusters]) else "non-c"
        else:
            sub = "undetermined"
    return StructureLabel(sig, sub)


def classify(q: Sextic, radius: float = CLUSTER_RADIUS) -> StructureLabel:
    """Root-structure label of a sextic; the zero sextic is class [0]."""
    if q.is_zero():
        return StructureLabel(())
    return label_from_clusters(roots(q, radius))


# Offsets of the probe points used by system_label.  Class membership is a
# property of the system, i.e. of a generic regular point; a single point can
# be special (q_I and q_SW at (1,1,1) are symmetric enough to satisfy the
# multi-ratio condition although the systems do not).
PROBE_OFFSETS = (
    (0.0, 0.0, 0.0),
    (0.13, -0.07, 0.05),
    (-0.06, 0.11, 0.09),
    (0.08, 0.05, -0.12),
)


def system_label(sid, x0=None) -> StructureLabel:
    """Label of a catalog system from recovered sextics at ``x0`` and nearby probes.

    The partition is the one at ``x0``; for [111111] the sub-tag is ``c`` only
    if every probe satisfies the multi-ratio condition.
    """
    from .catalog import potential, representative, covariant_sextic
    from .errors import SingularPoint, UnsupportedPoint
    from .recovery import assemble_q, recover_qsr, weight_vectors

    spec = potential(sid)
    x0 = spec.default_point if x0 is None else x0
    try:
        q0 = covariant_sextic(sid, x0)
    except UnsupportedPoint:
        q0 = assemble_q(weight_vectors(recover_qsr(sid, x0)[0]))
    base = classify(q0)
    if base.partition != (1,) * 6 or base.sub == "undetermined":
        return base
    for off in PROBE_OFFSETS[1:]:
        p = tuple(complex(a) + b for a, b in zip(x0, off))
        try:
            q = assemble_q(weight_vectors(recover_qsr(sid, p)[0]))
        except SingularPoint:
            continue
        lab = classify(q)
        if lab.partition != base.partition or lab.sub != "c":
            return StructureLabel(base.partition, "non-c")
    return base
