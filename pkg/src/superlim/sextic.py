"""Binary sextics: evaluation, projective roots with multiplicity, reconstruction."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BadMultiplicity, ParseError, ZeroPolynomial
from .series import DEFAULT_TOL, DEFAULT_TRUNC, EpsSeries

INF = complex(math.inf, 0.0)

DEGREE_TOL = 1e-10
CLUSTER_RADIUS = 1e-6
ABERTH_MAXITER = 200
ABERTH_TOL = 1e-13
# Largest chordal radius up to which clusters are merged into a multiple root,
# and the backward error such a merge may cost.
MERGE_RADIUS_CAP = 0.05
MERGE_BACKWARD_TOL = 1e-12
# a merged structure must also fit within this factor of the unmerged fit
# (floored), so that tightly packed distinct roots are not merged
MERGE_RELATIVE = 10.0
MERGE_FLOOR = 2e-15


def is_inf(z) -> bool:
    return cmath.isinf(complex(z))


def chordal(z: complex, w: complex) -> float:
    """Chordal distance on the unit Riemann sphere (diameter 2)."""
    zi, wi = is_inf(z), is_inf(w)
    if zi and wi:
        return 0.0
    if zi:
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    if wi:
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


@dataclass(frozen=True)
class Sextic:
    """``q(z) = sum_k coeffs[k] z**k`` for k = 0..6."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coeffs)
        if len(c) != 7:
            raise ValueError(f"a sextic has 7 coefficients, got {len(c)}")
        if not all(cmath.isfinite(x) for x in c):
            raise ValueError("sextic coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls) -> "Sextic":
        return cls((0,) * 7)

    @classmethod
    def from_terms(cls, terms: dict) -> "Sextic":
        c = [0j] * 7
        for k, v in terms.items():
            c[k] += v
        return cls(c)

    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    def norm(self) -> float:
        return float(np.linalg.norm(self.array()))

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.norm() <= tol

    def degree(self, tol: float = DEGREE_TOL) -> int:
        """Effective degree; ``-1`` for the zero polynomial."""
        a = np.abs(self.array())
        m = a.max()
        if m == 0:
            return -1
        return int(np.flatnonzero(a > tol * m)[-1])

    def __call__(self, z: complex) -> complex:
        return eval_sextic(self, z)

    def __add__(self, other: "Sextic") -> "Sextic":
        return Sextic(self.array() + other.array())

    def __sub__(self, other: "Sextic") -> "Sextic":
        return Sextic(self.array() - other.array())

    def __mul__(self, s) -> "Sextic":
        return Sextic(self.array() * complex(s))

    __rmul__ = __mul__

    def close(self, other: "Sextic", tol: float = DEFAULT_TOL) -> bool:
        scale = max(1.0, self.norm(), other.norm())
        return float(np.max(np.abs(self.array() - other.array()))) <= tol * scale

    def to_json(self) -> dict:
        return {"coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "Sextic":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}") from None
        try:
            raw = data["coeffs"]
        except (TypeError, KeyError):
            raise ParseError('polynomial JSON needs a "coeffs" list') from None
        if not isinstance(raw, list) or len(raw) != 7:
            raise ParseError("coeffs must list exactly 7 [re, im] pairs")
        try:
            return cls([complex(float(re), float(im)) for re, im in raw])
        except (TypeError, ValueError):
            raise ParseError("each coefficient must be a [re, im] pair of numbers") from None

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        cs = f"({c.real:.6g}{c.imag:+.6g}i)"
        parts.append(cs if k == 0 else f"{cs}z^{k}" if k > 1 else f"{cs}z")
    return " + ".join(parts) or "0"


class EpsSextic:
    """Sextic whose coefficients are epsilon series."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) != 7:
            raise ValueError(f"a sextic has 7 coefficients, got {len(coeffs)}")
        self.coeffs = tuple(c if isinstance(c, EpsSeries) else EpsSeries.const(c) for c in coeffs)

    @classmethod
    def constant(cls, q: Sextic, trunc: int = DEFAULT_TRUNC) -> "EpsSextic":
        return cls([EpsSeries.const(c, trunc) for c in q.coeffs])

    @property
    def trunc(self) -> int:
        return min(c.trunc for c in self.coeffs)

    def max_abs(self) -> float:
        return max(c.max_abs() for c in self.coeffs)

    def limit(self, tol: float = DEFAULT_TOL) -> Sextic:
        """Coefficientwise eps -> 0 limit, residue judged against the whole sextic."""
        scale = max(1.0, self.max_abs())
        out = []
        for c in self.coeffs:
            out.append(c.chop(tol * scale / max(1.0, c.max_abs())).limit())
        return Sextic(out)

    def evaluate(self, eps: float) -> Sextic:
        return Sextic([c.evaluate(eps) for c in self.coeffs])

    def scale(self, s) -> "EpsSextic":
        return EpsSextic([c * s for c in self.coeffs])

    def close(self, other: "EpsSextic", tol: float = DEFAULT_TOL) -> bool:
        return all(a.close(b, tol) for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        return "EpsSextic(" + ", ".join(repr(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class RootCluster:
    value: complex
    multiplicity: int

    @property
    def at_infinity(self) -> bool:
        return is_inf(self.value)

    def __str__(self) -> str:
        v = "∞" if self.at_infinity else _fmt_complex(self.value)
        return f"{v}(×{self.multiplicity})"


def _fmt_complex(z: complex, digits: int = 6) -> str:
    re = round(z.real, digits) + 0.0
    im = round(z.imag, digits) + 0.0
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def eval_sextic(q: Sextic, z: complex) -> complex:
    acc = 0j
    for c in reversed(q.coeffs):
        acc = acc * z + c
    return acc


def aberth(coeffs_desc: np.ndarray, maxiter: int = ABERTH_MAXITER, tol: float = ABERTH_TOL) -> np.ndarray:
    """Aberth-Ehrlich simultaneous iteration on a monic-normalisable polynomial.

    ``coeffs_desc`` is highest power first with a nonzero leading entry.
    """
    p = np.asarray(coeffs_desc, dtype=complex)
    n = len(p) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    p = p / p[0]
    dp = np.polyder(p)
    radius = 1.0 + np.max(np.abs(p[1:]))
    k = np.arange(n)
    z = radius * np.exp(1j * (2 * np.pi * k / n + 0.4))
    for _ in range(maxiter):
        pv = np.polyval(p, z)
        dv = np.polyval(dp, z)
        done = pv == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(done, 0, pv / dv)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1 / diff
            np.fill_diagonal(inv, 0)
            s = inv.sum(axis=1)
            w = np.where(done, 0, ratio / (1 - ratio * s))
        w = np.where(np.isfinite(w), w, 0)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1.0, np.abs(z))):
            break
    return z


def cluster(points: Iterable[complex], radius: float = CLUSTER_RADIUS) -> list:
    """Single-linkage grouping on the chordal metric; value is the member mean."""
    if radius <= 0:
        raise ValueError("clustering radius must be positive")
    pts = [complex(p) for p in points]
    groups = _single_linkage(pts, radius)
    return _clusters_from_groups(pts, groups)


def _single_linkage(pts: list, radius: float) -> list:
    n = len(pts)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if chordal(pts[i], pts[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _clusters_from_groups(pts: list, groups: list, poly_desc=None) -> list:
    out = []
    for g in groups:
        members = [pts[i] for i in g]
        if any(is_inf(m) for m in members):
            value = INF
        else:
            value = complex(np.mean(members))
            if poly_desc is not None and len(g) > 1:
                value = _polish_multiple(poly_desc, value, len(g))
        out.append(RootCluster(value, len(g)))
    return _sorted_clusters(out)


def _polish_multiple(poly_desc: np.ndarray, z: complex, m: int, steps: int = 30) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    f = np.polyder(poly_desc, m - 1) if m > 1 else poly_desc
    df = np.polyder(f)
    if len(df) == 0 or not np.any(df):
        return z
    start = z
    for _ in range(steps):
        d = np.polyval(df, z)
        if d == 0:
            break
        step = np.polyval(f, z) / d
        z = z - step
        if abs(step) <= 1e-15 * max(1.0, abs(z)):
            break
    if not np.isfinite(z) or abs(z - start) > 0.1 * max(1.0, abs(start)):
        return start
    return complex(z)


def _sorted_clusters(clusters: list) -> list:
    def key(c):
        if c.at_infinity:
            return (1, 0.0, 0.0)
        return (0, round(c.value.real, 9), round(c.value.imag, 9))

    return sorted(clusters, key=key)


def from_roots(clusters: Sequence, lead: complex = 1.0) -> Sextic:
    """``lead * prod (z - r)**m`` over finite clusters; infinite ones lower the degree."""
    total = sum(c.multiplicity for c in clusters)
    if total != 6:
        raise BadMultiplicity(f"multiplicities sum to {total}, expected 6")
    if lead == 0:
        raise ValueError("leading coefficient must be nonzero")
    poly = np.array([complex(lead)])
    for c in clusters:
        if c.at_infinity:
            continue
        for _ in range(c.multiplicity):
            poly = np.convolve(poly, [1.0, -c.value])
    asc = poly[::-1]
    return Sextic(np.concatenate([asc, np.zeros(7 - len(asc))]))


def _structure_fit(q: Sextic, clusters: list, iters: int = 12):
    """Gauss-Newton fit of ``lead * prod (z - c_j)**m_j`` to ``q`` with fixed multiplicities.

    Returns refined clusters and the relative backward error.
    """
    target = q.array()
    finite = [c for c in clusters if not c.at_infinity]
    mults = [c.multiplicity for c in finite]
    centers = np.array([c.value for c in finite], dtype=complex)

    def build(cs):
        base = np.array([1.0 + 0j])
        for cj, mj in zip(cs, mults):
            for _ in range(mj):
                base = np.convolve(base, [1.0, -cj])
        asc = base[::-1]
        return np.concatenate([asc, np.zeros(7 - len(asc))])

    def lead_for(b):
        return np.vdot(b, target) / np.vdot(b, b).real

    b = build(centers)
    lead = lead_for(b)
    best = np.linalg.norm(target - lead * b)
    for _ in range(iters if len(finite) else 0):
        cols = []
        for j, (cj, mj) in enumerate(zip(centers, mults)):
            others = np.array([1.0 + 0j])
            for k, (ck, mk) in enumerate(zip(centers, mults)):
                if k != j:
                    for _ in range(mk):
                        others = np.convolve(others, [1.0, -ck])
            part = others
            for _ in range(mj - 1):
                part = np.convolve(part, [1.0, -cj])
            d = (-mj * lead * part)[::-1]
            cols.append(np.concatenate([d, np.zeros(7 - len(d))]))
        cols.append(b)
        jac = np.stack(cols, axis=1)
        step = np.linalg.lstsq(jac, target - lead * b, rcond=None)[0]
        new_centers = centers + step[:-1]
        nb = build(new_centers)
        nlead = lead_for(nb)
        res = np.linalg.norm(target - nlead * nb)
        if not np.isfinite(res) or res >= best:
            break
        centers, b, lead, best = new_centers, nb, nlead, res
    refined = [RootCluster(complex(cj), mj) for cj, mj in zip(centers, mults)]
    refined += [c for c in clusters if c.at_infinity]
    return _sorted_clusters(refined), float(best / np.linalg.norm(target))


def _set_partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _merge_multiple(q, pts, groups, clusters, desc):
    """Coarsest regrouping of the radius-level groups that still reproduces ``q``.

    Blocks wider than MERGE_RADIUS_CAP (chordal) are never formed; candidate
    structures are refined on the fixed-multiplicity manifold; a structure is
    accepted when its backward error is below MERGE_BACKWARD_TOL and within
    MERGE_RELATIVE of the unmerged fit (floored at MERGE_FLOOR).
    """
    n = len(groups)
    near = [
        [
            all(chordal(pts[a], pts[b]) <= MERGE_RADIUS_CAP for a in groups[i] for b in groups[j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    if n < 2 or not any(near[i][j] for i in range(n) for j in range(i + 1, n)):
        return clusters
    _, base = _structure_fit(q, clusters)
    tol = min(MERGE_BACKWARD_TOL, max(MERGE_RELATIVE * base, MERGE_FLOOR))
    by_size: dict = {}
    for part in _set_partitions(list(range(n))):
        if len(part) < n and all(near[i][j] for block in part for i in block for j in block):
            by_size.setdefault(len(part), []).append(part)
    for size in sorted(by_size):
        best = None
        for part in by_size[size]:
            level = [sorted(i for gi in block for i in groups[gi]) for block in part]
            trial, defect = _structure_fit(q, _clusters_from_groups(pts, level, desc))
            if defect <= tol and (best is None or defect < best[1]):
                best = (trial, defect)
        if best is not None:
            return best[0]
    return clusters


def roots(q: Sextic, radius: float = CLUSTER_RADIUS) -> list:
    """Projective roots of ``q`` grouped by multiplicity (sum 6, infinity included).

    Simultaneous iteration gives m noisy points for an m-fold root, spread by
    roughly ``u**(1/m)``.  Points closer than ``radius`` (chordal) are grouped
    outright.  Coarser groupings, up to MERGE_RADIUS_CAP, are accepted when the
    refined multiplicity structure reproduces ``q`` to MERGE_BACKWARD_TOL.
    Leading coefficients below DEGREE_TOL relative to the largest one are
    roots at infinity; exactly vanishing trailing ones are roots at zero.
    """
    a = q.array()
    m = np.max(np.abs(a))
    if m == 0:
        raise ZeroPolynomial("the zero polynomial has no root data")
    d = int(np.flatnonzero(np.abs(a) > DEGREE_TOL * m)[-1])
    low = int(np.flatnonzero(a)[0])
    pts = [INF] * (6 - d) + [0j] * low
    if d > low:
        pts += [complex(z) for z in aberth(a[low: d + 1][::-1])]
    desc = a[: d + 1][::-1]
    groups = _single_linkage(pts, radius)
    clusters = _clusters_from_groups(pts, groups, desc)
    return _merge_multiple(q, pts, groups, clusters, desc)


def signature(clusters: Sequence) -> tuple:
    """Multiplicity partition, largest first."""
    return tuple(sorted((c.multiplicity for c in clusters), reverse=True))
