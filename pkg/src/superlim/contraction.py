"""Run the contraction records over the eps-series ring and certify their limits."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .catalog import (
    CLASS_LABEL,
    CONTRACTIONS,
    FIGURE_EDGES,
    ContractionSpec,
    check_regular,
    contraction_spec,
    covariant_sextic,
    potential_eval,
    system_id,
)
from .errors import DivergentLimit, SingularMatrix, SingularPoint, TruncationError
from .mobius import act, composite, rot_matrix_numeric, scale_action, so3_matrix
from .recovery import match_scalar
from .series import DEFAULT_TRUNC, EpsSeries
from .sextic import EpsSextic, Sextic

PASS_TOL = 1e-10
LIMIT_CHOP = 1e-10
CROSS_CHECK_EPS = 1e-3
CROSS_CHECK_TOL = 1e-6


@dataclass
class ContractionReport:
    name: str
    source: str
    target: str
    source_label: str
    target_label: str
    intermediate: EpsSextic | None
    limit: Sextic | None
    target_poly: Sextic
    match_scalar: complex | None
    defect: float | None
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        cx = lambda z: None if z is None else [complex(z).real, complex(z).imag]  # noqa: E731
        return {
            "name": self.name,
            "source": self.source,
            "target": self.target,
            "source_label": self.source_label,
            "target_label": self.target_label,
            "limit": None if self.limit is None else self.limit.to_json()["coeffs"],
            "target_poly": self.target_poly.to_json()["coeffs"],
            "match_scalar": cx(self.match_scalar),
            "defect": self.defect,
            "status": self.status,
            "detail": self.detail,
        }


def intermediate(spec: ContractionSpec, trunc: int = DEFAULT_TRUNC) -> EpsSextic:
    """``c^-1 * act(rho(R1) rho(R2) rho(R3), q_source(x0(eps)))`` before the limit."""
    q = spec.source_poly(trunc)
    M = composite(spec.t1, spec.t2, spec.t3, trunc)
    return scale_action(spec.c, act(M, q))


def run_contraction(spec, trunc: int = DEFAULT_TRUNC, tol: float = PASS_TOL) -> ContractionReport:
    if not isinstance(spec, ContractionSpec):
        spec = contraction_spec(spec)
    try:
        inter = intermediate(spec, trunc)
    except SingularMatrix as exc:
        # the group element vanishes to the kept order: too few terms
        inter, failure = None, exc
    else:
        failure = None
    base = dict(
        name=spec.name,
        source=spec.source.value,
        target=spec.target.value,
        source_label=CLASS_LABEL[spec.source],
        target_label=CLASS_LABEL[spec.target],
        intermediate=inter,
        target_poly=spec.target_poly,
    )
    if failure is not None:
        return ContractionReport(limit=None, match_scalar=None, defect=None, status="divergent",
                                 detail=f"{type(failure).__name__}: {failure}", **base)
    try:
        lim = inter.limit(LIMIT_CHOP)
    except (DivergentLimit, TruncationError) as exc:
        return ContractionReport(limit=None, match_scalar=None, defect=None, status="divergent",
                                 detail=f"{type(exc).__name__}: {exc}", **base)
    s, defect = match_scalar(lim, spec.target_poly)
    status = "pass" if defect <= tol else "fail"
    return ContractionReport(limit=lim, match_scalar=s, defect=defect, status=status, **base)


def run_all(trunc: int = DEFAULT_TRUNC, specs=None) -> list:
    """Reports for every record, in catalog order."""
    return [run_contraction(s, trunc) for s in (CONTRACTIONS if specs is None else specs)]


def numeric_intermediate(spec: ContractionSpec, eps: float = CROSS_CHECK_EPS) -> Sextic:
    """The same pipeline in plain complex arithmetic at a fixed ``eps``."""
    x0 = tuple(complex(v) for v in spec.x0(float(eps)))
    q = covariant_sextic(spec.source, x0)
    m = np.eye(2, dtype=complex)
    for axis, t in zip((1, 2, 3), spec.angles):
        m = m @ rot_matrix_numeric(axis, t.value(eps))
    from .mobius import GL2Element

    return act(GL2Element.from_array(m), q) * (1 / spec.c.value(eps))


def cross_check(spec: ContractionSpec, eps: float = CROSS_CHECK_EPS, trunc: int = DEFAULT_TRUNC) -> float:
    """Largest coefficient gap between the series partial sum and the numeric pipeline.

    The gap is relative with floor 1, as in ``cx_close``.
    """
    a = intermediate(spec, trunc).evaluate(eps).array()
    b = numeric_intermediate(spec, eps).array()
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))))


# ---------------------------------------------------------------------------
# potential-level limit

A_TO_O_RESCALING = (4, 3, 3, 3, 2)


def _rotation3(spec: ContractionSpec, eps: float) -> np.ndarray:
    t1, t2, t3 = (t.value(eps) for t in spec.angles)
    return so3_matrix(3, t3) @ so3_matrix(2, t2) @ so3_matrix(1, t1)


def transformed_potential(spec: ContractionSpec, rescaling, hat_params, eps, y):
    """``c^-2 V_source(x)`` with ``x = x0 + R^T (y - y0) / c`` and parameters ``hat * eps^-r``.

    ``eps`` is a positive float or an EpsSeries standing for eps itself.
    """
    series = isinstance(eps, EpsSeries)
    if series:
        trunc = eps.trunc
        cval = spec.c.series(trunc)
        cinv = spec.c.inverse_series(trunc)
        if any(t.singular or t.theta != 0 for t in spec.angles):
            raise NotImplementedError("series evaluation supports rotation-free records only")
        R = np.eye(3)
        params = [h * EpsSeries.eps(-r, 1.0, trunc) for h, r in zip(hat_params, rescaling)]
    else:
        cval = spec.c.value(eps)
        cinv = 1 / cval
        R = _rotation3(spec, eps)
        params = [h * float(eps) ** (-r) for h, r in zip(hat_params, rescaling)]
    x0 = spec.x0(eps)
    d = R.T @ (np.asarray(y, dtype=complex) - np.asarray(spec.y0, dtype=complex))
    x = tuple(x0[i] + d[i] * cinv for i in range(3))
    v = potential_eval(spec.source, params, x)
    return v * cinv * cinv


def potential_limit_check(name, rescaling=A_TO_O_RESCALING, eps_samples=(1e-2, 1e-3), grid=None,
                          hat_params=(1.0, 1.0, 1.0, 1.0, 1.0), trunc: int = DEFAULT_TRUNC) -> dict:
    """Compare the rescaled source potential against the target potential on a grid.

    Returns the max deviation for each eps sample, the consecutive ratios and
    the deviation of the exact eps -> 0 limit (computed over the series ring).
    """
    spec = contraction_spec(name) if not isinstance(name, ContractionSpec) else name
    if grid is None:
        grid = default_grid()
    grid = [tuple(complex(v) for v in p) for p in grid]
    for p in grid:
        check_regular(spec.target, p)
    target = [potential_eval(spec.target, hat_params, p) for p in grid]
    devs = []
    for eps in eps_samples:
        vals = [transformed_potential(spec, rescaling, hat_params, eps, p) for p in grid]
        devs.append(float(max(abs(a - b) for a, b in zip(vals, target))))
    ratios = [a / b if b != 0 else math.inf for a, b in zip(devs, devs[1:])]
    try:
        e = EpsSeries.eps(1, 1.0, trunc)
        lim = [transformed_potential(spec, rescaling, hat_params, e, p).limit() for p in grid]
        exact = float(max(abs(a - b) for a, b in zip(lim, target)))
        exact_detail = ""
    except (DivergentLimit, TruncationError) as exc:
        exact, exact_detail = math.inf, f"{type(exc).__name__}: {exc}"
    linear = all(5 <= r <= 20 for r in ratios) if ratios else False
    return {
        "name": spec.name,
        "rescaling": list(rescaling),
        "eps": list(eps_samples),
        "deviations": devs,
        "ratios": ratios,
        "exact_limit_deviation": exact,
        "exact_detail": exact_detail,
        "status": "pass" if linear and exact <= 1e-12 else "fail",
    }


def default_grid(n: int = 5) -> list:
    """``n^3`` points evenly spaced in ``[-1, 1]^3``."""
    ax = np.linspace(-1.0, 1.0, n)
    return [tuple(p) for p in itertools.product(ax, ax, ax)]


# ---------------------------------------------------------------------------
# diagram

NODE_ORDER = ["SW", "I", "IV", "II", "III/V", "VI", "OO", "VII", "A", "O"]
NODE_CLASS = {
    "SW": CLASS_LABEL[system_id("SW")],
    "I": CLASS_LABEL[system_id("I")],
    "IV": CLASS_LABEL[system_id("IV")],
    "II": CLASS_LABEL[system_id("II")],
    "III/V": CLASS_LABEL[system_id("V")],
    "VI": CLASS_LABEL[system_id("VI")],
    "OO": CLASS_LABEL[system_id("OO")],
    "VII": CLASS_LABEL[system_id("VII")],
    "A": CLASS_LABEL[system_id("A")],
    "O": CLASS_LABEL[system_id("O")],
}


def _node_id(name: str) -> str:
    return name.replace("/", "_")


def diagram_dot() -> str:
    """The limiting diagram as a DOT digraph: ten class nodes, a key node and 13 edges."""
    lines = ["digraph limits {", "  rankdir=TB;", "  node [shape=box];"]
    lines.append('  Key [label="system\\n[class]", style=dashed];')
    for n in NODE_ORDER:
        lines.append(f'  {_node_id(n)} [label="{n}\\n{NODE_CLASS[n]}"];')
    for a, b in FIGURE_EDGES:
        lines.append(f"  {_node_id(a)} -> {_node_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def with_angle(spec: ContractionSpec, axis: int, angle) -> ContractionSpec:
    """Copy of a record with one rotation angle replaced (used for negative controls)."""
    return replace(spec, **{f"t{axis}": angle})
