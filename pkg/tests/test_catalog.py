import json

import numpy as np
import pytest

from superlim.catalog import (
    CLASS_LABEL,
    CONTRACTIONS,
    FIGURE_EDGES,
    SW_FACTORED,
    SystemId,
    contraction_names,
    contraction_spec,
    covariant_poly,
    covariant_sextic,
    potential,
    potential_basis,
    potential_derivs,
    potential_eval,
    representative,
    sw_printed,
    system_id,
)
from superlim.errors import SingularPoint, UnknownContraction, UnknownSystem, UnsupportedPoint
from superlim.jet import Jet
from superlim.recovery import match_scalar
from superlim.series import EpsSeries
from superlim.sextic import Sextic


# ---------------------------------------------------------------------------
# jets

def test_jet_product_rule():
    x, y, z = Jet.variables([2.0, 3.0, 5.0])
    f = x * x * y + z
    assert f.val == 17
    assert np.allclose(f.grad, [12, 4, 1])
    assert np.allclose(f.hess, [[6, 4, 0], [4, 0, 0], [0, 0, 0]])


def test_jet_reciprocal_and_power():
    x, _, _ = Jet.variables([2.0, 0.0, 0.0])
    f = 1 / x ** 2
    assert f.val == pytest.approx(0.25)
    assert f.grad[0] == pytest.approx(-2 / 8)
    assert f.hess[0, 0] == pytest.approx(6 / 16)
    g = (x ** -2)
    assert g.hess[0, 0] == pytest.approx(6 / 16)


# ---------------------------------------------------------------------------
# lookup

def test_system_ids():
    assert system_id("VII") is SystemId.VII
    assert system_id(" SW ") is SystemId.SW
    with pytest.raises(UnknownSystem):
        system_id("VIII")
    assert len(CLASS_LABEL) == 11


def test_contraction_lookup():
    assert len(CONTRACTIONS) == 14
    assert len(set(contraction_names())) == 14
    assert contraction_spec("VII->A").name == "VII-to-A"
    assert contraction_spec("vii→a").name == "VII-to-A"
    with pytest.raises(UnknownContraction):
        contraction_spec("A-to-VII")


def test_records_cover_figure_edges():
    def node(s):
        return "III/V" if s.value in ("III", "V") else s.value

    drawn = {(node(s.source), node(s.target)) for s in CONTRACTIONS}
    assert set(FIGURE_EDGES) <= drawn
    assert len(FIGURE_EDGES) == 13


def test_record_json_is_serializable():
    for spec in CONTRACTIONS:
        json.dumps(spec.to_json())


# ---------------------------------------------------------------------------
# potentials

def test_potential_singular_locus():
    with pytest.raises(SingularPoint):
        potential_basis("I", (0, 1, 1))
    with pytest.raises(SingularPoint):
        potential_basis("OO", (1, 1, 0))


def test_potential_is_linear_in_parameters():
    rng = np.random.default_rng(0)
    for sid in SystemId:
        x = potential(sid).default_point
        p1, p2 = rng.normal(size=5), rng.normal(size=5)
        lhs = potential_eval(sid, p1 + 2 * p2, x)
        rhs = potential_eval(sid, p1, x) + 2 * potential_eval(sid, p2, x)
        assert abs(lhs - rhs) <= 1e-10 * max(1, abs(lhs))


def test_potential_examples():
    assert potential_eval("O", (2, 0, 0, 0, 1), (1, 1, 1)) == 4
    assert potential_eval("I", (1, 1, 1, 1, 0), (1, 1, 1)) == 6
    assert potential_eval("IV", (0, 0, 1, 0, 0), (0, 2, 1)) == pytest.approx(0.25)


def _fd_derivs(sid, params, x, h=1e-4):
    x = np.asarray(x, dtype=complex)
    f = lambda y: potential_eval(sid, params, tuple(y))  # noqa: E731
    e = np.eye(3)
    grad = np.array([(f(x + h * e[i]) - f(x - h * e[i])) / (2 * h) for i in range(3)])
    H = np.zeros((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            H[i, j] = (f(x + h * e[i] + h * e[j]) - f(x + h * e[i] - h * e[j])
                       - f(x - h * e[i] + h * e[j]) + f(x - h * e[i] - h * e[j])) / (4 * h * h)
    return grad, H


@pytest.mark.parametrize("sid", list(SystemId))
def test_derivatives_match_finite_differences(sid):
    rng = np.random.default_rng(list(SystemId).index(sid))
    base = np.array(potential(sid).default_point, dtype=float)
    params = rng.normal(size=5)
    checked = 0
    while checked < 20:
        x = base + rng.uniform(-0.3, 0.3, size=3)
        try:
            _, grad, hess, _ = potential_derivs(sid, params, x)
        except SingularPoint:
            continue
        g, H = _fd_derivs(sid, params, x)
        scale = max(1.0, np.max(np.abs(g)), np.max(np.abs(H)))
        assert np.max(np.abs(grad - g)) <= 1e-6 * scale
        hh = np.array([H[0, 0], H[1, 1], H[2, 2], H[0, 1], H[0, 2], H[1, 2]])
        assert np.max(np.abs(hess - hh)) <= 1e-5 * scale
        checked += 1


# ---------------------------------------------------------------------------
# covariants

def test_fixed_point_covariants():
    assert representative("VII") == Sextic.from_terms({1: -36j})
    assert representative("A") == Sextic.from_terms({6: -1j})
    assert representative("OO") == Sextic.from_terms({3: 6j})
    assert representative("O").is_zero()


def test_unsupported_point():
    with pytest.raises(UnsupportedPoint):
        covariant_sextic("VII", (1, 2, 3))
    with pytest.raises(UnsupportedPoint):
        covariant_sextic("SW", (1, 2, 3))


def test_sw_normalization_at_111():
    # the normalized SW covariant is a multiple of the printed one and of the factored form
    q = representative("SW")
    _, d = match_scalar(q, SW_FACTORED)
    assert d <= 1e-12
    _, d2 = match_scalar(Sextic(sw_printed(1.0)), q)
    assert d2 <= 1e-12


def test_sw_singular_eta():
    eta = (1 / 9) ** 0.25
    with pytest.raises(SingularPoint):
        covariant_sextic("SW", (eta, eta, eta))


def test_covariant_poly_series_point():
    e = EpsSeries.eps(1)
    p = covariant_poly("I", (1 + e, 1 + 0 * e, 1 + 0 * e))
    assert p.limit().close(representative("I"), 1e-12)
