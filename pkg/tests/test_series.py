import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superlim.errors import DivergentLimit, TruncationError, ZeroSeries
from superlim.series import EpsSeries, cx_close, eps_exponent, series_inv, series_limit, series_mul


def test_cx_close_examples():
    assert cx_close(3, 3, 1e-12)
    assert cx_close(0, 1e-13, 1e-12)
    assert not cx_close(1e6, 1e6 + 1, 1e-12)


def test_cx_close_rejects_negative_tol():
    with pytest.raises(ValueError):
        cx_close(1, 1, -1)


def test_eps_exponent():
    assert eps_exponent(1) == 12
    assert eps_exponent("-1/2") == -6
    assert eps_exponent("1/6") == 2
    with pytest.raises(ValueError):
        eps_exponent("1/5")


def test_normalized_representation():
    s = EpsSeries(-2, [0, 0, 3, 0], 10)
    assert s.lo == 0 and s.coeffs == (3,)
    z = EpsSeries.zero(17)
    assert z.is_zero() and z.lo == 17


def test_mul_examples():
    one = series_mul(EpsSeries.monomial(1, -36), EpsSeries.monomial(1, 36))
    assert one.lo == 0 and one.coeffs == (1,)
    d = series_mul(EpsSeries.from_terms({0: 1, 12: 1}), EpsSeries.from_terms({0: 1, 12: -1}))
    assert d.terms() == {0: 1, 24: -1}
    e = EpsSeries.monomial(2, 6) * EpsSeries.monomial(3, 6)
    assert e.terms() == {12: 6}


def test_mul_truncation_rule():
    s = EpsSeries(-6, [1], 54)
    t = EpsSeries(6, [1], 60)
    assert (s * t).trunc == min(54 + 6, 60 - 6)


def test_inv_examples():
    assert series_inv(EpsSeries.const(1)).terms() == {0: 1}
    assert series_inv(EpsSeries.eps(1)).terms() == {-12: 1}
    inv = series_inv(EpsSeries.from_terms({0: -1, 24: 1}))
    assert inv.coeff(0) == -1 and inv.coeff(24) == -1 and inv.coeff(48) == -1
    assert inv.coeff(12) == 0 and inv.coeff(36) == 0


def test_inv_zero_raises():
    with pytest.raises(ZeroSeries):
        series_inv(EpsSeries.zero())


def test_limit_examples():
    assert series_limit(EpsSeries.from_terms({0: 5, 12: 3})) == 5
    with pytest.raises(DivergentLimit):
        series_limit(EpsSeries.from_terms({-12: 1, 0: 1}))
    assert series_limit(EpsSeries.eps(1)) == 0


def test_limit_of_fixture_coefficient():
    # z^6 coefficient of -i (z + eps)^5 (z - eps) is -i exactly
    e = EpsSeries.eps(1)
    lead = -1j * (e * 0 + 1)
    assert series_limit(lead) == -1j


def test_limit_needs_constant_term():
    with pytest.raises(TruncationError):
        series_limit(EpsSeries(0, [], -6))


def test_limit_tolerates_residue():
    s = EpsSeries.from_terms({-12: 1e-14, 0: 2})
    assert series_limit(s, 1e-10) == 2
    with pytest.raises(DivergentLimit):
        series_limit(s)


def test_pow_and_division():
    e = EpsSeries.eps(1)
    s = (1 + e) ** 3
    assert s.terms() == {0: 1, 12: 3, 24: 3, 36: 1}
    q = (1 + e) / (1 - e)
    assert q.coeff(0) == 1 and q.coeff(12) == 2 and q.coeff(24) == 2


def test_evaluate_partial_sum():
    s = EpsSeries.from_terms({0: 1, 6: 2})
    assert s.evaluate(1e-2) == pytest.approx(1 + 2 * 0.1)


def test_coeff_beyond_truncation():
    with pytest.raises(TruncationError):
        EpsSeries.const(1, 10).coeff(10)


def test_rejects_nonfinite():
    with pytest.raises(ValueError):
        EpsSeries.const(float("nan"))


# ---------------------------------------------------------------------------
# properties

coef = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@st.composite
def series(draw, unit=False):
    lo = draw(st.integers(-12, 12))
    cs = draw(st.lists(coef, min_size=1, max_size=8))
    if unit:
        # tail dominated by the lead keeps the inverse's coefficients bounded
        lead = draw(st.complex_numbers(min_magnitude=1, max_magnitude=2, allow_nan=False, allow_infinity=False))
        cs = [lead] + [c / 100 for c in cs]
        lo = 0
    return EpsSeries(lo, cs, 40)


def _agree(a, b, tol=1e-9):
    trunc = min(a.trunc, b.trunc)
    scale = max(1.0, a.max_abs(), b.max_abs())
    keys = {k for k in set(a.terms()) | set(b.terms()) if k < trunc}
    return all(abs(a.coeff(k) - b.coeff(k)) <= tol * scale for k in keys)


@settings(max_examples=200, deadline=None)
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert _agree(a + b, b + a)
    assert _agree(a * b, b * a)
    assert _agree((a * b) * c, a * (b * c), 1e-8)
    assert _agree(a * (b + c), a * b + a * c, 1e-8)
    assert _agree((a + b) + c, a + (b + c))


@settings(max_examples=200, deadline=None)
@given(series(unit=True))
def test_inverse_is_inverse(s):
    p = s * series_inv(s)
    assert _agree(p, EpsSeries.const(1, p.trunc), 1e-12)


def test_double_inverse_random():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        # unit lead, tail summing to less than 1 in modulus
        c = (rng.normal(size=n) + 1j * rng.normal(size=n)) * (0.5 / (2 * n))
        c[0] = np.exp(2j * np.pi * rng.random())
        s = EpsSeries(int(rng.integers(-6, 7)), c, 48)
        r = series_inv(series_inv(s))
        assert r.lo == s.lo
        assert _agree(r, s, 1e-12)


@settings(max_examples=200, deadline=None)
@given(series(), series())
def test_limit_is_multiplicative(a, b):
    a = EpsSeries(max(a.lo, 0), a.coeffs, 40)
    b = EpsSeries(max(b.lo, 0), b.coeffs, 40)
    assert cx_close(series_limit(a * b), series_limit(a) * series_limit(b), 1e-12)
