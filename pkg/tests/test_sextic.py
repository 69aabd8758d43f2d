import json
import math

import numpy as np
import pytest

from superlim.errors import BadMultiplicity, ParseError, ZeroPolynomial
from superlim.series import EpsSeries
from superlim.sextic import (
    INF,
    EpsSextic,
    RootCluster,
    Sextic,
    chordal,
    cluster,
    eval_sextic,
    from_roots,
    is_inf,
    roots,
    signature,
)

Q_VII = Sextic.from_terms({1: -36j})
Q_A = Sextic.from_terms({6: -1j})
Q_SW_111 = Sextic.from_terms({1: -4.5, 5: 4.5})


def as_dict(clusters, digits=9):
    out = {}
    for c in clusters:
        key = "inf" if c.at_infinity else complex(round(c.value.real, digits) + 0.0, round(c.value.imag, digits) + 0.0)
        out[key] = c.multiplicity
    return out


def test_eval_examples():
    assert eval_sextic(Q_VII, 1) == -36j
    assert eval_sextic(Q_A, 0) == 0
    assert abs(eval_sextic(Q_SW_111, 1j)) < 1e-12
    assert Q_VII(2) == -72j


def test_roots_of_vii():
    assert as_dict(roots(Q_VII)) == {0: 1, "inf": 5}


def test_roots_five_fold():
    q = from_roots([RootCluster(-1, 5), RootCluster(1, 1)], -4.5j)
    got = roots(q)
    assert signature(got) == (5, 1)
    five = [c for c in got if c.multiplicity == 5][0]
    assert abs(five.value + 1) < 1e-9


def test_roots_of_vi():
    q = Sextic.from_terms({3: 3j, 6: 3j})
    got = as_dict(roots(q))
    w = complex(round(0.5, 9), round(math.sqrt(3) / 2, 9))
    assert got == {0: 3, -1: 1, w: 1, w.conjugate(): 1}


def test_roots_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        roots(Sextic.zero())


def test_cluster_examples():
    assert as_dict(cluster([1 + 1e-9, 1 - 1e-9, 5], 1e-6)) == {1: 2, 5: 1}
    assert as_dict(cluster([1e9, INF], 1e-6)) == {"inf": 2}
    assert as_dict(cluster([0, 1], 1e-6)) == {0: 1, 1: 1}


def test_cluster_is_transitive():
    # chordal steps of 0.8e-6 chain into one group although the ends are 1.6e-6 apart
    assert signature(cluster([0, 0.4e-6, 0.8e-6], 1e-6)) == (3,)


def test_chordal_metric():
    assert chordal(0, INF) == pytest.approx(2)
    assert chordal(1, -1) == pytest.approx(2)
    assert chordal(1, 1j) == pytest.approx(math.sqrt(2))
    assert chordal(INF, INF) == 0


def test_from_roots_examples():
    e = 0.01
    q = from_roots([RootCluster(-e, 5), RootCluster(e, 1)], -1j)
    expected = -1j * np.polynomial.polynomial.polymul(
        np.polynomial.polynomial.polypow([e, 1], 5), [-e, 1]
    )
    assert np.allclose(q.array(), expected, atol=1e-15)
    assert from_roots([RootCluster(0, 1), RootCluster(INF, 5)], -36j) == Q_VII
    assert from_roots([RootCluster(0, 6)], 1) == Sextic.from_terms({6: 1})


def test_from_roots_bad_multiplicity():
    with pytest.raises(BadMultiplicity):
        from_roots([RootCluster(0, 5)], 1)


def test_degree_and_infinity():
    assert Q_VII.degree() == 1
    q = Sextic([1, 0, 0, 0, 0, 0, 1e-14])
    assert q.degree() == 0
    assert as_dict(roots(q)) == {"inf": 6}


def test_json_round_trip():
    q = Sextic([1, 2j, 0, -3, 0.5 + 0.5j, 0, 7])
    data = json.loads(json.dumps(q.to_json()))
    assert Sextic.from_json(data) == q


@pytest.mark.parametrize("bad", [{"coeffs": [[0, 0]] * 6}, {"coeffs": [[0, 0]] * 8}, {"coeffs": "x"}, {}])
def test_json_rejects_bad_input(bad):
    with pytest.raises(ParseError):
        Sextic.from_json(bad)


def test_eps_sextic_limit_and_evaluate():
    e = EpsSeries.eps(1)
    q = EpsSextic([e, 1 + e, 0, 0, 0, 0, 2])
    assert q.limit() == Sextic([0, 1, 0, 0, 0, 0, 2])
    assert q.evaluate(0.5).coeffs[1] == pytest.approx(1.5)


def test_is_inf():
    assert is_inf(INF) and is_inf(complex(0, math.inf))
    assert not is_inf(1e300)


PARTITIONS = [(6,), (5, 1), (4, 2), (4, 1, 1), (3, 3), (3, 2, 1), (3, 1, 1, 1), (2, 2, 2), (2, 2, 1, 1),
              (2, 1, 1, 1, 1), (1,) * 6]


def _random_multiset(rng):
    part = PARTITIONS[rng.integers(len(PARTITIONS))]
    while True:
        vals = []
        for _ in part:
            if rng.random() < 0.1 and not any(is_inf(v) for v in vals):
                vals.append(INF)
            else:
                vals.append(complex(*rng.normal(size=2)) * rng.choice([0.01, 1, 3]))
        if all(chordal(a, b) >= 1e-3 for i, a in enumerate(vals) for b in vals[i + 1:]):
            return [RootCluster(v, m) for v, m in zip(vals, part)]


def test_round_trip_random_multisets():
    """1000 random multisets with separation >= 1e-3: exact multiplicities, values within 1e-7 chordal."""
    rng = np.random.default_rng(5)
    worst = 0.0
    done = 0
    while done < 1000:
        cl = _random_multiset(rng)
        if all(c.at_infinity for c in cl):
            continue
        got = roots(from_roots(cl, complex(*rng.normal(size=2))))
        assert sorted(c.multiplicity for c in got) == sorted(c.multiplicity for c in cl)
        for c in cl:
            d = min(chordal(c.value, g.value) for g in got if g.multiplicity == c.multiplicity)
            worst = max(worst, d)
        assert sum(c.multiplicity for c in got) == 6
        done += 1
    assert worst <= 1e-7


def test_catalog_roots_are_roots():
    from superlim.catalog import SystemId, representative

    for sid in SystemId:
        q = representative(sid)
        if q.is_zero():
            continue
        got = roots(q)
        assert sum(c.multiplicity for c in got) == 6
        for c in got:
            if not c.at_infinity:
                assert abs(q(c.value)) <= 1e-8 * q.norm()
