import cmath
import json

import numpy as np
import pytest

from superlim.catalog import CLASS_LABEL, SystemId, representative
from superlim.errors import DegenerateCrossRatio, DegenerateQuadruple, DegenerateSextuple, WrongSignature
from superlim.invariants import (
    StructureLabel,
    calibrate,
    calibration,
    classify,
    cr_orbit,
    cross_ratio,
    is_3111b,
    multi_ratio,
    multi_ratio_test,
    system_label,
    write_calibration,
)
from superlim.mobius import GL2Element, act, transform_root
from superlim.sextic import INF, RootCluster, Sextic, from_roots, roots


def test_cross_ratio_examples():
    assert cross_ratio(0, 1, INF, 3) == pytest.approx(2 / 3)
    assert cross_ratio(0, 1, 2, 3) == pytest.approx(4 / 3)
    with pytest.raises(DegenerateQuadruple):
        cross_ratio(0, 0, 1, 2)


def test_cr_orbit():
    orb = cr_orbit(2)
    assert len(orb) == 3  # harmonic
    assert len(cr_orbit(cmath.exp(1j * cmath.pi / 3))) == 2  # equianharmonic
    assert len(cr_orbit(0.3 + 0.2j)) == 6
    with pytest.raises(DegenerateCrossRatio):
        cr_orbit(1)


def test_is_3111b():
    w = cmath.exp(2j * cmath.pi / 3)
    b = [RootCluster(INF, 3), RootCluster(1, 1), RootCluster(w, 1), RootCluster(w * w, 1)]
    assert is_3111b(b)
    a = [RootCluster(INF, 3), RootCluster(1, 1), RootCluster(2, 1), RootCluster(3, 1)]
    assert not is_3111b(a)
    with pytest.raises(WrongSignature):
        is_3111b([RootCluster(0, 6)])


def test_multi_ratio_examples():
    assert multi_ratio([0, 1, 2, 3, 4, 5]) == pytest.approx(-0.2)
    with pytest.raises(DegenerateSextuple):
        multi_ratio([0, 0, 1, 2, 3, 4])
    with pytest.raises(ValueError):
        multi_ratio([0, 1, 2])


def test_hexagon_satisfies_multi_ratio():
    hexagon = [cmath.exp(2j * cmath.pi * k / 6) for k in range(6)]
    assert multi_ratio(hexagon) == pytest.approx(-1)
    assert multi_ratio_test(hexagon)


def test_perturbed_hexagon_fails():
    pts = [cmath.exp(2j * cmath.pi * k / 6) for k in range(6)]
    pts[0] += 0.05
    assert not multi_ratio_test(pts)


def test_multi_ratio_is_mobius_invariant():
    rng = np.random.default_rng(8)
    for _ in range(50):
        z = rng.normal(size=6) + 1j * rng.normal(size=6)
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        w = [transform_root(m, v) for v in z]
        a, b = multi_ratio(z), multi_ratio(w)
        assert abs(a - b) <= 1e-8 * max(1, abs(a))


def test_label_formatting():
    assert StructureLabel(()).bracket == "[0]"
    assert StructureLabel((3, 1, 1, 1), "b").bracket == "[3111b]"
    assert StructureLabel((1,) * 6, "non-c").bracket == "[111111a/b]"
    assert str(StructureLabel((5, 1))) == "[51]"
    assert StructureLabel((1,) * 6, "non-c").matches_class("[111111a]")
    assert not StructureLabel((1,) * 6, "c").matches_class("[111111a]")
    json.dumps(StructureLabel((6,)).to_json())


@pytest.mark.parametrize("sid", ["O", "A", "OO", "VII", "VI", "V", "III", "II"])
def test_representatives_classify(sid):
    assert classify(representative(sid)).bracket == CLASS_LABEL[SystemId(sid)]


def test_special_points_of_i_and_sw():
    # (1,1,1) is symmetric enough for the pointwise test to fire
    assert classify(representative("I")).sub == "c"
    assert classify(representative("SW")).sub == "c"


@pytest.mark.parametrize("sid", ["I", "SW", "IV"])
def test_system_label_six_distinct(sid):
    lab = system_label(sid)
    assert lab.matches_class(CLASS_LABEL[SystemId(sid)])


def test_classify_zero():
    assert classify(Sextic.zero()).bracket == "[0]"


def test_calibration_fixture_is_reproducible():
    fixture = calibration()
    fresh = calibrate()
    assert fresh["satisfied"] == fixture["satisfied"]
    assert fresh["signature"] == fixture["signature"] == [1] * 6
    assert abs(fresh["best_defect"] - fixture["best_defect"]) <= 1e-12
    assert fixture["satisfied"] is True


def test_write_calibration(tmp_path):
    data = write_calibration(tmp_path / "cal.json")
    again = json.loads((tmp_path / "cal.json").read_text())
    assert again == json.loads(json.dumps(data))


def test_label_is_invariant_under_mobius():
    rng = np.random.default_rng(9)
    q = from_roots([RootCluster(INF, 3), RootCluster(0, 1), RootCluster(1, 1), RootCluster(3, 1)], 1)
    base = classify(q)
    for _ in range(30):
        u, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        moved = act(GL2Element.from_array(u * (1 + rng.random())), q)
        assert classify(moved) == base
        assert sorted(c.multiplicity for c in roots(moved)) == [1, 1, 1, 3]
