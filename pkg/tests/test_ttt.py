import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agewise import (
    Exponential,
    Gamma,
    InfiniteMomentError,
    InverseWeibull,
    Lindley,
    Lomax,
    PreconditionError,
    Weibull,
    empirical_ttt,
    sample,
    scaled_ttt,
    ttt_class_tests,
    ttt_unscaled,
)
from agewise.fixtures import bathtub_model
from agewise.ttt import CLASS_PAIRS, TTTCurve

IFR_SIDE = ("IFR", "IFRA", "NBUE", "DMRL", "HNBUE")
DFR_SIDE = ("DFR", "DFRA", "NWUE", "IMRL", "HNWUE")


def test_exponential_is_diagonal():
    c = scaled_ttt(Exponential(3.0))
    assert c.p.size == 257
    np.testing.assert_allclose(c.phi, c.p, atol=1e-12)
    rep = ttt_class_tests(c)
    assert {v.verdict for v in rep.verdicts.values()} == {"boundary"}


def test_unscaled_endpoints():
    m = Gamma(2.0, 1.0)
    assert float(ttt_unscaled(m, 0.0)) == 0.0
    assert float(ttt_unscaled(m, 1.0)) == pytest.approx(2.0, rel=1e-9)


def test_infinite_mean_raises():
    with pytest.raises(InfiniteMomentError):
        scaled_ttt(Lomax(0.8, 1.0))


@settings(max_examples=25, deadline=None)
@given(k=st.floats(0.3, 4.0))
def test_phi_is_a_monotone_map_of_unit_interval(k):
    c = scaled_ttt(Weibull(1.0, k))
    assert c.phi[0] == 0.0 and c.phi[-1] == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(c.phi) >= -1e-12)


@settings(max_examples=20, deadline=None)
@given(k=st.one_of(st.floats(0.3, 0.9), st.floats(1.1, 4.0)))
def test_weibull_classes_follow_shape(k):
    rep = ttt_class_tests(scaled_ttt(Weibull(1.0, k)))
    side = IFR_SIDE if k > 1 else DFR_SIDE
    assert all(rep[c].verdict == "holds" for c in side)


@pytest.mark.parametrize("model,side", [(Lindley(1.0), IFR_SIDE), (Lomax(3.0, 1.0), DFR_SIDE)])
def test_named_laws(model, side):
    rep = ttt_class_tests(scaled_ttt(model))
    assert all(rep[c].member for c in side)


def test_inflection_classes():
    assert ttt_class_tests(scaled_ttt(bathtub_model(1.0)))["BFR"].verdict == "holds"
    assert ttt_class_tests(scaled_ttt(InverseWeibull(3.0, 1.0)))["UBFR"].verdict == "holds"


def test_hnbue_conventions_disagree():
    c = scaled_ttt(Weibull(1.0, 2.0))
    assert ttt_class_tests(c)["HNBUE"].verdict == "holds"
    assert ttt_class_tests(c, hnbue="printed")["HNBUE"].verdict == "fails"


def test_hnbue_needs_a_model():
    base = scaled_ttt(Weibull(1.0, 2.0))
    bare = TTTCurve("theoretical", base.p, base.phi, base.mu, "weibull")
    with pytest.raises(PreconditionError):
        ttt_class_tests(bare)
    assert ttt_class_tests(bare, context=Weibull(1.0, 2.0))["HNBUE"].verdict == "holds"


def test_empirical_curve_basics():
    x = np.array([3.0, 1.0, 2.0])
    c = empirical_ttt(x)
    # phi_i = (sum_{j<=i} x_(j) + (n-i) x_(i)) / sum x
    np.testing.assert_allclose(c.phi, [0.0, 0.5, 5 / 6, 1.0])
    assert c.n == 3
    with pytest.raises(ValueError):
        empirical_ttt([1.0])


@pytest.mark.parametrize("model,side", [(Weibull(1.0, 2.0), IFR_SIDE), (Weibull(1.0, 0.5), DFR_SIDE)])
def test_empirical_detects_clear_shapes(model, side):
    rep = ttt_class_tests(empirical_ttt(sample(model, 5000, seed=3)))
    assert rep["IFR" if side is IFR_SIDE else "DFR"].verdict == "holds"
    assert rep["NBUE" if side is IFR_SIDE else "NWUE"].verdict == "holds"


@pytest.mark.slow
def test_empirical_false_alarm_rate():
    # exponential samples should rarely be assigned a class
    claims = 0
    for seed in range(60):
        rep = ttt_class_tests(empirical_ttt(sample(Exponential(1.0), 1000, seed=seed)))
        claims += sum(rep[a].verdict == "holds" for a, _ in CLASS_PAIRS)
    assert claims / (60 * len(CLASS_PAIRS)) < 0.05


def test_report_serialises():
    rep = ttt_class_tests(scaled_ttt(Gamma(2.0, 1.0)))
    d = json.loads(rep.to_json())
    assert d["kind"] == "theoretical"
    assert len(d["tests"]) == 2 * len(CLASS_PAIRS)
    assert d["tests"]["IFR"]["verdict"] == "holds"


def test_csv_roundtrip():
    c = scaled_ttt(Weibull(1.0, 2.0), n_points=17)
    lines = c.to_csv().splitlines()
    assert lines[0].startswith("# kind=theoretical")
    assert lines[1] == "p,phi"
    body = np.array([[float(v) for v in ln.split(",")] for ln in lines[2:]])
    np.testing.assert_array_equal(body[:, 1], c.phi)
