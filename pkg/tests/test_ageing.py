import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from agewise import (
    Curve,
    Exponential,
    Gamma,
    Lomax,
    PreconditionError,
    Weibull,
    bfr_moment_bound,
    change_points,
    classify_shape,
    dus_ew,
    glaser_eta,
    hazard_curve,
    hazard_to_distribution,
    is_igfr,
    mrl,
    mrl_curve,
    olcay_crosscheck,
    pf2_check,
    rescale,
    turning_points,
)
from agewise.fixtures import bathtub_model


@pytest.mark.parametrize("model,label", [
    (Exponential(2.0), "Constant"),
    (Weibull(1.0, 2.0), "IFR"),
    (Weibull(1.0, 0.5), "DFR"),
    (Gamma(3.0, 1.0), "IFR"),
    (Gamma(0.5, 1.0), "DFR"),
    (Lomax(2.0, 1.0), "DFR"),
    (bathtub_model(1.0), "BFR"),
    (dus_ew(1.2, 1.0), "UBFR"),
    (dus_ew(2.0, 1.0), "MBFR"),
])
def test_classify_known_shapes(model, label):
    assert classify_shape(model).label == label


def test_bathtub_change_point_location():
    rep = classify_shape(bathtub_model(1.5))
    assert rep.n_change_points == 1
    assert rep.change_points[0] == pytest.approx(1.5, abs=0.02)


def test_roller_coaster_counts_reversals():
    rep = classify_shape(dus_ew(3.0, 0.05))
    assert rep.label == "RollerCoaster(3)"
    assert rep.n_change_points == 3


def test_classify_accepts_curves():
    t = np.linspace(0.0, 4.0, 200)
    assert classify_shape(Curve(t, np.sin(t))).label == "UBFR"
    assert change_points(Curve(t, (t - 2.0) ** 2))[0] == pytest.approx(2.0, abs=0.03)


def test_flat_bottom_styles():
    t = np.linspace(0.0, 3.0, 301)
    v = np.where(t < 1, (1 - t) ** 2, np.where(t > 2, (t - 2) ** 2, 0.0))
    rep = classify_shape(Curve(t, v))
    assert rep.label == "BFR"
    assert rep.flat_band == pytest.approx((1.0, 2.0), abs=0.02)
    assert rep.to_dict("mi")["change_points"] == [pytest.approx(1.5, abs=0.02)]
    assert len(rep.to_dict("mitra-basu")["change_points"]) == 2


@settings(max_examples=30, deadline=None)
@given(c=st.floats(0.5, 5.0), k=st.floats(0.3, 4.0))
def test_label_invariant_under_rescaling(c, k):
    m = Weibull(1.0, k)
    assert classify_shape(rescale(m, c)).label == classify_shape(m).label


@settings(max_examples=30, deadline=None)
@given(th=st.floats(0.1, 10.0), t=st.floats(0.0, 20.0))
def test_exponential_mrl_is_constant(th, t):
    assert float(mrl(Exponential(th), t)) == pytest.approx(1.0 / th, rel=1e-8)


def test_mrl_lomax_closed_form():
    # MRL of Lomax(a, b) is (1 + b t) / (b (a - 1))
    t = np.array([0.0, 0.5, 3.0])
    np.testing.assert_allclose(mrl(Lomax(3.0, 2.0), t), (1 + 2 * t) / (2 * 2.0), rtol=1e-8)
    assert classify_shape(mrl_curve(Lomax(3.0, 2.0)).curve).label == "IFR"


def test_glaser_eta_gamma():
    t = np.array([0.5, 2.0, 4.0])
    np.testing.assert_allclose(glaser_eta(Gamma(3.0, 1.0), t), 1.0 - 2.0 / t, rtol=1e-10, atol=1e-13)


@pytest.mark.parametrize("model", [Weibull(1.0, 3.0), dus_ew(2.0, 1.0), bathtub_model(1.0), Gamma(0.5, 1.0)])
def test_turning_point_dominance(model):
    nh, ne = turning_points(model)
    assert nh <= ne


def test_igfr():
    assert is_igfr(Weibull(1.0, 0.5))[0]
    assert is_igfr(Lomax(2.0, 1.0))[0]


def test_pf2():
    assert pf2_check(Gamma(2.0, 1.0), trials=2000).is_pf2
    assert not pf2_check(Weibull(1.0, 0.5), trials=2000).is_pf2


def test_olcay_branches():
    assert olcay_crosscheck(bathtub_model(1.0)).status == "pass"
    ub = olcay_crosscheck(dus_ew(1.2, 1.0))
    assert (ub.expected_mrl, ub.status) == ("BFR", "pass")
    assert olcay_crosscheck(Exponential(1.0)).status == "boundary"
    with pytest.raises(PreconditionError):
        olcay_crosscheck(Weibull(1.0, 2.0))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_moment_bound_exponential_equality(k):
    rep = bfr_moment_bound(Exponential(1.5), k)
    assert rep.status == "equality"
    assert rep.bound == pytest.approx(special.gamma(k + 1) / 1.5 ** k)


def test_moment_bound_ifr_holds_strictly():
    assert bfr_moment_bound(Weibull(1.0, 2.0), 1).status == "vacuous"
    rep = bfr_moment_bound(Gamma(2.0, 1.0), 1)
    assert rep.holds


def test_hazard_to_distribution_roundtrip():
    m = hazard_to_distribution(lambda t: 3.0 * t ** 2)
    np.testing.assert_allclose(m.sf([0.5, 1.0]), np.exp(-np.array([0.125, 1.0])), rtol=1e-10)
    np.testing.assert_allclose(hazard_curve(m, [0.5, 1.0]).values, [0.75, 3.0], rtol=1e-10)
