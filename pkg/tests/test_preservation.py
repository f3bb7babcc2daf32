import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from agewise import (
    Exponential,
    Gamma,
    InfiniteMomentError,
    Lomax,
    ParameterError,
    Weibull,
    classify_shape,
    coherent_min_max,
    convolve,
    mixture,
    order_statistic,
    preservation_report,
    spacings_check,
)
from agewise.preservation import (
    PRESERVATION_CLAIMS,
    nbu_check,
    normalized_spacings,
)

rates = st.floats(0.2, 5.0)


@settings(max_examples=30, deadline=None)
@given(a=rates, b=rates, x=st.floats(0.01, 10.0))
def test_series_of_exponentials_is_exponential(a, b, x):
    m = coherent_min_max([Exponential(a), Exponential(b)], "series")
    assert float(m.sf(x)) == pytest.approx(np.exp(-(a + b) * x), rel=1e-12)
    assert float(m.hazard(x)) == pytest.approx(a + b, rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(a=rates, b=rates, x=st.floats(0.01, 10.0))
def test_parallel_cdf_is_product(a, b, x):
    m = coherent_min_max([Exponential(a), Weibull(1.0, b)], "parallel")
    expect = -np.expm1(-a * x) * -np.expm1(-(x ** b))
    assert float(m.cdf(x)) == pytest.approx(expect, rel=1e-12)
    assert float(m.cdf(x) + m.sf(x)) == pytest.approx(1.0, abs=1e-14)


@settings(max_examples=30, deadline=None)
@given(w=st.floats(0.05, 0.95), x=st.floats(0.01, 10.0))
def test_mixture_is_weighted_sum(w, x):
    comps = [Gamma(2.0, 1.0), Exponential(3.0)]
    m = mixture(comps, [w, 1 - w])
    assert float(m.pdf(x)) == pytest.approx(w * comps[0].pdf(x) + (1 - w) * comps[1].pdf(x), rel=1e-12)
    assert m.mean() == pytest.approx(w * 2.0 + (1 - w) / 3.0, rel=1e-12)


def test_mixture_weights_validated():
    with pytest.raises(ParameterError):
        mixture([Exponential(1.0), Exponential(2.0)], [0.5, 0.6])
    with pytest.raises(ParameterError):
        mixture([Exponential(1.0), Exponential(2.0)], [1.2, -0.2])


def test_mixture_of_exponentials_is_dfr():
    m = mixture([Exponential(1.0), Exponential(5.0)], [0.5, 0.5])
    assert classify_shape(m).label == "DFR"


@pytest.mark.parametrize("n,k", [(5, 1), (5, 3), (4, 4)])
def test_order_statistic_against_beta(n, k):
    base = Weibull(1.0, 2.0)
    m = order_statistic(base, n, k)
    x = np.array([0.3, 0.8, 1.5])
    np.testing.assert_allclose(m.cdf(x), stats.beta(k, n - k + 1).cdf(base.cdf(x)), rtol=1e-12)
    assert float(m.cdf(m.quantile(0.4))) == pytest.approx(0.4, rel=1e-10)


def test_min_of_exponentials_is_exponential():
    m = order_statistic(Exponential(2.0), 4, 1)
    x = np.linspace(0.01, 2.0, 10)
    np.testing.assert_allclose(m.sf(x), np.exp(-8.0 * x), rtol=1e-12)


def test_gamma_convolution_closed_form():
    m = convolve(Gamma(2.0, 1.0), Gamma(3.0, 1.0))
    t = np.linspace(0.05, 25.0, 200)
    np.testing.assert_allclose(m.cdf(t), stats.gamma(5.0).cdf(t), atol=2e-5)
    np.testing.assert_allclose(m.pdf(t), stats.gamma(5.0).pdf(t), atol=1e-4)


def test_convolution_mean_adds():
    m = convolve(Exponential(1.0), Weibull(2.0, 2.0))
    assert m.mean() == pytest.approx(1.0 + Weibull(2.0, 2.0).mean(), rel=1e-4)


def test_convolution_needs_finite_variance():
    with pytest.raises(InfiniteMomentError):
        convolve(Lomax(1.5, 1.0), Exponential(1.0))


def test_normalized_spacings_of_exponential_sample_are_exponential():
    x = np.array([[0.5, 0.1, 0.3]])
    np.testing.assert_allclose(normalized_spacings(x), [[0.3, 0.4, 0.2]])


def test_spacings_of_exponential_are_boundary():
    rep = spacings_check(Exponential(1.0), n=4, trials=4000, seed=1)
    assert set(rep.dfr) == {"boundary"} and set(rep.ifr) == {"boundary"}
    assert max(rep.diagonal_distance) < 0.05


def test_spacings_argument_checks():
    with pytest.raises(ParameterError):
        spacings_check(Exponential(1.0), n=1)
    with pytest.raises(ParameterError):
        spacings_check(Exponential(1.0), trials=10)


def test_nbu_check():
    assert nbu_check(Weibull(1.0, 2.0)) == "NBU"
    assert nbu_check(Weibull(1.0, 0.5)) == "NWU"
    assert nbu_check(Exponential(1.0)) == "both"


def test_single_cells():
    table = preservation_report("IFR", "convolution")
    cell = table.cell("IFR", "convolution")
    assert cell.claim == "Preserve"
    assert cell.verdict == "confirmed-preserve"
    assert table.to_csv().splitlines()[0] == "class,operation,claim,verdict,applicable_fixtures,witness"


def test_ifr_mixture_witness():
    cell = preservation_report("IFR", "mixture").cell("IFR", "mixture")
    assert cell.verdict == "witness-found-not-preserve"


def test_unknown_cell_arguments():
    with pytest.raises(ParameterError):
        preservation_report("XYZ")
    with pytest.raises(ParameterError):
        preservation_report("IFR", "product")


@pytest.mark.slow
def test_full_table_never_contradicts_a_preserve_claim():
    table = preservation_report()
    assert len(table.cells) == 3 * len(PRESERVATION_CLAIMS)
    for c in table.cells:
        if c.claim == "Preserve":
            assert c.verdict != "witness-found-not-preserve", c
        else:
            assert c.verdict != "confirmed-preserve", c
