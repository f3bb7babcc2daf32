import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from agewise import (
    Exponential,
    ParameterError,
    SupportError,
    UnknownNameError,
    Weibull,
    build_model,
    dus,
    fit_mle,
    loglik,
    sample,
)
from agewise.inference import GENERATOR, family_param_names, moment_init, uniforms


def test_uniforms_are_open_and_reproducible():
    u = uniforms(10_000, 5)
    assert np.all((u > 0) & (u < 1))
    np.testing.assert_array_equal(u, uniforms(10_000, 5))
    assert not np.array_equal(u, uniforms(10_000, 6))
    assert stats.kstest(u, "uniform").pvalue > 1e-3


def test_sample_distribution():
    x = sample(Weibull(2.0, 1.5), 20_000, seed=1)
    assert stats.kstest(x, stats.weibull_min(1.5, scale=2.0).cdf).pvalue > 1e-3


def test_loglik_exponential():
    assert loglik("exponential", {"theta": 1.0}, [1.0, 2.0, 3.0]) == pytest.approx(-6.0)


def test_loglik_reports_bad_index():
    with pytest.raises(SupportError) as info:
        loglik("exponential", [1.0], [1.0, 2.0, -3.0])
    assert info.value.index == 2


def test_family_names():
    assert family_param_names("gdus-weibull") == ("gdus_alpha", "lambda", "k")
    assert family_param_names("dus-ew") == ("alpha", "lambda")
    with pytest.raises(UnknownNameError):
        family_param_names("dus-nonsense")


def test_build_model_checks_names():
    assert build_model("dus-exponential", {"theta": 2.0}) == dus(Exponential(2.0))
    with pytest.raises(ParameterError) as info:
        build_model("weibull", {"lambda": 1.0})
    assert info.value.name == "k"
    with pytest.raises(ParameterError):
        build_model("weibull", [1.0, 2.0, 3.0])


@settings(max_examples=15, deadline=None)
@given(theta=st.floats(0.1, 10.0), seed=st.integers(0, 2 ** 31))
def test_exponential_mle_is_closed_form(theta, seed):
    x = sample(Exponential(theta), 200, seed=seed)
    res = fit_mle("exponential", x, restarts=0)
    assert res.params["theta"] == pytest.approx(x.size / x.sum(), rel=1e-6)


def test_weibull_fit_against_scipy():
    x = sample(Weibull(1.5, 2.5), 3000, seed=4)
    res = fit_mle("weibull", x)
    k, _, lam = stats.weibull_min.fit(x, floc=0)
    assert res.params["k"] == pytest.approx(k, rel=1e-4)
    assert res.params["lambda"] == pytest.approx(lam, rel=1e-4)
    assert res.converged


def test_moment_init_gamma():
    x = sample(Exponential(1.0), 5000, seed=2)
    shape, rate = moment_init("gamma", x)
    assert shape == pytest.approx(1.0, rel=0.1) and rate == pytest.approx(1.0, rel=0.1)


def test_fit_is_deterministic_and_serialisable():
    x = sample(dus(Weibull(1.0, 2.0)), 400, seed=9)
    a = fit_mle("dus-weibull", x, seed=1)
    b = fit_mle("dus-weibull", x, seed=1)
    assert a.to_json() == b.to_json()
    doc = json.loads(a.to_json())
    assert doc["generator"] == GENERATOR
    assert set(doc["params"]) == {"lambda", "k"}


def test_fit_needs_enough_data():
    with pytest.raises(ValueError):
        fit_mle("weibull", [1.0, 2.0, 3.0])


@pytest.mark.slow
def test_gdus_weibull_recovery():
    truth = {"gdus_alpha": 2.0, "lambda": 1.0, "k": 1.5}
    x = sample(build_model("gdus-weibull", truth), 5000, seed=21)
    res = fit_mle("gdus-weibull", x)
    for k, v in truth.items():
        assert res.params[k] == pytest.approx(v, rel=0.15)
