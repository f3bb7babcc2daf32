import math
from decimal import Decimal, localcontext

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agewise import Exponential, ExpWeibullMixture, Lindley, Lomax, ParameterError, Weibull, dus, dus_ew, gdus

E = math.e


def _dus_hazard_oracle(th, x):
    with localcontext() as ctx:
        ctx.prec = 40
        th, x = Decimal(th), Decimal(x)
        z = (-th * x).exp()
        e = Decimal(1).exp()
        return float(th * z * (1 - z).exp() / (e - (1 - z).exp()))


@pytest.mark.parametrize("th", [0.5, 1.0, 2.0])
def test_dus_exponential_against_decimal_oracle(th):
    m = dus(Exponential(th))
    for x in (1e-4, 0.3, 2.0, 15.0):
        assert float(m.hazard(x)) == pytest.approx(_dus_hazard_oracle(th, x), rel=1e-13)


@settings(max_examples=50, deadline=None)
@given(a=st.floats(0.3, 4.0), b=st.floats(0.3, 4.0), x=st.floats(1e-3, 10.0))
def test_dus_definition(a, b, x):
    base = Lomax(a, b)
    m = dus(base)
    F = float(base.cdf(x))
    assert float(m.cdf(x)) == pytest.approx(math.expm1(F) / (E - 1), rel=1e-12, abs=1e-300)
    assert float(m.pdf(x)) == pytest.approx(float(base.pdf(x)) * math.exp(F) / (E - 1), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(alpha=st.floats(0.2, 5.0), k=st.floats(0.3, 3.0), x=st.floats(1e-3, 5.0))
def test_gdus_definition(alpha, k, x):
    base = Weibull(1.0, k)
    m = gdus(base, alpha)
    Fa = float(base.cdf(x)) ** alpha
    assert float(m.cdf(x)) == pytest.approx(math.expm1(Fa) / (E - 1), rel=1e-10, abs=1e-300)
    assert float(m.cdf(x) + m.sf(x)) == pytest.approx(1.0, abs=1e-14)


def test_gdus_alpha_one_is_dus():
    base = Lindley(0.8)
    x = np.linspace(0.01, 10, 40)
    np.testing.assert_allclose(gdus(base, 1.0).hazard(x), dus(base).hazard(x), rtol=1e-13)


@settings(max_examples=30, deadline=None)
@given(p=st.floats(1e-6, 1 - 1e-6))
def test_dus_quantile_roundtrip(p):
    m = dus(Weibull(2.0, 1.5))
    assert float(m.cdf(m.quantile(p))) == pytest.approx(p, rel=1e-9)


def test_dus_ew_matches_generic_transform():
    m, ref = dus_ew(2.0, 0.5), dus(ExpWeibullMixture(2.0, 0.5))
    x = np.linspace(0.01, 20, 60)
    np.testing.assert_allclose(m.hazard(x), ref.hazard(x), rtol=1e-12)


def test_dus_ew_hazard_tends_to_lambda():
    # the exponential component dominates the tail for alpha > 1
    assert float(dus_ew(2.0, 0.7).hazard(60.0)) == pytest.approx(0.7, rel=1e-6)


def test_gdus_rejects_bad_alpha():
    with pytest.raises(ParameterError):
        gdus(Exponential(1.0), -1.0)
