"""DUS and generalised DUS transforms of a baseline lifetime law.

For a baseline with density ``f`` and distribution ``F``::

    DUS:        g = f e^F / (e - 1),                 G = (e^F - 1) / (e - 1)
    GDUS(a):    g = a f F^(a-1) e^(F^a) / (e - 1),   G = (e^(F^a) - 1) / (e - 1)

GDUS with ``a = 1`` is DUS. Survival functions are computed from the
baseline survival ``S = 1 - F`` as ``e (1 - e^{F^a - 1}) / (e - 1)`` so the
upper tail keeps full relative precision.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import DistributionModel, ExpWeibullMixture, INF
from .exceptions import ParameterError

E = math.e
EM1 = math.e - 1.0


class DUSModel(DistributionModel):
    """DUS transform of ``base``; quantiles invert through the baseline."""

    family = "dus"
    closed_form = frozenset({"pdf", "cdf", "sf", "hazard", "quantile", "dlogpdf"})

    def __init__(self, base: DistributionModel):
        if not isinstance(base, DistributionModel):
            raise TypeError(f"baseline must be a DistributionModel, got {type(base).__name__}")
        self.base = base
        self._params = base.param_values

    @property
    def kind(self):
        return "DUS"

    @property
    def param_names(self):
        return self.base.param_names

    @property
    def name(self):
        return f"dus[{self.base.name}]"

    def _key(self):
        return (self.base,)

    @property
    def support(self):
        return self.base.support

    @property
    def tail_index(self):
        return self.base.tail_index

    def _pdf(self, x):
        return self.base.pdf(x) * np.exp(self.base.cdf(x)) / EM1

    def _cdf(self, x):
        return np.expm1(self.base.cdf(x)) / EM1

    def _sf(self, x):
        return -E * np.expm1(-self.base.sf(x)) / EM1

    def _hazard(self, x):
        # f e^F / (e - e^F) = f / (e^S - 1)
        return self.base.pdf(x) / np.expm1(self.base.sf(x))

    def _dlogpdf(self, x):
        return self.base.dlogpdf(x) + self.base.pdf(x)

    def _quantile(self, p):
        return self.base.quantile(np.log1p(p * EM1))

    def _scale_hint(self):
        return self.base._scale_hint()


class GDUSModel(DistributionModel):
    """Generalised DUS transform: DUS applied to the exponentiated cdf ``F^alpha``."""

    family = "gdus"
    closed_form = frozenset({"pdf", "cdf", "sf", "hazard", "quantile", "dlogpdf"})

    def __init__(self, base: DistributionModel, alpha: float):
        if not isinstance(base, DistributionModel):
            raise TypeError(f"baseline must be a DistributionModel, got {type(base).__name__}")
        alpha = float(alpha)
        if not (math.isfinite(alpha) and alpha > 0):
            raise ParameterError(f"gdus: alpha must be finite and > 0, got {alpha!r}", name="alpha")
        self.base = base
        self.alpha = alpha
        self._params = (alpha,) + base.param_values

    @property
    def kind(self):
        return f"GDUS({self.alpha:g})"

    @property
    def param_names(self):
        return ("gdus_alpha",) + self.base.param_names

    @property
    def name(self):
        return f"gdus[{self.base.name}, alpha={self.alpha:g}]"

    def _key(self):
        return (self.base, self.alpha)

    @property
    def support(self):
        return self.base.support

    @property
    def tail_index(self):
        return self.base.tail_index

    def _Fa(self, x):
        return self.base.cdf(x) ** self.alpha

    def _Fa_minus_1(self, x):
        # F^a - 1 computed from the baseline survival
        return np.expm1(self.alpha * np.log1p(-self.base.sf(x)))

    def _pdf(self, x):
        a = self.alpha
        F = self.base.cdf(x)
        return a * self.base.pdf(x) * F ** (a - 1.0) * np.exp(F ** a) / EM1

    def _cdf(self, x):
        return np.expm1(self._Fa(x)) / EM1

    def _sf(self, x):
        return -E * np.expm1(self._Fa_minus_1(x)) / EM1

    def _hazard(self, x):
        a = self.alpha
        F = self.base.cdf(x)
        num = a * self.base.pdf(x) * F ** (a - 1.0) * np.exp(F ** a)
        return num / (-E * np.expm1(self._Fa_minus_1(x)))

    def _dlogpdf(self, x):
        a = self.alpha
        F = self.base.cdf(x)
        f = self.base.pdf(x)
        return self.base.dlogpdf(x) + (a - 1.0) * f / F + a * F ** (a - 1.0) * f

    def _quantile(self, p):
        return self.base.quantile(np.log1p(p * EM1) ** (1.0 / self.alpha))

    def _scale_hint(self):
        return self.base._scale_hint()


class DUSExpWeibull(DistributionModel):
    """DUS transform of the exponential-Weibull mixture, written out directly.

    ``V(x) = (lambda e^{-lambda x} + e^{-(lambda x)^alpha}) / (1 + lambda)``
    is the mixture survival, the density is
    ``(lambda^2 e^{-lambda x} + alpha lambda^alpha x^{alpha-1}
    e^{-(lambda x)^alpha}) e^{1-V} / ((e-1)(1+lambda))`` and the hazard is
    the same numerator over ``(e - e^{1-V})(1 + lambda)``.

    This path deliberately does not go through :class:`DUSModel`; the two are
    cross-checked in the tests.
    """

    family = "dus-ew"
    param_names = ("alpha", "lambda")
    closed_form = frozenset({"pdf", "cdf", "sf", "hazard"})

    def _numerator(self, x):
        a, lam = self._params
        return lam * lam * np.exp(-lam * x) + a * lam ** a * x ** (a - 1.0) * np.exp(-((lam * x) ** a))

    def _V(self, x):
        a, lam = self._params
        return (lam * np.exp(-lam * x) + np.exp(-((lam * x) ** a))) / (1.0 + lam)

    def _pdf(self, x):
        lam = self._params[1]
        return self._numerator(x) / (EM1 * (1.0 + lam)) * np.exp(1.0 - self._V(x))

    def _cdf(self, x):
        return (np.exp(1.0 - self._V(x)) - 1.0) / EM1

    def _sf(self, x):
        # (e - e^{1-V}) / (e - 1)
        return -E * np.expm1(-self._V(x)) / EM1

    def _hazard(self, x):
        lam = self._params[1]
        return self._numerator(x) * np.exp(1.0 - self._V(x)) / ((-E * np.expm1(-self._V(x))) * (1.0 + lam))

    def _quantile(self, p):
        # V(x) = 1 - log(1 + p (e - 1)) solved on the mixture survival
        mixture = ExpWeibullMixture(*self._params)
        return mixture.quantile(np.log1p(p * EM1))

    def _scale_hint(self):
        return 1.0 / self._params[1]


def dus(base: DistributionModel) -> DUSModel:
    return DUSModel(base)


def gdus(base: DistributionModel, alpha: float) -> GDUSModel:
    return GDUSModel(base, alpha)


def dus_ew(alpha: float, lam: float) -> DUSExpWeibull:
    return DUSExpWeibull(alpha, lam)


__all__ = ["DUSModel", "GDUSModel", "DUSExpWeibull", "dus", "gdus", "dus_ew", "INF"]
