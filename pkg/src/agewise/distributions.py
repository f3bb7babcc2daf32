"""Parametric lifetime distributions.

Every model exposes ``pdf``, ``cdf``, ``sf``, ``hazard``, ``cumhaz``,
``quantile`` and moments. Subclasses supply closed forms where they exist;
the base class falls back to quadrature and root finding for the rest, so
every capability is always available.

Parameter names follow the usual symbols: ``theta``, ``lambda``, ``k``,
``alpha``, ``beta``, ``shape``, ``rate``.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import special

from . import _numerics as num
from .exceptions import (
    InfiniteMomentError,
    ParameterError,
    PreconditionError,
    SupportError,
    UnknownNameError,
)

INF = math.inf


def _as_flat(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.reshape(-1)


def _restore(shape_src, out):
    out = np.asarray(out, dtype=float)
    if shape_src.ndim == 0:
        return float(out.reshape(-1)[0])
    return out.reshape(shape_src.shape)


class DistributionModel:
    """Base class for a lifetime law on ``support = (lower, upper)``.

    Subclasses implement the private array methods (``_pdf``, ``_cdf``,
    ``_sf`` ...) on 1-d float arrays that are already inside the support;
    the public methods handle scalars, shapes and points off the support
    (density zero there, distribution function 0 or 1).
    """

    family = "abstract"
    param_names: tuple[str, ...] = ()
    #: methods implemented in closed form by the subclass
    closed_form: frozenset[str] = frozenset()
    #: largest finite moment order (``None`` means all moments exist)
    tail_index: float | None = None

    def __init__(self, *args, **kwargs):
        self._params = _bind_params(self.family, self.param_names, args, kwargs)
        self._check_params()

    def _check_params(self):
        for name, value in zip(self.param_names, self._params):
            if not math.isfinite(value) or value <= 0:
                raise ParameterError(
                    f"{self.family}: parameter {name!r} must be finite and > 0, got {value!r}", name=name
                )

    # -- identity ---------------------------------------------------------
    @property
    def params(self) -> dict[str, float]:
        return dict(zip(self.param_names, self._params))

    @property
    def param_values(self) -> tuple[float, ...]:
        return self._params

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, INF)

    @property
    def name(self) -> str:
        inner = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family}({inner})"

    @property
    def capabilities(self) -> dict[str, str]:
        names = ("pdf", "cdf", "sf", "hazard", "quantile", "dlogpdf")
        return {n: ("closed-form" if n in self.closed_form else "numeric") for n in names}

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    def __eq__(self, other):
        return type(other) is type(self) and other._key() == self._key()

    def __hash__(self):
        return hash((type(self), self._key()))

    def _key(self):
        return self._params

    # -- array kernels (override) -----------------------------------------
    def _pdf(self, x):
        raise NotImplementedError

    def _cdf(self, x):
        return 1.0 - self._sf(x)

    def _sf(self, x):
        return 1.0 - self._cdf(x)

    def _hazard(self, x):
        f = self._pdf(x)
        s = self._sf(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            h = np.where(s > 1e-300, f / np.where(s > 0, s, 1.0), np.nan)
        bad = ~np.isfinite(h) & (s <= 1e-300)
        if bad.any():
            # deep tail: survival has underflowed, use the log-density slope
            h = np.where(bad, self._tail_hazard(x), h)
        return h

    def _tail_hazard(self, x):
        return np.full_like(x, np.nan)

    def _cumhaz(self, x):
        with np.errstate(divide="ignore"):
            return -np.log(self._sf(x))

    def _logpdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self._pdf(x))

    def _dlogpdf(self, x):
        return num.central_difference(self._logpdf_public, x)

    def _logpdf_public(self, x):
        return self.logpdf(x)

    def _quantile(self, p):
        lo, hi = self.support
        return num.solve_monotone(self.cdf, self.sf, self.pdf, p, lo, hi, guess=self._scale_hint())

    def _scale_hint(self) -> float:
        return 1.0

    # -- public API ---------------------------------------------------------
    def _inside(self, flat):
        lo, hi = self.support
        return (flat >= lo) & (flat <= hi)

    def _masked(self, x, kernel, below, above):
        arr, flat = _as_flat(x)
        lo, hi = self.support
        out = np.where(flat < lo, below, above)
        inside = self._inside(flat)
        if inside.any():
            with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
                out = out.astype(float)
                out[inside] = kernel(flat[inside])
        return _restore(arr, out)

    def pdf(self, x):
        return self._masked(x, self._pdf, 0.0, 0.0)

    def logpdf(self, x):
        return self._masked(x, self._logpdf, -INF, -INF)

    def cdf(self, x):
        return self._masked(x, self._cdf, 0.0, 1.0)

    def sf(self, x):
        return self._masked(x, self._sf, 1.0, 0.0)

    survival = sf

    def hazard(self, x):
        return self._masked(x, self._hazard, 0.0, np.nan)

    def cumhaz(self, x):
        return self._masked(x, self._cumhaz, 0.0, INF)

    def dlogpdf(self, x):
        """Derivative of ``log pdf``; closed form when the family has one."""
        return self._masked(x, self._dlogpdf, np.nan, np.nan)

    def quantile(self, p):
        arr, flat = _as_flat(p)
        if np.any(~((flat > 0) & (flat < 1))):
            bad = flat[~((flat > 0) & (flat < 1))][0]
            raise ParameterError(f"probability must lie in (0, 1), got {bad!r}", name="p")
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            out = self._quantile(flat)
        return _restore(arr, out)

    ppf = quantile

    def raw_moment(self, k: float = 1.0) -> float:
        return raw_moment(self, k)

    @cached_property
    def _mean(self) -> float:
        return raw_moment(self, 1.0)

    def mean(self) -> float:
        return self._mean

    def median(self) -> float:
        return self.quantile(0.5)

    def grid(self, n: int | None = None, lower_p: float = 1e-4, upper_p: float = 1.0 - 1e-4) -> np.ndarray:
        """Evaluation grid between two quantiles.

        Geometric spacing on ``(0, inf)`` supports and linear spacing on
        bounded ones. ``n`` defaults to 512 (``AGEWISE_GRID_POINTS``
        overrides it).
        """
        n = num.default_grid_points() if n is None else int(n)
        a, b = self.quantile(np.array([lower_p, upper_p]))
        lo, hi = self.support
        if math.isinf(hi) and lo == 0.0 and a > 0:
            g = np.geomspace(a, b, n)
        else:
            g = np.linspace(a, b, n)
        g[0], g[-1] = a, b
        return g


def _newton_polish(model, x, p, steps=2):
    """A couple of Newton steps on ``cdf(x) = p`` (survival side above 1/2)."""
    for _ in range(steps):
        r = np.where(p > 0.5, (1.0 - p) - model._sf(x), model._cdf(x) - p)
        d = model._pdf(x)
        step = np.where(d > 0, r / np.where(d > 0, d, 1.0), 0.0)
        x = np.maximum(x - step, 0.0)
    return x


def _bind_params(family, names, args, kwargs) -> tuple[float, ...]:
    if len(args) == 1 and not kwargs and isinstance(args[0], Mapping):
        kwargs = dict(args[0])
        args = ()
    elif len(args) == 1 and not kwargs and isinstance(args[0], (Sequence, np.ndarray)) and not isinstance(args[0], str):
        args = tuple(args[0])
    if len(args) > len(names):
        raise ParameterError(f"{family} takes {len(names)} parameters {names}, got {len(args)}")
    values = dict(zip(names, args))
    for key, val in kwargs.items():
        if key not in names:
            raise ParameterError(f"{family} has no parameter {key!r}; expected {names}", name=key)
        if key in values:
            raise ParameterError(f"{family}: parameter {key!r} given twice", name=key)
        values[key] = val
    missing = [n for n in names if n not in values]
    if missing:
        raise ParameterError(f"{family}: missing parameter {missing[0]!r}", name=missing[0])
    out = []
    for n in names:
        try:
            out.append(float(values[n]))
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"{family}: parameter {n!r} is not a number: {values[n]!r}", name=n) from exc
    return tuple(out)


# ---------------------------------------------------------------------------
# baseline families
# ---------------------------------------------------------------------------

class Exponential(DistributionModel):
    family = "exponential"
    param_names = ("theta",)
    closed_form = frozenset({"pdf", "cdf", "sf", "hazard", "quantile", "dlogpdf"})

    @property
    def theta(self):
        return self._params[0]

    def _pdf(self, x):
        return self.theta * np.exp(-self.theta * x)

    def _logpdf(self, x):
        return math.log(self.theta) - self.theta * x

    def _cdf(self, x):
        return -np.expm1(-self.theta * x)

    def _sf(self, x):
        return np.exp(-self.theta * x)

    def _hazard(self, x):
        return np.full_like(x, self.theta)

    def _cumhaz(self, x):
        return self.theta * x

    def _dlogpdf(self, x):
        return np.full_like(x, -self.theta)

    def _quantile(self, p):
        return -np.log1p(-p) / self.theta

    def _scale_hint(self):
        return 1.0 / self.theta


class Weibull(DistributionModel):
    """Weibull with scale ``lambda`` and shape ``k``: ``F = 1 - exp(-(x/lambda)^k)``."""

    family = "weibull"
    param_names = ("lambda", "k")
    closed_form = frozenset({"pdf", "cdf", "sf", "hazard", "quantile", "dlogpdf"})

    def _z(self, x):
        lam, k = self._params
        return (x / lam) ** k

    def _hazard(self, x):
        lam, k = self._params
        if k == 1.0:
            return np.full_like(x, 1.0 / lam)
        return (k / lam) * (x / lam) ** (k - 1.0)

    def _pdf(self, x):
        return self._hazard(x) * np.exp(-self._z(x))

    def _logpdf(self, x):
        lam, k = self._params
        return math.log(k / lam) + (k - 1.0) * np.log(x / lam) - self._z(x)

    def _cdf(self, x):
        return -np.expm1(-self._z(x))

    def _sf(self, x):
        return np.exp(-self._z(x))

    def _cumhaz(self, x):
        return self._z(x)

    def _dlogpdf(self, x):
        lam, k = self._params
        return (k - 1.0) / x - (k / lam) * (x / lam) ** (k - 1.0)

    def _quantile(self, p):
        lam, k = self._params
        return lam * (-np.log1p(-p)) ** (1.0 / k)

    def _scale_hint(self):
        return self._params[0]


class Gamma(DistributionModel):
    family = "gamma"
    param_names = ("shape", "rate")
    closed_form = frozenset({"pdf", "cdf", "sf", "quantile", "dlogpdf"})

    def _logpdf(self, x):
        a, r = self._params
        return a * math.log(r) + (a - 1.0) * np.log(x) - r * x - special.gammaln(a)

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _cdf(self, x):
        a, r = self._params
        return special.gammainc(a, r * x)

    def _sf(self, x):
        a, r = self._params
        return special.gammaincc(a, r * x)

    def _tail_hazard(self, x):
        # survival underflowed: first-order asymptote of pdf/sf
        a, r = self._params
        return r - (a - 1.0) / x

    def _dlogpdf(self, x):
        a, r = self._params
        return (a - 1.0) / x - r

    def _quantile(self, p):
        a, r = self._params
        return np.where(p > 0.5, special.gammainccinv(a, 1.0 - p), special.gammaincinv(a, p)) / r

    def _scale_hint(self):
        a, r = self._params
        return a / r


class Lindley(DistributionModel):
    """Lindley law ``f(x) = theta^2/(1+theta) (1+x) exp(-theta x)``."""

    family = "lindley"
    param_names = ("theta",)
    closed_form = frozenset({"pdf", "cdf", "sf", "hazard", "quantile", "dlogpdf"})

    @property
    def theta(self):
        return self._params[0]

    def _pdf(self, x):
        t = self.theta
        return t * t / (1.0 + t) * (1.0 + x) * np.exp(-t * x)

    def _logsf(self, x):
        t = self.theta
        return np.log1p(t * x / (1.0 + t)) - t * x

    def _sf(self, x):
        return np.exp(self._logsf(x))

    def _cdf(self, x):
        return -np.expm1(self._logsf(x))

    def _hazard(self, x):
        t = self.theta
        return t * t * (1.0 + x) / (1.0 + t + t * x)

    def _cumhaz(self, x):
        return -self._logsf(x)

    def _dlogpdf(self, x):
        return 1.0 / (1.0 + x) - self.theta

    def _quantile(self, p):
        # (1 + theta + theta x) e^{-theta x} = (1 + theta)(1 - p), lower branch of W
        t = self.theta
        arg = -(1.0 + t) * np.exp(np.log1p(-p) - (1.0 + t))
        w = special.lambertw(arg, k=-1).real
        return _newton_polish(self, (-w - 1.0 - t) / t, p)

    def _scale_hint(self):
        t = self.theta
        return (t + 2.0) / (t * (t + 1.0))


class Lomax(DistributionModel):
    """Lomax with ``sf = (1 + beta x)^(-alpha)``."""

    family = "lomax"
    param_names = ("alpha", "beta")
    closed_form = frozenset({"pdf", "cdf", "sf", "hazard", "quantile", "dlogpdf"})

    @property
    def tail_index(self):
        return self._params[0]

    def _pdf(self, x):
        a, b = self._params
        return a * b * np.exp(-(a + 1.0) * np.log1p(b * x))

    def _sf(self, x):
        a, b = self._params
        return np.exp(-a * np.log1p(b * x))

    def _cdf(self, x):
        a, b = self._params
        return -np.expm1(-a * np.log1p(b * x))

    def _hazard(self, x):
        a, b = self._params
        return a * b / (1.0 + b * x)

    def _cumhaz(self, x):
        a, b = self._params
        return a * np.log1p(b * x)

    def _dlogpdf(self, x):
        a, b = self._params
        return -(a + 1.0) * b / (1.0 + b * x)

    def _quantile(self, p):
        a, b = self._params
        return np.expm1(-np.log1p(-p) / a) / b

    def _scale_hint(self):
        return 1.0 / self._params[1]


class InverseWeibull(DistributionModel):
    """Inverse Weibull with shape ``alpha`` and scale ``beta``: ``F = exp(-(x/beta)^-alpha)``."""

    family = "inverse-weibull"
    param_names = ("alpha", "beta")
    closed_form = frozenset({"pdf", "cdf", "sf", "quantile", "dlogpdf"})

    @property
    def tail_index(self):
        return self._params[0]

    def _z(self, x):
        a, b = self._params
        with np.errstate(divide="ignore"):
            return (x / b) ** (-a)

    def _logpdf(self, x):
        a, b = self._params
        with np.errstate(divide="ignore"):
            return math.log(a / b) - (a + 1.0) * np.log(x / b) - self._z(x)

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _cdf(self, x):
        return np.exp(-self._z(x))

    def _sf(self, x):
        return -np.expm1(-self._z(x))

    def _dlogpdf(self, x):
        a, _b = self._params
        return (-(a + 1.0) + a * self._z(x)) / x

    def _quantile(self, p):
        a, b = self._params
        return b * (-np.log(p)) ** (-1.0 / a)

    def _scale_hint(self):
        return self._params[1]


class Kumaraswamy(DistributionModel):
    """Kumaraswamy on ``(0, 1)``: ``F = 1 - (1 - x^alpha)^beta``."""

    family = "kumaraswamy"
    param_names = ("alpha", "beta")
    closed_form = frozenset({"pdf", "cdf", "sf", "hazard", "quantile", "dlogpdf"})

    @property
    def support(self):
        return (0.0, 1.0)

    def _pdf(self, x):
        a, b = self._params
        return a * b * x ** (a - 1.0) * (1.0 - x ** a) ** (b - 1.0)

    def _sf(self, x):
        a, b = self._params
        return np.exp(b * np.log1p(-(x ** a)))

    def _cdf(self, x):
        a, b = self._params
        return -np.expm1(b * np.log1p(-(x ** a)))

    def _hazard(self, x):
        a, b = self._params
        return a * b * x ** (a - 1.0) / (1.0 - x ** a)

    def _dlogpdf(self, x):
        a, b = self._params
        xa = x ** a
        return (a - 1.0) / x - (b - 1.0) * a * x ** (a - 1.0) / (1.0 - xa)

    def _quantile(self, p):
        a, b = self._params
        return (-np.expm1(np.log1p(-p) / b)) ** (1.0 / a)


class ExpWeibullMixture(DistributionModel):
    """Mixture of an exponential and a Weibull term sharing ``lambda``.

    ``f(x) = (lambda^2 e^{-lambda x} + alpha lambda^alpha x^{alpha-1}
    e^{-(lambda x)^alpha}) / (1 + lambda)``.
    """

    family = "exp-weibull-mixture"
    param_names = ("alpha", "lambda")
    closed_form = frozenset({"pdf", "cdf", "sf", "dlogpdf"})

    def _pdf(self, x):
        a, lam = self._params
        wei = a * lam ** a * x ** (a - 1.0) * np.exp(-((lam * x) ** a))
        return (lam * lam * np.exp(-lam * x) + wei) / (1.0 + lam)

    def _sf(self, x):
        a, lam = self._params
        return (lam * np.exp(-lam * x) + np.exp(-((lam * x) ** a))) / (1.0 + lam)

    def _cdf(self, x):
        a, lam = self._params
        return (-lam * np.expm1(-lam * x) - np.expm1(-((lam * x) ** a))) / (1.0 + lam)

    def _dlogpdf(self, x):
        a, lam = self._params
        la = lam ** a
        ew = np.exp(-((lam * x) ** a))
        d_exp = -(lam ** 3) * np.exp(-lam * x)
        d_wei = a * la * ew * ((a - 1.0) * x ** (a - 2.0) - a * la * x ** (2.0 * a - 2.0))
        return (d_exp + d_wei) / ((1.0 + lam) * self._pdf(x))

    def _scale_hint(self):
        return 1.0 / self._params[1]


BASELINES: dict[str, type[DistributionModel]] = {
    cls.family: cls
    for cls in (Exponential, Weibull, Gamma, Lindley, Lomax, InverseWeibull, Kumaraswamy, ExpWeibullMixture)
}

_ALIASES = {
    "exp": "exponential",
    "inverse_weibull": "inverse-weibull",
    "invweibull": "inverse-weibull",
    "exp-weibull": "exp-weibull-mixture",
    "ew-mixture": "exp-weibull-mixture",
}


def canonical_family(name: str) -> str:
    key = str(name).strip().lower().replace("_", "-")
    key = _ALIASES.get(key, key)
    if key not in BASELINES:
        raise UnknownNameError(f"unknown family {name!r}; known: {sorted(BASELINES)}")
    return key


def make_baseline(family: str, params) -> DistributionModel:
    """Build a baseline model from a family name and a parameter vector or mapping."""
    cls = BASELINES[canonical_family(family)]
    if isinstance(params, Mapping):
        return cls(**dict(params))
    return cls(*np.atleast_1d(np.asarray(params, dtype=float)).tolist())


# ---------------------------------------------------------------------------
# derived models
# ---------------------------------------------------------------------------

class ScaledModel(DistributionModel):
    """Distribution of ``c * X`` for a base model of ``X``."""

    family = "scaled"
    closed_form = frozenset()

    def __init__(self, base: DistributionModel, c: float):
        if not (math.isfinite(c) and c > 0):
            raise ParameterError(f"scale factor must be > 0, got {c!r}", name="c")
        self.base = base
        self.c = float(c)
        self._params = ()

    def _key(self):
        return (self.base, self.c)

    @property
    def name(self):
        return f"scaled({self.base.name}, c={self.c:g})"

    @property
    def support(self):
        lo, hi = self.base.support
        return (lo * self.c, hi * self.c)

    @property
    def tail_index(self):
        return self.base.tail_index

    def _pdf(self, x):
        return self.base.pdf(x / self.c) / self.c

    def _cdf(self, x):
        return self.base.cdf(x / self.c)

    def _sf(self, x):
        return self.base.sf(x / self.c)

    def _hazard(self, x):
        return self.base.hazard(x / self.c) / self.c

    def _dlogpdf(self, x):
        return self.base.dlogpdf(x / self.c) / self.c

    def _quantile(self, p):
        return self.c * self.base.quantile(p)


class HazardDefinedModel(DistributionModel):
    """Lifetime law defined by its failure rate: ``sf(t) = exp(-int_a^t h)``.

    The cumulative hazard is tabulated once on a dense knot set (16-point
    Gauss-Legendre per segment, adaptive quadrature on the first segment
    to absorb integrable singularities at the origin); evaluation adds one
    more Gauss-Legendre panel from the nearest knot.
    """

    family = "hazard-defined"
    closed_form = frozenset({"hazard"})

    #: survival below exp(-DIVERGENCE_FLOOR) at the last knot counts as divergence
    DIVERGENCE_FLOOR = 25.0
    #: the table stops once survival is below exp(-H_CAP), just above underflow
    H_CAP = 700.0
    #: invalid rate samples (0/0 after underflow) are tolerated once H exceeds this
    UNDERFLOW_OK = 40.0

    def __init__(self, hazard, domain=(0.0, INF), label: str | None = None):
        a, b = float(domain[0]), float(domain[1])
        if not (math.isfinite(a) and b > a):
            raise ParameterError(f"invalid domain {domain!r}", name="domain")
        self._h = hazard
        self._domain = (a, b)
        self._label = label or getattr(hazard, "__name__", "h")
        self._params = ()
        self._build_table()

    def _key(self):
        return (id(self._h), self._domain)

    @property
    def name(self):
        return f"hazard-defined({self._label})"

    @property
    def support(self):
        return self._domain

    def hazard_function(self, t):
        return np.asarray(self._h(np.asarray(t, dtype=float)), dtype=float)

    def _build_table(self):
        a, b = self._domain
        if math.isinf(b):
            # 200 knots per decade; heavy tails need H = O(log t) to pass the floor
            offsets = np.geomspace(1e-8, 1e100, 21601)
            knots = a + offsets
        else:
            w = b - a
            left = a + w * np.geomspace(1e-10, 0.5, 1200)
            right = b - w * np.geomspace(0.5, 1e-14, 1600)
            knots = np.unique(np.concatenate([left, right]))
        first = num.integrate(self._checked_h, a, knots[0])
        # accumulate in chunks and stop once survival is below exp(-H_CAP);
        # printed rate formulas often turn into 0/0 further out, so invalid
        # samples only count when they occur before the cap is reached
        parts, total, stop = [], first, knots.size
        self._truncated = False
        for lo in range(0, knots.size - 1, 128):
            hi = min(lo + 128, knots.size - 1)
            left, right = knots[lo:hi], knots[lo + 1:hi + 1]
            width = right - left
            nodes = left[:, None] + width[:, None] * num.GL_NODES[None, :]
            with np.errstate(all="ignore"):
                vals = np.asarray(self._h(nodes.ravel()), dtype=float).reshape(nodes.shape)
            bad = (~np.isfinite(vals) | (vals < 0)).any(axis=1)
            seg = width * (np.where(np.isfinite(vals), vals, 0.0) @ num.GL_WEIGHTS)
            seg = np.where(bad, 0.0, seg)
            cs = total + np.cumsum(seg)
            over = np.nonzero(cs > self.H_CAP)[0]
            first_over = int(over[0]) if over.size else hi - lo
            if bad[:first_over].any():
                j = int(np.argmax(bad))
                prior = total if j == 0 else cs[j - 1]
                if prior < self.UNDERFLOW_OK:
                    self._checked_h(nodes[j])  # raises with the offending time
                # deep in the tail: cut the table before the invalid segment
                parts.append(cs[:j])
                stop = lo + j + 1
                self._truncated = True
                break
            parts.append(cs)
            total = cs[-1]
            if over.size:
                stop = lo + first_over + 2
                self._truncated = True
                break
        cum = np.concatenate([[first]] + parts)[:stop]
        knots = knots[:stop]
        if math.isinf(b) and cum[-1] < self.DIVERGENCE_FLOOR:
            raise PreconditionError(
                "cumulative hazard does not diverge: "
                f"H({knots[-1]:.3g}) = {cum[-1]:.3g} < {self.DIVERGENCE_FLOOR}"
            )
        self._knots = knots
        self._cum = cum

    def _checked_h(self, t):
        h = np.asarray(self._h(t), dtype=float)
        if np.any(np.isnan(h)):
            raise PreconditionError("hazard returned NaN inside its domain")
        if np.any(np.isinf(h)):
            raise PreconditionError("hazard is infinite inside its domain")
        neg = h < 0
        if neg.any():
            raise PreconditionError(
                f"hazard is negative at t={float(np.asarray(t).reshape(-1)[np.argmax(neg.reshape(-1))]):.6g}"
            )
        return h

    def _hazard(self, x):
        return self.hazard_function(x)

    def _cumhaz(self, x):
        a, b = self._domain
        idx = np.searchsorted(self._knots, x, side="right") - 1
        out = np.empty_like(x)
        head = idx < 0
        if head.any():
            # below the first knot: t = a + (x - a) u^2 softens endpoint singularities
            xs = x[head]
            u = num.GL_NODES[None, :]
            d = (xs - a)[:, None]
            vals = self._h(a + d * u * u) * 2.0 * d * u
            out[head] = vals @ num.GL_WEIGHTS
        beyond = (x > self._knots[-1]) if self._truncated else np.zeros(x.shape, dtype=bool)
        out[beyond] = INF
        body = ~head & ~beyond
        if body.any():
            i = idx[body]
            out[body] = self._cum[i] + num.gauss_legendre_segments(self._h, self._knots[i], x[body])
        if math.isfinite(b):
            out = np.where(x >= b, INF, out)
        return out

    def _sf(self, x):
        return np.exp(-self._cumhaz(x))

    def _cdf(self, x):
        return -np.expm1(-self._cumhaz(x))

    def _pdf(self, x):
        s = self._sf(x)
        with np.errstate(invalid="ignore"):
            return np.where(s > 0.0, self.hazard_function(x) * s, 0.0)

    def _logpdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self.hazard_function(x)) - self._cumhaz(x)

    def _dlogpdf(self, x):
        h = self.hazard_function(x)
        dh = num.central_difference(self.hazard_function, x)
        return dh / h - h

    def _scale_hint(self):
        i = int(np.searchsorted(self._cum, math.log(2.0)))
        return float(self._knots[min(i, self._knots.size - 1)])


# ---------------------------------------------------------------------------
# operation-level functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Evaluation:
    pdf: float
    cdf: float
    survival: float
    hazard: float


def evaluate(model: DistributionModel, x: float) -> Evaluation:
    """Evaluate density, distribution, survival and hazard at one time point."""
    x = float(x)
    lo, hi = model.support
    if not (lo <= x <= hi) or math.isinf(x) or math.isnan(x):
        raise SupportError(f"x={x!r} is outside the support [{lo}, {hi}] of {model.name}")
    return Evaluation(
        pdf=float(model.pdf(x)),
        cdf=float(model.cdf(x)),
        survival=float(model.sf(x)),
        hazard=float(model.hazard(x)),
    )


def quantile(model: DistributionModel, p):
    return model.quantile(p)


def raw_moment(model: DistributionModel, k: float = 1.0) -> float:
    """``E[X^k]`` by adaptive quadrature, split at the median."""
    k = float(k)
    if not (k > 0 and math.isfinite(k)):
        raise ParameterError(f"moment order must be > 0, got {k!r}", name="k")
    tail = model.tail_index
    if tail is not None and tail <= k:
        raise InfiniteMomentError(f"E[X^{k:g}] is infinite for {model.name} (tail index {tail:g})")
    lo, hi = model.support
    med = float(model.quantile(0.5))

    def integrand(x):
        return np.asarray(x) ** k * model.pdf(x)

    try:
        left = num.integrate(integrand, lo, med, strict=False)
        right = num.integrate(integrand, med, hi, scale=max(med - lo, 1e-300), strict=True)
    except num.IntegrationError as exc:
        raise InfiniteMomentError(f"E[X^{k:g}] appears to diverge for {model.name}: {exc}") from exc
    return left + right


def default_grid(model: DistributionModel, n: int | None = None) -> np.ndarray:
    return model.grid(n)
