"""Closed-form failure rates for named lifetime distributions.

Each entry evaluates its hazard formula as printed in the source
literature. Where a printed form is ambiguous or internally inconsistent the
entry carries named *variants*: the ``"printed"`` variant is always the
default and the alternatives are documented next to the formula. Entries
without a formula only record the shape claim (``has_formula=False``).

Shape labels use the classifier vocabulary: ``Constant``, ``IFR``,
``DFR``, ``BFR``, ``UBFR``, ``MBFR`` and ``RollerCoaster(n)``; claims
outside that vocabulary (``S-shape``, ``MFR``) are kept verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .exceptions import ParameterError, SupportError, UnknownNameError

E = math.e
INF = math.inf


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple[str, ...]
    expected_shapes: frozenset[str]
    source: str
    formula: str = ""
    ranges: dict = field(default_factory=dict)
    domain: str = "(0, inf)"
    hazard_fn: object = None
    variants: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def has_formula(self) -> bool:
        return self.hazard_fn is not None

    def support(self, values: dict) -> tuple[float, float]:
        if self.domain == "(0, g]":
            return (0.0, float(values["g"]))
        if self.domain == "(0, 1)":
            return (0.0, 1.0)
        return (0.0, INF)

    def hazard(self, params, t, variant: str | None = None):
        return catalog_hazard(self.name, params, t, variant=variant)


def _positive(*names):
    return {n: (0.0, INF, "open") for n in names}


def _e_minus_exp(S):
    """``e - e^{1 - S}`` without cancellation when ``S`` is small."""
    return -E * np.expm1(-S)


def _lindley_sf(x, lam):
    return (1.0 + lam + lam * x) / (1.0 + lam) * np.exp(-lam * x)


def _one_minus_cdf_power(x, lam, a):
    """``1 - V^a`` for the Lindley cdf ``V``, accurate when ``V`` is near 1."""
    return -np.expm1(a * np.log1p(-_lindley_sf(x, lam)))


def _lindley_cdf(x, lam):
    """Lindley distribution function ``1 - (1 + lam + lam x)/(1 + lam) e^{-lam x}``."""
    return -np.expm1(np.log1p(lam * x / (1.0 + lam)) - lam * x)


# -- hazard formulas ---------------------------------------------------------
# Each takes a dict of parameters, an array of times and a variant name.

def _h_exponential_geometric(p, x, variant):
    b, q = p["beta"], p["p"]
    return b / (1.0 - q * np.exp(-b * x))


def _h_binomial_exponential_2(p, x, variant):
    lam, th = p["lambda"], p["theta"]
    return lam * (1.0 - th / (2.0 - th + lam * th * x))


def _h_rayleigh_logarithmic(p, x, variant):
    # printed with a leading minus and the support stated for y; the log term
    # is negative for 0 < p < 1 so the printed sign yields a positive rate
    s, q = p["sigma"], p["p"]
    w = np.exp(-x * x / (2.0 * s * s)) * q
    return -(x * w / (1.0 - w)) / (s * s * np.log1p(-w))


def _h_x_exponential(p, x, variant):
    a, lam = p["alpha"], p["lambda"]
    log_tail = np.log1p(lam * x * x) - lam * x
    inner = -np.expm1(log_tail)
    num = a * inner ** (a - 1.0) * (lam * x * x - 2.0 * x + 1.0) * lam * np.exp(-lam * x)
    # 1 - inner^a through log1p(-(1 + lam x^2) e^{-lam x})
    with np.errstate(invalid="ignore"):
        return num / -np.expm1(a * np.log1p(-np.exp(log_tail)))


def _h_arshad(p, x, variant):
    a, b, g = p["alpha"], p["beta"], p["g"]
    return b * (a + 1.0) / (a * g * (1.0 - x / g) * (1.0 + x / (a * g)))


def _h_nadarajah_gl(p, x, variant):
    a, lam = p["alpha"], p["lambda"]
    V = _lindley_cdf(x, lam)
    num = a * lam * lam / (1.0 + lam) * (1.0 + x) * V ** (a - 1.0) * np.exp(-lam * x)
    return num / _one_minus_cdf_power(x, lam, a)


def _h_bakouch_extended_lindley(p, x, variant):
    a, b, lam = p["alpha"], p["beta"], p["lambda"]
    d = 1.0 + lam + lam * x
    if variant == "split":
        # only the second term over (1 + lam + lam x)
        return b * d * lam ** b * x ** (b - 1.0) - lam * a / d
    return (b * d * lam ** b * x ** (b - 1.0) - lam * a) / d


def _h_ibrahim_gl(p, x, variant):
    a, b, th = p["alpha"], p["beta"], p["theta"]
    dens = (th ** (a + 1.0) * x ** (a - 1.0) / special.gamma(a) + th ** b * x ** (b - 1.0) / special.gamma(b))
    dens = dens * np.exp(-th * x) / (1.0 + th)
    # 1 - [theta P(a, theta x) + P(b, theta x)]/(1 + theta), via upper tails
    surv = (th * special.gammaincc(a, th * x) + special.gammaincc(b, th * x)) / (1.0 + th)
    return dens / surv


def _h_beta_gl(p, x, variant):
    a_, lam, a, b = p["alpha"], p["lambda"], p["a"], p["b"]
    V = _lindley_cdf(x, lam)
    q = _one_minus_cdf_power(x, lam, a_)  # 1 - V^alpha
    num = a_ * lam * lam / (special.beta(a, b) * (1.0 + lam)) * (1.0 + x) * np.exp(-lam * x)
    num = num * V ** (a * a_ - 1.0) * q ** (b - 1.0)
    # 1 - I_G(a, b) = I_{1-G}(b, a)
    return num / special.betainc(b, a, q)


def _h_five_parameter_lindley(p, x, variant):
    th, a, b, k, eta = p["theta"], p["alpha"], p["beta"], p["k"], p["eta"]
    # the capital Theta in the second density term read as theta (the reading
    # that normalises the density); "Theta" variant takes it as a free symbol
    Th = p.get("Theta", th) if variant == "Theta" else th
    dens = th * th * (k * (th * x) ** (a - 1.0) / special.gamma(a)
                      + eta * (th * x) ** (b - 1.0) / (Th * special.gamma(b))) * np.exp(-th * x)
    # eta + theta k - [theta k P(a, .) + eta P(b, .)] regrouped into upper tails
    denom = th * k * special.gammaincc(a, th * x) + eta * special.gammaincc(b, th * x)
    return dens / denom


def _h_log_gl_weibull(p, x, variant):
    th, a, c, g, b = p["theta"], p["alpha"], p["c"], p["gamma"], p["beta"]
    y = (x / g) ** c
    u = th * y
    num = c * th ** (a + 1.0) / (g * (b + th) * special.gamma(a + 1.0))
    num = num * (x / g) ** (c * a - 1.0) * (a + b * y) * np.exp(-u)
    if variant == "corrected":
        # with Gamma(a+1) - Gamma(a+1, u) the survival is a mix of upper tails
        surv = (th * special.gammaincc(a, u) + b * special.gammaincc(a + 1.0, u)) / (b + th)
        return num / surv
    lower_a = special.gamma(a) * special.gammainc(a, u)           # Gamma(a) - Gamma(a, u)
    # printed: Gamma(a) - Gamma(a + 1, u)
    lower_a1 = special.gamma(a) - special.gamma(a + 1.0) * special.gammaincc(a + 1.0, u)
    cdf = (th * lower_a + b / a * lower_a1) / ((b + th) * special.gamma(a))
    return num / (1.0 - cdf)


def _h_bhati(p, x, variant):
    a, th, lam = p["alpha"], p["theta"], p["lambda"]
    y = 1.0 + x * lam
    return a * th * th * lam * y ** (2.0 * a - 1.0) / (1.0 + th * y ** a)


def _h_transmuted_gl(p, x, variant):
    a, th, lam = p["a"], p["theta"], p["lambda"]
    inner = _lindley_cdf(x, th)
    q = _one_minus_cdf_power(x, th, a)  # 1 - W^a
    num = a * th * th / (th + 1.0) * (1.0 + x) * np.exp(-th * x) * inner ** (a - 1.0)
    # (1 + lam) - 2 lam W^a and the denominator 1 - W^a (1 + lam - lam W^a),
    # which factors as (1 - W^a)(1 - lam W^a), both written through q
    num = num * ((1.0 - lam) + 2.0 * lam * q)
    return num / (q * ((1.0 - lam) + lam * q))


def _h_weighted_lindley(p, x, variant):
    a, lam, phi = p["alpha"], p["lambda"], p["phi"]
    z = (lam * x) ** a
    num = a * lam ** (a * phi) * x ** (a * phi - 1.0) * (lam + z) * np.exp(-z)
    upper = special.gamma(phi) * special.gammaincc(phi, z)
    return num / (upper * (lam + phi) + z ** phi * np.exp(-z))


def _h_generalized_inverse_lindley(p, x, variant):
    a, th = p["alpha"], p["theta"]
    xa = x ** a
    with np.errstate(over="ignore"):
        bracket = (1.0 + th) * xa * np.expm1(th / xa) - th
        out = a * th * th * (1.0 + xa) / (x ** (a + 1.0) * bracket)
    return np.where(np.isinf(bracket), 0.0, out)


def _h_mo_extended_gl(p, x, variant):
    a, b, th = p["alpha"], p["beta"], p["theta"]
    V = _lindley_cdf(x, th)
    Va = V ** a
    num = a * th * th * np.exp(-th * x) * (1.0 + x) * V ** (a - 1.0)
    return num / ((1.0 + th) * (b + (1.0 - b) * Va) * _one_minus_cdf_power(x, th, a))


def _h_ekhosuehi_opone(p, x, variant):
    a, lam, b = p["alpha"], p["lambda"], p["beta"]
    xa = x ** a
    return a * lam * lam * (b + xa) * x ** (a - 1.0) / (1.0 + lam * b + lam * xa)


def _h_lindley_order_m(p, x, variant):
    m = int(round(p["m"]))
    th = p["theta"]
    num = np.zeros_like(x)
    for i in range(1, m + 1):
        num = num + x ** (m - i) / math.gamma(m - i + 1)
    num = th ** m * num
    den = np.zeros_like(x)
    for j in range(0, m):
        inner = sum(th ** (m - i) for i in range(1, m - j + 1))
        den = den + inner * x ** j / math.factorial(j)
    return num / den


def _h_algarni(p, x, variant):
    lam, g, d = p["lambda"], p["gamma"], p["delta"]
    # the printed formula mixes t and x; both read as the same time variable
    K = _lindley_cdf(x, lam)
    Kg = K ** g
    Kg_m1 = -_one_minus_cdf_power(x, lam, g)
    num = lam * lam * g / (lam + 1.0) * (x + 1.0) * K ** (g - 1.0) * np.exp(-lam * x)
    return num / (Kg_m1 * (d * Kg_m1 - Kg))


def _h_dus_exponential(p, x, variant):
    th = p["theta"]
    return th * np.exp(-th * x) / np.expm1(np.exp(-th * x))


def _h_dus_lindley(p, x, variant):
    th = p["theta"]
    s = (1.0 + th + th * x) / (1.0 + th)
    if variant == "corrected":
        inner = np.exp(-th * x) * s
    else:
        # printed: e^{+theta x} inside the outer exponent
        inner = np.exp(th * x) * s
    with np.errstate(over="ignore"):
        return th * th * (1.0 + x) * np.exp(-th * x) / ((th + 1.0) * np.expm1(inner))


def _h_dus_lomax(p, x, variant):
    a, b = p["alpha"], p["beta"]
    y = 1.0 + b * x
    return a * b * y ** (-(a + 1.0)) / np.expm1(y ** (-a))


def _h_gdus_weibull(p, x, variant):
    a, lam, k = p["alpha"], p["lambda"], p["k"]
    y = (x / lam) ** k
    z = np.exp(-y)
    F = -np.expm1(-y)
    Fa = F ** a
    # e - e^{F^a} written through 1 - F^a = -expm1(a log1p(-z))
    denom = _e_minus_exp(-np.expm1(a * np.log1p(-z)))
    return a * k * x ** (k - 1.0) * z * F ** (a - 1.0) * np.exp(Fa) * lam ** (-k) / denom


def _h_dus_kumaraswamy(p, x, variant):
    a, b = p["alpha"], p["beta"]
    S = (-np.expm1(a * np.log(x))) ** b
    F = 1.0 - S
    return a * b * x ** (a - 1.0) * (1.0 - x ** a) ** (b - 1.0) * np.exp(F) / _e_minus_exp(S)


def _h_dus_inverse_weibull(p, x, variant):
    a, b = p["alpha"], p["beta"]
    r = x / b
    if variant == "corrected":
        # baseline cdf exp(-(x/beta)^-alpha) in both places
        u = -(r ** (-a))
    else:
        u = -(r ** a)
    F = np.exp(u)
    return (a / b) * r ** (-(a + 1.0)) * np.exp(-(r ** (-a)) + F) / _e_minus_exp(-np.expm1(u))


def _h_dus_ew(p, x, variant):
    a, lam = p["alpha"], p["lambda"]
    num = lam * lam * np.exp(-lam * x) + a * lam ** a * x ** (a - 1.0) * np.exp(-((lam * x) ** a))
    V = (lam * np.exp(-lam * x) + np.exp(-((lam * x) ** a))) / (1.0 + lam)
    return num * np.exp(1.0 - V) / (_e_minus_exp(V) * (1.0 + lam))


_UNIT = (0.0, 1.0, "open")

_ENTRIES = [
    CatalogEntry(
        "exponential-geometric", ("beta", "p"), frozenset({"DFR"}),
        "Adamidis and Loukas (1998)",
        r"h(x) = \beta (1 - p e^{-\beta x})^{-1}",
        {"beta": (0.0, INF, "open"), "p": _UNIT}, hazard_fn=_h_exponential_geometric,
    ),
    CatalogEntry(
        "binomial-exponential-2", ("lambda", "theta"), frozenset({"IFR"}),
        "Bakouch et al. (2014)",
        r"h(x) = \lambda (1 - \theta / (2 - \theta + \lambda\theta x))",
        {"lambda": (0.0, INF, "open"), "theta": (0.0, 1.0, "closed")}, hazard_fn=_h_binomial_exponential_2,
    ),
    CatalogEntry(
        "rayleigh-logarithmic", ("sigma", "p"), frozenset({"IFR"}),
        "Bugatekin (2017)",
        r"h(x) = - x e^{-x^2/2\sigma^2} p (1 - e^{-x^2/2\sigma^2} p)^{-1} / (\sigma^2 \ln(1 - e^{-x^2/2\sigma^2} p))",
        {"sigma": (0.0, INF, "open"), "p": _UNIT}, hazard_fn=_h_rayleigh_logarithmic,
        notes=("printed with a leading minus sign and the support stated for y; evaluated as printed with y read as x",),
    ),
    CatalogEntry(
        "x-exponential", ("alpha", "lambda"), frozenset({"BFR"}),
        "Chacko (2016)",
        r"h(x) = \alpha (1-(1+\lambda x^2)e^{-\lambda x})^{\alpha-1} [\lambda x^2 - 2x + 1] \lambda e^{-\lambda x}"
        r" / (1 - (1-(1+\lambda x^2)e^{-\lambda x})^\alpha)",
        _positive("alpha", "lambda"), hazard_fn=_h_x_exponential,
        notes=("the bracket lambda x^2 - 2x + 1 is negative for some x when lambda < 1",),
    ),
    CatalogEntry(
        "arshad-bathtub", ("alpha", "beta", "g"), frozenset({"BFR"}),
        "Arshad et al. (2021)",
        r"h(x) = \beta(\alpha+1) / (\alpha g (1 - x/g)(1 + x/(\alpha g))),\ 0 < x \le g",
        _positive("alpha", "beta", "g"), domain="(0, g]", hazard_fn=_h_arshad,
    ),
    CatalogEntry(
        "nadarajah-gl", ("alpha", "lambda"), frozenset({"IFR", "DFR", "BFR"}),
        "Nadarajah et al. (2011)",
        r"h(x) = \alpha\lambda^2/(1+\lambda) (1+x) V^{\alpha-1} e^{-\lambda x} / (1 - V^\alpha),"
        r"\ V = 1 - (1+\lambda+\lambda x)/(1+\lambda) e^{-\lambda x}",
        _positive("alpha", "lambda"), hazard_fn=_h_nadarajah_gl,
        notes=("DFR and BFR for alpha < 1, IFR for alpha >= 1",),
    ),
    CatalogEntry(
        "bakouch-extended-lindley", ("alpha", "beta", "lambda"), frozenset({"IFR", "DFR", "BFR", "UBFR"}),
        "Bakouch et al. (2012)",
        r"h(x) = (\beta(1+\lambda+\lambda x)\lambda^\beta x^{\beta-1} - \lambda\alpha) / (1+\lambda+\lambda x)",
        _positive("alpha", "beta", "lambda"), hazard_fn=_h_bakouch_extended_lindley,
        variants={"printed": "whole numerator over (1 + lambda + lambda x)",
                  "split": "only lambda*alpha over (1 + lambda + lambda x)"},
        notes=("with alpha > 0 and beta > 1 the rate is negative near the origin",),
    ),
    CatalogEntry(
        "ibrahim-gl", ("alpha", "beta", "theta"), frozenset({"IFR", "DFR", "BFR", "UBFR", "MBFR"}),
        "Ibrahim et al. (2013)",
        r"h(x) = \frac{1}{1+\theta}[\theta^{\alpha+1}x^{\alpha-1}/\Gamma(\alpha) + \theta^\beta x^{\beta-1}/\Gamma(\beta)]e^{-\theta x}"
        r" / (1 - \frac{1}{1+\theta}[\theta\gamma(\alpha,\theta x)/\Gamma(\alpha) + \gamma(\beta,\theta x)/\Gamma(\beta)])",
        _positive("alpha", "beta", "theta"), hazard_fn=_h_ibrahim_gl,
        notes=("described as a mixture of Gamma(beta, theta) and Gamma(beta, theta); the formula uses alpha "
               "for the first component and is implemented as printed",),
    ),
    CatalogEntry(
        "beta-gl", ("alpha", "lambda", "a", "b"), frozenset({"IFR", "DFR", "BFR"}),
        "Oluyede and Yang (2015)",
        r"h(x) = \alpha\lambda^2/(B(a,b)(1+\lambda)) (1+x) e^{-\lambda x} V^{a\alpha-1} (1-V^\alpha)^{b-1}"
        r" / (1 - I_{V^\alpha}(a, b))",
        _positive("alpha", "lambda", "a", "b"), hazard_fn=_h_beta_gl,
    ),
    CatalogEntry(
        "five-parameter-lindley", ("theta", "alpha", "beta", "k", "eta"),
        frozenset({"Constant", "IFR", "DFR", "BFR"}),
        "Al-Babtain et al. (2015)",
        r"h(x) = \theta^2 [k(\theta x)^{\alpha-1}/\Gamma(\alpha) + \eta(\theta x)^{\beta-1}/(\Theta\Gamma(\beta))] e^{-\theta x}"
        r" / (\eta + \theta k - [\theta k \gamma_\alpha(\theta x) + \eta\gamma_\beta(\theta x)])",
        {"theta": (0.0, INF, "open"), "alpha": (0.0, INF, "open"), "beta": (0.0, INF, "open"),
         "k": (0.0, INF, "closed"), "eta": (0.0, INF, "closed")},
        hazard_fn=_h_five_parameter_lindley,
        variants={"printed": "capital Theta read as theta (normalises the density)",
                  "Theta": "capital Theta as a separate positive parameter 'Theta'"},
    ),
    CatalogEntry(
        "log-gl-weibull", ("theta", "alpha", "c", "gamma", "beta"), frozenset({"IFR", "DFR", "BFR"}),
        "Oluyede et al. (2015)",
        r"h(x) = \frac{c\theta^{\alpha+1}}{\gamma(\beta+\theta)\Gamma(\alpha+1)} (x/\gamma)^{c\alpha-1}"
        r"\{\alpha + \beta(x/\gamma)^c\} e^{-\theta(x/\gamma)^c} / (1 - \frac{1}{(\beta+\theta)\Gamma(\alpha)}"
        r"\{\theta[\Gamma(\alpha)-\Gamma(\alpha,u)] + \frac{\beta}{\alpha}[\Gamma(\alpha)-\Gamma(\alpha+1,u)]\})",
        _positive("theta", "alpha", "c", "gamma", "beta"), hazard_fn=_h_log_gl_weibull,
        variants={"printed": "second bracket Gamma(alpha) - Gamma(alpha+1, u), as printed",
                  "corrected": "second bracket Gamma(alpha+1) - Gamma(alpha+1, u) (survival equals 1 at 0)"},
        notes=("u is not defined in the print; read as u = theta (x/gamma)^c",),
    ),
    CatalogEntry(
        "bhati-gl", ("alpha", "theta", "lambda"), frozenset({"DFR", "UBFR", "IFR"}),
        "Bhati et al. (2016)",
        r"h(x) = \alpha\theta^2\lambda(1+x\lambda)^{2\alpha-1} / (1 + \theta(1+x\lambda)^\alpha)",
        _positive("alpha", "theta", "lambda"), hazard_fn=_h_bhati,
        notes=("the printed regime list repeats one condition for the decreasing and upside-down cases; "
               "the regime map is determined numerically",),
    ),
    CatalogEntry(
        "elgarhy-transmuted-gl", ("a", "theta", "lambda"), frozenset({"IFR"}),
        "Elgarhy and Shawki (2016)",
        r"h(x) = \frac{a\theta^2}{\theta+1}(1+x)e^{-\theta x} W^{a-1} \{(1+\lambda) - 2\lambda W^a\}"
        r" / (1 - W^a\{1+\lambda-\lambda W^a\}),\ W = 1 - e^{-\theta x}(1 + \theta x/(\theta+1))",
        {"a": (0.0, INF, "open"), "theta": (0.0, INF, "open"), "lambda": (-1.0, 1.0, "closed")},
        hazard_fn=_h_transmuted_gl,
        notes=("the printed range 'theta > -1' is read as the transmutation range |lambda| <= 1",),
    ),
    CatalogEntry(
        "weighted-lindley", ("alpha", "lambda", "phi"),
        frozenset({"IFR", "DFR", "BFR", "UBFR", "RollerCoaster(2)"}),
        "Ramos and Louzada (2016)",
        r"h(x) = \alpha\lambda^{\alpha\phi}x^{\alpha\phi-1}(\lambda+(\lambda x)^\alpha)e^{-(\lambda x)^\alpha}"
        r" / (\Gamma[\phi,(\lambda x)^\alpha](\lambda+\phi) + (\lambda x)^{\alpha\phi}e^{-(\lambda x)^\alpha})",
        _positive("alpha", "lambda", "phi"), hazard_fn=_h_weighted_lindley,
    ),
    CatalogEntry(
        "generalized-inverse-lindley", ("alpha", "theta"), frozenset({"UBFR"}),
        "Sharma et al. (2016)",
        r"h(x) = \alpha\theta^2(1+x^\alpha) / (x^{\alpha+1}[(1+\theta)x^\alpha(e^{\theta/x^\alpha}-1) - \theta])",
        _positive("alpha", "theta"), hazard_fn=_h_generalized_inverse_lindley,
    ),
    CatalogEntry(
        "mo-extended-gl", ("alpha", "beta", "theta"), frozenset({"IFR", "DFR", "UBFR", "BFR", "MBFR"}),
        "Benkhelifa (2017)",
        r"h(x) = \alpha\theta^2 e^{-\theta x}(1+x)V^{\alpha-1} / ((1+\theta)[\beta + \bar\beta V^\alpha][1 - V^\alpha])",
        _positive("alpha", "beta", "theta"), hazard_fn=_h_mo_extended_gl,
        notes=("bar beta read as 1 - beta",),
    ),
    CatalogEntry(
        "ekhosuehi-opone-gl", ("alpha", "lambda", "beta"), frozenset({"DFR", "IFR"}),
        "Ekhosuehi and Opone (2018)",
        r"h(x) = \alpha\lambda^2(\beta + x^\alpha)x^{\alpha-1} / (1 + \lambda\beta + \lambda x^\alpha)",
        _positive("alpha", "lambda", "beta"), hazard_fn=_h_ekhosuehi_opone,
        notes=("DFR for alpha < 1 and IFR for alpha >= 1",),
    ),
    CatalogEntry(
        "generalized-lindley-order-m", ("m", "theta"), frozenset({"IFR"}),
        "Abouammoh and Kayid (2020)",
        r"h(x) = \theta^m \sum_{i=1}^m x^{m-i}/\Gamma(m-i+1) / \sum_{j=0}^{m-1}\sum_{i=1}^{m-j}\theta^{m-i}x^j/j!",
        {"m": (1.0, INF, "integer"), "theta": (0.0, INF, "open")}, hazard_fn=_h_lindley_order_m,
    ),
    CatalogEntry(
        "algarni-mo-gl", ("lambda", "gamma", "delta"), frozenset({"IFR", "DFR", "BFR"}),
        "Algarni (2021)",
        r"h(x) = \frac{\lambda^2\gamma}{\lambda+1} (x+1)K^{\gamma-1}e^{-\lambda t} / ((K^\gamma-1)(\delta(K^\gamma-1)-K^\gamma)),"
        r"\ K = 1 - (\lambda+\lambda t+1)e^{-\lambda t}/(\lambda+1)",
        _positive("lambda", "gamma", "delta"), hazard_fn=_h_algarni,
        notes=("t and x are mixed in the print; both read as the time variable",),
    ),
    CatalogEntry(
        "dus-exponential", ("theta",), frozenset({"IFR"}),
        "Kumar et al. (2015)",
        r"h(x) = \theta e^{-\theta x}[e^{e^{-\theta x}} - 1]^{-1}",
        _positive("theta"), hazard_fn=_h_dus_exponential,
    ),
    CatalogEntry(
        "dus-lindley", ("theta",), frozenset(),
        "Maurya et al. (2017)",
        r"h(x) = \theta^2(1+x)e^{-\theta x} / ((\theta+1)(\exp[e^{\theta x}(1+\theta+\theta x)/(1+\theta)] - 1))",
        _positive("theta"), hazard_fn=_h_dus_lindley,
        variants={"printed": "e^{+theta x} inside the outer exponent, as printed",
                  "corrected": "e^{-theta x}, the DUS transform of the Lindley law"},
        notes=("the shape claim is truncated in the source text",),
    ),
    CatalogEntry(
        "dus-lomax", ("alpha", "beta"), frozenset({"DFR", "UBFR"}),
        "Deepthi and Chacko (2020)",
        r"h(x) = \alpha\beta(1+\beta x)^{-(\alpha+1)}[e^{(1+\beta x)^{-\alpha}} - 1]^{-1}",
        _positive("alpha", "beta"), hazard_fn=_h_dus_lomax,
    ),
    CatalogEntry(
        "gdus-weibull", ("alpha", "lambda", "k"), frozenset({"IFR", "DFR", "UBFR"}),
        "Kavya and Manoharan (2020)",
        r"h(x) = \alpha k x^{k-1} e^{-(x/\lambda)^k}(1-e^{-(x/\lambda)^k})^{\alpha-1} e^{(1-e^{-(x/\lambda)^k})^\alpha}"
        r"\lambda^{-k}(e - e^{(1-e^{-(x/\lambda)^k})^\alpha})^{-1}",
        _positive("alpha", "lambda", "k"), hazard_fn=_h_gdus_weibull,
    ),
    CatalogEntry(
        "dus-kumaraswamy", ("alpha", "beta"), frozenset({"IFR", "BFR"}),
        "Karakaya et al. (2021)",
        r"h(x) = \alpha\beta x^{\alpha-1}(1-x^\alpha)^{\beta-1}e^{1-(1-x^\alpha)^\beta} / (e - e^{1-(1-x^\alpha)^\beta})",
        _positive("alpha", "beta"), domain="(0, 1)", hazard_fn=_h_dus_kumaraswamy,
    ),
    CatalogEntry(
        "dus-inverse-weibull", ("alpha", "beta"), frozenset({"DFR", "UBFR"}),
        "Gauthami and Chacko (2021)",
        r"h(x) = (e - e^{e^{-(x/\beta)^\alpha}})^{-1}(\alpha/\beta)(x/\beta)^{-(\alpha+1)}"
        r"e^{-(x/\beta)^{-\alpha} + e^{-(x/\beta)^\alpha}}",
        _positive("alpha", "beta"), hazard_fn=_h_dus_inverse_weibull,
        variants={"printed": "e^{-(x/beta)^alpha} in the two cdf positions, as printed",
                  "corrected": "e^{-(x/beta)^-alpha}, the inverse Weibull cdf, in both positions"},
    ),
    CatalogEntry(
        "dus-ew", ("alpha", "lambda"), frozenset({"IFR", "DFR", "UBFR"}),
        "Anakha and Chacko (DUS exponential-Weibull)",
        r"h(x) = (\lambda^2e^{-\lambda x} + \alpha\lambda^\alpha x^{\alpha-1}e^{-(\lambda x)^\alpha}) e^{1-V}"
        r" / ((e - e^{1-V})(1+\lambda)),\ V = (\lambda e^{-\lambda x} + e^{-(\lambda x)^\alpha})/(1+\lambda)",
        _positive("alpha", "lambda"), hazard_fn=_h_dus_ew,
    ),
]

# shape claims listed without a formula
_NO_FORMULA = [
    ("generalized-exponential-geometric", {"IFR", "DFR", "UBFR"}, "Silva et al. (2010)"),
    ("exponential-geometric-range", {"IFR"}, "Shahsanaei et al. (2012)"),
    ("exponential-poisson-lindley", {"DFR"}, "Barreto-Souza and Bakouch (2013)"),
    ("nadarajah-haghighi", {"Constant", "IFR", "DFR", "BFR", "UBFR"}, "Lemonte (2013)"),
    ("kumaraswamy-generalized-rayleigh", {"IFR", "DFR", "BFR"}, "Gomes et al. (2014)"),
    ("exponentiated-exponential-geometric", {"IFR", "DFR", "UBFR"}, "Louzada et al. (2014)"),
    ("marshall-olkin-generalized-exponential", {"IFR", "DFR", "BFR", "UBFR"}, "Ristic and Kundu (2015)"),
    ("extended-inverse-lindley", {"UBFR"}, "Alkarni (2015)"),
    ("modified-weibull-geometric", {"IFR", "DFR", "BFR", "UBFR"}, "Wang and Elbatal (2015)"),
    ("generalized-bilal", {"IFR", "DFR", "UBFR"}, "Abd-Elrahman (2017)"),
    ("alpha-power-transformed-weibull", {"Constant", "IFR", "DFR", "BFR", "UBFR", "MFR"}, "Dey (2017)"),
    ("generalized-inverse-xgamma", {"IFR", "DFR", "UBFR"}, "Tripathi et al. (2018)"),
    ("generalized-weibull-uniform", {"IFR", "DFR", "BFR"}, "Khaleel et al. (2019)"),
    ("generalized-x-exponential", {"IFR", "DFR", "BFR"}, "Chacko and Deepthi (2019)"),
    ("marshall-olkin-logistic-exponential", {"IFR", "DFR", "BFR", "UBFR"}, "Mansoor et al. (2019)"),
    ("burr-hatke-exponential", {"DFR"}, "Yadav et al. (2019)"),
    ("odd-lindley-inverse-exponential", {"DFR"}, "Ieren and Abdullahi (2020)"),
    ("maurya-generalized-lindley", {"IFR", "DFR", "BFR"}, "Maurya et al. (2020)"),
    ("inverted-power-rama", {"DFR", "UBFR"}, "Onyekwere et al. (2020)"),
    ("generalized-log-weibull", {"IFR", "DFR", "BFR", "UBFR", "S-shape"}, "Kumar and Nair (2021)"),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}
for _name, _shapes, _src in _NO_FORMULA:
    CATALOG[_name] = CatalogEntry(_name, (), frozenset(_shapes), _src)


def get_entry(name: str) -> CatalogEntry:
    key = str(name).strip().lower().replace("_", "-")
    try:
        return CATALOG[key]
    except KeyError:
        raise UnknownNameError(f"unknown catalog entry {name!r}") from None


def catalog_names(with_formula: bool | None = None) -> list[str]:
    names = sorted(CATALOG)
    if with_formula is None:
        return names
    return [n for n in names if CATALOG[n].has_formula == with_formula]


def _bind(entry: CatalogEntry, params, variant) -> dict:
    names = entry.params + (("Theta",) if variant == "Theta" else ())
    if isinstance(params, dict):
        unknown = [k for k in params if k not in names]
        if unknown:
            raise ParameterError(f"{entry.name} has no parameter {unknown[0]!r}; expected {names}", name=unknown[0])
        missing = [n for n in names if n not in params]
        if missing:
            raise ParameterError(f"{entry.name}: missing parameter {missing[0]!r}", name=missing[0])
        values = {n: float(params[n]) for n in names}
    else:
        seq = list(np.atleast_1d(np.asarray(params, dtype=float)))
        if len(seq) != len(names):
            raise ParameterError(f"{entry.name} takes {len(names)} parameters {names}, got {len(seq)}")
        values = dict(zip(names, map(float, seq)))
    for n, v in values.items():
        lo, hi, kind = entry.ranges.get(n, (0.0, INF, "open"))
        if n == "Theta":
            lo, hi, kind = 0.0, INF, "open"
        ok = math.isfinite(v) and (lo <= v <= hi if kind == "closed" else lo < v < hi)
        if kind == "integer":
            ok = math.isfinite(v) and v >= lo and float(v).is_integer()
        if not ok:
            raise ParameterError(f"{entry.name}: parameter {n!r}={v!r} outside its range", name=n)
    return values


def catalog_hazard(name: str, params, t, variant: str | None = None):
    """Evaluate the failure rate of catalog entry ``name`` at ``t``."""
    entry = get_entry(name)
    if not entry.has_formula:
        raise UnknownNameError(f"catalog entry {entry.name!r} has no failure-rate formula")
    if variant is not None and variant != "printed" and variant not in entry.variants:
        raise UnknownNameError(f"{entry.name} has no variant {variant!r}; known: {sorted(entry.variants) or ['printed']}")
    values = _bind(entry, params, variant)
    arr = np.asarray(t, dtype=float)
    flat = arr.reshape(-1)
    lo, hi = entry.support(values)
    outside = (flat <= lo) | (flat > hi) | ~np.isfinite(flat)
    if entry.domain == "(0, 1)":
        outside |= flat >= hi
    if outside.any():
        bad = flat[outside][0]
        raise SupportError(f"t={bad!r} outside the domain {entry.domain} of {entry.name}")
    with np.errstate(all="ignore"):
        out = np.asarray(entry.hazard_fn(values, flat, variant or "printed"), dtype=float)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def expected_shapes(name: str) -> frozenset[str]:
    """Failure-rate shapes the literature claims for ``name``."""
    return get_entry(name).expected_shapes


def catalog_reference(name: str) -> dict:
    """Machine-readable reference record for one entry."""
    e = get_entry(name)
    ranges = {}
    for n in e.params:
        lo, hi, kind = e.ranges.get(n, (0.0, INF, "open"))
        ranges[n] = {"lower": lo, "upper": None if math.isinf(hi) else hi, "kind": kind}
    return {
        "name": e.name,
        "has_formula": e.has_formula,
        "flags": [] if e.has_formula else ["no-formula"],
        "params": list(e.params),
        "ranges": ranges,
        "domain": e.domain if e.has_formula else None,
        "formula": e.formula or None,
        "variants": dict(e.variants) or {"printed": "as printed"} if e.has_formula else {},
        "expected_shapes": sorted(e.expected_shapes),
        "source": e.source,
        "notes": list(e.notes),
    }


def write_reference_docs(directory) -> list:
    """Write one markdown page per catalog entry plus an index; returns the paths."""
    from pathlib import Path

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    index = ["# Failure-rate catalog", ""]
    for name in catalog_names():
        ref = catalog_reference(name)
        lines = [f"# {name}", "", f"Source: {ref['source']}", ""]
        if ref["has_formula"]:
            lines += ["```", ref["formula"], "```", "", f"Domain: `{ref['domain']}`", "", "Parameters:", ""]
            for p, r in ref["ranges"].items():
                upper = "inf" if r["upper"] is None else r["upper"]
                lines.append(f"- `{p}`: {r['kind']} range [{r['lower']}, {upper}]")
            lines += ["", "Variants:", ""]
            lines += [f"- `{k}`: {v}" for k, v in ref["variants"].items()]
        else:
            lines += ["No failure-rate formula; shape claim only (flag `no-formula`)."]
        shapes = ", ".join(ref["expected_shapes"]) or "(none recorded)"
        lines += ["", f"Claimed shapes: {shapes}", ""]
        if ref["notes"]:
            lines += ["Notes:", ""] + [f"- {n}" for n in ref["notes"]] + [""]
        path = out / f"{name}.md"
        path.write_text("\n".join(lines), encoding="utf-8")
        written.append(path)
        index.append(f"- [{name}]({name}.md): {shapes}")
    (out / "index.md").write_text("\n".join(index) + "\n", encoding="utf-8")
    written.append(out / "index.md")
    return written


def catalog_model(name: str, params, variant: str | None = None):
    """Wrap a catalog failure rate in a hazard-defined lifetime law."""
    from .distributions import HazardDefinedModel

    entry = get_entry(name)
    values = _bind(entry, params, variant)
    lo, hi = entry.support(values)

    def h(t):
        return catalog_hazard(entry.name, values, t, variant=variant)

    label = entry.name + "(" + ",".join(f"{k}={v:g}" for k, v in values.items()) + ")"
    return HazardDefinedModel(h, domain=(lo, hi), label=label)


@dataclass(frozen=True)
class AuditResult:
    name: str
    ok: bool
    min_value: float
    worst_params: dict
    worst_t: float
    undefined: int = 0
    note: str = ""


def _draw(entry, rng):
    values = {}
    for n in entry.params:
        lo, hi, kind = entry.ranges.get(n, (0.0, INF, "open"))
        if kind == "integer":
            values[n] = float(rng.integers(int(lo), int(lo) + 4))
        elif math.isinf(hi):
            values[n] = float(np.exp(rng.uniform(np.log(0.2), np.log(5.0))))
            if lo > 0:
                values[n] += lo
        else:
            pad = 0.05 * (hi - lo) if kind == "open" else 0.0
            values[n] = float(rng.uniform(lo + pad, hi - pad))
    return values


def audit_nonnegativity(name: str, draws: int = 5, seed: int = 0, n_grid: int = 200,
                        variant: str | None = None, tol: float = 1e-12) -> AuditResult:
    """Evaluate a catalog rate on a grid for random in-range parameters.

    Time grid: geometric on ``[1e-3, 50]`` for unbounded domains, linear
    strictly inside bounded ones. An entry fails when any finite value is
    below ``-tol``. NaN values (typically 0/0 once both numerator and
    denominator underflow in the tail) are counted in ``undefined`` and do
    not fail the audit on their own.
    """
    entry = get_entry(name)
    if not entry.has_formula:
        raise UnknownNameError(f"catalog entry {entry.name!r} has no failure-rate formula")
    rng = np.random.Generator(np.random.Philox(seed))
    worst = (INF, {}, float("nan"))
    undefined = 0
    for _ in range(int(draws)):
        values = _draw(entry, rng)
        lo, hi = entry.support(values)
        if math.isinf(hi):
            t = np.geomspace(1e-3, 50.0, n_grid)
        else:
            t = lo + (hi - lo) * np.linspace(1e-3, 1 - 1e-3, n_grid)
        h = np.asarray(catalog_hazard(entry.name, values, t, variant=variant))
        bad = np.isnan(h)
        undefined += int(bad.sum())
        h = np.where(bad, INF, h)
        i = int(np.argmin(h))
        if h[i] < worst[0]:
            worst = (float(h[i]), values, float(t[i]))
    ok = worst[0] >= -tol
    note = "" if ok else "negative failure rate under the printed form; kept as printed"
    return AuditResult(entry.name, ok, worst[0], worst[1], worst[2], undefined, note)
