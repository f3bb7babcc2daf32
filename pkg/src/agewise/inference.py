"""Seedable sampling and maximum-likelihood fitting.

Random numbers come from ``numpy.random.Generator(numpy.random.Philox(seed))``
(64-bit output, period 2**256). Replications derive independent child seeds
with :func:`spawn_seeds`, which uses ``numpy.random.SeedSequence.spawn``.
"""

from __future__ import annotations

import json
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .distributions import BASELINES, DistributionModel, canonical_family, make_baseline
from .exceptions import ConvergenceError, ParameterError, SupportError, UnknownNameError
from .transforms import DUSExpWeibull, DUSModel, GDUSModel

GENERATOR = "numpy.random.Philox"
_TWO53 = float(2 ** 53)
EULER_GAMMA = 0.5772156649015329


def make_rng(seed) -> np.random.Generator:
    """Philox-backed generator; ``seed`` may be an int or a ``SeedSequence``."""
    return np.random.Generator(np.random.Philox(seed))


def spawn_seeds(seed: int, n: int) -> list[np.random.SeedSequence]:
    """Independent child seeds for ``n`` replications of a seeded run."""
    return np.random.SeedSequence(seed).spawn(n)


def uniforms(n: int, seed) -> np.ndarray:
    """``n`` uniforms strictly inside (0, 1): ``(k + 1/2) / 2**53`` with ``k`` a 53-bit integer."""
    rng = make_rng(seed)
    k = rng.integers(0, 2 ** 53, size=int(n), dtype=np.int64)
    return (k.astype(float) + 0.5) / _TWO53


def sample(model: DistributionModel, n: int, seed=0) -> np.ndarray:
    """Inverse-transform draws ``quantile(U)``; bit-exact for a given seed."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.asarray(model.quantile(uniforms(n, seed)), dtype=float).reshape(n)


# -- families ------------------------------------------------------------------

def family_param_names(family: str) -> tuple[str, ...]:
    """Parameter names, in order, of a fittable family name."""
    kind, base = _split_family(family)
    if kind == "dus-ew":
        return DUSExpWeibull.param_names
    names = BASELINES[base].param_names
    if kind == "gdus":
        return ("gdus_alpha",) + names
    return names


def _split_family(family: str):
    key = str(family).strip().lower().replace("_", "-")
    if key in ("dus-ew", "dus-exp-weibull", "dusew"):
        return "dus-ew", None
    for prefix in ("dus-", "gdus-"):
        if key.startswith(prefix):
            return prefix[:-1], canonical_family(key[len(prefix):])
    try:
        return "base", canonical_family(key)
    except UnknownNameError:
        raise UnknownNameError(
            f"unknown family {family!r}; use a baseline {sorted(BASELINES)}, 'dus-<baseline>', "
            f"'gdus-<baseline>' or 'dus-ew'"
        ) from None


def build_model(family: str, params) -> DistributionModel:
    """Model for a fittable family from a parameter vector or mapping."""
    kind, base = _split_family(family)
    names = family_param_names(family)
    if isinstance(params, Mapping):
        missing = [k for k in names if k not in params]
        if missing:
            raise ParameterError(f"{family}: missing parameter {missing[0]!r}", name=missing[0])
        extra = [k for k in params if k not in names]
        if extra:
            raise ParameterError(f"{family}: unknown parameter {extra[0]!r}; expected {list(names)}", name=extra[0])
        values = [float(params[k]) for k in names]
    else:
        values = [float(v) for v in np.atleast_1d(np.asarray(params, dtype=float))]
        if len(values) != len(names):
            raise ParameterError(f"{family}: expected {len(names)} parameters {list(names)}, got {len(values)}")
    if kind == "dus-ew":
        return DUSExpWeibull(*values)
    if kind == "base":
        return make_baseline(base, values)
    if kind == "dus":
        return DUSModel(make_baseline(base, values))
    return GDUSModel(make_baseline(base, values[1:]), values[0])


# -- likelihood ---------------------------------------------------------------

def _check_data(model, data):
    x = np.asarray(data, dtype=float).reshape(-1)
    if x.size == 0:
        raise ValueError("data is empty")
    lo, hi = model.support
    bad = np.flatnonzero(~((x > lo) & (x < hi)))
    if bad.size:
        i = int(bad[0])
        raise SupportError(f"datum {float(x[i])!r} at index {i} is outside the open support ({lo}, {hi})", index=i)
    return x


def loglik(family, params, data) -> float:
    """``sum(log pdf(x_i))``; ``-inf`` when a point has zero density.

    ``family`` may also be a ready :class:`DistributionModel` (``params`` is
    then ignored and may be ``None``).
    """
    model = family if isinstance(family, DistributionModel) else build_model(family, params)
    x = _check_data(model, data)
    lp = model.logpdf(x)
    if np.any(np.isnan(lp)):
        i = int(np.flatnonzero(np.isnan(lp))[0])
        raise SupportError(f"log density undefined at index {i} (x = {float(x[i])!r})", index=i)
    return float(np.sum(lp))


# -- fitting ------------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    family: str
    params: dict
    loglik: float
    iterations: int
    converged: bool
    n: int
    stderr_proxy: dict | None = None
    init: dict = field(default_factory=dict)
    message: str = ""

    @property
    def values(self) -> np.ndarray:
        return np.array(list(self.params.values()))

    def model(self) -> DistributionModel:
        return build_model(self.family, self.params)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "loglik": self.loglik,
            "iterations": self.iterations,
            "converged": self.converged,
            "n": self.n,
            "stderr_proxy": self.stderr_proxy,
            "init": self.init,
            "message": self.message,
            "generator": GENERATOR,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def moment_init(family: str, data) -> np.ndarray:
    """Starting values: moment matching where a closed form exists, else ones."""
    kind, base = _split_family(family)
    names = family_param_names(family)
    x = np.asarray(data, dtype=float)
    init = np.ones(len(names))
    if kind != "base":
        return init
    m, v = float(x.mean()), float(x.var())
    if base == "exponential":
        init[0] = 1.0 / m
    elif base == "weibull":
        # log X is Gumbel-min with sd pi / (k sqrt 6) and mean log(lambda) - gamma/k
        lx = np.log(x)
        k = math.pi / (max(float(lx.std()), 1e-12) * math.sqrt(6.0))
        init[:] = (math.exp(float(lx.mean()) + EULER_GAMMA / k), k)
    elif base == "gamma" and v > 0:
        init[:] = (m * m / v, m / v)
    elif base == "lindley":
        # mean (theta + 2) / (theta (theta + 1))
        init[0] = (-(m - 1.0) + math.sqrt((m - 1.0) ** 2 + 8.0 * m)) / (2.0 * m)
    return init


def _objective(family, x):
    n = x.size

    def neg(z):
        try:
            model = build_model(family, np.exp(z))
        except ParameterError:
            return np.inf
        with np.errstate(all="ignore"):
            lp = model.logpdf(x)
        val = -float(np.sum(lp)) / n
        return val if math.isfinite(val) else np.inf

    return neg


def _stationary(f, z, h=1e-4, gtol=1e-7):
    """True when ``z`` is a strict local minimum to finite-difference accuracy."""
    d = z.size
    f0 = f(z)
    if not math.isfinite(f0):
        return False
    g = np.empty(d)
    curv = np.empty(d)
    for i in range(d):
        e = np.zeros(d)
        e[i] = h
        fp, fm = f(z + e), f(z - e)
        g[i] = (fp - fm) / (2 * h)
        curv[i] = (fp - 2 * f0 + fm) / (h * h)
    return bool(np.all(np.abs(g) < gtol) and np.all(curv > 0))


def _stderr(family, params, x):
    """Inverse square root of the diagonal curvature of ``-loglik`` in natural units."""
    f = lambda p: -loglik(family, p, x)
    out = {}
    names = family_param_names(family)
    f0 = f(params)
    for i, name in enumerate(names):
        h = 1e-4 * max(abs(params[i]), 1e-8)
        e = np.zeros(len(params))
        e[i] = h
        try:
            c = (f(params + e) - 2 * f0 + f(params - e)) / (h * h)
        except (ParameterError, SupportError):
            c = np.nan
        out[name] = float(1.0 / math.sqrt(c)) if c > 0 and math.isfinite(c) else None
    return out


def fit_mle(family: str, data, init=None, seed: int = 0, restarts: int = 3,
            xatol: float = 1e-8, maxiter: int = 20000) -> FitResult:
    """Maximum-likelihood fit over log-parameters with Nelder-Mead.

    The simplex starts at ``init`` (moment matching by default) and at
    ``restarts`` random perturbations of it drawn from a Philox stream seeded
    by ``seed``; the best run is polished once more from its optimum.
    Convergence means the final simplex diameter fell below ``xatol`` in
    log-parameter space. A non-converged fit is returned with
    ``converged=False`` rather than raised.
    """
    x = np.asarray(data, dtype=float).reshape(-1)
    names = family_param_names(family)
    if x.size < 5 * len(names):
        raise ValueError(f"need at least {5 * len(names)} observations for {len(names)} parameters, got {x.size}")
    model0 = build_model(family, np.ones(len(names)))
    _check_data(model0, x)
    p0 = moment_init(family, x) if init is None else np.asarray(
        [init[k] for k in names] if isinstance(init, Mapping) else init, dtype=float)
    if p0.size != len(names) or np.any(~(p0 > 0)) or np.any(~np.isfinite(p0)):
        raise ParameterError(f"{family}: init must be {len(names)} positive finite values, got {p0.tolist()}")
    f = _objective(family, x)
    z0 = np.log(p0)
    if not math.isfinite(f(z0)):
        z0 = np.zeros(len(names))
    f_init = f(z0)
    init_dict = dict(zip(names, np.exp(z0).tolist()))

    if _stationary(f, z0):
        params = np.exp(z0)
        return FitResult(family, dict(zip(names, params.tolist())), -f_init * x.size, 0, True, x.size,
                         _stderr(family, params, x), init_dict, "initial point is stationary")

    rng = make_rng(seed)
    starts = [z0] + [z0 + rng.normal(0.0, 0.5, size=z0.size) for _ in range(int(restarts))]
    opts = {"xatol": xatol, "fatol": 1e-14, "maxiter": maxiter, "maxfev": 4 * maxiter, "adaptive": z0.size > 2}
    best = None
    iterations = 0
    for s in starts:
        res = optimize.minimize(f, s, method="Nelder-Mead", options=opts)
        iterations += int(res.nit)
        if best is None or res.fun < best.fun:
            best = res
    # polish from the best point with a fresh simplex
    res = optimize.minimize(f, best.x, method="Nelder-Mead", options=opts)
    iterations += int(res.nit)
    if res.fun <= best.fun:
        best = res
    z = best.x if best.fun <= f_init else z0
    converged = bool(best.success)
    params = np.exp(z)
    ll = -f(z) * x.size
    return FitResult(family, dict(zip(names, params.tolist())), float(ll), iterations, converged, x.size,
                     _stderr(family, params, x), init_dict, str(best.message))


__all__ = [
    "GENERATOR", "make_rng", "spawn_seeds", "uniforms", "sample", "family_param_names", "build_model",
    "loglik", "FitResult", "moment_init", "fit_mle", "ConvergenceError",
]
