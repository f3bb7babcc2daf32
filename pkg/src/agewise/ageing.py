"""Failure-rate shape analysis.

The classifier works on a sampled curve: the derivative sign pattern is
computed with a dimensionless flatness tolerance, short runs are absorbed
into their neighbours, and the remaining monotone phases are mapped onto
the labels ``Constant``, ``IFR``, ``DFR``, ``BFR``, ``UBFR``, ``MBFR`` and
``RollerCoaster(n)``.

The same machinery classifies mean-residual-life curves (MRL shapes are
reported with the hazard vocabulary: a decreasing MRL is labelled ``DFR``
and so on) and Glaser's eta function ``-f'/f``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize, special

from . import _numerics as num
from .curves import Curve
from .distributions import DistributionModel, HazardDefinedModel, INF, ScaledModel
from .exceptions import GridTooCoarseError, InfiniteMomentError, PreconditionError

FLAT_TOL = 1e-6
MIN_RUN = 3
MIN_POINTS = 16

MONOTONE_LABELS = ("Constant", "IFR", "DFR")


# -- reports -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ShapeReport:
    """Outcome of :func:`classify_shape`.

    ``change_points`` are the interior times where the monotone direction
    reverses. When the reversal happens across a flat stretch, the stretch
    is kept in ``flat_bands`` and the change point sits at its midpoint.
    """

    label: str
    change_points: tuple[float, ...]
    flat_bands: tuple[tuple[float, float], ...] = ()
    phases: tuple[int, ...] = ()
    tolerances: dict = field(default_factory=dict)
    grid: Curve | None = None

    @property
    def flat_band(self):
        return self.flat_bands[0] if self.flat_bands else None

    @property
    def n_change_points(self) -> int:
        return len(self.change_points)

    def mitra_basu_change_points(self) -> tuple[float, ...]:
        """Change points with each flat band reported by its two endpoints.

        Under this reading the flat stretch belongs to neither monotone
        phase, so a bathtub with a flat bottom has change points at both
        ends of the bottom.
        """
        out = []
        for cp in self.change_points:
            band = next((b for b in self.flat_bands if b[0] <= cp <= b[1]), None)
            out.extend(band if band is not None else (cp,))
        return tuple(out)

    def to_dict(self, style: str = "mi") -> dict:
        if style not in ("mi", "mitra-basu"):
            raise ValueError(f"unknown change-point style {style!r}")
        cps = self.change_points if style == "mi" else self.mitra_basu_change_points()
        return {
            "label": self.label,
            "change_points": [float(c) for c in cps],
            "flat_band": None if self.flat_band is None else [float(v) for v in self.flat_band],
            "tolerances": dict(self.tolerances),
        }

    def to_json(self, style: str = "mi") -> str:
        return json.dumps(self.to_dict(style), sort_keys=True)


# -- sign-pattern machinery --------------------------------------------------

def _runs(signs):
    """Run-length encoding as a list of ``[sign, start, stop)`` triples."""
    runs = []
    start = 0
    for i in range(1, len(signs) + 1):
        if i == len(signs) or signs[i] != signs[start]:
            runs.append([int(signs[start]), start, i])
            start = i
    return runs


def _merge_equal(runs):
    out = []
    for r in runs:
        if out and out[-1][0] == r[0]:
            out[-1][2] = r[2]
        else:
            out.append(list(r))
    return out


def _absorb_short(runs, min_run):
    """Absorb runs shorter than ``min_run`` into their neighbours."""
    runs = _merge_equal(runs)
    while len(runs) > 1:
        lengths = [r[2] - r[1] for r in runs]
        short = [i for i, n in enumerate(lengths) if n < min_run]
        if not short:
            break
        i = min(short, key=lambda j: (lengths[j], j))
        if i == 0:
            runs[1][1] = runs[0][1]
            del runs[0]
        elif i == len(runs) - 1:
            runs[-2][2] = runs[-1][2]
            del runs[-1]
        elif runs[i - 1][0] == runs[i + 1][0]:
            runs[i - 1][2] = runs[i + 1][2]
            del runs[i:i + 2]
        else:
            # split between the two neighbours
            mid = (runs[i][1] + runs[i][2]) // 2
            runs[i - 1][2] = mid
            runs[i + 1][1] = mid
            del runs[i]
        runs = _merge_equal(runs)
    return runs


def _zero_crossing(t, d, i, j):
    """Interpolated root of the derivative between indices ``i`` and ``j``."""
    di, dj = d[i], d[j]
    if di == dj:
        return 0.5 * (t[i] + t[j])
    w = di / (di - dj)
    w = min(max(w, 0.0), 1.0)
    return float(t[i] + w * (t[j] - t[i]))


def _label(phases):
    n = len(phases)
    if n == 0:
        return "Constant"
    if n == 1:
        return "IFR" if phases[0] > 0 else "DFR"
    if n == 2:
        return "BFR" if phases[0] < 0 else "UBFR"
    if n == 3 and tuple(phases) == (1, -1, 1):
        return "MBFR"
    return f"RollerCoaster({n - 1})"


def _analyse(curve: Curve, tol: float, min_run: int):
    t = curve.abscissae
    v = curve.values
    d = curve.derivative
    if t.size < MIN_POINTS:
        raise GridTooCoarseError(f"need at least {MIN_POINTS} grid points, got {t.size}")
    finite = np.isfinite(v) & np.isfinite(d)
    if not finite.all():
        raise PreconditionError("curve contains non-finite values")
    span = float(t[-1] - t[0])
    scale = float(np.median(np.abs(v)))
    if scale == 0.0:
        scale = float(np.max(np.abs(v))) or 1.0
    threshold = tol * scale / span
    signs = np.where(np.abs(d) <= threshold, 0, np.sign(d)).astype(int)

    runs = _absorb_short(_runs(signs), min_run)
    # flat stretches at either end carry no direction information
    while runs and runs[0][0] == 0:
        runs.pop(0)
    while runs and runs[-1][0] == 0:
        runs.pop()

    # interior flat runs between equal signs are plateaus inside one phase
    cleaned = []
    for k, r in enumerate(runs):
        if r[0] == 0 and 0 < k < len(runs) - 1 and runs[k - 1][0] == runs[k + 1][0]:
            continue
        cleaned.append(r)
    runs = _merge_equal(cleaned)

    phases, cps, bands = [], [], []
    prev = None
    pending_band = None
    for r in runs:
        if r[0] == 0:
            pending_band = (float(t[r[1]]), float(t[r[2] - 1]))
            continue
        if prev is not None and r[0] != prev[0]:
            if pending_band is not None:
                bands.append(pending_band)
                cps.append(0.5 * (pending_band[0] + pending_band[1]))
            else:
                cps.append(_zero_crossing(t, d, prev[2] - 1, r[1]))
        phases.append(r[0])
        prev = r
        pending_band = None
    tolerances = {"flat": tol, "min_run": min_run, "threshold": threshold}
    return phases, cps, bands, tolerances


def change_points(curve: Curve, tol: float = FLAT_TOL, min_run: int = MIN_RUN) -> list[float]:
    """Interior times where the derivative of ``curve`` changes sign.

    A derivative sample counts as zero when ``|d| * span < tol * median(|v|)``.
    Sign runs shorter than ``min_run`` points are absorbed before the
    change points are read off.
    """
    _, cps, _, _ = _analyse(curve, tol, min_run)
    return cps


def hazard_curve(model: DistributionModel, grid=None) -> Curve:
    grid = model.grid() if grid is None else np.asarray(grid, dtype=float)
    return Curve(grid, model.hazard(grid), meta={"kind": "hazard", "source": model.name})


def classify_shape(obj, grid=None, tol: float = FLAT_TOL, min_run: int = MIN_RUN) -> ShapeReport:
    """Classify a failure-rate shape.

    ``obj`` is a :class:`DistributionModel` (its hazard is sampled on
    ``grid`` or the default quantile grid) or a prepared :class:`Curve`.
    """
    if isinstance(obj, Curve):
        curve = obj
    elif isinstance(obj, DistributionModel):
        curve = hazard_curve(obj, grid)
    else:
        raise TypeError(f"cannot classify {type(obj).__name__}")
    phases, cps, bands, tolerances = _analyse(curve, tol, min_run)
    return ShapeReport(
        label=_label(phases),
        change_points=tuple(cps),
        flat_bands=tuple(bands),
        phases=tuple(phases),
        tolerances=tolerances,
        grid=curve,
    )


# -- eta ---------------------------------------------------------------------

def glaser_eta(model: DistributionModel, t):
    """Glaser's ``eta(t) = -f'(t)/f(t)``."""
    arr = np.asarray(t, dtype=float)
    dens = np.asarray(model.pdf(arr))
    if np.any(dens <= 1e-300):
        raise PreconditionError("density vanishes at the requested time; eta is undefined")
    out = -np.asarray(model.dlogpdf(arr), dtype=float)
    return float(out) if arr.ndim == 0 else out


def eta_curve(model: DistributionModel, grid=None) -> Curve:
    grid = model.grid() if grid is None else np.asarray(grid, dtype=float)
    return Curve(grid, glaser_eta(model, grid), meta={"kind": "eta", "source": model.name})


def turning_points(model: DistributionModel, grid=None, tol: float = FLAT_TOL) -> tuple[int, int]:
    """Change-point counts ``(hazard, eta)`` on a shared grid."""
    grid = model.grid() if grid is None else np.asarray(grid, dtype=float)
    nh = len(change_points(hazard_curve(model, grid), tol))
    ne = len(change_points(eta_curve(model, grid), tol))
    return nh, ne


# -- generalized failure rate ------------------------------------------------

def is_igfr(model: DistributionModel, grid=None, rtol: float = 1e-9):
    """Whether ``g(x) = x h(x)`` is nondecreasing; returns ``(flag, curve)``.

    Decrements smaller than ``rtol * max|g|`` are treated as noise. On a
    bounded support the grid is the default quantile grid, which stays
    strictly inside the support.
    """
    lo, _ = model.support
    if lo < 0:
        raise PreconditionError("generalized failure rate needs a support inside (0, inf)")
    grid = model.grid() if grid is None else np.asarray(grid, dtype=float)
    g = grid * model.hazard(grid)
    curve = Curve(grid, g, meta={"kind": "generalized-failure-rate", "source": model.name})
    slack = rtol * float(np.max(np.abs(g)))
    return bool(np.all(np.diff(g) >= -slack)), curve


def log_transform_hazard(model: DistributionModel, y):
    """Hazard of ``log X`` at ``y`` by change of variables.

    ``f_Y(y) = f(e^y) e^y`` and ``S_Y(y) = S(e^y)``.
    """
    x = np.exp(np.asarray(y, dtype=float))
    return model.pdf(x) * x / model.sf(x)


# -- mean residual life ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MrlCurve:
    curve: Curve
    mean: float

    @property
    def abscissae(self):
        return self.curve.abscissae

    @property
    def values(self):
        return self.curve.values


def _require_finite_mean(model):
    tail = model.tail_index
    if tail is not None and tail <= 1.0:
        raise InfiniteMomentError(f"{model.name} has an infinite mean")


def mrl(model: DistributionModel, t):
    """Mean residual life ``int_t^inf S(u) du / S(t)``."""
    _require_finite_mean(model)
    arr = np.asarray(t, dtype=float)
    lo, hi = model.support
    scale = float(model._scale_hint())
    out = []
    for ti in arr.reshape(-1):
        s = float(model.sf(ti))
        if s <= 1e-300:
            raise PreconditionError(f"survival vanishes at t={ti:g}")
        try:
            # absolute tolerance follows S(t) so deep-tail MRLs keep relative accuracy
            tail = num.integrate(model.sf, float(ti), hi, scale=max(scale, 1e-12), epsrel=1e-10,
                                 epsabs=1e-13 * s * max(scale, 1e-12), strict=True)
        except num.IntegrationError as exc:
            raise InfiniteMomentError(f"residual-life integral diverges for {model.name}") from exc
        out.append(tail / s)
    res = np.asarray(out).reshape(arr.shape)
    return float(res) if arr.ndim == 0 else res


def mrl_curve(model: DistributionModel, grid=None) -> MrlCurve:
    """MRL on a grid that starts at the lower support bound.

    Survival is integrated segment-wise with Gauss-Legendre panels and
    accumulated from the right, so the tail sums are formed from small
    terms first.
    """
    _require_finite_mean(model)
    lo, hi = model.support
    grid = model.grid() if grid is None else np.asarray(grid, dtype=float)
    if grid[0] > lo:
        grid = np.concatenate([[lo], grid])
    # refine each cell so panels stay short relative to the local scale
    sub = 4
    fine = np.concatenate([np.linspace(a, b, sub, endpoint=False) for a, b in zip(grid[:-1], grid[1:])] + [grid[-1:]])
    seg = num.gauss_legendre_segments(model.sf, fine[:-1], fine[1:])
    try:
        scale = max(float(model._scale_hint()), 1e-12)
        tail = num.integrate(model.sf, float(grid[-1]), hi, scale=scale, epsrel=1e-10,
                             epsabs=1e-13 * float(model.sf(grid[-1])) * scale, strict=True)
    except num.IntegrationError as exc:
        raise InfiniteMomentError(f"residual-life integral diverges for {model.name}") from exc
    cum_fine = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]]) + tail
    integral = cum_fine[::sub]
    s = model.sf(grid)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(s > 1e-300, integral / s, np.nan)
    keep = np.isfinite(values)
    curve = Curve(grid[keep], values[keep], meta={"kind": "mrl", "source": model.name})
    return MrlCurve(curve=curve, mean=float(integral[0] / s[0]))


# -- Olcay cross-check -------------------------------------------------------

@dataclass(frozen=True)
class OlcayReport:
    hazard_label: str
    h0: float
    inverse_mean: float
    expected_mrl: str
    observed_mrl: str
    status: str  # pass | fail | boundary

    def to_dict(self) -> dict:
        return dict(self.__dict__)


_MRL_EXPECTED = {
    # hazard shape, h(0) relative to 1/mu -> MRL shape in hazard vocabulary
    ("BFR", "le"): "DFR",
    ("BFR", "gt"): "UBFR",
    ("UBFR", "ge"): "IFR",
    ("UBFR", "lt"): "BFR",
}


def hazard_at_origin(model: DistributionModel) -> float:
    lo, _ = model.support
    h0 = float(model.hazard(lo))
    if not math.isfinite(h0):
        h0 = float(model.hazard(model.quantile(1e-12)))
    return h0


def olcay_crosscheck(model: DistributionModel, grid=None, rtol: float = 1e-9) -> OlcayReport:
    """Check the MRL shape implied by a bathtub or upside-down bathtub hazard.

    For a BFR hazard the MRL is decreasing when ``h(0) <= 1/mu`` and
    upside-down bathtub otherwise; for a UBFR hazard it is increasing when
    ``h(0) >= 1/mu`` and bathtub otherwise. A constant hazard is the
    degenerate case of both and is reported as ``boundary``.
    """
    shape = classify_shape(model, grid)
    h0 = hazard_at_origin(model)
    mu = model.mean()
    inv = 1.0 / mu
    if shape.label == "Constant":
        return OlcayReport("Constant", h0, inv, "Constant", "Constant", "boundary")
    if shape.label not in ("BFR", "UBFR"):
        raise PreconditionError(f"hazard is {shape.label}; the MRL cross-check needs BFR or UBFR")
    close = abs(h0 - inv) <= rtol * max(abs(inv), 1e-300)
    if shape.label == "BFR":
        key = "le" if (h0 <= inv or close) else "gt"
    else:
        key = "ge" if (h0 >= inv or close) else "lt"
    expected = _MRL_EXPECTED[(shape.label, key)]
    observed = classify_shape(mrl_curve(model, grid).curve).label
    return OlcayReport(shape.label, h0, inv, expected, observed, "pass" if observed == expected else "fail")


# -- construction ------------------------------------------------------------

def hazard_to_distribution(h, domain=(0.0, INF), label: str | None = None) -> HazardDefinedModel:
    """Lifetime law with failure rate ``h``: ``S(t) = exp(-int h)``."""
    return HazardDefinedModel(h, domain=domain, label=label)


def rescale(model: DistributionModel, c: float) -> ScaledModel:
    """Law of ``c X``."""
    return ScaledModel(model, c)


# -- PF2 ---------------------------------------------------------------------

@dataclass(frozen=True)
class PF2Report:
    trials: int
    violations: int
    worst_determinant: float
    worst_quadruple: tuple[float, float, float, float]
    seed: int

    @property
    def is_pf2(self) -> bool:
        return self.violations == 0


def pf2_check(model: DistributionModel, trials: int = 10_000, seed: int = 0, tol: float = 1e-12) -> PF2Report:
    """Monte Carlo search for negative PF2 determinants of the density.

    For ``x1 < x2`` and ``y1 < y2`` the determinant
    ``g(x1-y1) g(x2-y2) - g(x1-y2) g(x2-y1)`` is evaluated with the density
    extended by zero off its support. Points are drawn uniformly on
    ``[-R, R]`` with ``R`` the 99% quantile.
    """
    trials = int(trials)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    R = float(model.quantile(0.99))
    x = np.sort(rng.uniform(-R, R, size=(trials, 2)), axis=1)
    y = np.sort(rng.uniform(-R, R, size=(trials, 2)), axis=1)
    lo, hi = model.support

    def g(z):
        out = np.zeros_like(z)
        inside = (z > lo) & (z < hi)
        out[inside] = model.pdf(z[inside])
        return out

    det = g(x[:, 0] - y[:, 0]) * g(x[:, 1] - y[:, 1]) - g(x[:, 0] - y[:, 1]) * g(x[:, 1] - y[:, 0])
    i = int(np.argmin(det))
    return PF2Report(
        trials=trials,
        violations=int(np.count_nonzero(det < -tol)),
        worst_determinant=float(det[i]),
        worst_quadruple=(float(x[i, 0]), float(x[i, 1]), float(y[i, 0]), float(y[i, 1])),
        seed=int(seed),
    )


# -- BFR moment bound --------------------------------------------------------

@dataclass(frozen=True)
class MomentBoundReport:
    k: float
    t0: float
    h_t0: float
    moment: float
    bound: float
    status: str  # holds | equality | violated | vacuous
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status in ("holds", "equality", "vacuous")


def _refine_minimum(model, report):
    """Hazard minimum near the single BFR change point."""
    t = report.grid.abscissae
    cp = report.change_points[0]
    i = int(np.searchsorted(t, cp))
    a = t[max(i - 3, 0)]
    b = t[min(i + 3, t.size - 1)]
    res = optimize.minimize_scalar(lambda s: float(model.hazard(s)), bounds=(a, b), method="bounded",
                                   options={"xatol": 1e-10 * max(b, 1.0)})
    return float(res.x)


def bfr_moment_bound(model: DistributionModel, k: float = 1.0, grid=None, rtol: float = 1e-6) -> MomentBoundReport:
    """Compare ``E[X^k]`` with ``Gamma(k+1) / h(t0)^k``.

    ``t0`` is the hazard minimum: the change point for BFR, the origin for
    IFR and constant rates. Equality (within ``rtol``) is the exponential
    case.
    """
    shape = classify_shape(model, grid)
    if shape.label == "BFR":
        t0 = _refine_minimum(model, shape)
        h0 = float(model.hazard(t0))
    elif shape.label in ("IFR", "Constant"):
        t0 = model.support[0]
        h0 = hazard_at_origin(model)
    else:
        raise PreconditionError(f"hazard is {shape.label}; the moment bound needs BFR, IFR or a constant rate")
    moment = model.raw_moment(k)
    if h0 < 1e-12:
        return MomentBoundReport(k, t0, h0, moment, INF, "vacuous", "h(t0) = 0, the bound is infinite")
    bound = float(special.gamma(k + 1.0) / h0 ** k)
    if abs(moment - bound) <= rtol * bound:
        return MomentBoundReport(k, t0, h0, moment, bound, "equality", "equality forces an exponential law")
    status = "holds" if moment < bound else "violated"
    return MomentBoundReport(k, t0, h0, moment, bound, status)
