"""Total-time-on-test transforms and the scaled-TTT ageing-class tests.

For a lifetime law ``F`` with mean ``mu``::

    H^{-1}(p) = int_0^{F^{-1}(p)} S(u) du,      phi(p) = H^{-1}(p) / mu

and for a sample with order statistics ``x(1) <= ... <= x(n)``::

    phi_n(i/n) = (x(1) + ... + x(i) + (n - i) x(i)) / (x(1) + ... + x(n)).

Each ageing class corresponds to a sign condition on a statistic of
``phi``; :func:`ttt_class_tests` evaluates all six pairs.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import _numerics as num
from .distributions import DistributionModel
from .exceptions import InfiniteMomentError, PreconditionError

TTT_POINTS = 257
THEORETICAL_TOL = 1e-7
VIOLATION_BUDGET = 0.005
EMPIRICAL_BLOCKS = 64
MIN_BLOCK_SIZE = 16
NOISE_SIGMAS = 4.0


@dataclass(frozen=True, eq=False)
class TTTCurve:
    """Scaled TTT transform sampled on ``p`` (theoretical or empirical).

    Empirical curves keep the sorted sample so the knot-level tests can use
    the sample quantiles and the sample mean.
    """

    kind: str
    p: np.ndarray
    phi: np.ndarray
    mu: float
    source: str
    model: DistributionModel | None = None
    sample: np.ndarray | None = None
    quantiles: np.ndarray | None = None

    def __post_init__(self):
        for name in ("p", "phi"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.p.shape != self.phi.shape or self.p.ndim != 1:
            raise ValueError("p and phi must be one-dimensional arrays of equal length")

    @property
    def n(self) -> int | None:
        return None if self.sample is None else int(self.sample.size)

    def __call__(self, p):
        """Piecewise-linear interpolation of ``phi``."""
        return np.interp(p, self.p, self.phi)

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write(f"# kind={self.kind} source={self.source} mu={self.mu!r}\n")
        buf.write("p,phi\n")
        for a, b in zip(self.p.tolist(), self.phi.tolist()):
            buf.write(f"{a!r},{b!r}\n")
        return buf.getvalue()


# -- theoretical -------------------------------------------------------------

def _require_mean(model):
    tail = model.tail_index
    if tail is not None and tail <= 1.0:
        raise InfiniteMomentError(f"{model.name} has an infinite mean; the scaled TTT transform is undefined")


def _survival_integral(model, a, b):
    return num.integrate(model.sf, a, b, scale=max(float(model._scale_hint()), 1e-12), epsabs=1e-13, epsrel=1e-11)


def ttt_unscaled(model: DistributionModel, p):
    """``H^{-1}(p) = int_0^{F^{-1}(p)} S(u) du``; ``p = 1`` gives the mean."""
    arr = np.asarray(p, dtype=float)
    flat = arr.reshape(-1)
    if np.any((flat < 0) | (flat > 1)) or np.any(np.isnan(flat)):
        raise ValueError("p must lie in [0, 1]")
    lo, hi = model.support
    out = np.empty_like(flat)
    for i, pi in enumerate(flat):
        if pi == 0.0:
            out[i] = 0.0
        elif pi == 1.0:
            _require_mean(model)
            try:
                out[i] = num.integrate(model.sf, lo, hi, scale=max(float(model._scale_hint()), 1e-12),
                                       epsabs=1e-13, epsrel=1e-11, strict=True)
            except num.IntegrationError as exc:
                raise InfiniteMomentError(f"mean of {model.name} appears to diverge") from exc
        else:
            out[i] = _survival_integral(model, lo, float(model.quantile(pi)))
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def scaled_ttt(model: DistributionModel, n_points: int = TTT_POINTS) -> TTTCurve:
    """Scaled TTT transform on ``n_points`` equally spaced ``p`` in ``[0, 1]``.

    The survival integral is accumulated cell by cell between consecutive
    quantiles, so ``phi`` is nondecreasing and ``phi(1) = 1`` by
    construction.
    """
    _require_mean(model)
    lo, hi = model.support
    p = np.linspace(0.0, 1.0, int(n_points))
    x = np.empty_like(p)
    x[0] = lo
    x[1:-1] = model.quantile(p[1:-1])
    x[-1] = hi
    cells = np.empty(p.size - 1)
    for i in range(p.size - 2):
        cells[i] = _survival_integral(model, x[i], x[i + 1])
    try:
        cells[-1] = num.integrate(model.sf, x[-2], hi, scale=max(float(x[-2] - x[-3]), 1e-12),
                                  epsabs=1e-13, epsrel=1e-11, strict=True)
    except num.IntegrationError as exc:
        raise InfiniteMomentError(f"mean of {model.name} appears to diverge") from exc
    H = np.concatenate([[0.0], np.cumsum(cells)])
    mu = float(H[-1])
    phi = H / mu
    phi[-1] = 1.0
    return TTTCurve("theoretical", p, phi, mu, model.name, model=model, quantiles=x)


# -- empirical ---------------------------------------------------------------

def empirical_ttt(sample) -> TTTCurve:
    """Empirical scaled TTT curve at the knots ``i/n``, ``i = 0..n``."""
    x = np.sort(np.asarray(sample, dtype=float).reshape(-1))
    n = x.size
    if n < 2:
        raise ValueError(f"need at least 2 observations, got {n}")
    if not np.all(np.isfinite(x)) or x[0] <= 0:
        bad = int(np.argmin(np.asarray(sample, dtype=float).reshape(-1)))
        raise ValueError(f"observations must be positive and finite (offending index {bad})")
    total = float(x.sum())
    i = np.arange(1, n + 1)
    phi = np.concatenate([[0.0], (np.cumsum(x) + (n - i) * x) / total])
    phi[-1] = 1.0
    p = np.arange(n + 1) / n
    quantiles = np.concatenate([[0.0], x])
    x.setflags(write=False)
    return TTTCurve("empirical", p, phi, total / n, f"sample(n={n})", sample=x, quantiles=quantiles)


# -- class tests -------------------------------------------------------------

CLASS_PAIRS = (
    ("IFR", "DFR"),
    ("IFRA", "DFRA"),
    ("NBUE", "NWUE"),
    ("DMRL", "IMRL"),
    ("HNBUE", "HNWUE"),
    ("BFR", "UBFR"),
)


@dataclass(frozen=True)
class ClassVerdict:
    verdict: str  # holds | fails | boundary
    witness_p: float | None = None
    violation_fraction: float = 0.0

    @property
    def member(self) -> bool:
        """Membership in the weak sense: the class holds or sits on its boundary."""
        return self.verdict in ("holds", "boundary")


@dataclass(frozen=True)
class ClassTestReport:
    verdicts: dict
    kind: str
    tolerance: str
    hnbue_convention: str
    inflections: tuple = ()
    notes: tuple = ()

    def __getitem__(self, cls):
        return self.verdicts[cls]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "tolerance": self.tolerance,
            "hnbue_convention": self.hnbue_convention,
            "inflections": [float(u) for u in self.inflections],
            "tests": {
                k: {"verdict": v.verdict, "witness_p": v.witness_p, "violation_fraction": v.violation_fraction}
                for k, v in self.verdicts.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _knot_indices(curve: TTTCurve, blocks: int):
    n = curve.p.size - 1
    # at least MIN_BLOCK_SIZE spacings per block keeps the noise model honest
    m = min(blocks, max(n // MIN_BLOCK_SIZE, min(n, 4)))
    return np.unique(np.round(np.linspace(0, n, m + 1)).astype(int))


def _statistics(phi, p, u, hnbue_printed):
    """Sign statistics; the first class of each pair holds where ``s >= 0``."""
    d2 = phi[2:] - 2.0 * phi[1:-1] + phi[:-2]
    # on an uneven knot set second differences are scaled to unit spacing
    h = np.diff(p)
    d2 = 2.0 * ((phi[2:] - phi[1:-1]) / h[1:] - (phi[1:-1] - phi[:-2]) / h[:-1]) / (h[1:] + h[:-1]) * h.mean() ** 2
    ratio = phi[1:] / p[1:]
    mrl = (1.0 - phi[:-1]) / (1.0 - p[:-1])
    out = {
        "IFR": (-d2, p[1:-1]),
        "IFRA": (-np.diff(ratio), p[2:]),
        "NBUE": ((phi - p)[1:-1], p[1:-1]),
        "DMRL": (-np.diff(mrl), p[1:-1]),
    }
    if u is not None:
        s = phi[1:-1] - (-np.expm1(-u[1:-1]))
        out["HNBUE"] = (-s if hnbue_printed else s, p[1:-1])
    return out


def _noise(phi, p, u, curve, idx, hnbue_printed):
    """Delta-method standard deviation of each statistic for an empirical curve.

    Normalized spacings ``D_j = (n - j + 1)(x(j) - x(j-1))`` are treated as
    independent with standard deviation equal to their local mean (the
    exponential case). The local mean is smoothed over neighbouring blocks
    because a single-block estimate is itself noisy.
    """
    n = curve.n
    dphi = np.diff(phi)
    counts = np.maximum(np.diff(idx).astype(float), 1.0)
    per = dphi / counts
    w = min(5, per.size)
    pad = np.pad(per, (w // 2, w - 1 - w // 2), mode="edge")
    level = np.convolve(pad, np.ones(w) / w, mode="valid")
    var_block = level ** 2 * counts

    # statistics that depend on phi alone are linear in the block increments
    base = _statistics(phi, p, None, hnbue_printed)
    eps = 1e-7
    jac = {k: np.zeros((v[0].size, dphi.size)) for k, v in base.items()}
    for l in range(dphi.size):
        step = eps * max(dphi[l], 1e-12)
        bumped = dphi.copy()
        bumped[l] += step
        phi_b = np.concatenate([[0.0], np.cumsum(bumped)]) / bumped.sum()
        new = _statistics(phi_b, p, None, hnbue_printed)
        for k in base:
            jac[k][:, l] = (new[k][0] - base[k][0]) / step
    sds = {k: np.sqrt((jac[k] ** 2) @ var_block) for k in base}

    if u is not None:
        # s_k = phi_k - 1 + exp(-u_k) with u_k = n sum_{j<=i_k} D_j/(n-j+1) / sum D;
        # the gradient in D_j varies inside a block through 1/(n-j+1)
        wj = 1.0 / (n - np.arange(1, n + 1) + 1.0)
        cw = np.concatenate([[0.0], np.cumsum(wj)])
        cw2 = np.concatenate([[0.0], np.cumsum(wj ** 2)])
        sw = (cw[idx[1:]] - cw[idx[:-1]]) * n
        sw2 = (cw2[idx[1:]] - cw2[idx[:-1]]) * n * n
        k = np.arange(1, phi.size - 1)[:, None]
        l = np.arange(dphi.size)[None, :]
        inside = (l < k).astype(float)
        e = np.exp(-u[1:-1])[:, None]
        a = inside - phi[1:-1, None] + e * u[1:-1, None]
        b = -e * inside
        # sum over spacings j in block l of (a + b n w_j)^2, times level^2
        quad = counts * a * a + 2.0 * a * b * sw + b * b * sw2
        sds["HNBUE"] = np.sqrt(np.maximum(quad, 0.0) @ (level ** 2))
    return sds


def _pair_verdicts(s, tau, where, budget):
    viol_a = s < -tau
    viol_b = s > tau
    fa = float(viol_a.mean()) if s.size else 0.0
    fb = float(viol_b.mean()) if s.size else 0.0
    if fa <= budget and fb <= budget:
        return ClassVerdict("boundary", None, fa), ClassVerdict("boundary", None, fb)
    va = ClassVerdict("holds", None, fa) if fa <= budget else ClassVerdict("fails", float(where[int(np.argmin(s))]), fa)
    vb = ClassVerdict("holds", None, fb) if fb <= budget else ClassVerdict("fails", float(where[int(np.argmax(s))]), fb)
    return va, vb


def _inflections(d2, tau, where):
    """Sign pattern of the curvature after absorbing short runs."""
    from .ageing import MIN_RUN, _absorb_short, _runs

    signs = np.where(np.abs(d2) <= tau, 0, np.sign(d2)).astype(int)
    runs = [r for r in _absorb_short(_runs(signs), MIN_RUN) if r[0] != 0]
    merged = []
    for r in runs:
        if merged and merged[-1][0] == r[0]:
            merged[-1][2] = r[2]
        else:
            merged.append(list(r))
    pattern = tuple(r[0] for r in merged)
    points = tuple(float(0.5 * (where[a[2] - 1] + where[b[1]])) for a, b in zip(merged[:-1], merged[1:]))
    return pattern, points


CURVATURE_SCALES = (32, 16, 8, 4, 2)


def _multiscale_curvature(curve, mean, printed, s, tau, where):
    """Second differences of an empirical curve pooled over coarser knot sets.

    Curvature noise shrinks faster than the signal as the knot spacing grows,
    so gentle convexity or concavity that is invisible block by block shows
    up at coarse scales. A concave curve has nonnegative second differences
    at every scale, so pooling keeps the test valid.
    """
    ss, ts, ws = [s], [tau], [where]
    for blocks in CURVATURE_SCALES:
        idx = _knot_indices(curve, blocks)
        if idx.size < 3:
            continue
        p, phi = curve.p[idx], curve.phi[idx]
        u = curve.quantiles[idx] / mean
        st = _statistics(phi, p, u, printed)["IFR"]
        sd = _noise(phi, p, u, curve, idx, printed)["IFR"]
        ss.append(st[0])
        ts.append(NOISE_SIGMAS * sd + 1e-12)
        ws.append(st[1])
    return np.concatenate(ss), np.concatenate(ts), np.concatenate(ws)


def ttt_class_tests(curve: TTTCurve, context=None, hnbue: str = "standard",
                    budget: float = VIOLATION_BUDGET, tol: float = THEORETICAL_TOL) -> ClassTestReport:
    """Ageing-class membership read off a scaled TTT curve.

    ===========  ================================================
    IFR / DFR    phi concave / convex
    IFRA / DFRA  phi(p)/p decreasing / increasing
    NBUE / NWUE  phi >= p / phi <= p
    DMRL / IMRL  (1 - phi)/(1 - p) decreasing / increasing
    HNBUE/HNWUE  phi >= 1 - exp(-F^{-1}(p)/mu) / the reverse
    BFR / UBFR   one inflection, convex then concave / the reverse
    ===========  ================================================

    ``hnbue="printed"`` flips the HNBUE/HNWUE inequality.

    Theoretical curves use an absolute tolerance ``tol`` on every
    statistic. Empirical curves are tested at 65 knots (64 blocks) with a
    per-point tolerance of four delta-method standard deviations (fewer
    knots for small samples so every block holds at least 16 spacings). The
    curvature test pools second differences over 64, 32, 16, 8, 4 and 2
    blocks. A class ``holds`` when at most ``budget`` of the points violate it, and both
    classes of a pair are ``boundary`` when neither is violated.

    ``context`` supplies the quantile function and mean for the HNBUE test
    on theoretical curves (a :class:`DistributionModel`); empirical curves
    use the sample quantiles and the sample mean.
    """
    if hnbue not in ("standard", "printed"):
        raise ValueError(f"hnbue must be 'standard' or 'printed', got {hnbue!r}")
    printed = hnbue == "printed"
    empirical = curve.kind == "empirical"
    model = context if isinstance(context, DistributionModel) else curve.model
    mean = float(context) if isinstance(context, (int, float)) and not isinstance(context, bool) else curve.mu

    if empirical:
        idx = _knot_indices(curve, EMPIRICAL_BLOCKS)
        p = curve.p[idx]
        phi = curve.phi[idx]
        u = curve.quantiles[idx] / mean
    else:
        idx = None
        p = curve.p
        phi = curve.phi
        if curve.quantiles is not None and curve.model is not None and model is curve.model:
            q = curve.quantiles
        elif model is not None:
            q = np.concatenate([[model.support[0]], model.quantile(p[1:-1]), [np.inf]])
        else:
            raise PreconditionError("the HNBUE test needs a model (quantile function and mean) as context")
        u = q / mean

    stats = _statistics(phi, p, u, printed)
    if empirical:
        sds = _noise(phi, p, u, curve, idx, printed)
        taus = {k: NOISE_SIGMAS * sds[k] + 1e-12 for k in stats}
        tol_desc = f"{NOISE_SIGMAS:g} delta-method sd at {p.size} knots"
    else:
        taus = {k: np.full(v[0].shape, tol) for k, v in stats.items()}
        tol_desc = f"absolute {tol:g} on {p.size} points"

    verdicts = {}
    for (a, b) in CLASS_PAIRS[:5]:
        s, where = stats[a]
        tau = taus[a]
        if empirical and a == "IFR":
            s, tau, where = _multiscale_curvature(curve, mean, printed, s, tau, where)
        verdicts[a], verdicts[b] = _pair_verdicts(s, tau, where, budget)

    # inflection test: d2 = -s_IFR, convex where positive
    d2 = -stats["IFR"][0]
    pattern, points = _inflections(d2, taus["IFR"], stats["IFR"][1])
    if not pattern:
        verdicts["BFR"] = verdicts["UBFR"] = ClassVerdict("boundary")
    else:
        verdicts["BFR"] = ClassVerdict("holds") if pattern == (1, -1) else ClassVerdict("fails")
        verdicts["UBFR"] = ClassVerdict("holds") if pattern == (-1, 1) else ClassVerdict("fails")
    return ClassTestReport(verdicts, curve.kind, tol_desc, hnbue, inflections=points)
