"""Reliability operations built numerically, and checks of which ageing
classes they preserve.

Operations: convolution (sum of independent lifetimes), finite mixtures,
order statistics, series and parallel systems. The ``spacings_check`` and
``preservation_report`` helpers turn these into class-preservation
verdicts.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy import interpolate, special

from . import _numerics as num
from .ageing import classify_shape
from .distributions import DistributionModel, INF
from .exceptions import InfiniteMomentError, ParameterError, PreconditionError

CONVOLUTION_POINTS = 1024
CONVOLUTION_SPREAD = 8.0


class CompositeModel(DistributionModel):
    """A model produced by a reliability operation on ``components``."""

    family = "composite"
    operation = "abstract"

    def __init__(self, components, weights=None):
        comps = tuple(components)
        if not comps:
            raise ParameterError(f"{self.operation}: needs at least one component")
        for c in comps:
            if not isinstance(c, DistributionModel):
                raise TypeError(f"components must be DistributionModel instances, got {type(c).__name__}")
        self.components = comps
        self.weights = None if weights is None else tuple(float(w) for w in weights)
        self._params = ()

    @property
    def realized(self) -> DistributionModel:
        return self

    def _key(self):
        return (self.operation, self.components, self.weights)

    @property
    def name(self):
        inner = ", ".join(c.name for c in self.components)
        return f"{self.operation}[{inner}]"

    @property
    def tail_index(self):
        tails = [c.tail_index for c in self.components if c.tail_index is not None]
        return min(tails) if tails else None

    def _scale_hint(self):
        return float(np.median([c._scale_hint() for c in self.components]))


# -- mixture -----------------------------------------------------------------

class MixtureModel(CompositeModel):
    """Finite mixture ``sum w_i F_i``; every quantity is an exact weighted sum."""

    operation = "mixture"

    def __init__(self, components, weights):
        super().__init__(components, weights)
        w = np.asarray(self.weights, dtype=float)
        if w.size != len(self.components):
            raise ParameterError(f"mixture: {len(self.components)} components but {w.size} weights", name="weights")
        if np.any(~(w > 0)) or not np.all(np.isfinite(w)):
            raise ParameterError(f"mixture: weights must be positive, got {w.tolist()}", name="weights")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ParameterError(f"mixture: weights must sum to 1 within 1e-12, got {w.sum()!r}", name="weights")
        supports = {c.support for c in self.components}
        if len(supports) != 1:
            raise PreconditionError(f"mixture components must share a support, got {sorted(supports)}")
        self._w = w

    @property
    def name(self):
        inner = " + ".join(f"{w:g}*{c.name}" for w, c in zip(self.weights, self.components))
        return f"mixture[{inner}]"

    @property
    def support(self):
        return self.components[0].support

    def _sum(self, method, x):
        return sum(w * getattr(c, method)(x) for w, c in zip(self._w, self.components))

    def _pdf(self, x):
        return self._sum("pdf", x)

    def _cdf(self, x):
        return self._sum("cdf", x)

    def _sf(self, x):
        return self._sum("sf", x)

    def _tail_hazard(self, x):
        # past survival underflow the lightest-tailed terms are negligible
        with np.errstate(all="ignore"):
            logs = np.array([math.log(w) - c.cumhaz(x) for w, c in zip(self._w, self.components)])
            k = np.argmax(logs, axis=0)
            hz = np.array([c.hazard(x) for c in self.components])
        return np.take_along_axis(hz, k[None, :], axis=0)[0]

    def mean(self):
        return float(sum(w * c.mean() for w, c in zip(self._w, self.components)))


def mixture(models, weights) -> MixtureModel:
    return MixtureModel(models, weights)


# -- series / parallel ---------------------------------------------------------

class SeriesModel(CompositeModel):
    """Lifetime of a series system: ``S = prod S_i``, hazard ``sum h_i``."""

    operation = "series"

    @property
    def support(self):
        return (max(c.support[0] for c in self.components), min(c.support[1] for c in self.components))

    def _sf(self, x):
        return np.exp(-self._cumhaz(x))

    def _cumhaz(self, x):
        return sum(c.cumhaz(x) for c in self.components)

    def _hazard(self, x):
        return sum(c.hazard(x) for c in self.components)

    def _pdf(self, x):
        return self._hazard(x) * self._sf(x)


class ParallelModel(CompositeModel):
    """Lifetime of a parallel system: ``F = prod F_i``."""

    operation = "parallel"

    @property
    def support(self):
        return (max(c.support[0] for c in self.components), max(c.support[1] for c in self.components))

    def _logcdf(self, x):
        with np.errstate(divide="ignore"):
            return sum(np.log1p(-c.sf(x)) for c in self.components)

    def _cdf(self, x):
        return np.exp(self._logcdf(x))

    def _sf(self, x):
        return -np.expm1(self._logcdf(x))

    def _pdf(self, x):
        F = [c.cdf(x) for c in self.components]
        out = np.zeros_like(x, dtype=float)
        for i, c in enumerate(self.components):
            term = c.pdf(x)
            for j, Fj in enumerate(F):
                if j != i:
                    term = term * Fj
            out = out + term
        return out

    def _tail_hazard(self, x):
        # 1 - prod(1 - S_i) ~ sum S_i when every S_i is tiny
        return MixtureModel(self.components, [1.0 / len(self.components)] * len(self.components))._tail_hazard(x)


def coherent_min_max(models, kind: str) -> CompositeModel:
    """Series (minimum) or parallel (maximum) system of independent components."""
    models = list(models)
    if not models:
        raise ParameterError("coherent system needs at least one component")
    if kind == "series":
        return SeriesModel(models)
    if kind == "parallel":
        return ParallelModel(models)
    raise ParameterError(f"kind must be 'series' or 'parallel', got {kind!r}", name="kind")


# -- order statistics ----------------------------------------------------------

class OrderStatisticModel(CompositeModel):
    """``k``-th smallest of ``n`` independent draws from ``model``.

    ``F_(k)(x) = I_{F(x)}(k, n - k + 1)`` (the binomial tail) and
    ``f_(k) = f F^{k-1} S^{n-k} / B(k, n - k + 1)``.
    """

    operation = "order-statistic"

    def __init__(self, model, n: int, k: int):
        n, k = int(n), int(k)
        if n < 1 or not (1 <= k <= n):
            raise ParameterError(f"order statistic needs 1 <= k <= n, got n={n}, k={k}", name="k")
        super().__init__([model])
        self.n, self.k = n, k
        self.base = model

    def _key(self):
        return (self.base, self.n, self.k)

    @property
    def name(self):
        return f"order-statistic[{self.base.name}, n={self.n}, k={self.k}]"

    @property
    def support(self):
        return self.base.support

    def _pdf(self, x):
        n, k = self.n, self.k
        F, S, f = self.base.cdf(x), self.base.sf(x), self.base.pdf(x)
        logc = -special.betaln(k, n - k + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            logp = logc + special.xlogy(k - 1, F) + special.xlogy(n - k, S)
        return f * np.exp(logp)

    def _cdf(self, x):
        return special.betainc(self.k, self.n - self.k + 1, self.base.cdf(x))

    def _sf(self, x):
        return special.betainc(self.n - self.k + 1, self.k, self.base.sf(x))

    def _quantile(self, p):
        return self.base.quantile(special.betaincinv(self.k, self.n - self.k + 1, p))

    def _scale_hint(self):
        return self.base._scale_hint()


def order_statistic(model: DistributionModel, n: int, k: int) -> OrderStatisticModel:
    return OrderStatisticModel(model, n, k)


# -- convolution -----------------------------------------------------------------

def _graded_panels(levels: int = 40, smallest: float = 1e-12):
    """Panel breaks on [0, 1] refined geometrically toward both ends."""
    s = np.geomspace(smallest, 0.5, levels)
    return np.concatenate([[0.0], s[:-1], [0.5], 1.0 - s[-2::-1], [1.0]])


_PANELS = _graded_panels()
_WIDTHS = np.diff(_PANELS)
_U = (_PANELS[:-1, None] + _WIDTHS[:, None] * num.GL_NODES[None, :]).reshape(-1)
_W = (_WIDTHS[:, None] * num.GL_WEIGHTS[None, :]).reshape(-1)


class ConvolutionModel(CompositeModel):
    """Law of ``X1 + X2`` for independent nonnegative ``X1``, ``X2``.

    On ``CONVOLUTION_POINTS`` equally spaced points of ``[0, T]``, with
    ``T = mean + 8 (sd1 + sd2)``, the survival function
    ``S(t) = S2(t) + int_0^t S1(t - x) f2(x) dx`` and the density
    ``int_0^t f1(t - x) f2(x) dx`` are computed by composite Gauss-Legendre
    quadrature on panels graded toward both ends. A cubic Hermite
    interpolant of ``S`` with slopes ``-f`` then gives the cdf, and its
    derivative the density. The law is truncated at ``T`` and renormalised.
    """

    operation = "convolution"
    closed_form = frozenset()

    def __init__(self, m1: DistributionModel, m2: DistributionModel, n_points: int = CONVOLUTION_POINTS):
        super().__init__([m1, m2])
        for m in (m1, m2):
            if m.support[0] < 0:
                raise PreconditionError(f"convolution needs nonnegative lifetimes; {m.name} has support {m.support}")
            if m.tail_index is not None and m.tail_index <= 2.0:
                raise InfiniteMomentError(f"convolution grid needs a finite variance; {m.name} lacks one")
        means = [m.mean() for m in (m1, m2)]
        sds = [math.sqrt(max(m.raw_moment(2.0) - mu * mu, 0.0)) for m, mu in zip((m1, m2), means)]
        self.upper = float(sum(means) + CONVOLUTION_SPREAD * sum(sds))
        self.grid_points = np.linspace(0.0, self.upper, int(n_points))
        S, f = self._tabulate(m1, m2, self.grid_points)
        self._mass = 1.0 - S[-1]
        self._spline = interpolate.CubicHermiteSpline(self.grid_points, S, -f)
        self._dspline = self._spline.derivative()
        self._S_end = S[-1]

    @staticmethod
    def _tabulate(m1, m2, t, chunk=64):
        S = np.empty_like(t)
        f = np.empty_like(t)
        # t = 0 is an empty integral; a singular density would give inf * 0 there
        S[0], f[0] = 1.0, 0.0
        for i in range(1, t.size, chunk):
            tt = t[i:i + chunk, None]
            x = tt * _U[None, :]
            y = tt - x
            f2 = m2.pdf(x)
            w = tt * _W[None, :]
            S[i:i + chunk] = m2.sf(tt[:, 0]) + np.sum(w * m1.sf(y) * f2, axis=1)
            f[i:i + chunk] = np.sum(w * m1.pdf(y) * f2, axis=1)
        if not np.isfinite(f[1]):
            raise PreconditionError("convolution density is not finite near the origin")
        return np.clip(S, 0.0, 1.0), np.maximum(f, 0.0)

    @property
    def support(self):
        return (0.0, self.upper)

    @property
    def tail_index(self):
        return None

    def _sf(self, x):
        return np.clip((self._spline(x) - self._S_end) / self._mass, 0.0, 1.0)

    def _cdf(self, x):
        return np.clip((1.0 - self._spline(x)) / self._mass, 0.0, 1.0)

    def _pdf(self, x):
        return np.maximum(-self._dspline(x), 0.0) / self._mass

    def _scale_hint(self):
        return self.upper / (2.0 * CONVOLUTION_SPREAD)


def convolve(m1: DistributionModel, m2: DistributionModel, n_points: int = CONVOLUTION_POINTS) -> ConvolutionModel:
    return ConvolutionModel(m1, m2, n_points)


# -- spacings ------------------------------------------------------------------

@dataclass(frozen=True)
class SpacingsReport:
    model: str
    n: int
    trials: int
    seed: int
    dfr: tuple
    ifr: tuple
    diagonal_distance: tuple

    def rows(self):
        return [
            {"index": i + 1, "DFR": d, "IFR": f, "sup_distance_to_diagonal": s}
            for i, (d, f, s) in enumerate(zip(self.dfr, self.ifr, self.diagonal_distance))
        ]


def normalized_spacings(samples: np.ndarray) -> np.ndarray:
    """``D_i = (n - i + 1)(X_(i) - X_(i-1))`` row-wise, with ``X_(0) = 0``."""
    x = np.sort(np.asarray(samples, dtype=float), axis=-1)
    n = x.shape[-1]
    gaps = np.diff(np.concatenate([np.zeros(x.shape[:-1] + (1,)), x], axis=-1), axis=-1)
    return gaps * (n - np.arange(n))


def spacings_check(model: DistributionModel, n: int = 5, trials: int = 10_000, seed: int = 0) -> SpacingsReport:
    """Monte Carlo check of the ageing class of normalized spacings.

    ``trials`` samples of size ``n`` are drawn; the ``i``-th normalized
    spacings are pooled across trials and their empirical TTT curve is
    tested for convexity (DFR) and concavity (IFR).
    """
    from .inference import sample
    from .ttt import empirical_ttt, ttt_class_tests

    n, trials = int(n), int(trials)
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}", name="n")
    if trials < 1000:
        raise ParameterError(f"trials must be >= 1000, got {trials}", name="trials")
    draws = sample(model, n * trials, seed).reshape(trials, n)
    d = normalized_spacings(draws)
    dfr, ifr, dist = [], [], []
    for i in range(n):
        col = d[:, i]
        col = col[col > 0]
        curve = empirical_ttt(col)
        rep = ttt_class_tests(curve)
        dfr.append(rep["DFR"].verdict)
        ifr.append(rep["IFR"].verdict)
        dist.append(float(np.max(np.abs(curve.phi - curve.p))))
    return SpacingsReport(model.name, n, trials, int(seed), tuple(dfr), tuple(ifr), tuple(dist))


# -- class membership ----------------------------------------------------------

TTT_CLASSES = ("IFR", "DFR", "IFRA", "DFRA", "NBUE", "NWUE", "DMRL", "IMRL", "HNBUE", "HNWUE")
OUT_OF_SCOPE = ("NBU-t0", "NWU-t0")


def nbu_check(model: DistributionModel, points: int = 64, rtol: float = 1e-7) -> str:
    """Superadditivity of the cumulative hazard on a quantile grid.

    NBU means ``H(x + y) >= H(x) + H(y)``, NWU the reverse. Returns
    ``"NBU"``, ``"NWU"``, ``"both"`` (exponential) or ``"neither"``.
    """
    g = model.grid(points, 1e-3, 0.99)
    X, Y = np.meshgrid(g, g)
    hx, hy = model.cumhaz(X), model.cumhaz(Y)
    hxy = model.cumhaz(X + Y)
    tol = rtol * (hx + hy) + 1e-12
    gap = hxy - hx - hy
    nbu = not np.any(gap < -tol)
    nwu = not np.any(gap > tol)
    return "both" if nbu and nwu else "NBU" if nbu else "NWU" if nwu else "neither"


class _Judge:
    """Caches class-membership decisions per model."""

    def __init__(self):
        self._ttt = {}
        self._nbu = {}
        self._shape = {}

    def member(self, model, cls) -> bool:
        from .ttt import scaled_ttt, ttt_class_tests

        if cls in TTT_CLASSES:
            key = id(model)
            if key not in self._ttt:
                self._ttt[key] = (model, ttt_class_tests(scaled_ttt(model)))
            return self._ttt[key][1][cls].member
        if cls in ("NBU", "NWU"):
            key = id(model)
            if key not in self._nbu:
                self._nbu[key] = (model, nbu_check(model))
            v = self._nbu[key][1]
            return v == "both" or v == cls
        if cls == "BFR":
            key = id(model)
            if key not in self._shape:
                self._shape[key] = (model, classify_shape(model))
            return self._shape[key][1].label == "BFR"
        raise PreconditionError(f"class {cls!r} has no numeric membership test")


# -- preservation table --------------------------------------------------------

OPERATIONS = ("coherent", "convolution", "mixture")

#: claimed behaviour per class: (coherent systems, convolution, mixture)
PRESERVATION_CLAIMS = {
    "IFR": ("Not Preserve", "Preserve", "Not Preserve"),
    "IFRA": ("Preserve", "Preserve", "Not Preserve"),
    "NBU": ("Preserve", "Preserve", "Not Preserve"),
    "NBUE": ("Not Preserve", "Preserve", "Not Preserve"),
    "DMRL": ("Not Preserve", "Not Preserve", "Not Preserve"),
    "HNBUE": ("Not Preserve", "Preserve", "Not Preserve"),
    "NBU-t0": ("Preserve", "Not Preserve", "Not Preserve"),
    "DFR": ("Not Preserve", "Not Preserve", "Preserve"),
    "DFRA": ("Not Preserve", "Not Preserve", "Preserve"),
    "NWU": ("Not Preserve", "Not Preserve", "Not Preserve"),
    "NWUE": ("Not Preserve", "Not Preserve", "Not Preserve"),
    "IMRL": ("Not Preserve", "Not Preserve", "Preserve"),
    "HNWUE": ("Not Preserve", "Not Preserve", "Preserve"),
    "NWU-t0": ("Not Preserve", "Not Preserve", "Not Preserve"),
    "BFR": ("Not Preserve", "Not Preserve", "Not Preserve"),
}


@dataclass(frozen=True)
class Instance:
    """One fixture: an operation applied to named components."""

    label: str
    operation: str
    build: object  # zero-argument callable returning (components, composite)


def default_instances() -> dict:
    """Fixture set per operation used by :func:`preservation_report`."""
    from .ageing import hazard_to_distribution
    from .distributions import Exponential, Gamma, Weibull

    def bathtub(c):
        return hazard_to_distribution(lambda t: 0.2 + (t - c) ** 2, (0.0, INF), label=f"bathtub(c={c:g})")

    def conv(a, b):
        return lambda: ((a, b), convolve(a, b))

    def mix(ms, w):
        return lambda: (tuple(ms), mixture(ms, w))

    def sys(ms, kind):
        return lambda: (tuple(ms), coherent_min_max(ms, kind))

    e1, e5 = Exponential(1.0), Exponential(5.0)
    return {
        "convolution": [
            Instance("gamma(2,1)*gamma(3,1)", "convolution", conv(Gamma(2.0, 1.0), Gamma(3.0, 1.0))),
            Instance("weibull(1,2)*weibull(1,3)", "convolution", conv(Weibull(1.0, 2.0), Weibull(1.0, 3.0))),
            Instance("gamma(2,1)*weibull(1,2)", "convolution", conv(Gamma(2.0, 1.0), Weibull(1.0, 2.0))),
            Instance("exponential(1)*exponential(1)", "convolution", conv(e1, Exponential(1.0))),
            Instance("weibull(1,0.7)*weibull(1,0.7)", "convolution", conv(Weibull(1.0, 0.7), Weibull(1.0, 0.7))),
            Instance("bathtub*bathtub", "convolution", conv(bathtub(1.0), bathtub(1.0))),
        ],
        "mixture": [
            Instance("exponential(1)+exponential(5)", "mixture", mix([e1, e5], [0.5, 0.5])),
            Instance("weibull(1,0.5)+weibull(2,0.7)", "mixture", mix([Weibull(1.0, 0.5), Weibull(2.0, 0.7)], [0.5, 0.5])),
            Instance("gamma(0.5,1)+exponential(1)", "mixture", mix([Gamma(0.5, 1.0), e1], [0.3, 0.7])),
            Instance("weibull(1,3)+weibull(3,3)", "mixture", mix([Weibull(1.0, 3.0), Weibull(3.0, 3.0)], [0.5, 0.5])),
            Instance("gamma(3,1)+gamma(3,0.1)", "mixture", mix([Gamma(3.0, 1.0), Gamma(3.0, 0.1)], [0.5, 0.5])),
        ],
        "coherent": [
            Instance("series weibull(1,2),weibull(2,3)", "coherent", sys([Weibull(1.0, 2.0), Weibull(2.0, 3.0)], "series")),
            Instance("parallel weibull(1,2),gamma(2,1)", "coherent", sys([Weibull(1.0, 2.0), Gamma(2.0, 1.0)], "parallel")),
            Instance("parallel exponential(1),exponential(5)", "coherent", sys([e1, e5], "parallel")),
            Instance("parallel weibull(1,0.5),weibull(1,0.5)", "coherent", sys([Weibull(1.0, 0.5), Weibull(1.0, 0.5)], "parallel")),
            Instance("series weibull(1,0.5),gamma(0.5,1)", "coherent", sys([Weibull(1.0, 0.5), Gamma(0.5, 1.0)], "series")),
            Instance("parallel bathtub,bathtub", "coherent", sys([bathtub(1.0), bathtub(1.5)], "parallel")),
        ],
    }


@dataclass(frozen=True)
class CellVerdict:
    class_label: str
    operation: str
    claim: str
    verdict: str  # confirmed-preserve | witness-found-not-preserve | inconclusive | out-of-scope
    applicable: int
    witness: str = ""


@dataclass(frozen=True)
class PreservationTable:
    cells: tuple

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write("class,operation,claim,verdict,applicable_fixtures,witness\n")
        for c in self.cells:
            buf.write(f"{c.class_label},{c.operation},{c.claim},{c.verdict},{c.applicable},{c.witness}\n")
        return buf.getvalue()

    def cell(self, class_label, operation) -> CellVerdict:
        for c in self.cells:
            if c.class_label == class_label and c.operation == operation:
                return c
        raise KeyError((class_label, operation))


def _cell(cls, op, instances, judge, built) -> CellVerdict:
    claim = PRESERVATION_CLAIMS[cls][OPERATIONS.index(op)]
    if cls in OUT_OF_SCOPE:
        return CellVerdict(cls, op, claim, "out-of-scope", 0, "t0-indexed class needs a chosen t0")
    applicable = 0
    witness = ""
    for inst in sorted(instances, key=lambda i: i.label):
        if inst.label not in built:
            built[inst.label] = inst.build()
        comps, composite = built[inst.label]
        if not all(judge.member(c, cls) for c in comps):
            continue
        applicable += 1
        if not judge.member(composite, cls):
            witness = witness or inst.label
    if witness:
        return CellVerdict(cls, op, claim, "witness-found-not-preserve", applicable, witness)
    if claim == "Preserve" and applicable:
        return CellVerdict(cls, op, claim, "confirmed-preserve", applicable)
    return CellVerdict(cls, op, claim, "inconclusive", applicable)


def preservation_report(class_label=None, operation=None, instances=None) -> PreservationTable:
    """Verdicts for cells of the preservation table.

    ``class_label`` and ``operation`` select a single row or column (``None``
    means all). A "Preserve" claim is confirmed when every fixture whose
    components belong to the class yields a composite that also belongs; a
    single failing fixture is reported as a witness. Missing witnesses give
    ``inconclusive``, never ``confirmed-preserve``, for "Not Preserve"
    claims. Membership uses the scaled-TTT tests, a cumulative-hazard
    superadditivity check for NBU/NWU and the hazard-shape classifier for
    BFR.
    """
    classes = list(PRESERVATION_CLAIMS) if class_label is None else [class_label]
    ops = list(OPERATIONS) if operation is None else [operation]
    for c in classes:
        if c not in PRESERVATION_CLAIMS:
            raise ParameterError(f"unknown class {c!r}; known: {list(PRESERVATION_CLAIMS)}", name="class_label")
    for o in ops:
        if o not in OPERATIONS:
            raise ParameterError(f"unknown operation {o!r}; known: {list(OPERATIONS)}", name="operation")
    fixtures = default_instances() if instances is None else instances
    judge = _Judge()
    built = {}
    cells = tuple(_cell(c, o, fixtures.get(o, []), judge, built) for c in classes for o in ops)
    return PreservationTable(cells)
