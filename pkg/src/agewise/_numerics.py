"""Numerical primitives shared by the distribution, ageing and TTT modules.

Everything here works on plain callables and numpy arrays so that the
model classes can stay thin.
"""

from __future__ import annotations

import math
import os
import warnings

import numpy as np
from scipy import integrate as _integrate

EPSABS = 1e-10
EPSREL = 1e-8
DEFAULT_GRID_POINTS = 512
GRID_ENV_VAR = "AGEWISE_GRID_POINTS"


class IntegrationError(ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


def default_grid_points() -> int:
    raw = os.environ.get(GRID_ENV_VAR)
    if raw is None:
        return DEFAULT_GRID_POINTS
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"{GRID_ENV_VAR} must be an integer, got {raw!r}") from exc
    if n < 16:
        raise ValueError(f"{GRID_ENV_VAR} must be >= 16, got {n}")
    return n


def _scalar(func):
    def wrapped(t):
        return float(np.asarray(func(np.asarray([t], dtype=float)))[0])

    return wrapped


def integrate(func, a: float, b: float, *, scale: float = 1.0, vectorized: bool = True,
              epsabs: float = EPSABS, epsrel: float = EPSREL, strict: bool = False) -> float:
    """Adaptive quadrature of ``func`` over ``[a, b]``; ``b`` may be ``inf``.

    Infinite upper limits are mapped onto ``[0, 1)`` with
    ``t = a + scale * u / (1 - u)`` so the tail becomes a finite interval.
    ``scale`` should be a characteristic length of the integrand (a median,
    say); the result does not depend on it, only the effort does.

    With ``strict=True`` any quadrature warning is raised as
    :class:`IntegrationError` (used to detect divergent moments).
    """
    f = _scalar(func) if vectorized else func
    if a == b:
        return 0.0
    if math.isinf(b):
        s = float(scale) if scale > 0 else 1.0

        def g(u):
            if u >= 1.0:
                return 0.0
            t = a + s * u / (1.0 - u)
            val = f(t)
            if val == 0.0:
                return 0.0
            return val * s / (1.0 - u) ** 2

        lo, hi, fn = 0.0, 1.0, g
    else:
        lo, hi, fn = a, b, f
    with warnings.catch_warnings():
        warnings.simplefilter("error" if strict else "ignore", _integrate.IntegrationWarning)
        try:
            val, _err = _integrate.quad(fn, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=400)
        except _integrate.IntegrationWarning as exc:
            raise IntegrationError(str(exc)) from exc
    if not math.isfinite(val):
        raise IntegrationError("quadrature produced a non-finite value")
    return float(val)


# Gauss-Legendre rule on [0, 1], reused by the cumulative-hazard tables and
# the convolution kernels.
_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
GL_NODES = 0.5 * (_GL_X + 1.0)
GL_WEIGHTS = 0.5 * _GL_W


def gauss_legendre_segments(func, left, right) -> np.ndarray:
    """Integrate ``func`` over each ``[left[i], right[i]]`` with 16-point GL."""
    left = np.asarray(left, dtype=float)
    right = np.asarray(right, dtype=float)
    width = right - left
    nodes = left[:, None] + width[:, None] * GL_NODES[None, :]
    vals = np.asarray(func(nodes.ravel()), dtype=float).reshape(nodes.shape)
    return width * (vals @ GL_WEIGHTS)


def gradient(values, abscissae) -> np.ndarray:
    """Second-order central differences on a possibly non-uniform grid."""
    return np.gradient(np.asarray(values, dtype=float), np.asarray(abscissae, dtype=float))


def central_difference(func, x, step=None) -> np.ndarray:
    """Derivative of a vectorised ``func`` by central differences.

    The default step is ``max(1e-6, 1e-4 * x)``; near a lower support bound
    at zero the stencil is shifted to stay inside the support.
    """
    x = np.asarray(x, dtype=float)
    h = np.maximum(1e-6, 1e-4 * np.abs(x)) if step is None else np.full_like(x, step)
    lo = np.where(x - h <= 0.0, x, x - h)
    hi = lo + np.where(x - h <= 0.0, h, 2.0 * h)
    return (np.asarray(func(hi)) - np.asarray(func(lo))) / (hi - lo)


class BracketError(ArithmeticError):
    """The quantile search could not bracket the requested probability."""


def solve_monotone(cdf, sf, pdf, p, lower: float, upper: float, guess: float = 1.0,
                   ptol: float = 1e-10, max_iter: int = 400) -> np.ndarray:
    """Invert a continuous distribution function for every entry of ``p``.

    Works on whole arrays at once: brackets are grown by doubling (or
    halving) from ``guess`` and then narrowed with bisection, taking a
    Newton step whenever it lands inside the bracket. Probabilities above
    one half are matched on the survival side to keep accuracy in the
    upper tail.
    """
    p = np.atleast_1d(np.asarray(p, dtype=float))
    upper_side = p > 0.5
    target = np.where(upper_side, 1.0 - p, p)

    def resid(x):
        # positive once x is past the solution
        return np.where(upper_side, target - np.asarray(sf(x)), np.asarray(cdf(x)) - target)

    finite_hi = math.isfinite(upper)
    positive_lo = lower >= 0.0

    if finite_hi:
        lo = np.full_like(p, lower)
        hi = np.full_like(p, upper)
    else:
        g = guess if guess > 0 else 1.0
        if lower > -math.inf:
            g = max(g, lower + g)
        hi = np.full_like(p, g)
        for _ in range(2100):
            need = resid(hi) < 0
            if not need.any():
                break
            hi = np.where(need, np.where(hi > 0, hi * 2.0, 1.0), hi)
            if np.isinf(hi).any():
                raise BracketError("could not bracket quantile from above")
        else:
            raise BracketError("could not bracket quantile from above")
        if positive_lo:
            lo = np.full_like(p, g)
            for _ in range(2100):
                need = resid(lo) > 0
                if not need.any():
                    break
                lo = np.where(need, lo * 0.5, lo)
                if (lo[need] < max(lower, 1e-300)).all():
                    lo = np.where(need, lower, lo)
                    break
        else:
            lo = np.full_like(p, lower)
    lo = np.maximum(lo, lower)

    x = np.where(np.isfinite(hi), 0.5 * (lo + hi), lo + 1.0)
    for _ in range(max_iter):
        r = resid(x)
        lo = np.where(r <= 0, x, lo)
        hi = np.where(r > 0, x, hi)
        done = (np.abs(r) < ptol * 1e-4) | (hi - lo <= 4e-16 * np.maximum(np.abs(hi), 1e-300))
        if done.all():
            break
        d = np.asarray(pdf(x), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            # residual grows with x on both sides of the split
            newton = x - r / d
        ok = np.isfinite(newton) & (newton > lo) & (newton < hi)
        ratio_big = (lo > 0) & (hi > 4.0 * lo)
        bisect = np.where(ratio_big, np.sqrt(lo * hi), 0.5 * (lo + hi))
        x = np.where(done, x, np.where(ok, newton, bisect))
    final = np.abs(resid(x))
    if np.any(final > ptol):
        bad = int(np.argmax(final))
        raise BracketError(f"quantile solve did not converge for p={p[bad]!r} (residual {final[bad]:.3g})")
    return x
