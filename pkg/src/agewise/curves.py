"""Sampled curves: a strictly increasing time grid with values attached."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._numerics import gradient


@dataclass(frozen=True, eq=False)
class Curve:
    """A sampled function ``t -> value`` (hazard, eta, MRL, ...).

    ``derivative`` holds central-difference estimates and is filled in on
    construction when not supplied.
    """

    abscissae: np.ndarray
    values: np.ndarray
    derivative: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        t = np.asarray(self.abscissae, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or v.ndim != 1:
            raise ValueError("curve abscissae and values must be one-dimensional")
        if t.shape != v.shape:
            raise ValueError(f"length mismatch: {t.size} abscissae vs {v.size} values")
        if t.size >= 2 and not np.all(np.diff(t) > 0):
            raise ValueError("curve abscissae must be strictly increasing")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "abscissae", t)
        object.__setattr__(self, "values", v)
        d = self.derivative
        if d is None and t.size >= 2:
            d = gradient(v, t)
        if d is not None:
            d = np.asarray(d, dtype=float)
            if d.shape != t.shape:
                raise ValueError("derivative length must match abscissae")
            d.setflags(write=False)
        object.__setattr__(self, "derivative", d)

    def __len__(self):
        return self.abscissae.size

    @classmethod
    def from_function(cls, func, grid, **meta) -> "Curve":
        grid = np.asarray(grid, dtype=float)
        return cls(grid, np.asarray(func(grid), dtype=float), meta=dict(meta))

    def rows(self):
        return zip(self.abscissae.tolist(), self.values.tolist())
