"""Named fixture models and pinned regression outcomes.

The pinned label tables record what the classifier returns for parameter
lattices of several families; tests compare fresh runs against them.
"""

from __future__ import annotations

from .ageing import hazard_to_distribution
from .distributions import (
    INF,
    ExpWeibullMixture,
    Exponential,
    Gamma,
    InverseWeibull,
    Lindley,
    Lomax,
    Weibull,
)
from .transforms import dus, dus_ew, gdus

# -- DUS-EW regime lattice ---------------------------------------------------

DUS_EW_ALPHAS = (0.5, 1.0, 1.2, 2.0, 3.0)
DUS_EW_LAMBDAS = (0.01, 0.05, 0.25, 1.0, 4.0)

#: hazard labels of dus_ew(alpha, lambda); rows follow DUS_EW_ALPHAS
DUS_EW_LATTICE = (
    ("DFR", "DFR", "DFR", "DFR", "RollerCoaster(2)"),
    ("IFR", "IFR", "IFR", "IFR", "IFR"),
    ("UBFR", "UBFR", "UBFR", "UBFR", "UBFR"),
    ("MBFR", "MBFR", "MBFR", "MBFR", "MBFR"),
    ("MBFR", "RollerCoaster(3)", "RollerCoaster(3)", "RollerCoaster(3)", "MBFR"),
)


def dus_ew_lattice_map() -> dict:
    """``{(alpha, lambda): label}`` for the pinned DUS-EW lattice."""
    return {
        (a, lam): DUS_EW_LATTICE[i][j]
        for i, a in enumerate(DUS_EW_ALPHAS)
        for j, lam in enumerate(DUS_EW_LAMBDAS)
    }


# -- catalog shape lattices --------------------------------------------------

#: (catalog name, params, accepted labels)
SHAPE_CLAIMS = (
    *[("nadarajah-gl", {"alpha": a, "lambda": 1.0}, ("IFR",)) for a in (1.0, 2.0, 5.0)],
    *[("nadarajah-gl", {"alpha": a, "lambda": 1.0}, ("DFR", "BFR")) for a in (0.3, 0.7)],
    *[("ekhosuehi-opone-gl", {"alpha": a, "lambda": 1.0, "beta": 1.0}, ("DFR",)) for a in (0.3, 0.5, 0.8)],
    *[("ekhosuehi-opone-gl", {"alpha": a, "lambda": 1.0, "beta": 1.0}, ("IFR",)) for a in (1.0, 1.5, 2.0)],
    *[
        ("generalized-lindley-order-m", {"m": m, "theta": th}, ("IFR",))
        for m in (1, 2, 3)
        for th in (0.5, 1.0, 2.0)
    ],
    ("elgarhy-transmuted-gl", {"a": 1.0, "theta": 1.0, "lambda": 0.0}, ("IFR",)),
    ("elgarhy-transmuted-gl", {"a": 1.5, "theta": 2.0, "lambda": -0.5}, ("IFR",)),
    ("elgarhy-transmuted-gl", {"a": 2.0, "theta": 1.0, "lambda": -1.0}, ("IFR",)),
)

#: transmuted GL points whose hazard is not IFR
ELGARHY_COUNTEREXAMPLES = (
    ({"a": 0.5, "theta": 1.0, "lambda": 0.0}, "BFR"),
    ({"a": 2.0, "theta": 1.0, "lambda": 0.5}, "MBFR"),
)

#: Bhati GL (alpha, theta, lambda) -> label
BHATI_REGIMES = (
    ({"alpha": 2.0, "theta": 1.0, "lambda": 1.0}, "IFR"),
    ({"alpha": 1.5, "theta": 0.5, "lambda": 2.0}, "IFR"),
    ({"alpha": 3.0, "theta": 2.0, "lambda": 1.0}, "IFR"),
    ({"alpha": 0.3, "theta": 1.0, "lambda": 1.0}, "DFR"),
    ({"alpha": 0.7, "theta": 1.0, "lambda": 1.0}, "UBFR"),
    ({"alpha": 0.7, "theta": 10.0, "lambda": 1.0}, "DFR"),
)


# -- model fixtures ----------------------------------------------------------

def bathtub_model(c: float = 1.0, floor: float = 0.2):
    """Convex bathtub hazard ``floor + (t - c)^2`` with minimum at ``c``."""
    return hazard_to_distribution(lambda t: floor + (t - c) ** 2, (0.0, INF), label=f"bathtub(c={c:g},floor={floor:g})")


def fixture_models() -> dict:
    """Models on ``(0, inf)`` used by property and acceptance checks."""
    return {
        "exponential(1)": Exponential(1.0),
        "weibull(1,0.5)": Weibull(1.0, 0.5),
        "weibull(1,2)": Weibull(1.0, 2.0),
        "weibull(1,3)": Weibull(1.0, 3.0),
        "gamma(2,1)": Gamma(2.0, 1.0),
        "gamma(0.5,1)": Gamma(0.5, 1.0),
        "lindley(1)": Lindley(1.0),
        "lomax(3,1)": Lomax(3.0, 1.0),
        "inverse-weibull(3,1)": InverseWeibull(3.0, 1.0),
        "ew-mixture(2,1)": ExpWeibullMixture(2.0, 1.0),
        "dus[exponential(1)]": dus(Exponential(1.0)),
        "dus[lomax(2,1)]": dus(Lomax(2.0, 1.0)),
        "dus[lindley(1)]": dus(Lindley(1.0)),
        "gdus[weibull(1,1.5),2]": gdus(Weibull(1.0, 1.5), 2.0),
        "dus-ew(2,1)": dus_ew(2.0, 1.0),
        "dus-ew(0.5,1)": dus_ew(0.5, 1.0),
        "dus-ew(1.2,1)": dus_ew(1.2, 1.0),
        "bathtub(c=1)": bathtub_model(1.0),
    }


def bfr_fixtures() -> dict:
    """Bathtub-hazard fixtures (all classify as BFR)."""
    return {
        "bathtub(c=1)": bathtub_model(1.0),
        "bathtub(c=2)": bathtub_model(2.0),
        "bathtub(c=0.5,floor=0.5)": bathtub_model(0.5, 0.5),
        "bathtub(c=1.5,floor=0.05)": bathtub_model(1.5, 0.05),
    }
