"""Lifetime-distribution ageing analysis.

Distribution models and the DUS/GDUS transforms, a catalog of published
failure-rate formulas, hazard-shape classification, mean residual life,
scaled total-time-on-test tests, reliability operations and
maximum-likelihood fitting.
"""

from .ageing import (
    MrlCurve,
    OlcayReport,
    ShapeReport,
    bfr_moment_bound,
    change_points,
    classify_shape,
    eta_curve,
    glaser_eta,
    hazard_curve,
    hazard_to_distribution,
    is_igfr,
    mrl,
    mrl_curve,
    olcay_crosscheck,
    pf2_check,
    rescale,
    turning_points,
)
from .catalog import catalog_hazard, catalog_model, catalog_names, catalog_reference, expected_shapes
from .curves import Curve
from .distributions import (
    DistributionModel,
    ExpWeibullMixture,
    Exponential,
    Gamma,
    HazardDefinedModel,
    InverseWeibull,
    Kumaraswamy,
    Lindley,
    Lomax,
    Weibull,
    make_baseline,
)
from .exceptions import (
    AgewiseError,
    ConvergenceError,
    GridTooCoarseError,
    InfiniteMomentError,
    ParameterError,
    PreconditionError,
    SupportError,
    UnknownNameError,
)
from .inference import FitResult, build_model, fit_mle, loglik, sample
from .preservation import (
    coherent_min_max,
    convolve,
    mixture,
    order_statistic,
    preservation_report,
    spacings_check,
)
from .transforms import DUSExpWeibull, DUSModel, GDUSModel, dus, dus_ew, gdus
from .ttt import TTTCurve, empirical_ttt, scaled_ttt, ttt_class_tests, ttt_unscaled

__version__ = "0.1.0"
