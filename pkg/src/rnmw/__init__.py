"""Lifetime distributions whose cumulative hazard mixes a square-root term
with an exponentially growing term, giving bathtub or decreasing hazards.

The three-parameter family has cumulative hazard
``H(x) = alpha*sqrt(x) + beta*sqrt(x)*exp(lambda*x)`` and the five-parameter
family generalises the two powers of x.  The package provides evaluation,
sampling, moments, order statistics, censored maximum likelihood, model
selection diagnostics and a command line interface.
"""
from ._kernels import available_backends, backend_name, set_backend
from .core import (
    HazardKind,
    HazardShape,
    RnmwParams,
    cdf,
    cumulative_hazard,
    hazard,
    hazard_log_derivative,
    hazard_shape,
    pdf,
    quantile,
    sample,
    survival,
)
from .datasets import AARSET, aarset, aarset_path, load_lifetimes
from .errors import DomainError, NumericError
from .inference import (
    Dataset,
    EventType,
    FitOptions,
    FitResult,
    Model,
    Observation,
    WaldInterval,
    fit_mle,
    log_likelihood,
    observed_information,
    score,
    wald_intervals,
)
from .model_selection import (
    CriteriaReport,
    KmCurve,
    LrtResult,
    TttCurve,
    empirical_ttt,
    fitted_ttt,
    information_criteria,
    kaplan_meier,
    ks_statistic,
    likelihood_ratio_test,
)
from .moments import (
    CentralStats,
    SeriesConfig,
    SeriesResult,
    SweepRecord,
    central_stats,
    mgf_series,
    order_statistic_moment,
    order_statistic_pdf,
    raw_moment_quadrature,
    raw_moment_series,
    skew_kurt_grid,
)
from .nmw import (
    NmwParams,
    nmw_cdf,
    nmw_cumulative_hazard,
    nmw_hazard,
    nmw_pdf,
    nmw_survival,
)

__version__ = "0.1.0"

__all__ = [
    "AARSET",
    "CentralStats",
    "CriteriaReport",
    "Dataset",
    "DomainError",
    "EventType",
    "FitOptions",
    "FitResult",
    "HazardKind",
    "HazardShape",
    "KmCurve",
    "LrtResult",
    "Model",
    "NmwParams",
    "NumericError",
    "Observation",
    "RnmwParams",
    "SeriesConfig",
    "SeriesResult",
    "SweepRecord",
    "TttCurve",
    "WaldInterval",
    "aarset",
    "aarset_path",
    "available_backends",
    "backend_name",
    "cdf",
    "central_stats",
    "cumulative_hazard",
    "empirical_ttt",
    "fit_mle",
    "fitted_ttt",
    "hazard",
    "hazard_log_derivative",
    "hazard_shape",
    "information_criteria",
    "kaplan_meier",
    "ks_statistic",
    "likelihood_ratio_test",
    "load_lifetimes",
    "log_likelihood",
    "mgf_series",
    "nmw_cdf",
    "nmw_cumulative_hazard",
    "nmw_hazard",
    "nmw_pdf",
    "nmw_survival",
    "observed_information",
    "order_statistic_moment",
    "order_statistic_pdf",
    "pdf",
    "quantile",
    "raw_moment_quadrature",
    "raw_moment_series",
    "sample",
    "score",
    "set_backend",
    "skew_kurt_grid",
    "survival",
    "wald_intervals",
    "__version__",
]
