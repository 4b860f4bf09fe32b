"""Binary logistic regression via Newton/IRLS: maximum-likelihood fitting,
nested-model deviance tests, leave-one-out discriminant evaluation, and
Press's Q significance, plus a CSV-driven command line (`logitkit`)."""

from .classify import CvReport, classify, evaluate_with_press_q, loocv
from .fit import (
    FitConfig,
    FitResult,
    FitStatus,
    covariance,
    fit_irls,
    gradient,
    neg_hessian,
)
from .inference import (
    FitNotConvergedError,
    NestedTestResult,
    PowerCurve,
    PressQResult,
    deviance,
    deviance_df,
    lrt_nested,
    power_curve,
    press_q,
)
from .model import Dataset, log_likelihood, logistic, logit, predict_proba
from .numerics import chi2_sf, pinv_psd, solve_psd

__version__ = "0.1.0"

__all__ = [
    "CvReport",
    "Dataset",
    "FitConfig",
    "FitNotConvergedError",
    "FitResult",
    "FitStatus",
    "NestedTestResult",
    "PowerCurve",
    "PressQResult",
    "chi2_sf",
    "classify",
    "covariance",
    "deviance",
    "deviance_df",
    "evaluate_with_press_q",
    "fit_irls",
    "gradient",
    "log_likelihood",
    "logistic",
    "logit",
    "loocv",
    "lrt_nested",
    "neg_hessian",
    "pinv_psd",
    "power_curve",
    "predict_proba",
    "press_q",
    "solve_psd",
]
