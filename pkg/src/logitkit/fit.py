"""Maximum-likelihood fitting by full Newton steps (IRLS), with analytic
gradient, observed information, and the asymptotic covariance of the MLE."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import Dataset, log_likelihood, logistic
from .numerics import pinv_psd, solve_psd


class FitStatus(str, Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    DIVERGED = "Diverged"


@dataclass(frozen=True)
class FitConfig:
    """Stopping rules for the Newton loop.

    grad_tol copies the reference loop's ``norm(g) > 0.001`` constant;
    max_iter and divergence_norm exist because full Newton steps run
    forever on completely separated data, and that failure should be
    observable instead of silent.
    """

    grad_tol: float = 1e-3
    max_iter: int = 100
    divergence_norm: float = 1e8

    def __post_init__(self):
        if not self.grad_tol > 0:
            raise ValueError("grad_tol must be positive")
        if int(self.max_iter) < 1:
            raise ValueError("max_iter must be at least 1")
        if not self.divergence_norm > 0:
            raise ValueError("divergence_norm must be positive")


@dataclass(frozen=True)
class FitResult:
    """Fitted coefficients plus the diagnostics of the Newton run.

    covariance is the pseudoinverse of X'SX at the final coefficients;
    std_errors are the square roots of its diagonal.
    """

    coef: np.ndarray
    log_lik: float
    deviance: float
    grad_norm: float
    iterations: int
    status: FitStatus
    covariance: np.ndarray
    std_errors: np.ndarray

    @property
    def converged(self) -> bool:
        return self.status is FitStatus.CONVERGED


def gradient(data: Dataset, coef) -> np.ndarray:
    """Score vector g = X'(y - pi)."""
    beta = data.check_coef(coef)
    pi = logistic(data.design @ beta)
    return data.design.T @ (data.labels - pi)


def neg_hessian(data: Dataset, coef) -> np.ndarray:
    """Observed information X'SX with S = diag(pi_i (1 - pi_i)).

    This is the negative Hessian of the log-likelihood, symmetric positive
    semidefinite at every beta.
    """
    beta = data.check_coef(coef)
    pi = logistic(data.design @ beta)
    weights = pi * (1.0 - pi)
    return data.design.T @ (data.design * weights[:, None])


def covariance(data: Dataset, coef) -> np.ndarray:
    """Asymptotic covariance of the MLE, (X'SX)^-1.

    The positive-definite convention: the Hessian itself is -X'SX, so its
    negation is inverted and variances come out nonnegative. Singular
    information falls back to the pseudoinverse.
    """
    return pinv_psd(neg_hessian(data, coef))


def fit_irls(data: Dataset, config: FitConfig = FitConfig()) -> FitResult:
    """Fit the logistic model by iteratively reweighted least squares.

    Starts from beta = 0 (every pi = 1/2) and applies full Newton steps
    beta += solve_psd(X'SX, X'(y - pi)) until the gradient norm reaches
    config.grad_tol (Converged), the update count hits config.max_iter
    (MaxIterations), or the coefficient norm passes config.divergence_norm
    (Diverged, the signature of complete separation). Non-finite values
    appearing mid-iteration roll back to the last finite iterate and end
    as Diverged rather than raising.
    """
    x = data.design
    y = data.labels
    beta = np.zeros(data.n_coef)
    prev_beta = beta
    iterations = 0
    while True:
        scores = x @ beta if np.all(np.isfinite(beta)) else None
        if scores is None or not np.all(np.isfinite(scores)):
            beta = prev_beta
            scores = x @ beta
            status = FitStatus.DIVERGED
            break
        pi = logistic(scores)
        grad = x.T @ (y - pi)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm <= config.grad_tol:
            status = FitStatus.CONVERGED
            break
        if float(np.linalg.norm(beta)) > config.divergence_norm:
            status = FitStatus.DIVERGED
            break
        if iterations >= config.max_iter:
            status = FitStatus.MAX_ITERATIONS
            break
        weights = pi * (1.0 - pi)
        with np.errstate(over="ignore"):  # overflow handled as divergence
            info = x.T @ (x * weights[:, None])
        if not np.all(np.isfinite(info)):
            status = FitStatus.DIVERGED
            break
        prev_beta = beta
        beta = beta + solve_psd(info, grad)
        iterations += 1

    pi = logistic(x @ beta)
    grad = x.T @ (y - pi)
    grad_norm = float(np.linalg.norm(grad))
    log_lik = log_likelihood(data, beta)
    weights = pi * (1.0 - pi)
    with np.errstate(over="ignore"):
        info = x.T @ (x * weights[:, None])
    if np.all(np.isfinite(info)):
        cov = pinv_psd(info)
    else:
        cov = np.full((data.n_coef, data.n_coef), np.nan)
    std_errors = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    return FitResult(
        coef=beta,
        log_lik=log_lik,
        deviance=-2.0 * log_lik,
        grad_norm=grad_norm,
        iterations=iterations,
        status=status,
        covariance=cov,
        std_errors=std_errors,
    )
