"""Deviance, the nested-model likelihood-ratio test, Press's Q, and the
discriminant-power-to-p-value curve."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fit import FitConfig, fit_irls
from .model import Dataset, log_likelihood
from .numerics import chi2_sf


class FitNotConvergedError(RuntimeError):
    """A fit required by a test failed to converge; the message names it."""


@dataclass(frozen=True)
class NestedTestResult:
    """Likelihood-ratio comparison of a reduced model against the full one.

    statistic is the raw deviance difference D_reduced - D_full; tiny
    negative values (possible only through convergence tolerance) are
    clamped to zero before the chi-square tail, but reported raw here.
    """

    deviance_reduced: float
    deviance_full: float
    statistic: float
    df: int
    p_value: float


@dataclass(frozen=True)
class PressQResult:
    n: int
    error_rate: float
    q_statistic: float
    p_value: float


@dataclass(frozen=True)
class PowerCurve:
    """Tabulated (discriminant power, p-value) pairs for a sample size."""

    n: int
    powers: np.ndarray
    p_values: np.ndarray

    def __len__(self) -> int:
        return len(self.powers)

    def rows(self):
        """Iterate (power, p_value) pairs in grid order."""
        return zip(self.powers.tolist(), self.p_values.tolist())


def deviance(data: Dataset, coef) -> float:
    """Deviance -2 log L of the model at the given coefficients; always >= 0."""
    return -2.0 * log_likelihood(data, coef)


def deviance_df(data: Dataset) -> int:
    """Reference degrees of freedom n - p - 1 for the deviance.

    Metadata only: the chi-square approximation behind it is unreliable
    for ungrouped binary data, so no goodness-of-fit p-value is derived
    from it here. Use `lrt_nested` for model comparison.
    """
    return data.n - data.n_coef


def lrt_nested(data: Dataset, reduced_cols, config: FitConfig = FitConfig()) -> NestedTestResult:
    """Likelihood-ratio test of the full model against a reduced column set.

    reduced_cols are design column indices; they must include the intercept
    column 0 and form a strict subset of all columns. Both fits must reach
    Converged status, otherwise FitNotConvergedError names the one that
    failed. The statistic D_reduced - D_full is referred to chi-square with
    df = (number of dropped columns).
    """
    cols = sorted({int(c) for c in reduced_cols})
    if not cols or cols[0] != 0:
        raise ValueError("reduced model must include the intercept column 0")
    if cols[-1] >= data.n_coef:
        raise ValueError(f"column index {cols[-1]} out of range")
    if len(cols) >= data.n_coef:
        raise ValueError("reduced columns must be a strict subset of all columns")

    full_fit = fit_irls(data, config)
    if not full_fit.converged:
        raise FitNotConvergedError(
            f"full-model fit did not converge (status {full_fit.status.value})"
        )
    reduced_fit = fit_irls(data.select_columns(cols), config)
    if not reduced_fit.converged:
        raise FitNotConvergedError(
            f"reduced-model fit did not converge (status {reduced_fit.status.value})"
        )

    statistic = reduced_fit.deviance - full_fit.deviance
    df = data.n_coef - len(cols)
    return NestedTestResult(
        deviance_reduced=reduced_fit.deviance,
        deviance_full=full_fit.deviance,
        statistic=statistic,
        df=df,
        p_value=chi2_sf(max(statistic, 0.0), df),
    )


def press_q(n, error_rate) -> PressQResult:
    """Press's Q statistic n (2 rate - 1)^2 against chi-square with 1 df.

    rate may be either the error rate or the discriminant power 1 - rate:
    the statistic is symmetric about 1/2, so both give the same Q.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    rate = float(error_rate)
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    q = n * (2.0 * rate - 1.0) ** 2
    return PressQResult(n=n, error_rate=rate, q_statistic=q, p_value=chi2_sf(q, 1))


def power_curve(n, grid_points: int = 1000) -> PowerCurve:
    """Tabulate the Press's Q p-value over a uniform discriminant-power grid.

    Entry i (1-based) is (i / grid_points, chi2_sf(n (2 i/grid_points - 1)^2, 1)),
    the loop behind the classic power-versus-p-value plot.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    grid_points = int(grid_points)
    if grid_points < 2:
        raise ValueError(f"grid_points must be at least 2, got {grid_points}")
    powers = np.arange(1, grid_points + 1) / grid_points
    q = n * (2.0 * powers - 1.0) ** 2
    p_values = np.array([chi2_sf(v, 1) for v in q])
    return PowerCurve(n=n, powers=powers, p_values=p_values)
