"""Logistic link functions, the regression dataset container, and the
Bernoulli log-likelihood (cross entropy)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import as_matrix, as_vector


def logistic(t):
    """Logistic map t -> 1 / (1 + exp(-t)).

    Branches on the sign of t so the exponential never overflows; accepts
    a scalar or an array and returns the matching shape.
    """
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("logistic requires finite input")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    pos = arr >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-arr[pos]))
    ex = np.exp(arr[~pos])
    out[~pos] = ex / (1.0 + ex)
    return float(out[0]) if scalar else out


def logit(p):
    """Log-odds log(p / (1 - p)) for p strictly inside (0, 1).

    Inverse of `logistic` on its range.
    """
    arr = np.asarray(p, dtype=float)
    with np.errstate(invalid="ignore"):
        bad = ~np.isfinite(arr) | (arr <= 0.0) | (arr >= 1.0)
    if np.any(bad):
        raise ValueError("logit requires 0 < p < 1")
    out = np.log(arr) - np.log1p(-arr)
    return float(out) if out.ndim == 0 else out


def _softplus(s: np.ndarray) -> np.ndarray:
    # log(1 + exp(s)) without overflow for |s| beyond ~700
    return np.maximum(s, 0.0) + np.log1p(np.exp(-np.abs(s)))


def _frozen_array(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Dataset:
    """Design matrix with a leading intercept column plus binary labels.

    The intercept column is materialized at construction (the classic
    ``X = [ones(n,1) X]`` prepend) so every matrix formula stays literal.
    Labels outside {0, 1} are rejected, never coerced. Instances are
    immutable after construction and safe to share across threads.
    """

    design: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] = ()

    def __post_init__(self):
        design = as_matrix(self.design, "design")
        if not np.all(design[:, 0] == 1.0):
            raise ValueError("first design column must be the intercept (all ones)")
        labels = np.asarray(self.labels, dtype=float).reshape(-1)
        if labels.shape[0] != design.shape[0]:
            raise ValueError(
                f"design has {design.shape[0]} rows but labels has "
                f"{labels.shape[0]} entries"
            )
        if not np.all((labels == 0.0) | (labels == 1.0)):
            raise ValueError("labels must contain only 0 or 1")
        names = tuple(self.feature_names)
        if not names:
            names = ("intercept",) + tuple(f"x{j}" for j in range(1, design.shape[1]))
        if len(names) != design.shape[1]:
            raise ValueError(
                f"expected {design.shape[1]} feature names, got {len(names)}"
            )
        if names[0] != "intercept":
            raise ValueError('first feature name must be "intercept"')
        object.__setattr__(self, "design", _frozen_array(design))
        object.__setattr__(self, "labels", _frozen_array(labels))
        object.__setattr__(self, "feature_names", names)

    @classmethod
    def from_features(cls, features, labels, feature_names=None) -> "Dataset":
        """Build a dataset by prepending the intercept column to raw features.

        ``features`` is n x k (or length n for a single regressor); k = 0 is
        allowed and yields an intercept-only design.
        """
        feats = np.asarray(features, dtype=float)
        if feats.ndim == 1:
            feats = feats[:, None]
        if feats.ndim != 2:
            raise ValueError(f"features must be 1- or 2-dimensional, got {feats.ndim}")
        n, k = feats.shape
        if feature_names is None:
            feature_names = tuple(f"x{j}" for j in range(1, k + 1))
        if len(feature_names) != k:
            raise ValueError(f"expected {k} feature names, got {len(feature_names)}")
        design = np.column_stack([np.ones(n), feats]) if k else np.ones((n, 1))
        return cls(design, labels, ("intercept",) + tuple(feature_names))

    @property
    def n(self) -> int:
        """Number of subjects (rows)."""
        return self.design.shape[0]

    @property
    def n_coef(self) -> int:
        """Number of coefficients, k + 1 including the intercept."""
        return self.design.shape[1]

    def check_coef(self, coef) -> np.ndarray:
        """Validate a coefficient vector against this dataset's width."""
        beta = as_vector(coef, "coef")
        if beta.shape[0] != self.n_coef:
            raise ValueError(
                f"expected {self.n_coef} coefficients, got {beta.shape[0]}"
            )
        return beta

    def without_row(self, i: int) -> "Dataset":
        """Copy of the dataset with subject i removed (for leave-one-out)."""
        if not 0 <= i < self.n:
            raise IndexError(f"row {i} out of range for n={self.n}")
        return Dataset(
            np.delete(self.design, i, axis=0),
            np.delete(self.labels, i),
            self.feature_names,
        )

    def select_columns(self, cols) -> "Dataset":
        """Restrict the design to the given column indices (intercept first)."""
        idx = sorted({int(c) for c in cols})
        if not idx or idx[0] != 0:
            raise ValueError("column selection must include the intercept column 0")
        if idx[-1] >= self.n_coef:
            raise ValueError(f"column index {idx[-1]} out of range")
        return Dataset(
            self.design[:, idx],
            self.labels,
            tuple(self.feature_names[j] for j in idx),
        )


def predict_proba(data: Dataset, coef) -> np.ndarray:
    """Per-subject success probabilities logistic(x_i . beta)."""
    beta = data.check_coef(coef)
    return logistic(data.design @ beta)


def log_likelihood(data: Dataset, coef) -> float:
    """Bernoulli log-likelihood sum_i [y_i log pi_i + (1 - y_i) log(1 - pi_i)].

    Computed in the numerically stable form sum_i [y_i s_i - softplus(s_i)]
    with s_i = x_i . beta, so saturated scores never hit log(0). Always <= 0.
    """
    beta = data.check_coef(coef)
    scores = data.design @ beta
    return float(data.labels @ scores - np.sum(_softplus(scores)))
