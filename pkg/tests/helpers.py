"""Shared test utilities: simulated datasets and finite-difference oracles."""

import numpy as np

from logitkit import Dataset, log_likelihood, gradient, logistic


def simulate(rng, n, beta, features=None):
    """Draw a dataset from the true logistic model with the given coefficients."""
    beta = np.asarray(beta, dtype=float)
    k = beta.shape[0] - 1
    x = rng.standard_normal((n, k)) if features is None else np.asarray(features, float)
    eta = beta[0] + (x @ beta[1:] if k else 0.0)
    y = (rng.random(n) < logistic(eta)).astype(float)
    return Dataset.from_features(x, y)


def fd_gradient(data, beta, step=1e-5):
    """Central finite difference of the log-likelihood."""
    beta = np.asarray(beta, dtype=float)
    out = np.empty_like(beta)
    for j in range(beta.shape[0]):
        up = beta.copy()
        dn = beta.copy()
        up[j] += step
        dn[j] -= step
        out[j] = (log_likelihood(data, up) - log_likelihood(data, dn)) / (2 * step)
    return out


def fd_neg_hessian(data, beta, step=1e-5):
    """Central finite difference of the analytic gradient, negated."""
    beta = np.asarray(beta, dtype=float)
    p = beta.shape[0]
    out = np.empty((p, p))
    for j in range(p):
        up = beta.copy()
        dn = beta.copy()
        up[j] += step
        dn[j] -= step
        out[:, j] = -(gradient(data, up) - gradient(data, dn)) / (2 * step)
    return out
