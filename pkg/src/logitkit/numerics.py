"""Dense symmetric linear algebra and chi-square tail probabilities.

Matrices and vectors are plain float64 numpy arrays (row-major, dense);
problem sizes here are a handful of regressors, so there is no sparse
path. All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
import operator

import numpy as np

_EPS = float(np.finfo(float).eps)
_SYM_RTOL = 1e-10
_GAMMA_MAX_ITER = 600


def as_vector(v, name: str = "vector") -> np.ndarray:
    """Coerce to a 1-D float64 array, rejecting empty or non-finite input."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError(f"{name} must have at least one entry")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D float64 array, rejecting empty or non-finite input."""
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def _check_square_symmetric(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    scale = float(np.max(np.abs(a)))
    if float(np.max(np.abs(a - a.T))) > _SYM_RTOL * max(scale, 1e-300):
        raise ValueError("matrix is not symmetric within tolerance")


def _truncated_inverse_eigs(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecompose a symmetric matrix and invert its nonzero spectrum.

    Eigenvalues below max(dim) * eps * |lambda|_max count as exact zeros,
    matching the MATLAB pinv default, so rank-deficient systems get
    minimum-norm solutions instead of noise amplification.
    """
    eigvals, eigvecs = np.linalg.eigh(0.5 * (a + a.T))
    cutoff = max(a.shape) * _EPS * float(np.max(np.abs(eigvals)))
    inv = np.zeros_like(eigvals)
    keep = np.abs(eigvals) > cutoff
    inv[keep] = 1.0 / eigvals[keep]
    return inv, eigvecs


def solve_psd(a, b) -> np.ndarray:
    """Solve a symmetric positive-semidefinite system in the least-squares sense.

    Returns the x minimizing ||a x - b||_2; when a is singular this is the
    minimum-norm solution (pseudoinverse semantics). Deterministic for
    identical inputs.
    """
    a = as_matrix(a, "a")
    b = as_vector(b, "b")
    _check_square_symmetric(a)
    if b.shape[0] != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix is {a.shape[0]}x{a.shape[1]}, "
            f"vector has length {b.shape[0]}"
        )
    inv, eigvecs = _truncated_inverse_eigs(a)
    return eigvecs @ (inv * (eigvecs.T @ b))


def pinv_psd(a) -> np.ndarray:
    """Pseudoinverse of a symmetric positive-semidefinite matrix.

    Same spectral truncation as solve_psd; the result is symmetrized so
    roundoff cannot leak asymmetry into downstream covariance matrices.
    """
    a = as_matrix(a, "a")
    _check_square_symmetric(a)
    inv, eigvecs = _truncated_inverse_eigs(a)
    pinv = (eigvecs * inv) @ eigvecs.T
    return 0.5 * (pinv + pinv.T)


def _lower_gamma_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) by power series (x < a + 1)."""
    term = 1.0 / a
    total = term
    denom = a
    for _ in range(_GAMMA_MAX_ITER):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ArithmeticError("incomplete gamma series failed to converge")


def _upper_gamma_cf(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) by Lentz's continued
    fraction (x >= a + 1)."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h
    raise ArithmeticError("incomplete gamma continued fraction failed to converge")


def chi2_sf(x, df) -> float:
    """Survival function 1 - CDF of the chi-square distribution.

    Evaluated as the regularized upper incomplete gamma Q(df/2, x/2): a
    lower power series when x/2 < df/2 + 1 and a continued fraction
    otherwise, the standard split that converges on both branches.

    Parameters
    ----------
    x : nonnegative real
        Point at which to evaluate the upper tail.
    df : positive integer
        Degrees of freedom.
    """
    df = operator.index(df)
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"chi2_sf requires finite x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    a = 0.5 * df
    half = 0.5 * x
    if half < a + 1.0:
        q = 1.0 - _lower_gamma_series(a, half)
    else:
        q = _upper_gamma_cf(a, half)
    return min(max(q, 0.0), 1.0)
