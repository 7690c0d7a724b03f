"""Dense linear-algebra primitives and zero-mean Gaussian draws.

Everything downstream funnels its covariance handling through
:func:`factor_covariance`, so symmetry/positive-semidefiniteness policy
(including the eigenvalue clamp for marginally indefinite inputs) lives in
exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPSD, NotSymmetric

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class CovarianceFactor:
    """A square root L of a covariance matrix, with L @ L.T == sigma.

    L is the Cholesky factor when sigma is positive definite, otherwise an
    eigendecomposition-based square root with tiny negative eigenvalues
    clamped to zero. `rank` counts the eigenvalues that survive the clamp.
    """

    dimension: int
    factor: np.ndarray
    rank: int


def factor_covariance(sigma, tol: float = DEFAULT_TOL) -> CovarianceFactor:
    """Validate sigma and return a sampling factor for N(0, sigma).

    The tolerance is scaled by (1 + max|sigma|). Asymmetry beyond it raises
    NotSymmetric; an eigenvalue below its negative raises NotPSD; eigenvalues
    in [-tol, 0] are treated as exact zeros.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise ValueError(f"covariance must be square, got shape {sigma.shape}")
    if sigma.size and not np.all(np.isfinite(sigma)):
        raise ValueError("covariance entries must be finite")
    n = sigma.shape[0]
    atol = tol * (1.0 + (float(np.abs(sigma).max()) if sigma.size else 0.0))
    if sigma.size:
        asym = float(np.abs(sigma - sigma.T).max())
        if asym > atol:
            raise NotSymmetric(f"max asymmetry {asym:.3e} exceeds tolerance {atol:.3e}")
    sym = 0.5 * (sigma + sigma.T)
    try:
        return CovarianceFactor(n, np.linalg.cholesky(sym), n)
    except np.linalg.LinAlgError:
        pass
    eigvals, eigvecs = np.linalg.eigh(sym)
    lowest = float(eigvals.min(initial=0.0))
    if lowest < -atol:
        raise NotPSD(f"eigenvalue {lowest:.3e} below -{atol:.3e}")
    eigvals = np.clip(eigvals, 0.0, None)
    rank = int(np.count_nonzero(eigvals > atol))
    return CovarianceFactor(n, eigvecs * np.sqrt(eigvals), rank)


def sample_mvn_zero(factor: CovarianceFactor, rng: np.random.Generator) -> np.ndarray:
    """One draw from N(0, sigma) as L @ w with w ~ N(0, I)."""
    return factor.factor @ rng.standard_normal(factor.dimension)


def matrix_rank(matrix, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank: singular values above tol * (largest singular value)."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if matrix.size == 0:
        return 0
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    if singular_values[0] == 0.0:
        return 0
    return int(np.count_nonzero(singular_values > tol * singular_values[0]))
