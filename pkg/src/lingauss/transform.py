"""Latent-variable reformulation of the constrained problem.

Equality constraints are eliminated by conditioning: with

    E = sigma @ C.T @ (C @ sigma @ C.T)^-1
    F = I - E @ C
    g = F @ mu - E @ d

a latent draw y ~ N(0, sigma) maps to x = F @ y + g, which lands exactly on
the plane C x + d = 0 and has the right conditional law there. The
inequalities become H y + k >= 0 with H = A F and k = A g + b. Without
equalities the map degenerates to F = I, g = mu.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import SingularEqualityGram
from .linalg import matrix_rank
from .problem import ProblemSpec

EQUALITY_TOL = 1e-8


@dataclass(frozen=True)
class EqualityClass:
    """Solution-set classification of C x + d = 0.

    kind: "no_solution" (inconsistent), "unique" (x holds the single
    solution), or "infinite" (a positive-dimensional solution plane).
    """

    kind: Literal["no_solution", "unique", "infinite"]
    x: np.ndarray | None = None


@dataclass(frozen=True)
class TransformedProblem:
    """Latent reformulation: sample y ~ N(0, sigma) s.t. H y + k >= 0, emit F y + g.

    E has one column per retained (non-redundant) equality row, so it is an
    (n, 0) array when the problem has no equality constraints.
    """

    E: np.ndarray
    F: np.ndarray
    g: np.ndarray
    H: np.ndarray
    k: np.ndarray


def classify_equality_system(C, d, tol: float = EQUALITY_TOL) -> EqualityClass:
    """Classify C x + d = 0 by comparing ranks of C and [C | -d].

    With p = 0 rows every x qualifies, which counts as "infinite".
    """
    C = np.atleast_2d(np.asarray(C, dtype=float))
    d = np.asarray(d, dtype=float).reshape(-1)
    p, n = C.shape
    if p != d.size:
        raise ValueError(f"C has {p} rows but d has {d.size} entries")
    if p == 0:
        return EqualityClass("infinite")
    rank_c = matrix_rank(C, tol)
    rank_aug = matrix_rank(np.hstack([C, -d[:, None]]), tol)
    if rank_c < rank_aug:
        return EqualityClass("no_solution")
    if rank_c == n:
        x, *_ = np.linalg.lstsq(C, -d, rcond=None)
        return EqualityClass("unique", x)
    return EqualityClass("infinite")


def _drop_redundant_rows(C, d, tol):
    # Keep rows of [C | d] that enlarge the row space of the rows kept so far.
    aug = np.hstack([C, d[:, None]])
    keep: list[int] = []
    for i in range(aug.shape[0]):
        if matrix_rank(aug[keep + [i]], tol) > len(keep):
            keep.append(i)
    return C[keep], d[keep]


def build_transform(spec: ProblemSpec, tol: float = EQUALITY_TOL) -> TransformedProblem:
    """Build the latent map for a problem whose equality system (if any) has
    infinitely many solutions.

    Redundant equality rows are dropped before forming the Gram matrix
    C sigma C.T; if the Gram matrix is still singular, the covariance carries
    no mass across some constraint direction and SingularEqualityGram is
    raised. E is computed through a factorization-based solve, never an
    explicit inverse.
    """
    n = spec.n
    if spec.p == 0:
        return TransformedProblem(
            E=np.zeros((n, 0)),
            F=np.eye(n),
            g=spec.mu.copy(),
            H=spec.A.copy(),
            k=spec.A @ spec.mu + spec.b,
        )
    classification = classify_equality_system(spec.C, spec.d, tol)
    if classification.kind != "infinite":
        raise ValueError(
            "build_transform needs an equality system with infinitely many "
            f"solutions, got {classification.kind!r}"
        )
    C_kept, d_kept = _drop_redundant_rows(spec.C, spec.d, tol)
    gram = C_kept @ spec.sigma @ C_kept.T
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise SingularEqualityGram(
            "C sigma C.T is singular after dropping redundant equality rows"
        ) from exc
    rhs = C_kept @ spec.sigma  # (p', n); E = (gram^-1 @ rhs).T
    E = np.linalg.solve(chol.T, np.linalg.solve(chol, rhs)).T
    F = np.eye(n) - E @ C_kept
    g = F @ spec.mu - E @ d_kept
    H = spec.A @ F
    k = spec.A @ g + spec.b
    return TransformedProblem(E=E, F=F, g=g, H=H, k=k)


def map_latent(transformed: TransformedProblem, y) -> np.ndarray:
    """x = F y + g. A 2-D input is treated as one latent vector per row."""
    y = np.asarray(y, dtype=float)
    if y.ndim == 1:
        return transformed.F @ y + transformed.g
    return y @ transformed.F.T + transformed.g
