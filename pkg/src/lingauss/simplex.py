"""Dense two-phase simplex for small linear programs in inequality form.

Solves    minimize c @ x    subject to    G @ x >= h,

where each variable is either free or sign-restricted to x_j >= 0. Free
variables are split into positive and negative parts, surplus variables turn
the inequalities into equations, and phase 1 drives artificial variables out
of the basis before phase 2 optimizes the real objective. Entering columns
follow Dantzig's rule (most negative reduced cost) until the objective stops
improving for STALL_LIMIT consecutive pivots, after which Bland's rule takes
over to rule out cycling; a hard iteration cap backstops both phases.

The problems fed to this solver are tiny (tens of variables), so the code
favours clarity over sparse-matrix tricks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CyclingGuardExceeded

PIVOT_TOL = 1e-9
STALL_LIMIT = 100  # non-improving pivots tolerated before switching to Bland's rule


@dataclass
class LinearProgram:
    """min c @ x  s.t.  G @ x >= h;  x_j >= 0 where nonneg[j], else free.

    nonneg=None marks every variable free.
    """

    c: np.ndarray
    G: np.ndarray
    h: np.ndarray
    nonneg: np.ndarray | None = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).reshape(-1)
        self.G = np.atleast_2d(np.asarray(self.G, dtype=float))
        self.h = np.asarray(self.h, dtype=float).reshape(-1)
        nv = self.c.size
        if nv == 0:
            raise ValueError("linear program needs at least one variable")
        if self.G.size == 0:
            self.G = self.G.reshape(0, nv)
        if self.G.shape[1] != nv:
            raise ValueError(f"G must have {nv} columns, got {self.G.shape[1]}")
        if self.G.shape[0] != self.h.size:
            raise ValueError(f"G has {self.G.shape[0]} rows but h has {self.h.size}")
        if self.nonneg is None:
            self.nonneg = np.zeros(nv, dtype=bool)
        else:
            self.nonneg = np.asarray(self.nonneg, dtype=bool).reshape(-1)
            if self.nonneg.size != nv:
                raise ValueError("nonneg mask length must match c")


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "unbounded" | "infeasible"
    objective: float | None
    x: np.ndarray | None


def _pivot(tableau, basis, row, col):
    tableau[row] /= tableau[row, col]
    multipliers = tableau[:, col].copy()
    multipliers[row] = 0.0
    tableau -= np.outer(multipliers, tableau[row])
    # scrub roundoff so the pivot column is an exact unit vector
    tableau[:, col] = 0.0
    tableau[row, col] = 1.0
    basis[row] = col


def _iterate(tableau, basis, ncols, tol, cap):
    """Pivot until the reduced costs are nonnegative. Mutates tableau/basis.

    Returns "optimal" or "unbounded"; raises CyclingGuardExceeded at the cap.
    """
    nrows = len(basis)
    bland = False
    stalled = 0
    best = -tableau[-1, -1]
    for _ in range(cap):
        reduced = tableau[-1, :ncols]
        if bland:
            negatives = np.flatnonzero(reduced < -tol)
            if negatives.size == 0:
                return "optimal"
            col = int(negatives[0])
        else:
            col = int(np.argmin(reduced))
            if reduced[col] >= -tol:
                return "optimal"
        pivot_col = tableau[:nrows, col]
        eligible = pivot_col > tol
        if not eligible.any():
            return "unbounded"
        ratios = np.full(nrows, np.inf)
        ratios[eligible] = tableau[:nrows, -1][eligible] / pivot_col[eligible]
        least = ratios.min()
        ties = np.flatnonzero(ratios == least)
        row = int(ties[np.argmin(np.asarray(basis)[ties])])  # Bland-safe tie-break
        _pivot(tableau, basis, row, col)
        objective = -tableau[-1, -1]
        if objective < best - tol:
            best = objective
            stalled = 0
        else:
            stalled += 1
            if stalled >= STALL_LIMIT:
                bland = True
    raise CyclingGuardExceeded(f"simplex did not converge within {cap} pivots")


def solve_lp(model: LinearProgram, tol: float = PIVOT_TOL) -> LpSolution:
    """Solve the model; an Optimal solution is a vertex of the standard form."""
    nrows, nv = model.G.shape

    # column t of the standard form is sign * (original variable j)
    split: list[tuple[int, float]] = []
    for j in range(nv):
        split.append((j, 1.0))
        if not model.nonneg[j]:
            split.append((j, -1.0))
    n_struct = len(split)
    total = n_struct + 2 * nrows  # + surplus + artificial
    art0 = n_struct + nrows

    body = np.zeros((nrows, total))
    for t, (j, sign) in enumerate(split):
        body[:, t] = sign * model.G[:, j]
    body[:, n_struct:art0] = -np.eye(nrows)
    rhs = model.h.copy()
    flip = rhs < 0.0
    body[flip] *= -1.0
    rhs[flip] *= -1.0
    body[:, art0:] = np.eye(nrows)

    tableau = np.zeros((nrows + 1, total + 1))
    tableau[:nrows, :total] = body
    tableau[:nrows, -1] = rhs
    basis = [art0 + i for i in range(nrows)]
    # phase-1 reduced costs: artificial costs 1, priced out against the basis
    # (each artificial column prices to exactly zero)
    tableau[-1, art0:total] = 1.0
    tableau[-1] -= tableau[:nrows].sum(axis=0)

    cap = 50 * (total + nrows)
    status = _iterate(tableau, basis, total, tol, cap)
    if status == "unbounded":  # impossible for a sum of nonnegative variables
        raise CyclingGuardExceeded("phase 1 reported unbounded: numerical breakdown")
    if -tableau[-1, -1] > tol:
        return LpSolution("infeasible", None, None)

    # drive any leftover zero-valued artificials out of the basis
    drop_rows = []
    for i in range(nrows):
        if basis[i] >= art0:
            candidates = np.flatnonzero(np.abs(tableau[i, :art0]) > tol)
            if candidates.size:
                col = int(candidates[np.argmax(np.abs(tableau[i, candidates]))])
                _pivot(tableau, basis, i, col)
            else:
                drop_rows.append(i)  # redundant constraint row
    if drop_rows:
        tableau = np.delete(tableau, drop_rows, axis=0)
        basis = [b for i, b in enumerate(basis) if i not in set(drop_rows)]
        nrows = len(basis)

    # phase 2: drop artificial columns, price the real objective
    tableau = np.delete(tableau, np.s_[art0:total], axis=1)
    cost = np.zeros(art0)
    for t, (j, sign) in enumerate(split):
        cost[t] = sign * model.c[j]
    tableau[-1, :] = 0.0
    tableau[-1, :art0] = cost
    for i in range(nrows):
        cb = cost[basis[i]]
        if cb != 0.0:
            tableau[-1] -= cb * tableau[i]

    status = _iterate(tableau, basis, art0, tol, cap)
    if status == "unbounded":
        return LpSolution("unbounded", None, None)

    values = np.zeros(art0)
    for i in range(nrows):
        values[basis[i]] = tableau[i, -1]
    x = np.zeros(nv)
    for t, (j, sign) in enumerate(split):
        x[j] += sign * values[t]
    return LpSolution("optimal", float(model.c @ x), x)
