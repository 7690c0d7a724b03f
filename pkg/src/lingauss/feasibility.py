"""Feasibility classification of {y : H y + k >= 0} and chain start points.

Three linear programs answer three questions:

1. Is the region nonempty?  Minimize the total violation sum(a) subject to
   H y + k + a >= 0, a >= 0.  This program is feasible by construction; a
   positive optimum means no y satisfies everything at once.
2. Does it have an interior?  Maximize a slack s (capped at 1) subject to
   H y + k >= s * rownorm(H), a Chebyshev-ball construction whose optimum is
   the radius of the largest inscribed ball.
3. If the interior is empty, is the region a single point?  Probe the range
   of every coordinate with a pair of LPs; all ranges at zero means a point
   mass, anything wider (or unbounded) is a flat region the sampler cannot
   honestly represent, reported as DegenerateRegion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DegenerateRegion
from .simplex import LinearProgram, LpSolution, solve_lp

FEAS_TOL = 1e-9


@dataclass(frozen=True)
class FeasibilityResult:
    """kind: "infeasible" | "point_mass" | "full_dimensional".

    point is a feasible latent vector for the two non-empty kinds;
    chebyshev_radius is set only for full-dimensional regions (the optimum of
    the slack program, capped at 1; the returned point is strictly interior
    but may hold less slack than the optimum when the optimum face is remote).
    """

    kind: Literal["infeasible", "point_mass", "full_dimensional"]
    point: np.ndarray | None = None
    chebyshev_radius: float | None = None


def phase_one_model(H, k) -> LinearProgram:
    """min sum(a)  s.t.  H y + k + a >= 0,  a >= 0  (y free).

    Always feasible: a can absorb any violation. Optimum 0 iff some y
    satisfies every inequality.
    """
    H = np.atleast_2d(np.asarray(H, dtype=float))
    k = np.asarray(k, dtype=float).reshape(-1)
    m, n = H.shape
    c = np.concatenate([np.zeros(n), np.ones(m)])
    G = np.hstack([H, np.eye(m)])
    nonneg = np.concatenate([np.zeros(n, dtype=bool), np.ones(m, dtype=bool)])
    return LinearProgram(c=c, G=G, h=-k, nonneg=nonneg)


def max_slack_model(H, k) -> LinearProgram:
    """max s  s.t.  H y + k >= s * rownorm(H),  s <= 1  (posed as min -s)."""
    H = np.atleast_2d(np.asarray(H, dtype=float))
    k = np.asarray(k, dtype=float).reshape(-1)
    m, n = H.shape
    norms = np.linalg.norm(H, axis=1)
    c = np.zeros(n + 1)
    c[-1] = -1.0
    G = np.vstack([np.hstack([H, -norms[:, None]]), np.zeros((1, n + 1))])
    G[-1, -1] = -1.0
    h = np.concatenate([-k, [-1.0]])
    return LinearProgram(c=c, G=G, h=h)


def _pull_in(H, k, radius, tol):
    """Interior start point with slack priced against distance from the origin.

    min  sum|y| - weight * s   s.t.   H y + k >= s * rownorm(H),
                                      radius * 1e-6 <= s <= radius

    The slack optimum of max_slack_model can be attained on a face that
    recedes arbitrarily far from the origin (narrow unbounded cones), where a
    start point is useless: the sampler's target carries essentially no mass
    there. Buying slack at a bounded price per unit of l1 distance keeps the
    full slack whenever it is cheap -- bounded regions, where the optimum face
    passes near the mass anyway -- and otherwise settles at the knee of the
    distance/slack tradeoff close to the origin. The floor keeps the point
    strictly interior either way.
    """
    m, n = H.shape
    norms = np.linalg.norm(H, axis=1)
    weight = 4.0 * n
    # variables [y_pos, y_neg, s] >= 0 with y = y_pos - y_neg
    c = np.concatenate([np.ones(2 * n), [-weight]])
    G = np.zeros((m + 2, 2 * n + 1))
    G[:m, :n] = H
    G[:m, n : 2 * n] = -H
    G[:m, -1] = -norms
    G[m, -1] = 1.0  # s >= radius * 1e-6
    G[m + 1, -1] = -1.0  # s <= radius
    h = np.concatenate([-k, [radius * 1e-6, -radius]])
    model = LinearProgram(c=c, G=G, h=h, nonneg=np.ones(2 * n + 1, dtype=bool))
    solution = solve_lp(model, tol)
    if solution.status != "optimal":
        return None
    return solution.x[:n] - solution.x[n : 2 * n]


def _coordinate_range(H, negk, i, tol):
    """(low, high) extent of coordinate i over the region, entries None if unbounded."""
    n = H.shape[1]
    bounds = []
    for sign in (1.0, -1.0):
        c = np.zeros(n)
        c[i] = sign
        solution = solve_lp(LinearProgram(c=c, G=H, h=negk), tol)
        bounds.append(None if solution.status == "unbounded" else sign * solution.objective)
    return bounds[0], bounds[1]


def find_feasible_point(H, k, tol: float = FEAS_TOL) -> FeasibilityResult:
    """Classify {y : H y + k >= 0} and return a start point when one exists.

    Requires at least one inequality row; callers handle m = 0 as trivially
    full-dimensional at the origin.
    """
    H = np.atleast_2d(np.asarray(H, dtype=float))
    k = np.asarray(k, dtype=float).reshape(-1)
    m, n = H.shape
    if m == 0:
        raise ValueError("find_feasible_point needs at least one inequality row")
    if m != k.size:
        raise ValueError(f"H has {m} rows but k has {k.size} entries")

    violation = solve_lp(phase_one_model(H, k), tol)
    if violation.status != "optimal":  # the model is feasible by construction
        raise RuntimeError(f"violation program ended {violation.status}; expected optimal")
    if violation.objective > tol:
        return FeasibilityResult("infeasible")
    feasible_y = violation.x[:n]

    slack = solve_lp(max_slack_model(H, k), tol)
    if slack.status != "optimal":  # s is capped at 1, so unbounded is impossible
        raise RuntimeError(f"slack program ended {slack.status}; expected optimal")
    radius = -slack.objective
    if radius > tol:
        point = _pull_in(H, k, radius, tol)
        if point is None:  # roundoff starved the follow-up program; keep the vertex
            point = slack.x[:n]
        return FeasibilityResult("full_dimensional", point, float(radius))

    # empty interior: point mass or flat region?
    for i in range(n):
        low, high = _coordinate_range(H, -k, i, tol)
        if low is None or high is None:
            raise DegenerateRegion(
                f"feasible region has empty interior yet coordinate {i + 1} is unbounded"
            )
        if high - low > tol:
            raise DegenerateRegion(
                "feasible region has empty interior but positive extent "
                f"{high - low:.3e} along coordinate {i + 1}"
            )
    return FeasibilityResult("point_mass", feasible_y)
