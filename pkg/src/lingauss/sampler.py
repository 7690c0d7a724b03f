"""End-to-end sampling: dispatch on which constraint blocks are present.

Recipes:

* no constraints            -> direct draws from N(mu, sigma)
* equality only             -> direct latent draws mapped onto the plane
* inequality (with or
  without equality rows)    -> latent slice-sampling chain started at an
                               interior point found by linear programming

Degenerate cases short-circuit: an inconsistent equality system or an empty
inequality region yields an `impossible` outcome with the reason; a system
pinned to a single point yields `point_mass` with that point.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .elliptical_slice import run_chain
from .feasibility import find_feasible_point
from .linalg import factor_covariance
from .problem import ProblemSpec
from .transform import build_transform, classify_equality_system, map_latent

POINT_TOL = 1e-8


@dataclass
class RunReport:
    """What actually ran: recipe, classifications, and chain bookkeeping.

    chain_steps == 0 marks a direct (iid) recipe; stats consumers use that to
    skip the autocorrelation correction.
    """

    recipe: str
    equality: str | None = None
    feasibility: str | None = None
    chebyshev_radius: float | None = None
    chains: int = 1
    chain_steps: int = 0
    seconds: float = 0.0


@dataclass
class SamplingOutcome:
    status: Literal["impossible", "point_mass", "samples"]
    report: RunReport
    reason: str | None = None
    point: np.ndarray | None = None
    samples: np.ndarray | None = None


def _generators(rng, chains):
    if chains == 1:
        if isinstance(rng, np.random.Generator):
            return [rng]
        return [np.random.default_rng(int(rng))]
    if isinstance(rng, np.random.Generator):
        raise ValueError("chains > 1 needs an integer seed so chain i can use seed + i")
    return [np.random.default_rng(int(rng) + i) for i in range(chains)]


def _split_counts(n_samples, chains):
    base, extra = divmod(n_samples, chains)
    return [base + (1 if i < extra else 0) for i in range(chains)]


def sample_constrained(
    spec: ProblemSpec,
    n_samples: int,
    rng,
    *,
    burn_in: int = 0,
    thin: int = 1,
    chains: int = 1,
) -> SamplingOutcome:
    """Draw n_samples from N(mu, sigma) restricted to the problem's constraints.

    rng is an integer seed or a numpy Generator (chains > 1 requires the
    integer form; chain i is seeded with seed + i and chains run back to
    back, all started from the same LP interior point). burn_in and thin
    apply per chain and only to chain recipes -- direct recipes produce
    independent draws, so there is nothing to warm up or decorrelate.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    if burn_in < 0 or thin < 1 or chains < 1:
        raise ValueError("burn_in >= 0, thin >= 1, chains >= 1 required")
    started = time.perf_counter()
    n, m, p = spec.n, spec.m, spec.p
    recipe = (
        "unconstrained"
        if m == 0 and p == 0
        else "equality-only"
        if m == 0
        else "inequality-only"
        if p == 0
        else "equality-and-inequality"
    )
    report = RunReport(recipe=recipe)

    def done(status, **fields):
        report.seconds = time.perf_counter() - started
        return SamplingOutcome(status=status, report=report, **fields)

    if p > 0:
        classification = classify_equality_system(spec.C, spec.d)
        report.equality = classification.kind
        if classification.kind == "no_solution":
            return done("impossible", reason="equality system C x + d = 0 has no solution")
        if classification.kind == "unique":
            x = classification.x
            if m and float((spec.A @ x + spec.b).min()) < -POINT_TOL:
                return done(
                    "impossible",
                    reason="the unique equality solution violates the inequalities",
                )
            return done("point_mass", point=x)

    transformed = build_transform(spec)
    factor = factor_covariance(spec.sigma)
    generators = _generators(rng, chains)

    if m == 0:
        # independent draws: y ~ N(0, sigma) mapped through x = F y + g
        white = generators[0].standard_normal((n_samples, n))
        samples = map_latent(transformed, white @ factor.factor.T)
        return done("samples", samples=samples)

    feasibility = find_feasible_point(transformed.H, transformed.k)
    report.feasibility = feasibility.kind
    report.chebyshev_radius = feasibility.chebyshev_radius
    if feasibility.kind == "infeasible":
        return done(
            "impossible",
            reason="no point satisfies the inequalities (positive violation optimum)",
        )
    if feasibility.kind == "point_mass":
        return done("point_mass", point=map_latent(transformed, feasibility.point))

    report.chains = chains
    parts = []
    for generator, count in zip(generators, _split_counts(n_samples, chains)):
        if count == 0:
            continue
        steps = burn_in + count * thin
        latent = run_chain(transformed, factor, feasibility.point, steps, generator)
        parts.append(latent[burn_in::thin])
        report.chain_steps += steps
    samples = map_latent(transformed, np.vstack(parts))
    return done("samples", samples=samples)
