"""Sampling from a multivariate normal under linear constraints, rejection-free.

Draws x ~ N(mu, sigma) restricted to A x + b >= 0 and/or C x + d = 0.
Equalities are eliminated by conditioning onto the constraint plane;
inequalities are handled by elliptical slice sampling over the feasible arcs
of each proposal ellipse, so every chain step yields a sample. Infeasible and
point-mass constraint systems are detected and reported instead of sampled.
"""

from .elliptical_slice import ArcSet, ChainState, active_arcs, ess_step, run_chain
from .errors import (
    CyclingGuardExceeded,
    DegenerateRegion,
    DegenerateSamples,
    EmptyArcSet,
    LinGaussError,
    NotPSD,
    NotSymmetric,
    ProblemFormatError,
    SingularEqualityGram,
)
from .feasibility import FeasibilityResult, find_feasible_point, max_slack_model, phase_one_model
from .fixtures import pentagon_problem, pentagon_transform, write_pentagon_files
from .linalg import CovarianceFactor, factor_covariance, matrix_rank, sample_mvn_zero
from .oracles import (
    RejectionReport,
    ValidationTransform,
    conditional_direct_sample,
    pentagon_plane_coords,
    rejection_sample,
)
from .problem import ProblemSpec, load_problem, problem_from_dict, problem_to_dict, save_problem
from .sampler import RunReport, SamplingOutcome, sample_constrained
from .simplex import LinearProgram, LpSolution, solve_lp
from .stats import ComparisonReport, SampleStats, compare_stats, sample_stats
from .transform import (
    EqualityClass,
    TransformedProblem,
    build_transform,
    classify_equality_system,
    map_latent,
)

__version__ = "0.1.0"

__all__ = [
    "ArcSet",
    "ChainState",
    "ComparisonReport",
    "CovarianceFactor",
    "CyclingGuardExceeded",
    "DegenerateRegion",
    "DegenerateSamples",
    "EmptyArcSet",
    "EqualityClass",
    "FeasibilityResult",
    "LinGaussError",
    "LinearProgram",
    "LpSolution",
    "NotPSD",
    "NotSymmetric",
    "ProblemFormatError",
    "ProblemSpec",
    "RejectionReport",
    "RunReport",
    "SampleStats",
    "SamplingOutcome",
    "SingularEqualityGram",
    "TransformedProblem",
    "ValidationTransform",
    "active_arcs",
    "build_transform",
    "classify_equality_system",
    "compare_stats",
    "conditional_direct_sample",
    "ess_step",
    "factor_covariance",
    "find_feasible_point",
    "load_problem",
    "map_latent",
    "matrix_rank",
    "max_slack_model",
    "pentagon_plane_coords",
    "pentagon_problem",
    "pentagon_transform",
    "phase_one_model",
    "problem_from_dict",
    "problem_to_dict",
    "rejection_sample",
    "run_chain",
    "sample_constrained",
    "sample_mvn_zero",
    "sample_stats",
    "save_problem",
    "solve_lp",
    "write_pentagon_files",
]
