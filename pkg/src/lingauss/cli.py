"""Command-line interface.

Subcommands:

* sample   -- draw from a problem file, write CSV, print run summary
* check    -- classify a problem's constraint system without sampling
* compare  -- run the sampler and a reference oracle, test moment agreement
* fixtures -- write the built-in validation problem files

Exit codes: 0 success, 1 malformed input, 2 infeasible problem, 3 numerical
failure (the failing condition is named on stderr), 4 compare ran fine but
some element disagreed.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import (
    CyclingGuardExceeded,
    DegenerateRegion,
    DegenerateSamples,
    EmptyArcSet,
    NotPSD,
    NotSymmetric,
    ProblemFormatError,
    SingularEqualityGram,
)
from .feasibility import find_feasible_point
from .fixtures import write_pentagon_files
from .oracles import conditional_direct_sample, rejection_sample
from .problem import load_problem
from .sampler import sample_constrained
from .stats import compare_stats, sample_stats
from .transform import build_transform, classify_equality_system, map_latent

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_NUMERICAL = 3
EXIT_DISAGREE = 4

# distinct streams for the two sides of a comparison run
_ORACLE_SEED_OFFSET = 1_000_003


def _write_csv(path, samples):
    dim = samples.shape[1]
    with open(path, "w", newline="\n") as handle:
        handle.write(",".join(f"x{i + 1}" for i in range(dim)) + "\n")
        for row in samples:
            handle.write(",".join(f"{value:.17g}" for value in row) + "\n")


def _print_stats(stats):
    print(f"samples: {stats.n}")
    print(f"{'coord':<6} {'mean':>14} {'se(mean)':>12} {'ess':>12}")
    for i in range(stats.mean.size):
        print(
            f"x{i + 1:<5} {stats.mean[i]:>14.8g} {stats.mean_se[i]:>12.4g} "
            f"{stats.ess[i]:>12.1f}"
        )
    print("covariance:")
    for row in stats.covariance:
        print("  " + "  ".join(f"{value:>12.6g}" for value in row))


def _format_point(point):
    return "[" + ", ".join(f"{value:.10g}" for value in point) + "]"


def _cmd_sample(args):
    spec = load_problem(args.problem)
    outcome = sample_constrained(
        spec,
        args.n,
        args.seed,
        burn_in=args.burn_in,
        thin=args.thin,
        chains=args.chains,
    )
    report = outcome.report
    if outcome.status == "impossible":
        print(f"infeasible: {outcome.reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    print(f"recipe: {report.recipe}")
    if report.equality:
        print(f"equality system: {report.equality}")
    if report.feasibility:
        print(f"inequality region: {report.feasibility}")
    if report.chebyshev_radius is not None:
        print(f"interior slack radius: {report.chebyshev_radius:.6g}")
    if outcome.status == "point_mass":
        print(f"point mass at {_format_point(outcome.point)}")
        rows = np.tile(outcome.point, (args.n, 1))
        _write_csv(args.out, rows)
        print(f"wrote {args.n} identical rows to {args.out}")
        return EXIT_OK
    if report.chain_steps:
        print(
            f"chain steps: {report.chain_steps} across {report.chains} chain(s) "
            f"(burn-in {args.burn_in}, thin {args.thin})"
        )
    _write_csv(args.out, outcome.samples)
    _print_stats(sample_stats(outcome.samples, independent=report.chain_steps == 0))
    print(f"wrote {outcome.samples.shape[0]} rows to {args.out} in {report.seconds:.2f}s")
    return EXIT_OK


def _cmd_check(args):
    spec = load_problem(args.problem)
    print(f"dimension: {spec.n}, inequalities: {spec.m}, equalities: {spec.p}")
    if spec.p:
        classification = classify_equality_system(spec.C, spec.d)
        print(f"equality system: {classification.kind}")
        if classification.kind == "no_solution":
            print("infeasible: equality system C x + d = 0 has no solution", file=sys.stderr)
            return EXIT_INFEASIBLE
        if classification.kind == "unique":
            x = classification.x
            if spec.m and float((spec.A @ x + spec.b).min()) < -1e-8:
                print(
                    "infeasible: the unique equality solution violates the inequalities",
                    file=sys.stderr,
                )
                return EXIT_INFEASIBLE
            print(f"point mass at {_format_point(x)}")
            return EXIT_OK
    if spec.m == 0:
        kind = "unconstrained normal" if spec.p == 0 else "normal restricted to a plane"
        print(f"feasible: {kind}, direct sampling applies")
        return EXIT_OK
    transformed = build_transform(spec)
    result = find_feasible_point(transformed.H, transformed.k)
    if result.kind == "infeasible":
        print(
            "infeasible: no point satisfies the inequalities (positive violation optimum)",
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    if result.kind == "point_mass":
        print(f"point mass at {_format_point(map_latent(transformed, result.point))}")
        return EXIT_OK
    print(f"feasible: full-dimensional, interior slack radius {result.chebyshev_radius:.6g}")
    print(f"latent start point: {_format_point(result.point)}")
    return EXIT_OK


def _cmd_compare(args):
    spec = load_problem(args.problem)
    if args.oracle == "rejection" and spec.p:
        print("error: the rejection oracle needs a problem without equalities", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.oracle == "conditional" and spec.p == 0:
        print("error: the conditional oracle needs equality constraints", file=sys.stderr)
        return EXIT_BAD_INPUT

    # under --json stdout must hold exactly the JSON document, so narrative
    # lines move to stderr
    narrate = sys.stderr if args.json else sys.stdout

    outcome = sample_constrained(spec, args.n, args.seed)
    if outcome.status == "impossible":
        print(f"infeasible: {outcome.reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if outcome.status == "point_mass":
        print(f"point mass at {_format_point(outcome.point)}; nothing to compare", file=narrate)
        return EXIT_OK
    method = sample_stats(outcome.samples, independent=outcome.report.chain_steps == 0)

    oracle_rng = np.random.default_rng(args.seed + _ORACLE_SEED_OFFSET)
    if args.oracle == "rejection":
        report = rejection_sample(spec, args.proposals, oracle_rng)
    else:
        ineq = (spec.A, spec.b) if spec.m else None
        report = conditional_direct_sample(spec, args.n, oracle_rng, inequality_filter=ineq)
    print(
        f"oracle '{args.oracle}': {report.accepted} of {report.proposals} proposals kept "
        f"(rate {report.acceptance_rate:.3g})",
        file=narrate,
    )
    if report.accepted < 2:
        print(
            "error: oracle produced fewer than two samples; raise --proposals",
            file=sys.stderr,
        )
        return EXIT_NUMERICAL
    oracle = sample_stats(report.samples, independent=True)

    comparison = compare_stats(method, oracle, sigma_level=args.sigma)
    print(comparison.to_json() if args.json else comparison.to_text())
    return EXIT_OK if comparison.all_passed else EXIT_DISAGREE


def _cmd_fixtures(args):
    for path in write_pentagon_files(args.out_dir):
        print(path)
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="lingauss",
        description=(
            "Sampling from a multivariate normal under linear equality and "
            "inequality constraints, without rejection."
        ),
        epilog=(
            "Exit codes: 0 ok, 1 malformed input, 2 infeasible, 3 numerical "
            "failure, 4 comparison disagreed."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sample = sub.add_parser("sample", help="draw samples and write them as CSV")
    sample.add_argument("--problem", required=True, help="problem JSON file")
    sample.add_argument("--n", required=True, type=int, help="number of samples")
    sample.add_argument("--seed", required=True, type=int, help="random seed")
    sample.add_argument("--burn-in", type=int, default=0, help="discarded leading chain steps")
    sample.add_argument("--thin", type=int, default=1, help="keep every thin-th chain state")
    sample.add_argument(
        "--chains", type=int, default=1, help="independent chains (chain i uses seed + i)"
    )
    sample.add_argument("--out", default="samples.csv", help="output CSV path")
    sample.set_defaults(func=_cmd_sample)

    check = sub.add_parser("check", help="classify the constraint system, no sampling")
    check.add_argument("--problem", required=True, help="problem JSON file")
    check.set_defaults(func=_cmd_check)

    compare = sub.add_parser("compare", help="test sampler against a reference oracle")
    compare.add_argument("--problem", required=True, help="problem JSON file")
    compare.add_argument("--n", required=True, type=int, help="samples for the method side")
    compare.add_argument("--seed", required=True, type=int, help="random seed")
    compare.add_argument(
        "--oracle",
        required=True,
        choices=("rejection", "conditional"),
        help="reference sampler to compare against",
    )
    compare.add_argument("--sigma", type=float, default=4.0, help="agreement threshold")
    compare.add_argument(
        "--proposals",
        type=int,
        default=10_000_000,
        help="proposal budget for the rejection oracle",
    )
    compare.add_argument("--json", action="store_true", help="machine-readable report")
    compare.set_defaults(func=_cmd_compare)

    fixtures = sub.add_parser("fixtures", help="write the built-in validation problems")
    fixtures.add_argument("--name", required=True, choices=("pentagon",))
    fixtures.add_argument("--out-dir", default=".", help="directory for the JSON files")
    fixtures.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProblemFormatError, NotSymmetric, NotPSD, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (
        SingularEqualityGram,
        DegenerateRegion,
        EmptyArcSet,
        CyclingGuardExceeded,
        DegenerateSamples,
    ) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
