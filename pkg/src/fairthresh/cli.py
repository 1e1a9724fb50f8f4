"""Command-line driver for the whole pipeline.

Subcommands cover cohort generation and inspection, single-point metric
evaluation, tradeoff-cloud sampling, AHP weight computation (flag-driven or
interactive), constrained optimization with an optional grid-oracle
comparison, and the HTTP server.

Exit codes: 0 success, 2 usage or validation problem, 3 inconsistent
ratings, 1 runtime failure. With --json every result is a single JSON
document on stdout; interactive prompts go to stderr so they never corrupt
the stream.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .ahp import (
    AhpRatings,
    AhpResult,
    aggregate,
    build_matrix,
    check_consistency,
    on_rating_scale,
    principal_eigen,
)
from .cohort import CohortError, Group, SyntheticSpec, generate_cohort, load_cohort, save_cohort
from .fairmetrics import DEFAULT_DI_BOUNDS, CostModel, ThresholdPair, evaluate_point
from .optimizer import (
    DEFAULT_SCALES,
    Objective,
    OptimizationResult,
    TpeConfig,
    export_history,
    grid_minimize,
    result_to_dict,
    tpe_minimize,
    trial_to_dict,
)
from .tradeoff import sample_cloud, export_cloud

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3


class UsageError(Exception):
    """Command-level validation failure mapped to exit code 2."""

#: Domain-language phrasing of the three pairwise questions, asked in the
#: fixed order (utility vs SPD, utility vs WAOD, SPD vs WAOD).
QUESTIONS = (
    (
        "utility",
        "approval-rate parity (SPD)",
        "earning more profit per applicant",
        "shrinking the approval-rate gap between groups",
    ),
    (
        "utility",
        "error-rate parity (WAOD)",
        "earning more profit per applicant",
        "shrinking the error-rate gap between groups",
    ),
    (
        "approval-rate parity (SPD)",
        "error-rate parity (WAOD)",
        "shrinking the approval-rate gap",
        "shrinking the error-rate gap",
    ),
)


def _rating_value(text: str) -> float:
    """Parse one rating: an integer 1..9 or a reciprocal like 1/4."""
    try:
        value = float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"unparsable rating {text!r}") from None
    if not on_rating_scale(value):
        raise argparse.ArgumentTypeError(
            f"rating must be an integer 1..9 or a reciprocal 1/2..1/9, got {text.strip()}"
        )
    return value


def _ratings_triple(text: str) -> AhpRatings:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated ratings, e.g. 1,2,2")
    values = [_rating_value(p) for p in parts]
    try:
        return AhpRatings(*values)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _weights_triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated weights, e.g. 1,0,0")
    try:
        w = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unparsable weights {text!r}") from None
    return w


def _scales_triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated scales, e.g. 100,0.1,0.1")
    try:
        s = tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unparsable scales {text!r}") from None
    return s


def _unit_interval(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unparsable number {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} is outside [0,1]")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"unparsable integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not a positive integer")
    return value


def _add_cost_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--profit", type=float, default=2000.0, help="expected profit per true positive")
    p.add_argument("--cost", type=float, default=10000.0, help="expected cost per false positive")
    p.add_argument("--w-fp", type=float, default=5.0, help="false-positive weight in WAOD")
    p.add_argument("--w-tp", type=float, default=1.0, help="true-positive weight in WAOD")
    p.add_argument("--di-lo", type=float, default=DEFAULT_DI_BOUNDS[0], help="lower DI bound")
    p.add_argument("--di-hi", type=float, default=DEFAULT_DI_BOUNDS[1], help="upper DI bound")


def _add_cohort_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cohort", help="path to a cohort CSV")
    src.add_argument(
        "--synthetic",
        action="store_true",
        help="use the default synthetic cohort instead of a file",
    )
    p.add_argument(
        "--synthetic-seed", type=int, default=7, help="seed for --synthetic generation"
    )


def _costs(args: argparse.Namespace) -> CostModel:
    return CostModel(
        expected_profit=args.profit,
        expected_cost=args.cost,
        w_fp=args.w_fp,
        w_tp=args.w_tp,
    )


def _bounds(args: argparse.Namespace) -> tuple[float, float]:
    if not 0.0 <= args.di_lo <= args.di_hi:
        raise ValueError(f"DI bounds must satisfy 0 <= lo <= hi, got ({args.di_lo}, {args.di_hi})")
    return args.di_lo, args.di_hi


def _cohort(args: argparse.Namespace):
    if args.cohort is not None:
        return load_cohort(args.cohort)
    return generate_cohort(SyntheticSpec(seed=args.synthetic_seed))


def _emit(args: argparse.Namespace, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(human)


def _ahp_payload(result: AhpResult, message: str) -> dict:
    return {
        "weights": list(result.weights),
        "lambda_max": result.lambda_max,
        "ci": result.consistency_index,
        "cr": result.consistency_ratio,
        "consistent": result.consistent,
        "matrix_upper": list(result.matrix.upper),
        "message": message,
    }


def _ahp_human(result: AhpResult, message: str) -> str:
    w = result.weights
    return (
        f"weights: utility={w[0]:.4f} spd={w[1]:.4f} waod={w[2]:.4f}\n"
        f"lambda_max={result.lambda_max:.6f} CI={result.consistency_index:.6f} "
        f"CR={result.consistency_ratio:.6f}\n{message}"
    )


def cmd_generate(args: argparse.Namespace) -> int:
    spec = SyntheticSpec(
        n_total=args.n,
        unprivileged_fraction=args.unp_frac,
        positive_rate_priv=args.pos_rate_priv,
        positive_rate_unp=args.pos_rate_unp,
        seed=args.seed,
    )
    cohort = generate_cohort(spec)
    save_cohort(cohort, args.out)
    _emit(
        args,
        {
            "path": args.out,
            "n_priv": cohort.n_priv,
            "n_unp": cohort.n_unp,
            "positive_rate_priv": cohort.positive_rate(Group.PRIVILEGED),
            "positive_rate_unp": cohort.positive_rate(Group.UNPRIVILEGED),
        },
        f"N_p={cohort.n_priv} N_unp={cohort.n_unp} -> {args.out}",
    )
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    cohort = _cohort(args)
    point = evaluate_point(
        cohort,
        ThresholdPair(t_unp=args.t_unp, t_priv=args.t_priv),
        _costs(args),
        _bounds(args),
    )
    payload = {
        "t_unp": point.thresholds.t_unp,
        "t_priv": point.thresholds.t_priv,
        "spd": point.spd,
        "waod": point.waod,
        "di_ratio": point.di_ratio if math.isfinite(point.di_ratio) else None,
        "utility_total": point.utility_total,
        "utility_per_applicant": point.utility_per_applicant,
        "feasible": point.feasible,
    }
    _emit(
        args,
        payload,
        f"spd={point.spd:.6f} waod={point.waod:.6f} di_ratio={point.di_ratio:.6f} "
        f"utility_total={point.utility_total:.2f} "
        f"utility_per_applicant={point.utility_per_applicant:.2f} "
        f"feasible={'true' if point.feasible else 'false'}",
    )
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    cohort = _cohort(args)
    cloud = sample_cloud(
        cohort,
        _costs(args),
        n=args.n,
        di_bounds=_bounds(args),
        seed=args.seed,
        keep_infeasible=args.keep_infeasible,
    )
    export_cloud(cloud, args.out)
    _emit(
        args,
        {
            "path": args.out,
            "sample_count": cloud.sample_count,
            "kept_count": cloud.kept_count,
            "rows": len(cloud.points),
        },
        f"sampled={cloud.sample_count} feasible={cloud.kept_count} "
        f"rows={len(cloud.points)} -> {args.out}",
    )
    return EXIT_OK


def _interactive_ratings() -> AhpRatings:
    print(
        "Answer each question with how many times more important the FIRST\n"
        "item is: an integer 1-9, or a reciprocal like 1/4 if the second item\n"
        "matters more. 1 means equally important.",
        file=sys.stderr,
    )
    values = []
    for first, second, first_plain, second_plain in QUESTIONS:
        print(
            f"\n{first} vs {second}:\n"
            f"  is {first_plain} (enter n) or {second_plain} (enter 1/n) more important?",
            file=sys.stderr,
        )
        while True:
            answer = input("rating> ")
            try:
                values.append(_rating_value(answer))
                break
            except argparse.ArgumentTypeError as exc:
                print(f"  {exc}; try again", file=sys.stderr)
    try:
        return AhpRatings(*values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_raters(path: str) -> list[AhpRatings]:
    ratings = []
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            ratings.append(_ratings_triple(line))
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{path}:{line_no}: {exc}") from None
    if not ratings:
        raise UsageError(f"{path} contains no ratings")
    return ratings


def cmd_weights(args: argparse.Namespace) -> int:
    if args.raters is not None:
        matrix = aggregate(_load_raters(args.raters))
    elif args.interactive:
        matrix = build_matrix(_interactive_ratings())
    else:
        matrix = build_matrix(args.ratings)
    result = principal_eigen(matrix)
    consistent, message = check_consistency(result)
    _emit(args, _ahp_payload(result, message), _ahp_human(result, message))
    return EXIT_OK if consistent else EXIT_INCONSISTENT


def _result_summary(result: OptimizationResult) -> str:
    best = result.best
    if best is None:
        return result.diagnostic or "no feasible trial"
    p = best.point
    return (
        f"best: t_unp={p.thresholds.t_unp:.4f} t_priv={p.thresholds.t_priv:.4f} "
        f"objective={best.objective_value:.6f}\n"
        f"      spd={p.spd:.6f} waod={p.waod:.6f} di_ratio={p.di_ratio:.6f} "
        f"utility_per_applicant={p.utility_per_applicant:.2f}"
    )


def cmd_optimize(args: argparse.Namespace) -> int:
    cohort = _cohort(args)
    costs = _costs(args)
    bounds = _bounds(args)
    if args.weights is not None:
        weights = args.weights
    else:
        ahp_result = principal_eigen(build_matrix(args.ratings))
        consistent, message = check_consistency(ahp_result)
        if not consistent:
            print(message, file=sys.stderr)
            return EXIT_INCONSISTENT
        weights = ahp_result.weights
    objective = Objective(weights=weights, scales=args.scales, di_bounds=bounds)
    config = TpeConfig(
        n_trials=args.trials,
        n_startup=args.startup,
        gamma=args.gamma,
        n_candidates=args.candidates,
        seed=args.seed,
    )
    result = tpe_minimize(cohort, costs, objective, config)
    payload = result_to_dict(result)
    human_lines = [_result_summary(result)]
    if args.oracle == "grid":
        oracle = grid_minimize(cohort, costs, objective, step=args.grid_step)
        payload["oracle"] = result_to_dict(oracle)
        if result.best is not None and oracle.best is not None:
            gap = result.best.objective_value - oracle.best.objective_value
            payload["oracle_gap"] = gap
            ob = oracle.best
            human_lines.append(
                f"grid oracle: objective={ob.objective_value:.6f} "
                f"t_unp={ob.thresholds.t_unp:.4f} t_priv={ob.thresholds.t_priv:.4f} "
                f"gap={gap:.6f}"
            )
    if args.out is not None:
        Path(args.out).write_text(
            json.dumps(result_to_dict(result, include_history=True)), encoding="utf-8"
        )
        human_lines.append(f"result -> {args.out}")
    if args.history is not None:
        export_history(result, args.history)
        human_lines.append(f"history -> {args.history}")
    _emit(args, payload, "\n".join(human_lines))
    return EXIT_OK if result.best is not None else EXIT_RUNTIME


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host, _, port_text = args.addr.rpartition(":")
    if not host or not port_text.isdigit():
        raise UsageError(f"--addr must look like host:port, got {args.addr!r}")
    app = create_app(args.data_dir, static_dir=args.static)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairthresh",
        description="Joint fairness-utility optimization of group decision thresholds.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic cohort CSV")
    p.add_argument("--n", type=_positive_int, default=1000, help="total records")
    p.add_argument("--unp-frac", type=float, default=0.19, help="unprivileged fraction")
    p.add_argument("--pos-rate-priv", type=float, default=0.7249)
    p.add_argument("--pos-rate-unp", type=float, default=0.5726)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", required=True, help="destination CSV path")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", help="evaluate metrics at one threshold pair")
    _add_cohort_source(p)
    p.add_argument("--t-unp", type=_unit_interval, required=True)
    p.add_argument("--t-priv", type=_unit_interval, required=True)
    _add_cost_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sample", help="sample and export a tradeoff cloud")
    _add_cohort_source(p)
    p.add_argument("--n", type=_positive_int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--keep-infeasible", action="store_true")
    p.add_argument("--out", required=True, help="destination CSV path")
    _add_cost_flags(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("weights", help="compute AHP preference weights")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--ratings", type=_ratings_triple, help="a,b,c ratings, e.g. 1,2,2")
    src.add_argument("--interactive", action="store_true", help="prompt for the three ratings")
    src.add_argument("--raters", help="file with one a,b,c triple per line, aggregated")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("optimize", help="TPE-minimize the scalarized objective")
    _add_cohort_source(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--ratings", type=_ratings_triple, help="AHP ratings a,b,c")
    src.add_argument("--weights", type=_weights_triple, help="direct weights w_util,w_spd,w_waod")
    p.add_argument("--scales", type=_scales_triple, default=DEFAULT_SCALES)
    p.add_argument("--trials", type=_positive_int, default=500)
    p.add_argument("--startup", type=_positive_int, default=20)
    p.add_argument("--gamma", type=float, default=0.25)
    p.add_argument("--candidates", type=_positive_int, default=24)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", choices=("grid", "none"), default="none")
    p.add_argument("--grid-step", type=float, default=0.005)
    p.add_argument("--out", help="write full result JSON here")
    p.add_argument("--history", help="write trial history CSV here")
    _add_cost_flags(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--addr", default="127.0.0.1:8000", help="listen address host:port")
    p.add_argument("--data-dir", default="./fairthresh-data", help="session storage directory")
    p.add_argument("--static", default=None, help="static asset directory served at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CohortError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
