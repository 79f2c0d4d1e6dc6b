"""Command-line front end: point-cloud ingestion, solver invocation, and the
iteration-scaling benchmark harness.

Exit codes: 0 success, 1 gradcheck tolerance failure, 2 bad flags,
3 input parse errors, 4 solver errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from . import core
from .baselines import WELZL_MAX_DIM, badoiu_clarkson, welzl_exact
from .errors import EmptyInputError, InputFormatError
from .families import SmoothingParams
from .meb import MebConfig, PointCloud, farthest_sq_distance, solve_meb
from .testkit import (
    DISTRIBUTIONS,
    finite_diff_gradient,
    finite_diff_jacobian,
    random_point_cloud,
    RandomQuadraticFamily,
)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SOLVER = 4


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def parse_points_csv(path: str) -> PointCloud:
    """One point per line, comma-separated coordinates.

    A single leading header line is skipped when its first token is not
    numeric.  All rows must share the same column count.
    """
    with open(path, "r", newline="") as fh:
        lines = [line for line in fh.read().splitlines() if line.strip()]
    if not lines:
        raise EmptyInputError(f"{path}: no points found")
    start = 0
    first_tokens = [t.strip() for t in lines[0].split(",")]
    if first_tokens and not _is_number(first_tokens[0]):
        start = 1
    rows: list[list[float]] = []
    width = None
    for lineno, line in enumerate(lines[start:], start=start + 1):
        tokens = [t.strip() for t in line.split(",")]
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise InputFormatError(
                f"{path}: line {lineno} has {len(tokens)} columns, expected {width}",
                line=lineno,
            )
        row = []
        for col, token in enumerate(tokens, start=1):
            try:
                row.append(float(token))
            except ValueError:
                raise InputFormatError(
                    f"{path}: non-numeric value {token!r} at line {lineno}, column {col}",
                    line=lineno,
                    column=col,
                ) from None
        rows.append(row)
    if not rows:
        raise EmptyInputError(f"{path}: no points found")
    return PointCloud(np.array(rows))


def _emit(payload: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(output, "w") as fh:
            fh.write(payload)


def _solve_once(cloud: PointCloud, algorithm: str, epsilon: float | None, seed: int,
                trace_rows: list | None = None, radius_trace: list | None = None):
    """Run one algorithm; returns (result_dict, center, radius)."""
    t0 = time.perf_counter()
    constants = None
    if algorithm == "exact":
        exact = welzl_exact(cloud, seed=seed)
        center, radius = exact.center, exact.radius
        iterations = planned = 0
    elif algorithm == "coreset":
        res = badoiu_clarkson(cloud, epsilon)
        center, radius = res.center, res.radius
        iterations, planned = res.iterations, res.planned_iterations
    elif algorithm == "smooth":
        progress = None
        if trace_rows is not None:
            progress = lambda t, value, grad_norm: trace_rows.append((t, value, grad_norm))
        observer = None
        if radius_trace is not None:
            observer = lambda state, grad: radius_trace.append(
                (state.t, math.sqrt(farthest_sq_distance(cloud, state.x_current)[0]))
            )
        res = solve_meb(cloud, MebConfig(epsilon), progress=progress,
                        iterate_observer=observer)
        center, radius = res.center, res.radius
        iterations, planned = res.iterations, res.planned_iterations
        if res.solve_report is not None:
            rep = res.solve_report
            constants = {
                "s": rep.s,
                "L_s": rep.L_s,
                "U_s": rep.U_s,
                "kappa_s": rep.kappa_s,
                "G_s": rep.g_s,
            }
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    wall_ms = (time.perf_counter() - t0) * 1e3
    result = {
        "algorithm": algorithm,
        "n": cloud.n,
        "d": cloud.dim,
        "epsilon": epsilon,
        "center": [float(c) for c in center],
        "radius": float(radius),
        "iterations": int(iterations),
        "planned_iterations": int(planned),
        "wall_time_ms": wall_ms,
    }
    if constants is not None:
        result["constants"] = constants
    return result


def cmd_solve(args) -> int:
    if args.algorithm in ("smooth", "coreset") and args.epsilon is None:
        print("error: --epsilon is required for smooth and coreset", file=sys.stderr)
        return EXIT_USAGE
    if args.epsilon is not None and not 0 < args.epsilon <= 1:
        print("error: --epsilon must be in (0, 1]", file=sys.stderr)
        return EXIT_USAGE
    try:
        cloud = parse_points_csv(args.input)
    except (InputFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    trace_rows: list | None = [] if args.trace else None
    try:
        result = _solve_once(cloud, args.algorithm, args.epsilon, args.seed,
                             trace_rows=trace_rows)
        if args.verify and cloud.dim <= WELZL_MAX_DIM:
            exact_radius = welzl_exact(cloud, seed=args.seed).radius
            result["exact_radius"] = float(exact_radius)
            result["radius_over_exact"] = (
                float(result["radius"] / exact_radius) if exact_radius > 0 else 1.0
            )
    except Exception as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    if args.trace and trace_rows is not None:
        with open(args.trace, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "smooth_value_y", "grad_norm_y"])
            writer.writerows(trace_rows)
    _emit(json.dumps(result, indent=2), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        epsilons = [float(tok) for tok in args.epsilons.split(",") if tok]
        algorithms = [tok.strip() for tok in args.algorithms.split(",") if tok.strip()]
    except ValueError:
        print("error: --epsilons must be a comma-separated list of reals", file=sys.stderr)
        return EXIT_USAGE
    if not epsilons or not algorithms:
        print("error: --epsilons and --algorithms must be nonempty", file=sys.stderr)
        return EXIT_USAGE
    bad = [a for a in algorithms if a not in ("smooth", "coreset", "exact")]
    if bad or any(not 0 < e <= 1 for e in epsilons):
        print(f"error: bad algorithm/epsilon values: {bad or epsilons}", file=sys.stderr)
        return EXIT_USAGE

    cloud = random_point_cloud(args.seed, args.n, args.dim, args.distribution)
    exact_radius = None
    if cloud.dim <= WELZL_MAX_DIM:
        exact_radius = welzl_exact(cloud, seed=args.seed).radius

    rows = []
    try:
        for algorithm in algorithms:
            for eps in epsilons:
                radius_trace: list | None = (
                    [] if (algorithm == "smooth" and exact_radius is not None) else None
                )
                _solve_once(cloud, algorithm, eps, args.seed)  # warm-up, untimed
                result = _solve_once(cloud, algorithm, eps, args.seed,
                                     radius_trace=radius_trace)
                observed = None
                if radius_trace:
                    target = (1.0 + eps) * exact_radius
                    hits = [t for t, radius in radius_trace if radius <= target]
                    observed = min(hits) if hits else None
                over = None
                if exact_radius and exact_radius > 0:
                    over = result["radius"] / exact_radius
                rows.append({
                    "algorithm": algorithm,
                    "epsilon": eps,
                    "iterations": result["iterations"],
                    "planned_iterations": result["planned_iterations"],
                    "observed_to_target": observed,
                    "wall_time_ms": result["wall_time_ms"],
                    "radius": result["radius"],
                    "radius_over_exact": over,
                })
    except Exception as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    report = {
        "instance": {
            "seed": args.seed,
            "n": args.n,
            "dim": args.dim,
            "distribution": args.distribution,
        },
        "exact_radius": exact_radius,
        "rows": rows,
    }
    if args.format == "json":
        _emit(json.dumps(report, indent=2), args.output)
    else:
        header = ["algorithm", "epsilon", "iterations", "planned_iterations",
                  "observed_to_target", "wall_time_ms", "radius", "radius_over_exact"]
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(
                "" if row[key] is None else str(row[key]) for key in header
            ))
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_gradcheck(args) -> int:
    if args.trials < 1 or args.n < 1 or args.dim < 1 or not args.smoother > 0:
        print("error: need --trials >= 1, --n >= 1, --dim >= 1, --smoother > 0",
              file=sys.stderr)
        return EXIT_USAGE
    params = SmoothingParams(args.smoother)
    rng = np.random.default_rng(args.seed)
    worst_grad = 0.0
    worst_hess = 0.0
    worst_case = None
    for trial in range(args.trials):
        family = RandomQuadraticFamily.from_seed(args.seed + trial, args.n, args.dim)
        x = rng.standard_normal(args.dim)
        grad = core.smooth_gradient(family, params, x)
        fd_grad = finite_diff_gradient(lambda p: core.smooth_value(family, params, p), x)
        grad_err = np.linalg.norm(grad - fd_grad) / max(np.linalg.norm(fd_grad), 1e-6)
        hess = core.smooth_hessian(family, params, x)
        fd_hess = finite_diff_jacobian(
            lambda p: core.smooth_gradient(family, params, p), x
        )
        hess_err = np.linalg.norm(hess - fd_hess) / max(np.linalg.norm(fd_hess), 1e-6)
        if grad_err > worst_grad or hess_err > worst_hess:
            worst_case = (trial, x)
        worst_grad = max(worst_grad, grad_err)
        worst_hess = max(worst_hess, hess_err)
    print(f"max relative gradient error: {worst_grad:.3e}")
    print(f"max relative hessian error:  {worst_hess:.3e}")
    if worst_grad > 1e-5 or worst_hess > 1e-4:
        trial, x = worst_case
        print(f"tolerance failure at trial {trial}, x={x.tolist()}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smoothmax",
        description="Smoothed min-max solver for minimal bounding spheres",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one bounding-sphere instance")
    solve.add_argument("--input", required=True, help="CSV file, one point per line")
    solve.add_argument("--epsilon", type=float, default=None,
                       help="relative approximation slack (smooth/coreset)")
    solve.add_argument("--algorithm", required=True,
                       choices=["smooth", "coreset", "exact"])
    solve.add_argument("--output", default=None, help="output path (default stdout)")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--trace", default=None,
                       help="optional per-iteration CSV trace (smooth only)")
    solve.add_argument("--verify", action="store_true",
                       help="cross-check against the exact solver when d <= 12")
    solve.set_defaults(func=cmd_solve)

    bench = sub.add_parser("bench", help="iteration/time scaling comparison")
    bench.add_argument("--n", type=int, required=True)
    bench.add_argument("--dim", type=int, required=True)
    bench.add_argument("--distribution", default="gaussian", choices=DISTRIBUTIONS)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--epsilons", required=True,
                       help="comma-separated list, e.g. 0.2,0.1,0.05,0.025")
    bench.add_argument("--algorithms", required=True,
                       help="comma-separated subset of smooth,coreset,exact")
    bench.add_argument("--output", default=None)
    bench.add_argument("--format", default="json", choices=["json", "csv"])
    bench.set_defaults(func=cmd_bench)

    gradcheck = sub.add_parser("gradcheck",
                               help="verify smoothed derivatives against finite differences")
    gradcheck.add_argument("--seed", type=int, default=0)
    gradcheck.add_argument("--n", type=int, default=5)
    gradcheck.add_argument("--dim", type=int, default=4)
    gradcheck.add_argument("--smoother", type=float, default=5.0)
    gradcheck.add_argument("--trials", type=int, default=20)
    gradcheck.set_defaults(func=cmd_gradcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
