"""Command-line surface.

Subcommands: ``bound`` (single bound, machine-readable key=value line),
``sweep`` (CSV grid over sigma), ``verify`` (invariant suites),
``collapse-demo`` (truncated collapse vs the Winsorized floor) and
``constants`` (the universal asymptotic constants).

Exit codes: 0 success, 1 failed verification, 2 invalid parameters,
3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import asymptotics, oracle, verify
from .distributions import BoundQuery
from .errors import (
    CaseViolationError,
    ExponentOverflowError,
    MaxIterationsError,
    NonFiniteValueError,
    NoSignChangeError,
    ParameterError,
)
from .sweeps import SweepKind, compute_sweep, sigma_grid, write_csv
from .trunc import lower_bound_trunc
from .winsor import lower_bound_fixed_c, lower_bound_universal

_BOUND_KINDS = ("universal-winsor", "fixed-winsor", "trunc")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_NO_CONVERGENCE = 3


def _parse_c_list(raw: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise ParameterError(f"--c expects a comma-separated list of reals, got {raw!r}")
    if not values:
        raise ParameterError("--c expects at least one value")
    return values


def _emit(pairs) -> None:
    print(" ".join(f"{key}={value}" for key, value in pairs))


def cmd_bound(args) -> int:
    if args.sigma is None:
        raise ParameterError("bound requires --sigma")
    if args.kind == "universal-winsor":
        if args.c is not None:
            raise ParameterError("universal-winsor takes no --c")
        solution = lower_bound_universal(args.sigma, args.cut)
        _emit((
            ("kind", args.kind),
            ("sigma", repr(solution.sigma)),
            ("cut", repr(solution.cut)),
            ("bound", repr(solution.bound)),
            ("a", repr(solution.a_sigma)),
            ("b", repr(solution.b_sigma)),
            ("c_sigma", repr(solution.c_sigma)),
        ))
        return EXIT_OK

    if args.c is None:
        raise ParameterError(f"{args.kind} requires --c")
    c_values = _parse_c_list(args.c)
    if len(c_values) != 1:
        raise ParameterError("bound takes a single --c value")
    query = BoundQuery(c=c_values[0], sigma=args.sigma, cut=args.cut)
    if args.kind == "fixed-winsor":
        solution = lower_bound_fixed_c(query)
        _emit((
            ("kind", args.kind),
            ("c", repr(query.c)),
            ("sigma", repr(query.sigma)),
            ("cut", repr(query.cut)),
            ("bound", repr(solution.bound)),
            ("a", repr(solution.a_c_sigma)),
            ("b", repr(solution.b_c_sigma)),
        ))
    else:
        solution = lower_bound_trunc(query)
        pairs = [
            ("kind", args.kind),
            ("c", repr(query.c)),
            ("sigma", repr(query.sigma)),
            ("cut", repr(query.cut)),
            ("branch", solution.branch.value),
            ("bound", repr(solution.bound)),
            ("A_c", repr(solution.A_c)),
            ("a", repr(solution.extremal.a)),
            ("b", repr(solution.extremal.b)),
        ]
        _emit(pairs)
    return EXIT_OK


def cmd_sweep(args) -> int:
    kind = SweepKind(args.kind)
    c_values = _parse_c_list(args.c) if args.c is not None else ()
    grid = sigma_grid(args.sigma_min, args.sigma_max, args.points, args.scale)
    table = compute_sweep(kind, grid, c_values, cut=args.cut)
    write_csv(table, args.out)
    print(f"wrote {len(table.rows)} rows to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite, seed=args.seed)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_collapse_demo(args) -> int:
    if args.steps < 1:
        raise ParameterError(f"--steps must be >= 1, got {args.steps}")
    if not (math.isfinite(args.sigma) and args.sigma > 0.0):
        raise ParameterError(f"sigma must be a positive real, got {args.sigma!r}")
    # start inside the collapse regime a < min(1, sigma^2), where the
    # positive support point sigma^2/a clears the cut
    start = 0.5 * min(1.0, args.sigma * args.sigma)
    a_values = [start * 0.5**k for k in range(args.steps)]
    points = oracle.trunc_collapse_sequence(args.sigma, a_values)
    floor = lower_bound_universal(args.sigma).bound
    print(f"{'a':>12} {'c':>12} {'trunc_moment':>22} {'winsor_floor':>22}")
    for point in points:
        print(f"{point.a:>12.6g} {point.c:>12.6g} {point.moment:>22.15e} {floor:>22.15e}")
    return EXIT_OK


def cmd_constants(args) -> int:
    constants = asymptotics.solve_t_star()
    _emit((
        ("t_star", repr(constants.t_star)),
        ("minus_ln_t_star", repr(constants.minus_ln_t_star)),
        ("small_sigma_universal_slope", repr(constants.small_sigma_universal_slope)),
        ("large_sigma_universal_coeff", repr(constants.large_sigma_universal_coeff)),
    ))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="winsor-bounds",
        description=(
            "Exact attained lower bounds on exponential moments of Winsorized "
            "and truncated random variables with E X >= 0 and E X^2 <= sigma^2."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="compute a single bound")
    p_bound.add_argument("--kind", choices=_BOUND_KINDS, required=True)
    p_bound.add_argument("--c", type=str, default=None, help="tilt parameter")
    p_bound.add_argument("--sigma", type=float, required=True)
    p_bound.add_argument("--cut", type=float, default=1.0)
    p_bound.set_defaults(run=cmd_bound)

    p_sweep = sub.add_parser("sweep", help="write a sigma sweep to CSV")
    p_sweep.add_argument("--kind", choices=[k.value for k in SweepKind], required=True)
    p_sweep.add_argument("--c", type=str, default=None, help="comma-separated tilt list")
    p_sweep.add_argument("--sigma-min", type=float, required=True)
    p_sweep.add_argument("--sigma-max", type=float, required=True)
    p_sweep.add_argument("--points", type=int, required=True)
    p_sweep.add_argument("--scale", choices=("log", "linear"), default="log")
    p_sweep.add_argument("--cut", type=float, default=1.0)
    p_sweep.add_argument("--out", type=str, required=True)
    p_sweep.set_defaults(run=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run invariant suites")
    p_verify.add_argument(
        "--suite",
        choices=("roots", "ordering", "certificates", "oracle", "asymptotics", "all"),
        default="all",
    )
    p_verify.add_argument("--seed", type=int, default=1, help="oracle probe seed")
    p_verify.set_defaults(run=cmd_verify)

    p_collapse = sub.add_parser(
        "collapse-demo", help="truncated collapse vs the Winsorized floor"
    )
    p_collapse.add_argument("--sigma", type=float, required=True)
    p_collapse.add_argument("--steps", type=int, default=6)
    p_collapse.set_defaults(run=cmd_collapse_demo)

    p_constants = sub.add_parser("constants", help="print the asymptotic constants")
    p_constants.set_defaults(run=cmd_constants)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (ParameterError, CaseViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (
        MaxIterationsError,
        NoSignChangeError,
        NonFiniteValueError,
        ExponentOverflowError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
