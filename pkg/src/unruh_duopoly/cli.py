"""``duopoly`` command-line interface.

Exit codes: 0 success, 2 usage or domain error, 3 numeric/closed-form
disagreement, 4 solver failure.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys

from .duopoly_game import GameParameters, payoff_pair
from .equilibrium import (
    backward_induction,
    closed_form_equilibrium,
    find_breakdown_r,
    find_vanishing_r,
    scan_crossings,
)
from .errors import DuopolyError, SolverError
from .rindler_state import closed_form_rho, format_density_matrix
from .sweep import SweepSpec, csv_line, fmt, run_sweep, sweep_row

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ORACLE = 3
EXIT_SOLVER = 4

ORACLE_TOL = 1e-8
Q_MAX = 1e6


class OracleDisagreement(Exception):
    pass


def _quantity(text: str) -> float:
    q = float(text)
    if not (math.isfinite(q) and 0 <= q <= Q_MAX):
        raise argparse.ArgumentTypeError(f"quantity must lie in [0, {Q_MAX:g}], got {text!r}")
    return q


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", type=float, default=0.0, help="entanglement angle (radians)")
    common.add_argument("--r", type=float, default=0.0, help="acceleration parameter (radians)")
    common.add_argument("--k", type=float, default=1.0, help="demand constant")
    common.add_argument("--degrees", action="store_true", help="read angles (theta, r, lo, hi) in degrees")
    common.add_argument("--out", default="stdout", help="output path, or 'stdout'")

    parser = argparse.ArgumentParser(prog="duopoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("payoff", parents=[common], help="payoffs at given quantities")
    p.add_argument("--q1", type=_quantity, required=True)
    p.add_argument("--q2", type=_quantity, required=True)

    sub.add_parser("equilibrium", parents=[common], help="backward-induction equilibrium")

    p = sub.add_parser("sweep", parents=[common], help="equilibria along r or theta")
    p.add_argument("--axis", choices=("r", "theta"), required=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--jobs", type=_positive_int, default=1)

    sub.add_parser("critical", parents=[common], help="vanishing, crossing and breakdown accelerations")
    sub.add_parser("rho", parents=[common], help="dump the two-firm density matrix")
    return parser


def _angles(args) -> None:
    if args.degrees:
        for name in ("theta", "r", "lo", "hi"):
            if getattr(args, name, None) is not None:
                setattr(args, name, math.radians(getattr(args, name)))


def _params(args) -> GameParameters:
    return GameParameters(args.theta, args.r, args.k)


def cmd_payoff(args) -> str:
    params = _params(args)
    pa, pb = payoff_pair(params, args.q1, args.q2)
    header = ("theta", "r", "k", "q1", "q2", "payoff_A", "payoff_B")
    row = [fmt(params.theta), fmt(params.r), fmt(params.k), fmt(args.q1), fmt(args.q2), fmt(pa), fmt(pb)]
    return csv_line(header) + csv_line(row)


def cmd_equilibrium(args) -> str:
    params = _params(args)
    numeric = backward_induction(params)
    closed = closed_form_equilibrium(params)
    if numeric.valid or closed.valid:
        fields = ("q1_star", "q2_star", "p_a", "p_b")
        gaps = {f: abs(getattr(numeric, f) - getattr(closed, f)) for f in fields}
        if numeric.valid != closed.valid or max(gaps.values()) > ORACLE_TOL:
            raise OracleDisagreement(
                f"numeric and closed-form equilibria disagree at {params}: "
                f"valid {numeric.valid}/{closed.valid}, gaps {gaps}"
            )
    header = ("theta", "r", "k", "q1_star", "q2_star", "payoff_A", "payoff_B", "valid", "reason")
    return csv_line(header) + csv_line(sweep_row(params, numeric)[:9])


def cmd_sweep(args):
    spec = SweepSpec(args.axis, args.lo, args.hi, args.steps, _params(args))
    return run_sweep(spec, jobs=args.jobs)


def cmd_critical(args) -> str:
    params = _params(args)
    vanishing = find_vanishing_r(params)
    breakdown = find_breakdown_r(params)
    # leave a margin: both payoffs shrink to zero at the vanishing point
    hi = min(vanishing, breakdown) - 1e-6
    crossings = scan_crossings(params, 0.0, hi) if hi > 0 else []
    lines = [csv_line(("kind", "value")), csv_line(("vanishing_r", fmt(vanishing)))]
    if crossings:
        lines += [csv_line(("crossing_r", fmt(c))) for c in crossings]
    else:
        lines.append(csv_line(("crossing_r", "")))
    lines.append(csv_line(("breakdown_r", fmt(breakdown))))
    return "".join(lines)


def cmd_rho(args) -> str:
    params = _params(args)
    return format_density_matrix(closed_form_rho(params.theta, params.r))


COMMANDS = {
    "payoff": cmd_payoff,
    "equilibrium": cmd_equilibrium,
    "sweep": cmd_sweep,
    "critical": cmd_critical,
    "rho": cmd_rho,
}


@contextlib.contextmanager
def _open_out(target: str):
    if target in ("stdout", "-"):
        yield sys.stdout
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _angles(args)
    try:
        result = COMMANDS[args.command](args)
        chunks = [result] if isinstance(result, str) else list(result)
    except OracleDisagreement as exc:
        print(f"duopoly: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except SolverError as exc:
        print(f"duopoly: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except DuopolyError as exc:
        print(f"duopoly: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with _open_out(args.out) as fh:
            fh.writelines(chunks)
    except OSError as exc:
        print(f"duopoly: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
