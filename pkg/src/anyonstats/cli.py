"""Command-line front end.

Every subcommand writes one table (CSV by default, or JSON as a list of
objects) to stdout or ``--out``.  Floats are printed with 17 significant
digits so values round-trip exactly.  Exit status: 0 on success, 1 on usage
errors, 2 on computational (domain, bracket, ...) errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from .basic_numbers import StatisticsParameter, basic_number
from .contfrac import SCHEMES, build_cf, convergents, required_order
from .errors import AnyonError
from .exchange import probability_bruteforce, probability_closed
from .series import revert_series, rhs_series
from .solver import DEFAULT_TOL, ThermoPoint, solve_occupation
from .thermo import METHODS, occupation_sweep, read_levels, solve_fugacity

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2

HEADERS = {
    "basic": ["nu", "alpha", "value"],
    "prob": ["n", "alpha", "closed", "brute"],
    "coeffs": ["k", "a_k", "alpha_k"],
    "solve": ["alpha", "t", "n", "residual", "iterations"],
    "cf": ["m", "b_coeffs", "c_coeffs", "value", "abs_error"],
    "sweep": ["alpha", "t", "method", "n", "residual", "status"],
    "fugacity": ["level", "energy", "degeneracy", "t", "occupation", "mu", "fugacity", "total"],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _json_value(value):
    if value is None:
        return "null"
    if isinstance(value, float):
        return "%.17g" % value if math.isfinite(value) else "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    out = io.StringIO()
    out.write('"')
    out.write(str(value).replace("\\", "\\\\").replace('"', '\\"'))
    out.write('"')
    return out.getvalue()


def render(header, rows, fmt="csv"):
    """Render rows (sequences aligned with ``header``) as CSV or JSON text."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()
    items = []
    for row in rows:
        pairs = ", ".join(f'"{k}": {_json_value(v)}' for k, v in zip(header, row))
        items.append("  {" + pairs + "}")
    return "[\n" + ",\n".join(items) + "\n]\n" if items else "[]\n"


def _stat(alpha):
    if alpha is None or not (0.0 <= alpha <= 1.0):
        raise UsageError(f"--alpha must lie in [0, 1], got {alpha!r}")
    return StatisticsParameter(alpha)


def _positive(name, value):
    if not value > 0:
        raise UsageError(f"{name} must be positive, got {value!r}")
    return value


def _cmd_basic(args):
    stat = _stat(args.alpha)
    return [[args.nu, stat.alpha, basic_number(args.nu, stat)]]


def _cmd_prob(args):
    stat = _stat(args.alpha)
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    closed = probability_closed(args.n, stat) if args.method in ("closed", "both") else None
    brute = probability_bruteforce(args.n, stat) if args.method in ("brute", "both") else None
    return [[args.n, stat.alpha, closed, brute]]


def _cmd_coeffs(args):
    stat = _stat(args.alpha)
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    coeffs = rhs_series(stat, args.order)
    rev = revert_series(coeffs, args.order)
    return [[k, coeffs.a[k], rev[k] if k >= 1 else None] for k in range(args.order + 1)]


def _thermo_point(args):
    if args.t is not None:
        if any(v is not None for v in (args.beta, args.energy, args.mu)):
            raise UsageError("give either --t or --beta/--energy/--mu, not both")
        return ThermoPoint(args.t)
    if args.beta is None or args.energy is None:
        raise UsageError("--t or both --beta and --energy are required")
    return ThermoPoint.from_energy(_positive("--beta", args.beta), args.energy, args.mu or 0.0)


def _cmd_solve(args):
    stat = _stat(args.alpha)
    _positive("--tol", args.tol)
    point = _thermo_point(args)
    res = solve_occupation(point, stat, tol=args.tol)
    return [[stat.alpha, point.t, res.n, res.residual, res.iterations]]


def _cmd_cf(args):
    stat = _stat(args.alpha)
    if args.depth < 1:
        raise UsageError("--depth must be >= 1")
    point = ThermoPoint(args.t)
    K = required_order(args.depth, args.scheme)
    cf = build_cf(revert_series(rhs_series(stat, K), K), args.depth, scheme=args.scheme)
    g = point.g(stat)
    values = convergents(cf, g)
    try:
        root = solve_occupation(point, stat).n
    except AnyonError as exc:
        print(f"warning: no solver root for comparison ({exc})", file=sys.stderr)
        root = math.nan
    rows = []
    for m, value in enumerate(values, 1):
        b, c = cf.terms[min(m, cf.depth) - 1] if m <= cf.depth else ((), ())
        rows.append([
            m,
            " ".join(_fmt(v) for v in b),
            " ".join(_fmt(v) for v in c),
            value,
            abs(value - root),
        ])
    return rows


def _parse_alphas(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --alphas {text!r}") from None


def _cmd_sweep(args):
    alphas = [_stat(a) for a in _parse_alphas(args.alphas)]
    if not alphas:
        raise UsageError("--alphas is empty")
    if args.t_steps < 1:
        raise UsageError("--t-steps must be >= 1")
    if args.t_steps == 1:
        ts = [args.t_min]
    else:
        step = (args.t_max - args.t_min) / (args.t_steps - 1)
        ts = [args.t_min + i * step for i in range(args.t_steps)]
    rows = occupation_sweep(alphas, ts, args.method, order=args.order, depth=args.depth)
    return [[r[k] for k in HEADERS["sweep"]] for r in rows]


def _cmd_fugacity(args):
    stat = _stat(args.alpha)
    _positive("--beta", args.beta)
    _positive("--n-total", args.n_total)
    try:
        with open(args.levels) as fh:
            levels = read_levels(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    state = solve_fugacity(levels, args.beta, args.n_total, stat)
    return [
        [i, lv.energy, lv.degeneracy, args.beta * (lv.energy - state.mu), n,
         state.mu, state.fugacity, state.total]
        for i, (lv, n) in enumerate(zip(levels, state.occupations))
    ]


COMMANDS = {
    "basic": _cmd_basic,
    "prob": _cmd_prob,
    "coeffs": _cmd_coeffs,
    "solve": _cmd_solve,
    "cf": _cmd_cf,
    "sweep": _cmd_sweep,
    "fugacity": _cmd_fugacity,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write the table here instead of stdout")

    parser = _Parser(prog="anyonstats", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("basic", parents=[common], help="basic number [nu]")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)

    p = sub.add_parser("prob", parents=[common], help="n-particle probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--method", choices=("brute", "closed", "both"), default="both")

    p = sub.add_parser("coeffs", parents=[common], help="a_k and reverted alpha_k")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--order", type=int, default=12)

    p = sub.add_parser("solve", parents=[common], help="solve for the occupation")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--energy", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("cf", parents=[common], help="continued-fraction convergents")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--scheme", choices=SCHEMES, default="corresponding")

    p = sub.add_parser("sweep", parents=[common], help="occupation over an (alpha, t) grid")
    p.add_argument("--alphas", required=True, help="comma-separated alpha values")
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--t-steps", type=int, default=20)
    p.add_argument("--method", choices=METHODS, default="solver")
    p.add_argument("--order", type=int, default=10, help="series order (method=series)")
    p.add_argument("--depth", type=int, default=8, help="fraction depth (method=cf)")

    p = sub.add_parser("fugacity", parents=[common], help="chemical potential at fixed N")
    p.add_argument("--levels", required=True, help="file with 'energy degeneracy' lines")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n-total", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    return parser


def run(argv=None, stdout=None):
    """Parse ``argv``, run the subcommand and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"anyonstats {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AnyonError, ArithmeticError) as exc:
        print(f"anyonstats {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    text = render(HEADERS[args.command], rows, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
