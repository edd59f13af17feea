"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""
import argparse
import sys

from . import bounds, coherence, harness, numlin, tightsolver
from .coherence import MeasureKind
from .errors import QucohError
from .scan import ScanSpec, scan_csv
from .statefile import read_state_file

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
STATUS_TOL = 1e-9


class UsageError(Exception):
    pass


def _u64(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _unit_half(name):
    def parse(text):
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {text!r}") from None
        if not 0.5 <= value <= 1.0:
            raise argparse.ArgumentTypeError(
                f"{name} must lie in the valid range [0.5, 1], got {value}")
        return value
    return parse


def _measures(text):
    try:
        return tuple(MeasureKind.parse(t) for t in text.split(",") if t.strip())
    except QucohError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fmt(v):
    return f"{float(v) + 0.0:.6f}"


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from None


def cmd_bounds(args):
    lines = [f"{'bound':<12} {'raw':>10} {'clamped':>10}"]
    for kind, value in bounds.evaluate_all(args.c, args.purity).items():
        lines.append(f"{kind.value:<12} {_fmt(value.raw):>10} {_fmt(value.clamped):>10}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_scan(args):
    spec = ScanSpec(args.c_start, args.c_end, args.c_steps, args.p_start, args.p_end,
                    args.p_steps, measures=args.measures, include_tight=args.tight,
                    clamp=args.clamp)
    _emit(scan_csv(spec, jobs=args.jobs), args.out)
    return EXIT_OK


def cmd_verify(args):
    reports = harness.run_suite(args.suite, seed=args.seed, samples=args.samples, jobs=args.jobs)
    lines = []
    for report in reports:
        lines.append(report.to_text())
    failed = [r.check_name for r in reports if not r.passed]
    lines.append(f"# {len(reports) - len(failed)}/{len(reports)} checks passed"
                 + (f"; failed: {', '.join(failed)}" if failed else ""))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_tight(args):
    opts = tightsolver.SolverOptions(grid_points=args.grid_points)
    result = tightsolver.tight_bound_1d(args.measure, args.c, args.purity, opts)
    value = max(result.value, 0.0) if args.clamp else result.value
    lines = [f"measure        {args.measure.value}",
             f"value          {value + 0.0:.12g}",
             f"argmin_alpha   {result.argmin_alpha:.12g}",
             f"method         {result.method}"]
    if args.crosscheck:
        brute = tightsolver.tight_bound_2d_crosscheck(args.measure, args.c, args.purity,
                                                      args.crosscheck)
        lines.append(f"grid_2d        {brute:.12g}")
        lines.append(f"difference     {brute - result.value:.3g}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def state_report(state):
    """Text report of coherences, basis geometry and bound status for a parsed state file."""
    rho = state.rho
    labels = list(state.bases)
    X, Z = (state.bases[k] for k in labels)
    c_max, c_min = (float(v) for v in numlin.basis_pair_geometry(X, Z))
    P = float(numlin.purity(rho))
    lines = [f"dim       {state.dim}",
             f"purity    {P:.12g}",
             f"c_max     {c_max:.12g}",
             f"c_min     {c_min:.12g}"]
    sums = {m: 0.0 for m in MeasureKind}
    for label in labels:
        B = state.bases[label]
        values = {MeasureKind.RELATIVE_ENTROPY: coherence.coherence_relative_entropy(rho, B),
                  MeasureKind.L1: coherence.coherence_l1(rho, B)}
        if state.dim == 2:
            values[MeasureKind.FORMATION] = coherence.coherence_formation_qubit(rho, B)
        parts = [f"C_{m.value.upper() if m is not MeasureKind.L1 else 'l1'} = {float(v):.12g}"
                 for m, v in values.items()]
        lines.append(f"basis {label:<4} " + "  ".join(parts))
        for m, v in values.items():
            sums[m] += float(v)
    if state.dim != 2:
        lines.append("bounds    (qubit only; none apply for dim > 2)")
        return "\n".join(lines) + "\n", True

    c = min(max(c_max, 0.5), 1.0)
    P = min(max(P, 0.5), 1.0)
    lines.append(f"{'bound':<12} {'measure':<8} {'sum':>10} {'raw':>10}  status")
    all_ok = True
    for kind, value in bounds.evaluate_all(c, P).items():
        total = sums[kind.measure]
        ok = total >= value.raw - STATUS_TOL
        all_ok &= ok
        lines.append(f"{kind.value:<12} {kind.measure.value:<8} {_fmt(total):>10} "
                     f"{_fmt(value.raw):>10}  {'satisfied' if ok else 'violated'}")
    return "\n".join(lines) + "\n", all_ok


def cmd_state(args):
    try:
        state = read_state_file(args.path)
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
    text, all_ok = state_report(state)
    _emit(text, args.out)
    return EXIT_OK if all_ok else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=argparse.SUPPRESS,
                        help="unsigned 64-bit RNG seed")
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write output to this path instead of stdout")
    common.add_argument("--clamp", action="store_true", default=argparse.SUPPRESS,
                        help="clamp negative (vacuous) bound values at zero")

    parser = argparse.ArgumentParser(
        prog="qucoh", parents=[common],
        description="Coherence uncertainty relations for qubits: bounds, scans and checks.")
    parser.set_defaults(seed=0, out=None, clamp=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="evaluate every analytic bound")
    p.add_argument("--c", type=_unit_half("c"), required=True, help="c_max in [0.5, 1]")
    p.add_argument("--purity", type=_unit_half("purity"), required=True,
                   help="purity Tr rho^2 in [0.5, 1]")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("scan", parents=[common], help="CSV grid of bounds over (c, P)")
    p.add_argument("--c-start", type=_unit_half("c-start"), default=0.5)
    p.add_argument("--c-end", type=_unit_half("c-end"), default=1.0)
    p.add_argument("--c-steps", type=int, default=101)
    p.add_argument("--p-start", type=_unit_half("p-start"), default=0.5)
    p.add_argument("--p-end", type=_unit_half("p-end"), default=1.0)
    p.add_argument("--p-steps", type=int, default=101)
    p.add_argument("--tight", action="store_true", help="add tight numerical columns")
    p.add_argument("--measures", type=_measures, default=tuple(MeasureKind),
                   help="comma-separated measures for tight columns (re,cf,l1)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="run Monte Carlo verification suites")
    p.add_argument("--suite", choices=[*harness.SUITES, "all"], default="all")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tight", parents=[common], help="tight numerical bound at one (c, P)")
    p.add_argument("--measure", type=MeasureKind.parse, default=MeasureKind.RELATIVE_ENTROPY)
    p.add_argument("--c", type=_unit_half("c"), required=True)
    p.add_argument("--purity", type=_unit_half("purity"), required=True)
    p.add_argument("--grid-points", type=int, default=2048)
    p.add_argument("--crosscheck", type=int, default=0, metavar="GRID",
                   help="also brute-force the 2D region on a GRID x GRID grid")
    p.set_defaults(func=cmd_tight)

    p = sub.add_parser("state", parents=[common], help="analyse a state file")
    p.add_argument("path")
    p.set_defaults(func=cmd_state)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 1) < 1 or getattr(args, "jobs", 1) < 1:
        parser.error("--samples and --jobs must be positive")
    try:
        return args.func(args)
    except (QucohError, UsageError) as exc:
        print(f"qucoh {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
