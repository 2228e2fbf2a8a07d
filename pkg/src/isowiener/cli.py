"""Command-line driver: ``isowiener <command> [options]``.

Exit status is 0 on success, 2 on invalid arguments or configuration and 1
on a failure during computation. Output is CSV, to ``--out`` or stdout.
"""

import argparse
import io
import sys

from . import experiments as exp
from .constants import ProblemConstants
from .geometry import MAX_DIM, build_partition, check_dimension
from .sampler import sample_field
from .streams import RngStream

COMMANDS = ("constants", "error-table", "rate-study", "complexity-curve",
            "compare-mc", "compare-midpoint", "sample-field")

DEFAULTS = {
    "problem": None,
    "d": None,
    "p_list": None,
    "epsilon_list": None,
    "replicates": 400,
    "master_seed": 0,
    "quad_order": None,
    "grid_m": None,
}


FLAG_NAMES = {"problem": "--problem", "d": "--d", "p_list": "--p", "epsilon_list": "--eps"}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser():
    parser = _Parser(
        prog="isowiener",
        description="Average-case integration and L2 approximation under the "
                    "isotropic Wiener measure on [0,1]^d.",
    )
    parser.add_argument("command", choices=COMMANDS, help="report to produce")
    parser.add_argument("--problem", choices=exp.PROBLEMS,
                        help="int (stratified quadrature) or app (piecewise-constant "
                             "L2 approximation); required by error-table, rate-study, "
                             "complexity-curve")
    parser.add_argument("--d", type=int,
                        help=f"dimension of the unit cube, 1..{MAX_DIM} (constants: all "
                             f"dimensions when omitted)")
    parser.add_argument("--p", dest="p_list", type=_int_list,
                        help="cells per axis, comma list, n = p^d evaluations")
    parser.add_argument("--eps", dest="epsilon_list", type=_float_list,
                        help="target average errors (dimensionless), comma list")
    parser.add_argument("--replicates", type=int,
                        help="simulation replicates per p (default: 400)")
    parser.add_argument("--seed", dest="master_seed", type=int,
                        help="master seed of the random streams (default: 0)")
    parser.add_argument("--quad-order", dest="quad_order", type=int,
                        help="Gauss-Legendre points per axis (default: 32 for d<=3, "
                             "16 for d=4,5)")
    parser.add_argument("--grid-m", dest="grid_m", type=int,
                        help="L2 grid points per axis for rate-study --problem app "
                             "(default: 8*p)")
    parser.add_argument("--config", metavar="PATH",
                        help="JSON study config; its keys override the defaults and "
                             "explicit flags override it")
    parser.add_argument("--out", metavar="PATH", help="output CSV file (default: stdout)")
    return parser


def resolve_config(args):
    """Merge defaults < JSON config < command-line flags."""
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            cfg.update(exp.load_config(args.config))
        except (OSError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    for key in DEFAULTS:
        value = getattr(args, key)
        if value is not None:
            cfg[key] = value
    _validate(args.command, cfg)
    return cfg


def _require(cfg, *keys):
    missing = [FLAG_NAMES.get(k, k) for k in keys if cfg.get(k) is None]
    if missing:
        raise UsageError(f"missing required setting(s): {', '.join(missing)}")


def _validate(command, cfg):
    if cfg["problem"] is not None and cfg["problem"] not in exp.PROBLEMS:
        raise UsageError(f"problem must be one of {exp.PROBLEMS}")
    if command in ("error-table", "rate-study", "complexity-curve"):
        _require(cfg, "problem")
    if command != "constants":
        _require(cfg, "d")
    if cfg["d"] is not None:
        try:
            check_dimension(cfg["d"])
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if command in ("error-table", "rate-study", "compare-mc", "compare-midpoint", "sample-field"):
        _require(cfg, "p_list")
        if any(p < 1 for p in cfg["p_list"]) or not cfg["p_list"]:
            raise UsageError("--p values must be positive integers")
    if command == "rate-study":
        if cfg["p_list"] != sorted(set(cfg["p_list"])):
            raise UsageError("--p must be strictly ascending for rate-study")
        if cfg["replicates"] < 30:
            raise UsageError("--replicates must be at least 30")
        if cfg["problem"] == "app" and cfg["grid_m"] is not None:
            if cfg["grid_m"] < 2 * max(cfg["p_list"]):
                raise UsageError("--grid-m must be at least 2*p")
    if command == "complexity-curve":
        _require(cfg, "epsilon_list")
        if not cfg["epsilon_list"] or min(cfg["epsilon_list"]) <= 0:
            raise UsageError("--eps values must be positive")
    if command == "sample-field" and len(cfg["p_list"]) != 1:
        raise UsageError("sample-field takes a single --p")
    if cfg["quad_order"] is not None and cfg["quad_order"] < 2:
        raise UsageError("--quad-order must be at least 2")
    if not 0 <= cfg["master_seed"] < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")


def execute(command, cfg):
    """Run one command and return its CSV text."""
    d, order = cfg["d"], cfg["quad_order"]
    if command == "constants":
        d_list = [d] if d is not None else range(1, MAX_DIM + 1)
        return exp.write_csv(exp.constants_table(d_list, order), row_type=ProblemConstants)
    if command == "error-table":
        return exp.write_csv(exp.error_table(cfg["problem"], d, cfg["p_list"], order))
    if command == "rate-study":
        rows = exp.rate_study(cfg["problem"], d, cfg["p_list"], cfg["replicates"],
                              RngStream(cfg["master_seed"]), order, cfg["grid_m"])
        return exp.write_csv(rows)
    if command == "complexity-curve":
        curve = exp.complexity_curve(cfg["problem"], d, cfg["epsilon_list"], order)
        return exp.write_csv(curve.rows, row_type=exp.ComplexityRow)
    if command == "compare-mc":
        return exp.write_csv([exp.mc_comparison(d, p, order) for p in cfg["p_list"]])
    if command == "compare-midpoint":
        return exp.write_csv([exp.midpoint_vs_haber(d, p, order) for p in cfg["p_list"]])
    if command == "sample-field":
        partition = build_partition(d, cfg["p_list"][0])
        buf = io.StringIO()
        sample_field(partition.centers, RngStream(cfg["master_seed"])).to_csv(buf)
        return buf.getvalue()
    raise UsageError(f"unknown command {command!r}")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"isowiener: error: {exc}", file=stderr)
        return 2
    try:
        text = execute(args.command, cfg)
        if args.out:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        else:
            stdout.write(text)
    except Exception as exc:  # noqa: BLE001 - reported as a runtime failure
        print(f"isowiener: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
