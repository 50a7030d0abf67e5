"""Command-line interface.

Subcommands:
    simulate      write the ground-truth trajectory for one preset
    fit           fit one dictionary and export the model
    validate      full pipeline for one preset (both dictionaries)
    long-measles  extended-horizon measles validation
    all           validate every preset, then the long measles run

Exit codes: 0 success, 2 configuration error, 3 numeric failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import scenarios
from .edmd import DEFAULT_SVD_TOL
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    SimplexError,
    SpectrumError,
    UnknownPresetError,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

_CONFIG_ERRORS = (UnknownPresetError, SimplexError, ValueError)
_NUMERIC_ERRORS = (
    DomainError,
    ConvergenceError,
    DimensionError,
    SpectrumError,
    OverflowError,
    FloatingPointError,
    ZeroDivisionError,
)


def _add_common(parser: argparse.ArgumentParser, with_overrides: bool = True) -> None:
    parser.add_argument("--out", default="artifacts", help="artifact directory")
    parser.add_argument(
        "--svd-tol",
        type=float,
        default=DEFAULT_SVD_TOL,
        help="relative singular-value truncation threshold",
    )
    parser.add_argument("--eta", type=float, default=0.0, help="denominator-function rate")
    if with_overrides:
        for flag in ("beta", "gamma", "mu", "omega", "i0", "dt"):
            parser.add_argument(f"--{flag}", type=float, default=None)
        parser.add_argument("--t-end", dest="t_end", type=float, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sirsd-koopman",
        description="Simulate SIRSD epidemics and fit Koopman surrogate models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write the ground-truth trajectory")
    p.add_argument("preset", choices=scenarios.PRESET_NAMES)
    _add_common(p)

    p = sub.add_parser("fit", help="fit one dictionary and export the model")
    p.add_argument("preset", choices=scenarios.PRESET_NAMES)
    p.add_argument("--dict", dest="dictionary", choices=("d1", "d2"), required=True)
    _add_common(p)

    p = sub.add_parser("validate", help="full pipeline for one preset")
    p.add_argument("preset", choices=scenarios.PRESET_NAMES)
    p.add_argument(
        "--dict",
        dest="dictionary",
        choices=("d1", "d2"),
        default=None,
        help="restrict to one dictionary (default: both)",
    )
    _add_common(p)

    p = sub.add_parser("long-measles", help="extended-horizon measles validation")
    _add_common(p, with_overrides=False)

    p = sub.add_parser("all", help="validate every preset, then the long run")
    _add_common(p, with_overrides=False)

    return parser


def _scenario_from_args(args) -> scenarios.ScenarioPreset:
    base = scenarios.preset(args.preset)
    return scenarios.apply_overrides(
        base,
        beta=args.beta,
        gamma=args.gamma,
        mu=args.mu,
        omega=args.omega,
        i0=args.i0,
        dt=args.dt,
        t_end=args.t_end,
    )


def _report_lines(report: scenarios.RunReport) -> str:
    flagged = [name for name, bad in report.negativity.items() if bad]
    flags = ",".join(flagged) if flagged else "none"
    return (
        f"{report.preset}/{report.dictionary}: "
        f"rmse_total={report.errors.rmse_total:.6e} "
        f"residual={report.residual:.6e} negative={flags}"
    )


def _cmd_simulate(args) -> int:
    scenario = _scenario_from_args(args)
    truth = scenarios.simulate_nsfd(scenario.nsfd_config(eta=args.eta), scenario.params)
    path = os.path.join(args.out, f"{scenario.name}_nsfd.csv")
    scenarios.write_trajectory_csv(path, truth)
    print(f"wrote {path} ({len(truth)} rows)")
    return EXIT_OK


def _cmd_fit(args) -> int:
    scenario = _scenario_from_args(args)
    reports = scenarios.run_pipeline(
        scenario,
        dictionaries=(args.dictionary,),
        out_dir=args.out,
        svd_tol=args.svd_tol,
        eta=args.eta,
    )
    for report in reports:
        print(_report_lines(report))
    return EXIT_OK


def _cmd_validate(args) -> int:
    scenario = _scenario_from_args(args)
    dictionaries = ("d1", "d2") if args.dictionary is None else (args.dictionary,)
    reports = scenarios.run_pipeline(
        scenario,
        dictionaries=dictionaries,
        out_dir=args.out,
        svd_tol=args.svd_tol,
        eta=args.eta,
    )
    for report in reports:
        print(_report_lines(report))
    return EXIT_OK


def _cmd_long_measles(args) -> int:
    report = scenarios.run_long_measles(out_dir=args.out, svd_tol=args.svd_tol, eta=args.eta)
    print(_report_lines(report))
    for key, value in report.windows.items():
        print(f"  {key} = {value:.6e}")
    return EXIT_OK


def _cmd_all(args) -> int:
    results = scenarios.run_all(args.out, svd_tol=args.svd_tol, eta=args.eta)
    for reports in results.values():
        for report in reports:
            print(_report_lines(report))
    return EXIT_OK


_COMMANDS = {
    "simulate": _cmd_simulate,
    "fit": _cmd_fit,
    "validate": _cmd_validate,
    "long-measles": _cmd_long_measles,
    "all": _cmd_all,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        os.makedirs(args.out, exist_ok=True)
        return _COMMANDS[args.command](args)
    except _CONFIG_ERRORS as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
