"""Command-line entry point.

    tcdiscord simulate (--config FILE | --preset NAME) [--out DIR] [--threads K] [--set key=value ...]
    tcdiscord validate-appendix --n-atoms {3,4,5} --m INT
    tcdiscord list-presets

Exit codes: 0 success, 2 invalid configuration, 3 I/O failure, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import sys

from .experiment import (
    PRESET_DESCRIPTIONS,
    ConfigError,
    apply_overrides,
    get_preset,
    list_presets,
    load_config,
    run_experiment,
)
from .hamiltonian import build_hamiltonian, validate_against_appendix
from .model import InvalidStateError, NumericalError, SystemConfig, build_basis

EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tcdiscord", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run an experiment and write CSV results")
    source = sim.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="TOML config file with dotted keys")
    source.add_argument("--preset", help="bundled figure preset (see list-presets)")
    sim.add_argument("--out", help="output directory (overrides output.dir)")
    sim.add_argument("--threads", type=int, default=1, help="worker processes for sweep points")
    sim.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                     help="override a config key; repeatable")

    val = sub.add_parser("validate-appendix", help="compare the builder with the published element lists")
    val.add_argument("--n-atoms", type=int, choices=(3, 4, 5), required=True)
    val.add_argument("--m", type=int, default=0)

    sub.add_parser("list-presets", help="list bundled figure presets")
    return parser


def _simulate(args) -> int:
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    if args.config:
        configs = [load_config(args.config, args.overrides)]
    else:
        configs = [apply_overrides(c, args.overrides) for c in get_preset(args.preset)]
    for config in configs:
        summary = run_experiment(config, workers=args.threads, output_dir=args.out)
        print(f"{summary.name}: {summary.n_rows} rows in {summary.wall_time:.1f} s -> "
              f"{summary.files['timeseries'].parent}")
    return 0


def _validate(args) -> int:
    if args.m < 0:
        raise ConfigError("--m must be non-negative")
    config = SystemConfig(args.n_atoms, args.m)
    report = validate_against_appendix(build_hamiltonian(build_basis(config), config), args.n_atoms, args.m)
    print(report.summary())
    print("all disagreements are documented errata" if report.within_errata()
          else "UNDOCUMENTED disagreements found")
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "list-presets":
            for name in list_presets():
                print(f"{name}\t{PRESET_DESCRIPTIONS[name]}")
            return 0
        if args.command == "validate-appendix":
            return _validate(args)
        return _simulate(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericalError, InvalidStateError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
