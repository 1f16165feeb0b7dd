"""Command-line surface: every experiment reproducible from a shell.

Exit codes: 0 success, 2 configuration/usage error, 3 numerical blow-up.
Each successful invocation writes the produced CSVs plus a manifest.json
whose file list names exactly the data files created.
"""

import argparse
import sys
import time
from dataclasses import replace

from . import __version__
from .config import SCHEMA_VERSION, ConfigError, config_to_dict, parse_config
from .experiments import converge_space, converge_time, limit_sweep, run_simulation, validate_linear
from .output import (
    RunManifest,
    emit_convergence_csv,
    emit_limit_csv,
    emit_snapshot_csv,
    write_manifest,
)
from .steppers import SCHEMES, BlowUpError

DEFAULT_SWEEP_VALUES = (1.0, 0.5, 0.1, 0.05, 0.01, 0.0)
DEFAULT_LEVELS = {"validate-linear": 3, "converge-time": 5, "converge-space": 5}


def _add_common(parser):
    parser.add_argument("--config", required=True, help="path to a dnls-1 JSON config")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument("--scheme", choices=sorted(SCHEMES), help="override the config's scheme")
    parser.add_argument("--seed", type=int, default=None, help="reserved for future randomized protocols")
    parser.add_argument("--quiet", action="store_true", help="suppress progress diagnostics")


def build_parser():
    parser = argparse.ArgumentParser(prog="dnls", description="Periodic spectral solver and experiment harness")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("run", help="run one simulation and dump its snapshots"))
    p = sub.add_parser("validate-linear", help="step the alpha=0 problem against the exact propagator")
    _add_common(p)
    p.add_argument("--levels", type=int, help="number of dt halvings (default 3)")
    p = sub.add_parser("converge-time", help="dt-refinement ladder at fixed grid")
    _add_common(p)
    p.add_argument("--levels", type=int, help="number of error rows (default 5)")
    p = sub.add_parser("converge-space", help="grid-doubling ladder at fixed dt")
    _add_common(p)
    p.add_argument("--levels", type=int, help="number of error rows (default 5)")
    p = sub.add_parser("limit", help="vanishing-parameter sweep against its smallest value")
    _add_common(p)
    p.add_argument("--param", choices=("eta", "beta"), help="parameter to sweep")
    p.add_argument("--values", help="comma-separated decreasing values, e.g. 0.5,0.25,0.125,0")

    sub.add_parser("version", help="print version and schema identifiers")
    return parser


def _load_config(args):
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ConfigError(args.config, f"cannot read config: {err}") from None
    config = parse_config(text)
    if args.scheme:
        config = replace(config, scheme=args.scheme)
    return config


def _parse_values(text):
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError("--values", f"expected comma-separated numbers, got {text!r}") from None


def _info(args, message):
    if not args.quiet:
        print(f"[dnls] {message}", file=sys.stderr)


def _do_run(args, config, out):
    traj = run_simulation(config)
    entries = [("numerical", t, f) for t, f in zip(traj.times, traj.fields)]
    return [emit_snapshot_csv(entries, out / "snapshots.csv")]


def _do_validate_linear(args, config, out):
    levels = args.levels if args.levels is not None else config.levels
    result = validate_linear(config, levels=levels if levels is not None else DEFAULT_LEVELS["validate-linear"])
    entries = [
        ("numerical", config.T, result.numerical),
        ("exact", config.T, result.exact),
    ]
    return [
        emit_snapshot_csv(entries, out / "snapshots.csv"),
        emit_convergence_csv(result.report, out / "convergence.csv"),
    ]


def _do_converge(args, config, out, protocol):
    runner = converge_time if protocol == "converge-time" else converge_space
    levels = args.levels if args.levels is not None else config.levels
    report = runner(config, levels=levels if levels is not None else DEFAULT_LEVELS[protocol])
    return [emit_convergence_csv(report, out / "convergence.csv")]


def _do_limit(args, config, out):
    param = args.param or config.sweep_param
    if param is None:
        raise ConfigError("--param", "sweep parameter required (flag or config sweep.param)")
    if args.values is not None:
        values = _parse_values(args.values)
    elif config.sweep_values is not None:
        values = config.sweep_values
    else:
        values = DEFAULT_SWEEP_VALUES
    report = limit_sweep(config, param, values)
    entries = [
        (f"{param}={value:g}", traj.times[-1], traj.fields[-1])
        for value, traj in zip(report.values, report.trajectories)
    ]
    return [
        emit_limit_csv(report, out / "distances.csv"),
        emit_snapshot_csv(entries, out / "sweep_snapshots.csv"),
    ]


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if err.code else 0

    if args.command == "version":
        print(f"dnls {__version__} (schema {SCHEMA_VERSION})")
        return 0

    from pathlib import Path

    started = time.perf_counter()
    try:
        config = _load_config(args)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "run":
            files = _do_run(args, config, out)
        elif args.command == "validate-linear":
            files = _do_validate_linear(args, config, out)
        elif args.command in ("converge-time", "converge-space"):
            files = _do_converge(args, config, out, args.command)
        elif args.command == "limit":
            files = _do_limit(args, config, out)
        else:  # pragma: no cover - argparse restricts commands
            raise ConfigError("", f"unknown command {args.command!r}")
    except (ConfigError, ValueError) as err:
        print(f"dnls: config error: {err}", file=sys.stderr)
        return 2
    except BlowUpError as err:
        print(f"dnls: blow-up: {err}", file=sys.stderr)
        return 3
    except OSError as err:
        print(f"dnls: i/o error: {err}", file=sys.stderr)
        return 2

    manifest = RunManifest(
        config=config_to_dict(config),
        files=[f.name for f in files],
        duration_s=time.perf_counter() - started,
        scheme=config.scheme,
    )
    write_manifest(manifest, out / "manifest.json")
    for f in files:
        _info(args, f"wrote {f}")
    _info(args, f"wrote {out / 'manifest.json'}")
    return 0


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
