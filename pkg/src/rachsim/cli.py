"""Command-line front end.

Commands
--------
simulate         one run of the configured scenario; writes frames.csv
per-slot         per-slot statistics study; writes per_slot.csv (+ summary)
sweep-dp         single-frame successes vs the SIC power-gap threshold
sweep-load       single-frame successes vs the number of devices
validate-config  resolve and echo the configuration, then exit

Exit codes: 0 success, 1 runtime/I-O failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from .config import RunConfig, load_config
from .engine import run
from .errors import ConfigurationError
from .experiments import (
    SweepSpec,
    SweepVariable,
    write_csv,
    delta_p_sweep,
    load_sweep,
    per_slot_study,
    write_manifest,
)

log = logging.getLogger("rachsim")

COMMANDS = ("simulate", "per-slot", "sweep-dp", "sweep-load", "validate-config")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rachsim",
        description="Slot-level random access simulator with SIC-based collision decoding.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="TOML configuration file")
        p.add_argument(
            "--override",
            action="append",
            default=[],
            metavar="SECTION.KEY=VALUE",
            help="override a configuration value (repeatable)",
        )
        p.add_argument(
            "--out-dir",
            help="output directory (default: experiment.out_dir, or $RACHSIM_OUT_DIR)",
        )
        p.add_argument("--seed", type=int, help="override the base seed")
        p.add_argument(
            "--replications", type=int, help="override experiment.replications"
        )
        verbosity = p.add_mutually_exclusive_group()
        verbosity.add_argument("-q", "--quiet", action="store_true")
        verbosity.add_argument("-v", "--verbose", action="store_true")
    return parser


def _resolve(args) -> tuple[RunConfig, Path, int, int]:
    cfg = load_config(args.config, args.override)
    out_dir = Path(
        args.out_dir
        or os.environ.get("RACHSIM_OUT_DIR")
        or cfg.experiment["out_dir"]
    )
    base_seed = args.seed if args.seed is not None else int(cfg.experiment["base_seed"])
    replications = (
        args.replications
        if args.replications is not None
        else int(cfg.experiment["replications"])
    )
    if replications < 1:
        raise ConfigurationError(f"replications must be >= 1, got {replications}")
    return cfg, out_dir, base_seed, replications


def _spec(cfg: RunConfig, variable: SweepVariable, values, out_dir, base_seed, reps):
    return SweepSpec(
        variable=variable,
        values=values,
        replications=reps,
        deployment=cfg.deployment,
        channel=cfg.channel,
        rach=cfg.rach,
        out_dir=out_dir,
        base_seed=base_seed,
    )


def _cmd_simulate(cfg: RunConfig, out_dir: Path, base_seed: int, _reps: int) -> str:
    summary = run(cfg.deployment, cfg.channel, cfg.rach, base_seed)
    out_dir.mkdir(parents=True, exist_ok=True)
    frames_path = out_dir / "frames.csv"
    write_csv(
        frames_path,
        ["frame", "contending", "successes", "backlog_remaining"],
        [
            [fr.frame, fr.contending, fr.successes, fr.backlog_remaining]
            for fr in summary.per_frame
        ],
    )
    manifest = dict(summary.config)
    manifest["result.total_successes"] = summary.total_successes
    manifest["result.frames_used"] = summary.frames_used
    manifest["result.drained"] = summary.drained
    manifest["seed"] = summary.seed
    write_manifest(out_dir / "manifest.txt", manifest)
    return (
        f"simulate seed={base_seed} successes={summary.total_successes} "
        f"frames={summary.frames_used} drained={str(summary.drained).lower()} "
        f"out={frames_path}"
    )


def _cmd_per_slot(cfg: RunConfig, out_dir: Path, base_seed: int, reps: int) -> str:
    spec = _spec(cfg, SweepVariable.NONE, None, out_dir, base_seed, reps)
    report = per_slot_study(spec)
    line = (
        f"per-slot avg_contending={report.avg_contending_per_slot:.6f} "
        f"avg_successes={report.avg_successes_per_slot:.6f} "
        f"divergence_flagged={str(report.divergence_flagged).lower()} "
        f"out={report.csv_path}"
    )
    if report.divergence_flagged:
        log.warning(
            "per-slot averages diverge from the reference point by more than "
            "the tolerance; see %s", report.manifest_path
        )
    return line


def _cmd_sweep_dp(cfg: RunConfig, out_dir: Path, base_seed: int, reps: int) -> str:
    deployment = replace(
        cfg.deployment, num_devices=int(cfg.experiment["dp_num_devices"])
    )
    spec = _spec(
        replace(cfg, deployment=deployment),
        SweepVariable.DELTA_P,
        [float(v) for v in cfg.experiment["dp_values"]],
        out_dir,
        base_seed,
        reps,
    )
    report = delta_p_sweep(spec)
    return f"sweep-dp points={len(spec.values)} reps={reps} out={report.csv_path}"


def _cmd_sweep_load(cfg: RunConfig, out_dir: Path, base_seed: int, reps: int) -> str:
    spec = _spec(
        cfg,
        SweepVariable.LOAD,
        [float(v) for v in cfg.experiment["load_values"]],
        out_dir,
        base_seed,
        reps,
    )
    report = load_sweep(spec)
    return (
        f"sweep-load peak_m={report.peak_m} "
        f"peak_mean_successes={report.peak_mean_successes:.6f} "
        f"out={report.csv_path}"
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else (
            logging.ERROR if args.quiet else logging.INFO
        ),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg, out_dir, base_seed, reps = _resolve(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate-config":
        for key, value in sorted(cfg.as_flat_dict().items()):
            print(f"{key}={value}")
        return 0

    handler = {
        "simulate": _cmd_simulate,
        "per-slot": _cmd_per_slot,
        "sweep-dp": _cmd_sweep_dp,
        "sweep-load": _cmd_sweep_load,
    }[args.command]
    try:
        line = handler(cfg, out_dir, base_seed, reps)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
