"""Experiment harness: per-slot statistics study and the two parameter sweeps.

Every study writes a CSV with a fixed schema plus a key=value manifest of the
fully resolved configuration, so a run is reproducible byte-for-byte from its
output directory.  Floats are serialised with fixed 6-decimal precision and
LF line endings.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import math
from dataclasses import dataclass, replace
from pathlib import Path

from . import __version__
from .core import RachConfig
from .engine import RunSummary, run, run_replicated
from .errors import ConfigurationError
from .radio_env import ChannelParams, DeploymentConfig

PER_SLOT_COLUMNS = [
    "replication",
    "seed",
    "frame",
    "slot",
    "contending",
    "singleton_successes",
    "sic_successes",
    "failed",
]
DP_SWEEP_COLUMNS = ["replication", "seed", "delta_p_db", "contending", "successes"]
LOAD_SWEEP_COLUMNS = ["replication", "seed", "m_devices", "contending", "successes"]

# Regression reference point for the per-slot study: expected per-slot
# averages for the default configuration, with a relative flagging tolerance.
REFERENCE_CONTENDING_PER_SLOT = 87.0
REFERENCE_SUCCESSES_PER_SLOT = 43.0
REFERENCE_TOLERANCE = 0.30


class SweepVariable(enum.Enum):
    NONE = "none"
    DELTA_P = "delta-p"
    LOAD = "load"


@dataclass(frozen=True)
class SweepSpec:
    variable: SweepVariable
    values: list[float] | None
    replications: int
    deployment: DeploymentConfig
    channel: ChannelParams
    rach: RachConfig
    out_dir: Path
    base_seed: int = 1

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ConfigurationError(f"replications must be >= 1, got {self.replications}")
        if self.variable is not SweepVariable.NONE:
            values = self.values
            if not values:
                raise ConfigurationError("sweep values must be non-empty")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ConfigurationError("sweep values must be strictly increasing")

    def seeds(self) -> list[int]:
        return [self.base_seed + i for i in range(self.replications)]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_csv(path: Path, columns: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_manifest(path: Path, entries: dict) -> None:
    """Key=value text file with the fully resolved run configuration."""
    with open(path, "w", newline="\n") as fh:
        fh.write(f"artifact_version={__version__}\n")
        for key in sorted(entries):
            fh.write(f"{key}={_fmt(entries[key])}\n")


def _base_manifest(spec: SweepSpec) -> dict:
    entries = {
        "experiment.variable": spec.variable.value,
        "experiment.replications": spec.replications,
        "experiment.base_seed": spec.base_seed,
    }
    if spec.values is not None:
        entries["experiment.values"] = ",".join(_fmt(v) for v in spec.values)
    for prefix, cfg in (
        ("deployment", spec.deployment),
        ("channel", spec.channel),
        ("rach", spec.rach),
    ):
        for key, value in vars(cfg).items():
            if isinstance(value, enum.Enum):
                value = value.value
            entries[f"{prefix}.{key}"] = value
    return entries


@dataclass
class PerSlotReport:
    csv_path: Path
    summary_path: Path
    manifest_path: Path
    avg_contending_per_slot: float
    avg_successes_per_slot: float
    divergence_flagged: bool
    summaries: list[RunSummary] = dataclasses.field(repr=False, default_factory=list)


def per_slot_study(spec: SweepSpec) -> PerSlotReport:
    """Per-slot contention/success statistics for the base configuration.

    Writes one row per (replication, frame, slot) to per_slot.csv and the
    per-replication averages to per_slot_summary.csv.  The mean averages are
    compared against the reference point and flagged when they diverge by
    more than the tolerance; the flag lands in the summary and the manifest.
    """
    if spec.variable is not SweepVariable.NONE:
        raise ConfigurationError("per_slot_study requires variable 'none'")
    spec.out_dir.mkdir(parents=True, exist_ok=True)
    summaries = run_replicated(spec.deployment, spec.channel, spec.rach, spec.seeds())

    rows = []
    for rep, summary in enumerate(summaries):
        for so in summary.per_slot:
            rows.append(
                [
                    rep,
                    summary.seed,
                    so.frame,
                    so.slot,
                    so.contending,
                    so.singleton_successes,
                    so.sic_successes,
                    so.failed,
                ]
            )
    csv_path = spec.out_dir / "per_slot.csv"
    write_csv(csv_path, PER_SLOT_COLUMNS, rows)

    avg_c = _mean([s.avg_contending_per_slot for s in summaries])
    avg_s = _mean([s.avg_successes_per_slot for s in summaries])
    flagged = (
        abs(avg_c - REFERENCE_CONTENDING_PER_SLOT) > REFERENCE_TOLERANCE * REFERENCE_CONTENDING_PER_SLOT
        or abs(avg_s - REFERENCE_SUCCESSES_PER_SLOT) > REFERENCE_TOLERANCE * REFERENCE_SUCCESSES_PER_SLOT
    )

    summary_path = spec.out_dir / "per_slot_summary.csv"
    write_csv(
        summary_path,
        [
            "replication",
            "seed",
            "frames_used",
            "drained",
            "avg_contending_per_slot",
            "avg_successes_per_slot",
        ],
        [
            [
                rep,
                s.seed,
                s.frames_used,
                s.drained,
                s.avg_contending_per_slot,
                s.avg_successes_per_slot,
            ]
            for rep, s in enumerate(summaries)
        ],
    )

    manifest = _base_manifest(spec)
    manifest["result.avg_contending_per_slot"] = avg_c
    manifest["result.avg_successes_per_slot"] = avg_s
    manifest["result.reference_contending_per_slot"] = REFERENCE_CONTENDING_PER_SLOT
    manifest["result.reference_successes_per_slot"] = REFERENCE_SUCCESSES_PER_SLOT
    manifest["result.divergence_flagged"] = flagged
    manifest_path = spec.out_dir / "manifest.txt"
    write_manifest(manifest_path, manifest)

    return PerSlotReport(
        csv_path=csv_path,
        summary_path=summary_path,
        manifest_path=manifest_path,
        avg_contending_per_slot=avg_c,
        avg_successes_per_slot=avg_s,
        divergence_flagged=flagged,
        summaries=summaries,
    )


@dataclass
class SweepReport:
    csv_path: Path
    manifest_path: Path
    # value -> list of (seed, contending, successes), one per replication
    results: dict


def delta_p_sweep(spec: SweepSpec) -> SweepReport:
    """Single-frame successes vs the SIC power-gap threshold.

    Every device contends exactly once (p_bar forced to 1, one frame); the
    same seed list is reused at every threshold so the per-seed success
    counts are directly comparable across the sweep.
    """
    if spec.variable is not SweepVariable.DELTA_P:
        raise ConfigurationError("delta_p_sweep requires variable 'delta-p'")
    spec.out_dir.mkdir(parents=True, exist_ok=True)

    rows = []
    results: dict[float, list[tuple[int, int, int]]] = {}
    for value in spec.values:
        rach = replace(spec.rach, delta_p_db=float(value), p_bar=1.0, max_frames=1)
        points = []
        for rep, seed in enumerate(spec.seeds()):
            summary = run(spec.deployment, spec.channel, rach, seed)
            contending, successes = _first_frame(summary)
            rows.append([rep, seed, float(value), contending, successes])
            points.append((seed, contending, successes))
        results[float(value)] = points

    csv_path = spec.out_dir / "dp_sweep.csv"
    write_csv(csv_path, DP_SWEEP_COLUMNS, rows)
    manifest_path = spec.out_dir / "manifest.txt"
    write_manifest(manifest_path, _base_manifest(spec))
    return SweepReport(csv_path=csv_path, manifest_path=manifest_path, results=results)


@dataclass
class LoadSweepReport(SweepReport):
    peak_m: int = 0
    peak_mean_successes: float = 0.0


def load_sweep(spec: SweepSpec) -> LoadSweepReport:
    """Single-frame successes vs the number of contending devices (p_bar=1).

    The peak of the per-value mean success count is reported in the manifest
    (peak_m_devices / peak_mean_successes) and on the returned report.
    """
    if spec.variable is not SweepVariable.LOAD:
        raise ConfigurationError("load_sweep requires variable 'load'")
    spec.out_dir.mkdir(parents=True, exist_ok=True)

    rach = replace(spec.rach, p_bar=1.0, max_frames=1)
    rows = []
    results: dict[float, list[tuple[int, int, int]]] = {}
    for value in spec.values:
        m = int(value)
        deployment = replace(spec.deployment, num_devices=m)
        points = []
        for rep, seed in enumerate(spec.seeds()):
            summary = run(deployment, spec.channel, rach, seed)
            contending, successes = _first_frame(summary)
            rows.append([rep, seed, m, contending, successes])
            points.append((seed, contending, successes))
        results[float(value)] = points

    csv_path = spec.out_dir / "load_sweep.csv"
    write_csv(csv_path, LOAD_SWEEP_COLUMNS, rows)

    means = {v: _mean([s for (_, _, s) in pts]) for v, pts in results.items()}
    peak_v = max(means, key=means.get)
    manifest = _base_manifest(spec)
    manifest["result.peak_m_devices"] = int(peak_v)
    manifest["result.peak_mean_successes"] = means[peak_v]
    manifest_path = spec.out_dir / "manifest.txt"
    write_manifest(manifest_path, manifest)
    return LoadSweepReport(
        csv_path=csv_path,
        manifest_path=manifest_path,
        results=results,
        peak_m=int(peak_v),
        peak_mean_successes=means[peak_v],
    )


def _first_frame(summary: RunSummary) -> tuple[int, int]:
    if not summary.per_frame:
        return 0, 0
    fr = summary.per_frame[0]
    return fr.contending, fr.successes


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values) if values else float("nan")
