"""Render the three standard figures from the simulator's CSV schemas.

Figure kinds:

* ``per-slot`` — bar chart of the average per-slot contending and success
  counts, with standard-error bars over replications.
* ``dp`` — mean single-frame successes vs the SIC power-gap threshold.
* ``load`` — mean single-frame successes vs the number of devices.

Input columns must match the producing schema exactly; replications are
aggregated into mean and standard-error bands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd

SCHEMAS = {
    "per-slot": [
        "replication",
        "seed",
        "frame",
        "slot",
        "contending",
        "singleton_successes",
        "sic_successes",
        "failed",
    ],
    "dp": ["replication", "seed", "delta_p_db", "contending", "successes"],
    "load": ["replication", "seed", "m_devices", "contending", "successes"],
}

X_COLUMN = {"dp": "delta_p_db", "load": "m_devices"}
X_LABEL = {"dp": "power gap threshold (dB)", "load": "number of devices"}


class SchemaError(ValueError):
    """The input CSV does not match the expected column schema."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: Path
    kind: str  # per-slot | dp | load
    output_path: Path
    title: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in SCHEMAS:
            raise ValueError(f"unknown figure kind {self.kind!r}")


def load_table(spec: FigureSpec) -> pd.DataFrame:
    """Read and schema-check the input CSV."""
    df = pd.read_csv(spec.input_csv)
    expected = SCHEMAS[spec.kind]
    got = list(df.columns)
    if got != expected:
        missing = [c for c in expected if c not in got]
        extra = [c for c in got if c not in expected]
        parts = []
        if missing:
            parts.append(f"missing columns: {', '.join(missing)}")
        if extra:
            parts.append(f"unexpected columns: {', '.join(extra)}")
        if not parts:
            parts.append(f"column order mismatch: {got}")
        raise SchemaError(f"{spec.input_csv}: " + "; ".join(parts))
    return df


def _stderr(values) -> float:
    values = list(values)
    if len(values) < 2:
        return 0.0
    mean = sum(values) / len(values)
    var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return math.sqrt(var / len(values))


def compute_series(kind: str, df: pd.DataFrame) -> dict:
    """The exact data a figure plots: x values, means, and standard errors.

    Means are plain column means over all rows; the error bars come from the
    spread of per-replication means.
    """
    if df.empty:
        raise ValueError("no data rows to plot")
    if kind == "per-slot":
        successes = df["singleton_successes"] + df["sic_successes"]
        rep_c = df.groupby("replication")["contending"].mean()
        rep_s = successes.groupby(df["replication"]).mean()
        return {
            "labels": ["contending", "successes"],
            "mean": [float(df["contending"].mean()), float(successes.mean())],
            "stderr": [_stderr(rep_c), _stderr(rep_s)],
        }
    x_col = X_COLUMN[kind]
    grouped = df.groupby(x_col)["successes"]
    x = sorted(df[x_col].unique())
    return {
        "x": [float(v) for v in x],
        "mean": [float(grouped.get_group(v).mean()) for v in x],
        "stderr": [_stderr(grouped.get_group(v)) for v in x],
    }


def render(spec: FigureSpec) -> Path:
    """Render the figure and write the image file; returns the output path."""
    df = load_table(spec)
    series = compute_series(spec.kind, df)

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if spec.kind == "per-slot":
        ax.bar(
            series["labels"],
            series["mean"],
            yerr=series["stderr"],
            capsize=4,
            color=["tab:blue", "tab:green"],
        )
        ax.set_ylabel("average per slot")
    else:
        mean = series["mean"]
        err = series["stderr"]
        ax.errorbar(series["x"], mean, yerr=err, marker="o", capsize=3)
        ax.fill_between(
            series["x"],
            [m - e for m, e in zip(mean, err)],
            [m + e for m, e in zip(mean, err)],
            alpha=0.2,
        )
        ax.set_xlabel(X_LABEL[spec.kind])
        ax.set_ylabel("successes in a radio frame")
    if spec.title:
        ax.set_title(spec.title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    spec.output_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output_path)
    plt.close(fig)
    return spec.output_path
