"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with the measured values.  Run with `pytest -s` to see the
lines as they complete."""

import math
import time

import numpy as np
import pytest

from rachsim import (
    ChannelParams,
    Decoder,
    DeploymentConfig,
    RachConfig,
    hata_coefficients,
    oracle_decode,
    path_loss_db,
    received_power_dbm,
    rsra_sic_decode,
    run,
)
from rachsim.experiments import SweepSpec, SweepVariable, delta_p_sweep, load_sweep, per_slot_study
from conftest import make_group

CHANNEL = ChannelParams()
REPLICATIONS = 20
BASE_SEED = 1

FIG3_DEP = DeploymentConfig(num_devices=200_000)
FIG3_RACH = RachConfig()  # T=1482, K=54, P=0.9, dP=7, SIC

DP_SWEEP_DEP = DeploymentConfig(num_devices=145_000)
DP_VALUES = [float(v) for v in range(0, 55, 5)]
LOAD_VALUES = [
    25_000.0, 50_000.0, 75_000.0, 100_000.0, 125_000.0, 150_000.0,
    175_000.0, 200_000.0, 250_000.0, 300_000.0, 400_000.0, 500_000.0,
]
PEAK_TARGET = 5.19e4
PEAK_TOLERANCE = 0.20
PER_SLOT_REF_CONTENDING = 87.0
PER_SLOT_REF_SUCCESSES = 43.0
PER_SLOT_TOLERANCE = 0.30


def _report(name: str, ok: bool, detail: str) -> bool:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


@pytest.fixture(scope="module")
def fig3_reports(tmp_path_factory):
    base = tmp_path_factory.mktemp("fig3")
    sic = per_slot_study(
        SweepSpec(
            variable=SweepVariable.NONE, values=None, replications=REPLICATIONS,
            deployment=FIG3_DEP, channel=CHANNEL, rach=FIG3_RACH,
            out_dir=base / "sic", base_seed=BASE_SEED,
        )
    )
    col = per_slot_study(
        SweepSpec(
            variable=SweepVariable.NONE, values=None, replications=REPLICATIONS,
            deployment=FIG3_DEP, channel=CHANNEL,
            rach=RachConfig(decoder=Decoder.COLLISION),
            out_dir=base / "col", base_seed=BASE_SEED,
        )
    )
    return sic, col


def test_delta_p_zero_completeness():
    rach = RachConfig(p_bar=1.0, delta_p_db=0.0, max_frames=1)
    start = time.perf_counter()
    summary = run(DP_SWEEP_DEP, CHANNEL, rach, BASE_SEED)
    elapsed = time.perf_counter() - start
    fr = summary.per_frame[0]
    ok = fr.successes == fr.contending == DP_SWEEP_DEP.num_devices and elapsed < 10.0
    assert _report(
        "delta-p-zero-completeness", ok,
        f"successes={fr.successes} contenders={fr.contending} runtime={elapsed:.2f}s",
    )


def test_delta_p_monotone_decay(tmp_path):
    spec = SweepSpec(
        variable=SweepVariable.DELTA_P, values=DP_VALUES, replications=REPLICATIONS,
        deployment=DP_SWEEP_DEP, channel=CHANNEL, rach=RachConfig(),
        out_dir=tmp_path, base_seed=BASE_SEED,
    )
    report = delta_p_sweep(spec)
    per_seed = {}
    for value in DP_VALUES:
        for seed, _, successes in report.results[value]:
            per_seed.setdefault(seed, []).append(successes)
    monotone = all(
        series == sorted(series, reverse=True) for series in per_seed.values()
    )
    tail_fracs = [
        series[-1] / series[0] for series in per_seed.values()
    ]
    decayed = all(frac < 0.05 for frac in tail_fracs)
    ok = monotone and decayed
    assert _report(
        "delta-p-monotone-decay", ok,
        f"monotone={monotone} max_tail_fraction={max(tail_fracs):.4f} "
        f"(bound 0.05 over {len(per_seed)} seeds)",
    )


def test_load_sweep_peak(tmp_path):
    spec = SweepSpec(
        variable=SweepVariable.LOAD, values=LOAD_VALUES, replications=REPLICATIONS,
        deployment=FIG3_DEP, channel=CHANNEL, rach=RachConfig(),
        out_dir=tmp_path, base_seed=BASE_SEED,
    )
    start = time.perf_counter()
    report = load_sweep(spec)
    elapsed = time.perf_counter() - start
    deviation = (report.peak_mean_successes - PEAK_TARGET) / PEAK_TARGET
    ok = abs(deviation) <= PEAK_TOLERANCE and elapsed < 300.0
    assert _report(
        "load-sweep-peak", ok,
        f"peak={report.peak_mean_successes:.1f} at M={report.peak_m} "
        f"target={PEAK_TARGET:.0f} deviation={deviation:+.1%} runtime={elapsed:.1f}s",
    )


def test_per_slot_averages(fig3_reports):
    sic, col = fig3_reports
    sic_ratio = sic.avg_successes_per_slot / sic.avg_contending_per_slot
    col_ratio = col.avg_successes_per_slot / col.avg_contending_per_slot
    within = (
        abs(sic.avg_contending_per_slot - PER_SLOT_REF_CONTENDING)
        <= PER_SLOT_TOLERANCE * PER_SLOT_REF_CONTENDING
        and abs(sic.avg_successes_per_slot - PER_SLOT_REF_SUCCESSES)
        <= PER_SLOT_TOLERANCE * PER_SLOT_REF_SUCCESSES
    )
    ok = sic_ratio > col_ratio and (within or sic.divergence_flagged)
    assert _report(
        "per-slot-averages", ok,
        f"avg_contending={sic.avg_contending_per_slot:.2f} "
        f"avg_successes={sic.avg_successes_per_slot:.2f} "
        f"within_tolerance={within} flagged={sic.divergence_flagged} "
        f"sic_ratio={sic_ratio:.3f} collision_ratio={col_ratio:.3f}",
    )


def test_oracle_equivalence_and_gap_structure():
    rng = np.random.default_rng(12345)
    mismatches = 0
    n_minus_one = 0
    for _ in range(10_000):
        size = int(rng.integers(1, 6))
        powers = rng.uniform(-130.0, -70.0, size)
        dp = float(rng.uniform(0.0, 50.0))
        group = make_group(powers)
        sic = rsra_sic_decode(group, dp)
        if sic != oracle_decode(group, dp):
            mismatches += 1
        if size >= 2 and len(sic.decoded) == size - 1:
            n_minus_one += 1
    assert _report(
        "oracle-equivalence", mismatches == 0, f"mismatches={mismatches}/10000"
    )
    assert _report(
        "gap-structure-invariant", n_minus_one == 0,
        f"n_minus_one_outcomes={n_minus_one}/10000",
    )


def test_channel_correctness():
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(1000):
        ch = ChannelParams(
            f_mhz=float(rng.uniform(100.0, 2000.0)),
            h_g_m=float(rng.uniform(10.0, 250.0)),
            h_d_m=float(rng.uniform(0.5, 12.0)),
        )
        r = float(rng.uniform(0.05, 10.0))
        ref_a1 = (
            69.55
            + 26.16 * math.log(ch.f_mhz, 10)
            - 13.82 * math.log(ch.h_g_m, 10)
            - (1.1 * math.log(ch.f_mhz, 10) - 0.7) * ch.h_d_m
        )
        ref_a2 = 44.9 - 6.55 * math.log(ch.h_g_m, 10)
        a1, a2 = hata_coefficients(ch)
        worst = max(
            worst,
            abs(a1 - ref_a1),
            abs(a2 - ref_a2),
            abs(path_loss_db(ch, r) - (ref_a1 + ref_a2 * math.log(r, 10))),
        )
    pl_1km = path_loss_db(CHANNEL, 1.0)
    pr_1km = received_power_dbm(CHANNEL, 1.0)
    ok = worst < 1e-9 and round(pl_1km, 2) == 128.03 and round(pr_1km, 2) == -104.03
    assert _report(
        "channel-correctness", ok,
        f"max_abs_error={worst:.2e} PL(1km)={pl_1km:.2f} PR(1km)={pr_1km:.2f}",
    )


def test_contention_statistics(fig3_reports):
    sic, _ = fig3_reports
    expected = FIG3_RACH.p_bar * FIG3_DEP.num_devices / FIG3_RACH.t_slots
    first = [s.per_frame[0].contending / FIG3_RACH.t_slots for s in sic.summaries]
    se = np.std(first, ddof=1) / math.sqrt(len(first))
    mean = float(np.mean(first))
    ok = abs(mean - expected) < 3 * se
    assert _report(
        "contention-statistics", ok,
        f"mean={mean:.3f} expected={expected:.3f} se={se:.4f} reps={len(first)}",
    )


def test_determinism_byte_identical_csvs(tmp_path):
    dep = DeploymentConfig(num_devices=20_000)
    rach = RachConfig(t_slots=200, k_preambles=10, max_frames=30)
    paths = []
    for name in ("first", "second"):
        report = per_slot_study(
            SweepSpec(
                variable=SweepVariable.NONE, values=None, replications=2,
                deployment=dep, channel=CHANNEL, rach=rach,
                out_dir=tmp_path / name, base_seed=BASE_SEED,
            )
        )
        paths.append(report)
    identical = (
        paths[0].csv_path.read_bytes() == paths[1].csv_path.read_bytes()
        and paths[0].summary_path.read_bytes() == paths[1].summary_path.read_bytes()
        and paths[0].manifest_path.read_bytes() == paths[1].manifest_path.read_bytes()
    )
    assert _report("determinism", identical, "per_slot.csv + summary + manifest compared twice")
