"""Multi-frame Monte-Carlo engine.

Runs frame after frame of contention plus decoding over an array-resident
device population until the backlog drains or the frame horizon is hit.
Randomness is organised so that runs are bit-reproducible per seed and the
contention draws are independent of the decoder choice: one master seed
spawns a deployment substream and one substream per frame, and every frame
draws barring/slot/preamble arrays for the full population regardless of who
is still backlogged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import Decoder, RachConfig
from .radio_env import (
    SPEED_OF_LIGHT_KM_PER_US,
    ChannelParams,
    DeploymentConfig,
    deploy_xy,
    path_loss_db,
)

_SLEEP, _COMPETING, _CONNECTED = 0, 1, 3


@dataclass(frozen=True)
class SlotOutcome:
    frame: int
    slot: int
    contending: int
    singleton_successes: int
    sic_successes: int
    failed: int


@dataclass(frozen=True)
class FrameResult:
    frame: int
    contending: int
    successes: int
    backlog_remaining: int


@dataclass
class RunSummary:
    per_slot: list[SlotOutcome]
    per_frame: list[FrameResult]
    avg_contending_per_slot: float
    avg_successes_per_slot: float
    total_successes: int
    frames_used: int
    drained: bool
    seed: int
    config: dict = field(default_factory=dict)


def _config_echo(dep: DeploymentConfig, ch: ChannelParams, rach: RachConfig) -> dict:
    echo = {}
    for prefix, cfg in (("deployment", dep), ("channel", ch), ("rach", rach)):
        for key, value in vars(cfg).items():
            if isinstance(value, Decoder):
                value = value.value
            echo[f"{prefix}.{key}"] = value
    return echo


def _decode_frame(
    gids: np.ndarray,
    ids: np.ndarray,
    rx_dbm: np.ndarray,
    arrival_us: np.ndarray,
    rach: RachConfig,
) -> np.ndarray:
    """Decoded mask over the frame's transmissions, per the configured rule."""
    if rach.decoder is Decoder.COLLISION:
        counts = np.bincount(gids, minlength=rach.t_slots * rach.k_preambles)
        return counts[gids] == 1
    if rach.decoder is Decoder.RSRA_SIC:
        return kernels.chain_decode_mask(gids, -rx_dbm, ids, rach.delta_p_db)
    if rach.decoder is Decoder.NORA_APPROX:
        return kernels.chain_decode_mask(gids, arrival_us, ids, rach.nora_tau_us)
    raise ValueError(f"unknown decoder {rach.decoder!r}")


def run(
    deployment: DeploymentConfig,
    channel: ChannelParams,
    rach: RachConfig,
    seed: int,
) -> RunSummary:
    """One deterministic simulation run for a single seed."""
    m = deployment.num_devices
    t, k = rach.t_slots, rach.k_preambles

    root = np.random.SeedSequence(seed)
    deploy_ss, contention_ss = root.spawn(2)
    rng_d = np.random.default_rng(deploy_ss)

    xy = deploy_xy(deployment, rng_d)
    dist = np.maximum(np.hypot(xy[:, 0], xy[:, 1]), deployment.min_distance_km)
    base_rx = channel.p_t_dbm - (path_loss_db(channel, dist) if m else np.zeros(0))
    arrival_us = dist / SPEED_OF_LIGHT_KM_PER_US

    if rach.activation_frames > 1:
        activation = rng_d.integers(1, rach.activation_frames + 1, m)
        state = np.full(m, _SLEEP, dtype=np.uint8)
    else:
        activation = np.ones(m, dtype=np.int64)
        state = np.full(m, _COMPETING, dtype=np.uint8)

    all_ids = np.arange(m, dtype=np.int64)
    per_slot: list[SlotOutcome] = []
    per_frame: list[FrameResult] = []
    total_contending = 0
    total_successes = 0
    drained = m == 0
    frames_used = 0

    # A vacuous deployment has nothing to simulate: no frames, no rows.
    for frame in range(1, rach.max_frames + 1 if m else 1):
        frames_used = frame
        frng = np.random.default_rng(contention_ss.spawn(1)[0])
        # Full-population draws each frame: keeps per-device randomness
        # aligned across decoder choices and backlog histories.
        u = frng.random(m)
        slots = frng.integers(1, t + 1, m)
        preambles = frng.integers(1, k + 1, m)
        shadow = (
            frng.normal(0.0, rach.shadowing_sigma_db, m)
            if rach.shadowing_sigma_db > 0.0
            else None
        )

        state[(state == _SLEEP) & (activation <= frame)] = _COMPETING
        admitted = np.flatnonzero((state == _COMPETING) & (u < rach.p_bar))

        if admitted.size:
            gids = (slots[admitted] - 1) * k + (preambles[admitted] - 1)
            rx = base_rx[admitted]
            if shadow is not None:
                rx = rx + shadow[admitted]
            decoded = _decode_frame(
                gids, all_ids[admitted], rx, arrival_us[admitted], rach
            )
            counts = np.bincount(gids, minlength=t * k)
            singles = counts[gids] == 1

            slot0 = slots[admitted] - 1
            n_contend = np.bincount(slot0, minlength=t)
            n_single = np.bincount(slot0[decoded & singles], minlength=t)
            n_sic = np.bincount(slot0[decoded & ~singles], minlength=t)

            state[admitted[decoded]] = _CONNECTED
            state[admitted[~decoded]] = _COMPETING
            n_succ = int(np.count_nonzero(decoded))
        else:
            n_contend = n_single = n_sic = np.zeros(t, dtype=np.int64)
            n_succ = 0

        for s in range(t):
            c = int(n_contend[s])
            sg = int(n_single[s])
            sc = int(n_sic[s])
            per_slot.append(
                SlotOutcome(
                    frame=frame,
                    slot=s + 1,
                    contending=c,
                    singleton_successes=sg,
                    sic_successes=sc,
                    failed=c - sg - sc,
                )
            )

        total_contending += int(admitted.size)
        total_successes += n_succ
        backlog = int(m - np.count_nonzero(state == _CONNECTED))
        per_frame.append(
            FrameResult(
                frame=frame,
                contending=int(admitted.size),
                successes=n_succ,
                backlog_remaining=backlog,
            )
        )
        if backlog == 0:
            drained = True
            break

    denom = frames_used * t if frames_used else 1
    return RunSummary(
        per_slot=per_slot,
        per_frame=per_frame,
        avg_contending_per_slot=total_contending / denom,
        avg_successes_per_slot=total_successes / denom,
        total_successes=total_successes,
        frames_used=frames_used,
        drained=drained,
        seed=seed,
        config=_config_echo(deployment, channel, rach),
    )


def run_replicated(
    deployment: DeploymentConfig,
    channel: ChannelParams,
    rach: RachConfig,
    seeds: list[int],
) -> list[RunSummary]:
    """Independent runs, one per seed; result order follows the seed order."""
    if len(set(seeds)) != len(seeds):
        raise ValueError("replication seeds must be distinct")
    return [run(deployment, channel, rach, s) for s in seeds]
