"""Collision-resolution rules for one (slot, preamble) group of msg-A.

Three decoders share the same shape: order the colliders by a key, then walk
the consecutive gaps.  A device is peeled off while the gap to the next one
exceeds the threshold; once a gap fails, the remaining signals stay
superposed and everyone left fails.  If every gap passes, the weakest/last
device also decodes, interference-free after all cancellations.

``oracle_decode`` re-states that rule as a closed-form membership predicate
(no loop-carried state) and exists purely to cross-check ``rsra_sic_decode``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MsgA


@dataclass(frozen=True)
class DecodeOutcome:
    decoded: list[int]  # device ids in decode order
    failed: list[int]


def _require_group(group: list[MsgA]) -> None:
    if not group:
        raise ValueError("decode called on an empty group")


def collision_decode(group: list[MsgA]) -> DecodeOutcome:
    """Baseline: a lone device succeeds, any collision kills the whole group."""
    _require_group(group)
    if len(group) == 1:
        return DecodeOutcome(decoded=[group[0].device_id], failed=[])
    return DecodeOutcome(decoded=[], failed=sorted(m.device_id for m in group))


def _chain_decode(ordered: list[MsgA], gaps: list[float], threshold: float) -> DecodeOutcome:
    """Peel devices while consecutive gaps exceed the threshold."""
    i = 0
    decoded: list[int] = []
    while i < len(ordered) - 1 and gaps[i] > threshold:
        decoded.append(ordered[i].device_id)
        i += 1
    if i == len(ordered) - 1:
        # Whole chain cancelled: the last device decodes without interference.
        decoded.append(ordered[-1].device_id)
        i += 1
    failed = [m.device_id for m in ordered[i:]]
    return DecodeOutcome(decoded=decoded, failed=failed)


def rsra_sic_decode(group: list[MsgA], delta_p_db: float) -> DecodeOutcome:
    """Power-domain SIC: strongest first, peel while the power gap > delta_p_db."""
    _require_group(group)
    if delta_p_db < 0:
        raise ValueError(f"delta_p_db must be >= 0, got {delta_p_db}")
    ordered = sorted(group, key=lambda m: (-m.rx_power_dbm, m.device_id))
    gaps = [
        ordered[j].rx_power_dbm - ordered[j + 1].rx_power_dbm
        for j in range(len(ordered) - 1)
    ]
    return _chain_decode(ordered, gaps, delta_p_db)


def nora_approx_decode(group: list[MsgA], tau_us: float) -> DecodeOutcome:
    """Arrival-time analogue of the SIC rule: earliest first, gaps vs tau_us.

    Trend-level approximation of intra-slot non-orthogonal random access; not
    calibrated against any reference curve.
    """
    _require_group(group)
    if tau_us < 0:
        raise ValueError(f"tau_us must be >= 0, got {tau_us}")
    ordered = sorted(group, key=lambda m: (m.arrival_time_us, m.device_id))
    gaps = [
        ordered[j + 1].arrival_time_us - ordered[j].arrival_time_us
        for j in range(len(ordered) - 1)
    ]
    return _chain_decode(ordered, gaps, tau_us)


def oracle_decode(group: list[MsgA], delta_p_db: float) -> DecodeOutcome:
    """Closed-form restatement of the SIC rule, for cross-checking.

    With the group power-sorted descending and gaps g_1..g_{n-1}: the device
    at rank i < n decodes iff g_1..g_i all exceed the threshold; the rank-n
    device decodes iff all n-1 gaps do.
    """
    _require_group(group)
    if delta_p_db < 0:
        raise ValueError(f"delta_p_db must be >= 0, got {delta_p_db}")
    ordered = sorted(group, key=lambda m: (-m.rx_power_dbm, m.device_id))
    n = len(ordered)
    gaps = [
        ordered[j].rx_power_dbm - ordered[j + 1].rx_power_dbm for j in range(n - 1)
    ]
    member = [
        all(g > delta_p_db for g in gaps[: min(rank, n - 1)]) for rank in range(1, n + 1)
    ]
    decoded = [m.device_id for m, ok in zip(ordered, member) if ok]
    failed = [m.device_id for m, ok in zip(ordered, member) if not ok]
    return DecodeOutcome(decoded=decoded, failed=failed)
