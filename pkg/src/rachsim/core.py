"""Device lifecycle and the per-frame contention procedure.

A device sleeps until it has data, then competes for a radio frame.  Each
frame it draws an access-barring number; if admitted it picks one of T slots
and one of K preambles uniformly and transmits its msg-A (preamble plus
power-tagged payload).  Failure or barring sends it back to compete in the
next frame; success connects it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, ProtocolError
from .radio_env import (
    SPEED_OF_LIGHT_KM_PER_US,
    ChannelParams,
    Position,
    received_power_dbm,
)


class DeviceState(enum.Enum):
    SLEEP = "sleep"
    COMPETING_FOR_FRAME = "competing"
    CONTENDING_RACH = "contending"
    CONNECTED = "connected"


# Legal lifecycle edges (self-loop on COMPETING covers a barred frame).
ALLOWED_TRANSITIONS = {
    (DeviceState.SLEEP, DeviceState.COMPETING_FOR_FRAME),
    (DeviceState.COMPETING_FOR_FRAME, DeviceState.COMPETING_FOR_FRAME),
    (DeviceState.COMPETING_FOR_FRAME, DeviceState.CONTENDING_RACH),
    (DeviceState.CONTENDING_RACH, DeviceState.CONNECTED),
    (DeviceState.CONTENDING_RACH, DeviceState.COMPETING_FOR_FRAME),
}


class Decoder(enum.Enum):
    COLLISION = "collision"
    RSRA_SIC = "rsra-sic"
    NORA_APPROX = "nora-approx"


@dataclass
class Device:
    """One MTC device, with its cached geometry and deterministic link budget."""

    id: int
    position: Position
    state: DeviceState = DeviceState.COMPETING_FOR_FRAME
    attempts: int = 0
    distance_km: float = 0.0
    rx_power_dbm: float = 0.0
    transitions: list = field(default_factory=list, repr=False)

    @classmethod
    def from_position(
        cls,
        dev_id: int,
        position: Position,
        ch: ChannelParams,
        min_distance_km: float = 0.0,
        state: DeviceState = DeviceState.COMPETING_FOR_FRAME,
    ) -> "Device":
        dist = max(position.distance_km(), min_distance_km)
        return cls(
            id=dev_id,
            position=position,
            state=state,
            distance_km=dist,
            rx_power_dbm=received_power_dbm(ch, dist),
        )

    def transition(self, new_state: DeviceState) -> None:
        if (self.state, new_state) not in ALLOWED_TRANSITIONS:
            raise ProtocolError(f"illegal transition {self.state} -> {new_state}")
        self.transitions.append((self.state, new_state))
        self.state = new_state


@dataclass(frozen=True)
class RachConfig:
    """Frame/protocol parameters for the contention procedure."""

    t_slots: int = 1482
    k_preambles: int = 54
    p_bar: float = 0.9
    delta_p_db: float = 7.0
    decoder: Decoder = Decoder.RSRA_SIC
    max_frames: int = 50
    nora_tau_us: float = 1.0
    shadowing_sigma_db: float = 0.0
    # Devices wake up in a frame drawn uniformly from {1..activation_frames};
    # the default 1 means everyone is backlogged at frame 1.
    activation_frames: int = 1

    def __post_init__(self) -> None:
        if self.t_slots < 1:
            raise ConfigurationError(f"t_slots must be >= 1, got {self.t_slots}")
        if self.k_preambles < 1:
            raise ConfigurationError(f"k_preambles must be >= 1, got {self.k_preambles}")
        if not 0.0 <= self.p_bar <= 1.0:
            raise ConfigurationError(f"p_bar must be in [0, 1], got {self.p_bar}")
        if self.delta_p_db < 0.0:
            raise ConfigurationError(f"delta_p_db must be >= 0, got {self.delta_p_db}")
        if self.max_frames < 1:
            raise ConfigurationError(f"max_frames must be >= 1, got {self.max_frames}")
        if self.nora_tau_us < 0.0:
            raise ConfigurationError(f"nora_tau_us must be >= 0, got {self.nora_tau_us}")
        if self.shadowing_sigma_db < 0.0:
            raise ConfigurationError("shadowing_sigma_db must be >= 0")
        if self.activation_frames < 1:
            raise ConfigurationError("activation_frames must be >= 1")


@dataclass(frozen=True)
class MsgA:
    """One uplink attempt: preamble (common part) plus power-tagged payload."""

    device_id: int
    preamble: int
    slot: int
    rx_power_dbm: float
    arrival_time_us: float


def barring_draw(p_bar: float, rng: np.random.Generator) -> bool:
    """True iff the device's uniform draw n in [0,1) satisfies n < p_bar."""
    if not 0.0 <= p_bar <= 1.0:
        raise ConfigurationError(f"p_bar must be in [0, 1], got {p_bar}")
    return rng.random() < p_bar


def select_slot_and_preamble(cfg: RachConfig, rng: np.random.Generator) -> tuple[int, int]:
    """Independent uniform picks: slot in {1..T}, preamble in {1..K}."""
    slot = int(rng.integers(1, cfg.t_slots + 1))
    preamble = int(rng.integers(1, cfg.k_preambles + 1))
    return slot, preamble


def build_msg_a(
    dev: Device,
    slot: int,
    preamble: int,
    ch: ChannelParams,
    rng: np.random.Generator | None = None,
    shadowing_sigma_db: float = 0.0,
) -> MsgA:
    """Assemble the msg-A a contending device transmits in its chosen slot."""
    if dev.state is not DeviceState.CONTENDING_RACH:
        raise ProtocolError(f"device {dev.id} cannot transmit in state {dev.state}")
    rx = received_power_dbm(ch, dev.distance_km, shadowing_sigma_db, rng)
    return MsgA(
        device_id=dev.id,
        preamble=preamble,
        slot=slot,
        rx_power_dbm=rx,
        arrival_time_us=dev.distance_km / SPEED_OF_LIGHT_KM_PER_US,
    )


def contend_frame(
    devices: list[Device],
    cfg: RachConfig,
    ch: ChannelParams,
    rng: np.random.Generator,
) -> dict[int, dict[int, list[MsgA]]]:
    """Run one frame of contention over a device list.

    Every competing device runs the barring draw; admitted devices move to
    CONTENDING_RACH, pick (slot, preamble) and land in the returned schedule,
    a slot -> preamble -> list-of-MsgA mapping.  Barred devices self-loop on
    COMPETING_FOR_FRAME.  Sleeping and connected devices are untouched.
    """
    schedule: dict[int, dict[int, list[MsgA]]] = {}
    for dev in devices:
        if dev.state is not DeviceState.COMPETING_FOR_FRAME:
            continue
        if not barring_draw(cfg.p_bar, rng):
            dev.transition(DeviceState.COMPETING_FOR_FRAME)
            continue
        dev.transition(DeviceState.CONTENDING_RACH)
        dev.attempts += 1
        slot, preamble = select_slot_and_preamble(cfg, rng)
        msg = build_msg_a(dev, slot, preamble, ch, rng, cfg.shadowing_sigma_db)
        schedule.setdefault(slot, {}).setdefault(preamble, []).append(msg)
    return schedule
