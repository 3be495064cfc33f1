"""Slot-level simulator of a rate-splitting random access mechanism.

Devices contend on a slotted random access channel; colliding transmissions
that share a slot and preamble are resolved at the base station by power-gap
successive interference cancellation.  The package ships a deterministic
Monte-Carlo engine, pluggable collision decoders, and an experiment harness
with CSV output.
"""

__version__ = "0.1.0"

from .core import Decoder, Device, DeviceState, MsgA, RachConfig
from .decoders import (
    DecodeOutcome,
    collision_decode,
    nora_approx_decode,
    oracle_decode,
    rsra_sic_decode,
)
from .engine import FrameResult, RunSummary, SlotOutcome, run, run_replicated
from .errors import ConfigurationError, ProtocolError
from .kernels import get_backend
from .radio_env import (
    ChannelParams,
    DeploymentConfig,
    Position,
    deploy,
    deploy_xy,
    hata_coefficients,
    path_loss_db,
    received_power_dbm,
)

__all__ = [
    "__version__",
    "ChannelParams",
    "ConfigurationError",
    "DecodeOutcome",
    "Decoder",
    "DeploymentConfig",
    "Device",
    "DeviceState",
    "FrameResult",
    "MsgA",
    "Position",
    "ProtocolError",
    "RachConfig",
    "RunSummary",
    "SlotOutcome",
    "collision_decode",
    "deploy",
    "deploy_xy",
    "get_backend",
    "hata_coefficients",
    "nora_approx_decode",
    "oracle_decode",
    "path_loss_db",
    "received_power_dbm",
    "rsra_sic_decode",
    "run",
    "run_replicated",
]
