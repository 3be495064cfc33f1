"""Device deployment geometry and the urban Okumura-Hata channel model.

Devices are dropped uniformly (by area) in an annulus around a single gNB
fixed at the origin.  Received power is transmit power minus the urban
Okumura-Hata path loss; an optional log-normal shadowing term (in dB) can be
added on top, but the default channel is purely distance-deterministic.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

log = logging.getLogger(__name__)

# One-way propagation: speed of light expressed in km per microsecond.
SPEED_OF_LIGHT_KM_PER_US = 0.299792458

# Nominal validity ranges of the urban Hata formula (MHz, m, m).
_HATA_RANGES = {
    "f_mhz": (150.0, 1500.0),
    "h_g_m": (30.0, 200.0),
    "h_d_m": (1.0, 10.0),
}


@dataclass(frozen=True)
class Position:
    """Planar device location in km, gNB at the origin."""

    x_km: float
    y_km: float

    def distance_km(self) -> float:
        return math.hypot(self.x_km, self.y_km)


@dataclass(frozen=True)
class ChannelParams:
    """Carrier/antenna parameters feeding the Okumura-Hata formula."""

    f_mhz: float = 1500.0
    h_g_m: float = 30.0
    h_d_m: float = 1.5
    p_t_dbm: float = 24.0

    def __post_init__(self) -> None:
        for name in ("f_mhz", "h_g_m", "h_d_m"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigurationError(f"{name} must be positive, got {value!r}")
            lo, hi = _HATA_RANGES[name]
            if not lo <= value <= hi:
                # Warn only: sweeps near the nominal range must still run.
                log.warning(
                    "%s=%g outside nominal Hata range [%g, %g]", name, value, lo, hi
                )


@dataclass(frozen=True)
class DeploymentConfig:
    """How many devices to drop and where."""

    num_devices: int = 200_000
    radius_km: float = 2.0
    min_distance_km: float = 0.035
    seed: int = 0

    def __post_init__(self) -> None:
        if self.num_devices < 0:
            raise ConfigurationError(f"num_devices must be >= 0, got {self.num_devices}")
        if not 0 <= self.min_distance_km < self.radius_km:
            raise ConfigurationError(
                "need 0 <= min_distance_km < radius_km, got "
                f"min={self.min_distance_km}, radius={self.radius_km}"
            )


def deploy_xy(cfg: DeploymentConfig, rng: np.random.Generator | None = None) -> np.ndarray:
    """Draw device coordinates, shape (num_devices, 2), area-uniform in the annulus.

    The radial coordinate is r = sqrt(u * (R^2 - r_min^2) + r_min^2) with u
    uniform in [0, 1), which is uniform by area; the angle is uniform in
    [0, 2*pi).  Deterministic for a given generator state.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    n = cfg.num_devices
    u = rng.random(n)
    theta = rng.random(n) * 2.0 * np.pi
    r = np.sqrt(u * (cfg.radius_km**2 - cfg.min_distance_km**2) + cfg.min_distance_km**2)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def deploy(cfg: DeploymentConfig, rng: np.random.Generator | None = None) -> list[Position]:
    """Like :func:`deploy_xy` but returns Position objects."""
    xy = deploy_xy(cfg, rng)
    return [Position(float(x), float(y)) for x, y in xy]


def hata_coefficients(ch: ChannelParams) -> tuple[float, float]:
    """Intercept and slope (dB) of the urban Okumura-Hata loss vs log10(r_km)."""
    a1 = (
        69.55
        + 26.16 * math.log10(ch.f_mhz)
        - 13.82 * math.log10(ch.h_g_m)
        - (1.1 * math.log10(ch.f_mhz) - 0.7) * ch.h_d_m
    )
    a2 = 44.9 - 6.55 * math.log10(ch.h_g_m)
    return a1, a2


def path_loss_db(ch: ChannelParams, r_km):
    """Urban Okumura-Hata path loss in dB; accepts scalars or arrays (km)."""
    r = np.asarray(r_km, dtype=float)
    if np.any(r <= 0):
        raise ValueError("distance must be positive (km)")
    a1, a2 = hata_coefficients(ch)
    out = a1 + a2 * np.log10(r)
    return float(out) if np.isscalar(r_km) else out


def received_power_dbm(
    ch: ChannelParams,
    r_km,
    shadowing_sigma_db: float = 0.0,
    rng: np.random.Generator | None = None,
):
    """Received power at the gNB: transmit power minus path loss, in dBm.

    With shadowing_sigma_db > 0, adds a zero-mean Gaussian dB term drawn from
    the caller's generator (one draw per distance value).
    """
    pl = path_loss_db(ch, r_km)
    rx = ch.p_t_dbm - pl
    if shadowing_sigma_db > 0.0:
        if rng is None:
            raise ValueError("shadowing requires an explicit random generator")
        shape = () if np.isscalar(r_km) else np.shape(r_km)
        rx = rx + rng.normal(0.0, shadowing_sigma_db, shape)
        if np.isscalar(r_km):
            rx = float(rx)
    return rx
