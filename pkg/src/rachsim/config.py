"""Run configuration: TOML file loading, overrides, and validation.

The configuration file has four sections (deployment, channel, rach,
experiment); any key can be overridden on the command line with
``--override section.key=value``.  Unknown keys are rejected by name.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .core import Decoder, RachConfig
from .errors import ConfigurationError
from .radio_env import ChannelParams, DeploymentConfig

DEFAULTS: dict[str, dict] = {
    "deployment": {
        "num_devices": 200_000,
        "radius_km": 2.0,
        "min_distance_km": 0.035,
        "seed": 0,
    },
    "channel": {
        "f_mhz": 1500.0,
        "h_g_m": 30.0,
        "h_d_m": 1.5,
        "p_t_dbm": 24.0,
    },
    "rach": {
        "t_slots": 1482,
        "k_preambles": 54,
        "p_bar": 0.9,
        "delta_p_db": 7.0,
        "decoder": "rsra-sic",
        "max_frames": 50,
        "nora_tau_us": 1.0,
        "shadowing_sigma_db": 0.0,
        "activation_frames": 1,
    },
    "experiment": {
        "replications": 20,
        "base_seed": 1,
        "out_dir": "results",
        "dp_values": [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0],
        "dp_num_devices": 145_000,
        "load_values": [
            25_000.0,
            50_000.0,
            75_000.0,
            100_000.0,
            125_000.0,
            150_000.0,
            175_000.0,
            200_000.0,
            250_000.0,
            300_000.0,
            400_000.0,
            500_000.0,
        ],
    },
}


@dataclass(frozen=True)
class RunConfig:
    deployment: DeploymentConfig
    channel: ChannelParams
    rach: RachConfig
    experiment: dict

    def as_flat_dict(self) -> dict:
        flat = {}
        for section, cfg in (
            ("deployment", vars(self.deployment)),
            ("channel", vars(self.channel)),
            ("rach", vars(self.rach)),
            ("experiment", self.experiment),
        ):
            for key, value in cfg.items():
                if isinstance(value, Decoder):
                    value = value.value
                flat[f"{section}.{key}"] = value
        return flat


def _coerce(section: str, key: str, raw: str, default):
    """Parse an override string against the type of the default value."""
    try:
        if isinstance(default, bool):
            if raw.lower() not in ("true", "false"):
                raise ValueError(raw)
            return raw.lower() == "true"
        if isinstance(default, int) and not isinstance(default, bool):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
        if isinstance(default, list):
            return [float(v) for v in raw.split(",") if v]
        return raw
    except ValueError as exc:
        raise ConfigurationError(f"{section}.{key}: cannot parse {raw!r}") from exc


def load_config(
    config_path: str | Path | None = None,
    overrides: list[str] | None = None,
) -> RunConfig:
    """Merge defaults, an optional TOML file, and key=value overrides."""
    merged = {s: dict(v) for s, v in DEFAULTS.items()}

    if config_path is not None:
        path = Path(config_path)
        if not path.is_file():
            raise ConfigurationError(f"config file not found: {path}")
        with open(path, "rb") as fh:
            try:
                data = tomllib.load(fh)
            except tomllib.TOMLDecodeError as exc:
                raise ConfigurationError(f"{path}: {exc}") from exc
        for section, values in data.items():
            if section not in merged:
                raise ConfigurationError(f"unknown config section {section!r}")
            if not isinstance(values, dict):
                raise ConfigurationError(f"section {section!r} must be a table")
            for key, value in values.items():
                if key not in merged[section]:
                    raise ConfigurationError(f"unknown config key {section}.{key}")
                merged[section][key] = value

    for item in overrides or []:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigurationError(
                f"override must look like section.key=value, got {item!r}"
            )
        dotted, raw = item.split("=", 1)
        section, key = dotted.split(".", 1)
        if section not in merged or key not in merged[section]:
            raise ConfigurationError(f"unknown config key {dotted}")
        merged[section][key] = _coerce(section, key, raw, DEFAULTS[section][key])

    rach_kwargs = dict(merged["rach"])
    try:
        rach_kwargs["decoder"] = Decoder(rach_kwargs["decoder"])
    except ValueError:
        valid = ", ".join(d.value for d in Decoder)
        raise ConfigurationError(
            f"rach.decoder must be one of: {valid}, got {rach_kwargs['decoder']!r}"
        ) from None

    return RunConfig(
        deployment=DeploymentConfig(**merged["deployment"]),
        channel=ChannelParams(**merged["channel"]),
        rach=RachConfig(**rach_kwargs),
        experiment=merged["experiment"],
    )
