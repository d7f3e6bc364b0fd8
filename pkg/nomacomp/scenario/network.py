"""Network configuration: parsing, validation and derived quantities."""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Mapping
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any

import yaml

from ..config import (
    DEFAULT_CELL_RADIUS,
    DEFAULT_INIT_RESTARTS,
    DEFAULT_INTER_BS_DISTANCE,
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_NOISE_POWER,
    DEFAULT_REFERENCE_DISTANCE,
    DEFAULT_REL_TOLERANCE,
)
from ..errors import ConfigError

_MAX_SEED = 2**64
_MAX_RESTARTS = 10


@dataclass(frozen=True)
class NetworkConfig:
    """All scenario and solver parameters of one run.

    Transmit power is derived: P = noise_power * 10^(transmit_snr_db / 10).
    """

    num_cells: int
    antennas_per_bs: int
    clusters_per_cell: int
    transmit_snr_db: float
    sinr_target: float
    path_loss_exponent: float
    noise_power: float = DEFAULT_NOISE_POWER
    cell_radius: float = DEFAULT_CELL_RADIUS
    inter_bs_distance: float = DEFAULT_INTER_BS_DISTANCE
    reference_distance: float = DEFAULT_REFERENCE_DISTANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    rel_tolerance: float = DEFAULT_REL_TOLERANCE
    master_seed: int = 0
    init_restarts: int = DEFAULT_INIT_RESTARTS

    def __post_init__(self):
        errors = _invariant_errors(self)
        if errors:
            raise ConfigError(errors)

    @property
    def transmit_power(self) -> float:
        return self.noise_power * 10.0 ** (self.transmit_snr_db / 10.0)

    @property
    def target_rate(self) -> float:
        """QoS rate R0 in bits/s/Hz, with sinr_target = 2^R0 - 1."""
        return math.log2(1.0 + self.sinr_target)

    @property
    def basis_dim(self) -> int:
        """Dimension M - K + 1 of every zero-forcing null space."""
        return self.antennas_per_bs - self.clusters_per_cell + 1

    def replace(self, **changes: Any) -> NetworkConfig:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


_INT_FIELDS = {"num_cells", "antennas_per_bs", "clusters_per_cell", "max_iterations",
               "master_seed", "init_restarts"}
_REQUIRED_FIELDS = tuple(f.name for f in fields(NetworkConfig)
                         if f.default is dataclasses.MISSING)
FIELD_NAMES = tuple(f.name for f in fields(NetworkConfig))


def _invariant_errors(cfg: NetworkConfig) -> list[str]:
    errors = []
    for name in ("num_cells", "antennas_per_bs", "clusters_per_cell", "max_iterations"):
        if getattr(cfg, name) < 1:
            errors.append(f"{name} must be a positive integer")
    if cfg.clusters_per_cell > cfg.antennas_per_bs >= 1:
        errors.append(
            f"K exceeds M: clusters_per_cell={cfg.clusters_per_cell} > "
            f"antennas_per_bs={cfg.antennas_per_bs}"
        )
    if not cfg.sinr_target > 0:
        errors.append("sinr_target must be > 0")
    if not cfg.noise_power > 0:
        errors.append("noise_power must be > 0")
    if not cfg.rel_tolerance > 0:
        errors.append("rel_tolerance must be > 0")
    if not cfg.path_loss_exponent >= 0:
        errors.append("path_loss_exponent must be >= 0")
    for name in ("cell_radius", "inter_bs_distance", "reference_distance"):
        if not getattr(cfg, name) > 0:
            errors.append(f"{name} must be > 0")
    if not 1 <= cfg.init_restarts <= _MAX_RESTARTS:
        errors.append(f"init_restarts must be in [1, {_MAX_RESTARTS}]")
    if not 0 <= cfg.master_seed < _MAX_SEED:
        errors.append("master_seed must be a 64-bit unsigned integer")
    if not math.isfinite(cfg.transmit_snr_db):
        errors.append("transmit_snr_db must be finite")
    elif cfg.noise_power > 0:
        try:
            power = cfg.transmit_power
        except OverflowError:
            power = math.inf
        if not (math.isfinite(power) and power > 0):
            errors.append("transmit power P = noise_power * 10^(snr/10) must be finite and positive")
    return errors


def _coerce(name: str, value: Any, errors: list[str]) -> Any:
    if isinstance(value, bool):
        errors.append(f"{name} must be a number, got a boolean")
        return None
    if name in _INT_FIELDS:
        if isinstance(value, int):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
        errors.append(f"{name} must be an integer, got {value!r}")
        return None
    if isinstance(value, (int, float)):
        return float(value)
    errors.append(f"{name} must be a real number, got {value!r}")
    return None


def validate_config(raw: str | Mapping[str, Any]) -> NetworkConfig:
    """Parse YAML text (or an already-loaded mapping) into a NetworkConfig.

    Every problem is collected and reported at once through ConfigError.errors:
    unknown keys, missing required keys, wrong types and invariant violations.
    """
    if isinstance(raw, str):
        try:
            data = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError([f"config is not valid YAML: {e}"]) from e
    else:
        data = raw
    if data is None:
        data = {}
    if not isinstance(data, Mapping):
        raise ConfigError(["config must be a mapping of NetworkConfig fields"])

    errors: list[str] = []
    for key in data:
        if key not in FIELD_NAMES:
            errors.append(f"unknown key: {key}")
    for key in _REQUIRED_FIELDS:
        if key not in data:
            errors.append(f"missing required key: {key}")

    values = {}
    for key in FIELD_NAMES:
        if key in data:
            coerced = _coerce(key, data[key], errors)
            if coerced is not None:
                values[key] = coerced

    config = None
    try:
        config = NetworkConfig(**values)
    except ConfigError as e:
        errors.extend(e.errors)
    except TypeError:
        pass  # missing required keys, already reported
    if errors or config is None:
        raise ConfigError(errors)
    return config


def load_config(path: Path) -> NetworkConfig:
    """Read and validate a YAML config file."""
    return validate_config(Path(path).read_text(encoding="utf-8"))
