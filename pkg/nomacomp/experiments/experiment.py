"""Experiment definitions: what to sweep, which schemes, how many trials."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from ..baselines import ORACLE_SHAPE
from ..errors import ConfigError
from ..scenario import NetworkConfig


class ExperimentKind(str, Enum):
    CONVERGENCE = "convergence"
    RANK_TABLE = "rank_table"
    SWEEP_SNR = "sweep_snr"
    SWEEP_CELLS = "sweep_cells"
    SWEEP_ALPHA = "sweep_alpha"
    SWEEP_CLUSTERS = "sweep_clusters"
    ORACLE_COMPARE = "oracle_compare"


class Scheme(str, Enum):
    NOMA_COMP = "NOMA_CoMP"
    FIXED_POWER = "FixedPower"
    NO_COMP = "NoCoMP"
    OMA_COMP = "OMACoMP"
    BRUTE_FORCE = "BruteForce"

    @classmethod
    def parse(cls, text: str) -> tuple[Scheme, ...]:
        """Comma-separated scheme names, case-insensitive."""
        by_name = {s.value.lower(): s for s in cls}
        schemes, unknown = [], []
        for token in (t.strip() for t in text.split(",")):
            if not token:
                continue
            if token.lower() in by_name:
                schemes.append(by_name[token.lower()])
            else:
                unknown.append(token)
        if unknown:
            valid = ", ".join(s.value for s in cls)
            raise ConfigError([f"unknown scheme: {name} (valid: {valid})" for name in unknown])
        return tuple(dict.fromkeys(schemes))


# sweep axis name -> NetworkConfig field
AXIS_FIELDS = {
    "snr": "transmit_snr_db",
    "cells": "num_cells",
    "alpha": "path_loss_exponent",
    "clusters": "clusters_per_cell",
    "antennas": "antennas_per_bs",
    "gamma": "sinr_target",
}
_INTEGER_AXES = {"cells", "clusters", "antennas"}

COMPARISON_SCHEMES = (Scheme.NOMA_COMP, Scheme.FIXED_POWER, Scheme.NO_COMP, Scheme.OMA_COMP)


@dataclass(frozen=True)
class SweepAxis:
    name: str
    values: tuple[float, ...]

    @property
    def field(self) -> str:
        return AXIS_FIELDS[self.name]

    def apply(self, base: NetworkConfig, value: float) -> NetworkConfig:
        if self.name in _INTEGER_AXES:
            value = int(value)
        return base.replace(**{self.field: value})


def default_axis(kind: ExperimentKind, base: NetworkConfig) -> SweepAxis:
    """Sweep of each experiment kind when no values are given."""
    k, m = base.clusters_per_cell, base.antennas_per_bs
    if kind is ExperimentKind.CONVERGENCE:
        return SweepAxis("antennas", (float(m),))
    if kind is ExperimentKind.RANK_TABLE:
        return SweepAxis("antennas", tuple(float(k + i) for i in range(1, 5)))
    if kind is ExperimentKind.SWEEP_SNR:
        return SweepAxis("snr", (0.0, 10.0, 20.0, 30.0, 40.0, 50.0))
    if kind is ExperimentKind.SWEEP_CELLS:
        return SweepAxis("cells", (1.0, 2.0, 3.0, 4.0))
    if kind is ExperimentKind.SWEEP_ALPHA:
        return SweepAxis("alpha", (2.0, 2.5, 3.0, 3.5, 4.0))
    if kind is ExperimentKind.SWEEP_CLUSTERS:
        return SweepAxis("clusters", tuple(float(i) for i in range(1, m + 1)))
    return SweepAxis("snr", (10.0, 30.0, 50.0))


def default_schemes(kind: ExperimentKind) -> tuple[Scheme, ...]:
    if kind in (ExperimentKind.CONVERGENCE, ExperimentKind.RANK_TABLE):
        return (Scheme.NOMA_COMP,)
    if kind is ExperimentKind.ORACLE_COMPARE:
        return (Scheme.NOMA_COMP, Scheme.BRUTE_FORCE)
    return COMPARISON_SCHEMES


@dataclass(frozen=True)
class Experiment:
    """One experiment: a base config swept along one axis, several schemes, paired trials."""

    kind: ExperimentKind
    base: NetworkConfig
    axis: SweepAxis
    schemes: tuple[Scheme, ...]
    trials: int
    output_path: Path
    workers: int = 1
    timing: bool = True
    dump_dir: Path | None = None

    def __post_init__(self):
        errors = []
        if self.trials < 1:
            errors.append("trials must be a positive integer")
        if self.workers < 1:
            errors.append("workers must be a positive integer")
        if not self.schemes:
            errors.append("at least one scheme is required")
        if self.axis.name not in AXIS_FIELDS:
            errors.append(f"unknown sweep axis: {self.axis.name} (valid: {', '.join(AXIS_FIELDS)})")
        elif not self.axis.values:
            errors.append("sweep needs at least one value")
        else:
            errors.extend(self._point_errors())
        if errors:
            raise ConfigError(errors)

    def _point_errors(self) -> list[str]:
        errors = []
        for value in self.axis.values:
            if self.axis.name in _INTEGER_AXES and float(value) != int(value):
                errors.append(f"{self.axis.name}={value}: must be an integer")
                continue
            try:
                config = self.axis.apply(self.base, value)
            except ConfigError as e:
                errors.extend(f"{self.axis.name}={value}: {msg}" for msg in e.errors)
                continue
            shape = (config.num_cells, config.antennas_per_bs, config.clusters_per_cell)
            if Scheme.BRUTE_FORCE in self.schemes and shape != ORACLE_SHAPE:
                errors.append(
                    f"{self.axis.name}={value}: BruteForce needs (N, M, K) = {ORACLE_SHAPE}, got {shape}"
                )
        return errors

    def sweep_points(self) -> list[tuple[float, NetworkConfig]]:
        return [(float(v), self.axis.apply(self.base, v)) for v in self.axis.values]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "base_config": self.base.to_dict(),
            "sweep_axis": {"name": self.axis.name, "field": self.axis.field, "values": list(self.axis.values)},
            "schemes": [s.value for s in self.schemes],
            "trials": self.trials,
            "master_seed": self.base.master_seed,
            "timing": self.timing,
        }
