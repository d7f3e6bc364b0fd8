"""Precoding module: ZF null-space bases and effective channels."""

from .effective import (
    EffectiveChannels,
    effective_matrices,
    interference_scalars,
    received_powers,
    scaled_by_power,
    served_traces,
)
from .nullspace import PrecoderBasis, build_bases, normalize_column_phases, zf_null_basis

__all__ = [
    "EffectiveChannels",
    "effective_matrices",
    "interference_scalars",
    "received_powers",
    "scaled_by_power",
    "served_traces",
    "PrecoderBasis",
    "build_bases",
    "normalize_column_phases",
    "zf_null_basis",
]
