"""Scenario module: configuration, geometry, channels and random streams."""

from .channels import ChannelSet, cscg, draw_channels, path_loss_amplitude
from .geometry import GROUP_1, GROUP_2, Geometry, bs_layout, build_geometry
from .network import FIELD_NAMES, NetworkConfig, load_config, validate_config
from .rng import trial_rng, trial_seed, trial_seed_sequence

__all__ = [
    "ChannelSet",
    "cscg",
    "draw_channels",
    "path_loss_amplitude",
    "GROUP_1",
    "GROUP_2",
    "Geometry",
    "bs_layout",
    "build_geometry",
    "FIELD_NAMES",
    "NetworkConfig",
    "load_config",
    "validate_config",
    "trial_rng",
    "trial_seed",
    "trial_seed_sequence",
]
