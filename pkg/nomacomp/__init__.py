"""nomacomp - joint beamforming and power allocation for NOMA-CoMP networks."""

__version__ = "0.1.0"
