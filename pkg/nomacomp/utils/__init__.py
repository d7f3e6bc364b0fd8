"""Utility modules for nomacomp."""

from .hasher import canonical_json, compute_sha256, config_digest

__all__ = ["canonical_json", "compute_sha256", "config_digest"]
