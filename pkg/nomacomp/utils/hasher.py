"""Hashing utilities for nomacomp."""

import hashlib
import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any


def compute_sha256(file_path: Path) -> str:
    """Compute SHA256 hash of a file."""
    sha256 = hashlib.sha256()
    with open(file_path, "rb") as f:
        for chunk in iter(lambda: f.read(8192), b""):
            sha256.update(chunk)
    return sha256.hexdigest()


def canonical_json(data: Mapping[str, Any]) -> str:
    """Key-sorted compact JSON; equal mappings give equal text."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def config_digest(config: Mapping[str, Any]) -> str:
    """SHA256 of the canonical JSON of a resolved configuration."""
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()
