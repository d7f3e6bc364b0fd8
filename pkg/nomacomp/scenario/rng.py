"""Reproducible per-trial random streams."""

import numpy as np


def trial_seed_sequence(master_seed: int, trial_index: int) -> np.random.SeedSequence:
    """SeedSequence keyed by (master_seed, trial_index).

    The trial index goes into the spawn key, so streams of distinct trials are
    statistically independent and each one is reproducible on its own,
    whatever order or process the trials run in.
    """
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(trial_index,))


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(trial_seed_sequence(master_seed, trial_index))


def trial_seed(master_seed: int, trial_index: int) -> int:
    """64-bit integer digest of a trial's stream, for output tables."""
    state = trial_seed_sequence(master_seed, trial_index).generate_state(1, dtype=np.uint64)
    return int(state[0])
