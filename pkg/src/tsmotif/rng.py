"""Seeded random streams.

Every random draw in the package goes through a PCG64 generator built from a
``numpy.random.SeedSequence``. Sweep streams are keyed by
``(master_seed, cell_index, realization_index)`` through the SeedSequence
spawn key, so a cell's streams do not depend on which other cells run.
"""

import numpy as np

_MASK64 = (1 << 64) - 1


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed) & _MASK64)))


def stream_seed(master_seed: int, *key: int) -> int:
    """Derive a 64-bit seed from a master seed and an integer key path."""
    ss = np.random.SeedSequence(int(master_seed) & _MASK64, spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
