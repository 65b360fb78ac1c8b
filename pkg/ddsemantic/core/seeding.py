"""
Deterministic random stream derivation
"""

import numpy as np


def derive_seed(master_seed: int, *path: int) -> int:
    """Child seed for the stream addressed by `path` under `master_seed`"""
    sequence = np.random.SeedSequence(master_seed, spawn_key=tuple(path))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def block_generator(master_seed: int, block_index: int) -> np.random.Generator:
    """Counter-based generator for one block of Monte Carlo trials"""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(block_index,))
    return np.random.Generator(np.random.Philox(sequence))
