"""
Seed derivation: every random stream is SeedSequence(base_seed, spawn_key=(stream, index)),
so results do not depend on worker count or scheduling order.
"""
from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    DATA = 0
    POSTERIOR = 1
    THEORY = 2


def derived_rng(base_seed: int, stream: Stream, index: int = 0) -> np.random.Generator:
    sequence = np.random.SeedSequence(int(base_seed), spawn_key=(int(stream), int(index)))
    return np.random.default_rng(sequence)
