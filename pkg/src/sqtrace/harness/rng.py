"""Per-trial random streams.

Every trial draws from numpy's Philox 4x64 counter-based generator, keyed by
the master seed, a CRC32 tag of the stream name and the trial index, so any
trial can be regenerated on its own and in any order.
"""

from __future__ import annotations

import zlib

import numpy as np

SEED_MASK = (1 << 64) - 1


def stream_tag(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


def trial_seed(master: int, name: str, trial: int) -> int:
    """64-bit seed of one trial."""
    ss = np.random.SeedSequence(entropy=int(master) & SEED_MASK, spawn_key=(stream_tag(name), int(trial)))
    return int(ss.generate_state(1, np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) & SEED_MASK))
