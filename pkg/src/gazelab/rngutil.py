"""Named, collision-resistant random substreams.

Every piece of randomness in an episode is derived from the episode seed
plus a stream name, so adding a consumer never perturbs the draws seen by
existing consumers.
"""

import hashlib

import numpy as np


def stream_key(name: str) -> int:
    """Stable 32-bit key for a stream name (endianness-independent)."""
    digest = hashlib.blake2b(name.encode("utf-8"), digest_size=4).digest()
    return int.from_bytes(digest, "big")


def named_rng(seed: int, name: str) -> np.random.Generator:
    """Generator for stream `name` derived from `seed`."""
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=(stream_key(name),))
    return np.random.default_rng(seq)


def derive_seed(seed: int, name: str) -> int:
    """A child integer seed (for sub-runs that want their own seed space)."""
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=(stream_key(name),))
    return int(seq.generate_state(1, dtype=np.uint64)[0])
