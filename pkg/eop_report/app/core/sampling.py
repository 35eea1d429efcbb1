"""Seeded random streams.

Every random decision in the package draws from a generator derived from a
master seed plus a few stable keys, so results never depend on call order or
on how work is split between workers.
"""

from __future__ import annotations

import zlib

import numpy as np


def _key_to_int(key: int | str) -> int:
    if isinstance(key, str):
        return zlib.crc32(key.encode("utf-8"))
    if key < 0:
        raise ValueError(f"seed keys must be non-negative, got {key}")
    return int(key)


def derive_rng(seed: int, *keys: int | str) -> np.random.Generator:
    """Generator for the stream identified by ``(seed, *keys)``."""
    entropy = [_key_to_int(seed)] + [_key_to_int(k) for k in keys]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def shuffled(items: list, seed: int, *keys: int | str) -> list:
    """Seeded permutation of ``items`` (input untouched)."""
    rng = derive_rng(seed, *keys)
    order = rng.permutation(len(items))
    return [items[i] for i in order]


def derive_seed(seed: int, *keys: int | str) -> int:
    """Integer seed for the stream ``(seed, *keys)``, for APIs that take plain seeds."""
    entropy = [_key_to_int(seed)] + [_key_to_int(k) for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint32)[0])
