"""Deterministic randomness.

Every stochastic attack takes an explicit 64-bit seed and draws from
``random.Random`` (CPython's Mersenne Twister), which is stable across
platforms and interpreter versions for the methods used here. Per-instance
and per-worker seeds are derived by hashing, so a run's results do not
depend on scheduling or parallelism.
"""

from __future__ import annotations

import hashlib
import random

SEED_BITS = 64
_SEED_MASK = (1 << SEED_BITS) - 1


def derive_seed(master_seed: int, *keys: object) -> int:
    """Derive a child seed from a master seed and any hashable key material.

    The same (master_seed, keys) always yields the same child, and distinct
    keys yield independent-looking children.
    """
    h = hashlib.sha256()
    h.update(str(int(master_seed) & _SEED_MASK).encode("utf-8"))
    for key in keys:
        h.update(b"\x1f")
        h.update(str(key).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "big")


def make_rng(seed: int) -> random.Random:
    """Instantiate the engine's generator for a given seed."""
    return random.Random(int(seed) & _SEED_MASK)
