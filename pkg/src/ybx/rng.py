"""Deterministic random streams.

Every stream is a :class:`random.Random` (MT19937) seeded with the first
16 bytes of ``SHA-256(repr((seed,) + labels))``.  Integer draws go through
:func:`below`, which only uses ``getrandbits``, so a given ``(seed, labels)``
yields the same values on every platform and Python version.
"""

import hashlib
import random


def derive_seed(seed, *labels):
    digest = hashlib.sha256(repr((int(seed),) + tuple(labels)).encode()).digest()
    return int.from_bytes(digest[:16], "big")


def stream(seed, *labels):
    """A fresh generator for the work item named by ``labels``."""
    return random.Random(derive_seed(seed, *labels))


def below(rng, n):
    """Uniform integer in ``[0, n)`` by rejection on ``getrandbits``."""
    if n <= 0:
        raise ValueError("n must be positive")
    k = n.bit_length()
    while True:
        r = rng.getrandbits(k)
        if r < n:
            return r


def between(rng, lo, hi):
    """Uniform integer in ``[lo, hi]``."""
    return lo + below(rng, hi - lo + 1)


def coin(rng):
    return rng.getrandbits(1) == 1
