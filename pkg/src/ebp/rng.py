"""Counter-based random streams for reproducible, order-independent sampling.

Every uniform consumed by the simulator is a pure function of
(master seed, path index, generation index, draw index), built from the
splitmix64 finalizer. Streams can therefore be evaluated in any order, in
any chunking, on any backend, and always produce the same numbers.

This module holds the scalar reference implementation (plain Python ints,
explicitly masked to 64 bits). The simulation backends re-implement the
same arithmetic on uint64 arrays (numpy) and in nopython kernels (numba);
tests pin all three to identical outputs.
"""

from __future__ import annotations

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15  # splitmix64 stream increment
STREAM_SALT = 0x53D0DF694FE1E3BA
SEED_SALT = 0x8B72E1E6A4C7F3D1

# 1 / 2**53: top 53 bits of the hash map exactly onto a double in [0, 1)
U01_SCALE = 1.0 / 9007199254740992.0


def mix64(z: int) -> int:
    """splitmix64 finalizer: avalanche a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_key(seed: int, path: int, gen: int) -> int:
    """Key of the uniform stream owned by one path at one generation."""
    h = mix64((seed & MASK64) ^ STREAM_SALT)
    h = mix64(h ^ (path & MASK64))
    return mix64(h ^ (gen & MASK64))


def uniform(key: int, idx: int) -> float:
    """idx-th double in [0, 1) of the stream with the given key."""
    h = mix64((key + ((idx + 1) * GOLDEN)) & MASK64)
    return (h >> 11) * U01_SCALE


def derive_seed(seed: int, tag: int) -> int:
    """Independent sub-seed for a tagged purpose (e.g. paired ensembles)."""
    return mix64(mix64((seed & MASK64) ^ SEED_SALT) ^ (tag & MASK64))
