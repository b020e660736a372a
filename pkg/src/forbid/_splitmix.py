"""Deterministic 64-bit splitmix generator shared by both kernel backends.

The jit backend re-implements the same arithmetic with wrapping uint64 ops;
stream keys derived here feed both so shuffles and tie-break draws are
bit-identical regardless of backend.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

# Domain-separation salts for independent streams.
SALT_SHUFFLE = 0x53485546
SALT_DIRECTION = 0x44495243
SALT_JITTER = 0x4A495454


def next64(state: int) -> tuple[int, int]:
    """Advance the splitmix state; return (new_state, output)."""
    state = (state + GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    z = z ^ (z >> 31)
    return state, z


def hash64(x: int) -> int:
    """One splitmix output for state ``x``."""
    return next64(x & MASK64)[1]


def uniform01(z: int) -> float:
    """Map a 64-bit draw onto [0, 1) with 53 bits of precision."""
    return (z >> 11) * 2.0**-53


def stream_key(*parts: int) -> int:
    """Fold integers into a 64-bit stream key, order-sensitive."""
    state = 0
    for p in parts:
        state = hash64(state ^ (p & MASK64))
    return state


def shuffle_key(seed: int, pass_index: int, iteration: int) -> int:
    return stream_key(SALT_SHUFFLE, seed, pass_index, iteration)


def direction_key(seed: int, pass_index: int, iteration: int) -> int:
    return stream_key(SALT_DIRECTION, seed, pass_index, iteration)


def jitter_key(seed: int, attempt: int) -> int:
    return stream_key(SALT_JITTER, seed, attempt)
