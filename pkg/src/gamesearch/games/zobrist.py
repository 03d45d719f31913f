"""Zobrist keys and 64-bit mixing.

Key tables come from a fixed-seed Mersenne Twister so node counts are
bit-stable across machines and Python versions.
"""

from __future__ import annotations

import random

MASK64 = (1 << 64) - 1
ZOBRIST_SEED = 0x5EED_2B1D_94A7_C3F1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class ZobristTable:
    """Random keys for ``n_kinds`` piece kinds on ``n_squares`` squares plus a side key."""

    def __init__(self, n_kinds: int, n_squares: int, salt: int = 0):
        rng = random.Random(ZOBRIST_SEED ^ salt)
        self.pieces = [[rng.getrandbits(64) for _ in range(n_squares)] for _ in range(n_kinds)]
        self.side = rng.getrandbits(64)
        # XOR-ing this toggles a square between kind 0 and kind 1.
        if n_kinds >= 2:
            self.swap = [a ^ b for a, b in zip(self.pieces[0], self.pieces[1])]
        else:
            self.swap = []

    def board_key(self, masks) -> int:
        h = 0
        for kind, mask in enumerate(masks):
            keys = self.pieces[kind]
            while mask:
                low = mask & -mask
                h ^= keys[low.bit_length() - 1]
                mask ^= low
        return h


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
