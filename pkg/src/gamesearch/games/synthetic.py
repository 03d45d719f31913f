"""Seeded synthetic game trees with a tunable transposition density.

A synthetic state is the multiset of move labels played so far plus the side
to move.  At every node each move slot is, with probability ``density``, a
label from a shared pool (slot ``i`` always offers pool label ``i``) and
otherwise a label unique to that node.  Shared labels commute: any
permutation of the same multiset reaches the same state, so ``density=0``
yields a strict tree and ``density=1`` a maximally transposing DAG.

Everything (branching, labels, values) derives from the state hash, so the
game is path-independent by construction.  Node values are a sum of
per-label contributions plus per-node noise, seen from MAX; that keeps
shallow evaluations correlated with deeper ones the way real evaluation
functions are.
"""

from __future__ import annotations

from bisect import insort

from gamesearch.games.core import MAX, MIN, Game, GameSpec, Position
from gamesearch.games.zobrist import MASK64, splitmix64

UNIQUE_BIT = 1 << 63
_LOW63 = UNIQUE_BIT - 1


class SyntheticGame(Game):
    name = "synthetic"

    def __init__(self, spec: GameSpec):
        if spec.game != "synthetic":
            raise ValueError("SyntheticGame needs a synthetic GameSpec")
        self.spec = spec
        if spec.branching[1] > 64:
            raise ValueError("synthetic branching is limited to 64 moves per node")
        seed = spec.seed
        self._key_salt = splitmix64(seed ^ 0x4B45595F53414C54)
        self._slot_salt = splitmix64(seed ^ 0x534C4F545F53414C)
        self._value_salt = splitmix64(seed ^ 0x56414C55455F5341)
        self._branch_salt = splitmix64(seed ^ 0x4252414E43485F53)
        self._side_key = splitmix64(seed ^ 0x534944455F4B4559)
        self._slot_keys = [splitmix64(self._slot_salt + i) for i in range(64)]
        lo, hi = spec.values
        self._mid = (lo + hi) // 2
        self._spread = max(1, (hi - lo) // (2 * max(spec.depth, 1) + 2))
        self._w_lo, self._w_hi = spec.branching
        self._threshold = int(spec.density * (1 << 53))
        self._pool_keys = [splitmix64(i ^ self._key_salt) for i in range(64)]
        self._pool_values = [splitmix64(i ^ self._value_salt) % (2 * self._spread + 1) - self._spread
                             for i in range(64)]

    # -- label tables --------------------------------------------------------

    def label_key(self, label: int) -> int:
        if label < 64:
            return self._pool_keys[label]
        return splitmix64(label ^ self._key_salt)

    def label_value(self, label: int) -> int:
        if label < 64:
            return self._pool_values[label]
        return splitmix64(label ^ self._value_salt) % (2 * self._spread + 1) - self._spread

    # -- game protocol -------------------------------------------------------

    def root(self) -> Position:
        return Position((), MAX, 0, 0)

    def branching_at(self, pos: Position) -> int:
        if self._w_lo == self._w_hi:
            return self._w_lo
        span = self._w_hi - self._w_lo + 1
        return self._w_lo + splitmix64(pos.hash ^ self._branch_salt) % span

    def moves(self, pos):
        if len(pos.board) >= self.spec.depth:
            return []
        n = self.branching_at(pos)
        h = pos.hash
        out = []
        for i in range(n):
            r = splitmix64(h ^ self._slot_keys[i])
            if (r >> 11) < self._threshold:
                out.append(i)
            else:
                out.append(UNIQUE_BIT | (r & _LOW63))
        return out

    def _shift_side(self, h: int, side: int) -> int:
        return h ^ self._side_key if side == MIN else h

    def apply(self, pos, move):
        base = self._shift_side(pos.hash, pos.side)
        base = (base + self.label_key(move)) & MASK64
        labels = list(pos.board)
        insort(labels, move)
        side = -pos.side
        return Position(tuple(labels), side, pos.ply + 1, self._shift_side(base, side))

    def undo(self, pos, move):
        labels = list(pos.board)
        labels.remove(move)
        base = self._shift_side(pos.hash, pos.side)
        base = (base - self.label_key(move)) & MASK64
        side = -pos.side
        return Position(tuple(labels), side, pos.ply - 1, self._shift_side(base, side))

    def evaluate(self, pos):
        total = self._mid
        for label in pos.board:
            total += self.label_value(label)
        total += splitmix64(pos.hash ^ self._value_salt) % (2 * self._spread + 1) - self._spread
        lo, hi = self.spec.values
        total = min(hi, max(lo, total))
        return total if pos.side == MAX else -total

    def zobrist_hash(self, pos):
        base = 0
        for label in pos.board:
            base = (base + self.label_key(label)) & MASK64
        return self._shift_side(base, pos.side)

    def with_side(self, pos, side):
        base = self._shift_side(pos.hash, pos.side)
        return Position(pos.board, side, pos.ply, self._shift_side(base, side))
