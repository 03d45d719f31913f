"""Hand-built game trees and DAGs, mostly for fixtures and tests.

Nodes are named; a child name reachable from two parents is a transposition.
Values are given from MAX's point of view and apply to leaves and to any node
evaluated at the search horizon.
"""

from __future__ import annotations

import hashlib
from typing import Dict, Mapping, Sequence

from gamesearch.games.core import MAX, MIN, Game, GameSpec, Position
from gamesearch.games.zobrist import splitmix64

_SIDE_KEY = splitmix64(0xE0F1C17)


def _name_key(name: str) -> int:
    return int.from_bytes(hashlib.blake2b(name.encode(), digest_size=8).digest(), "little")


class ExplicitGame(Game):
    name = "explicit"

    def __init__(self, children: Mapping[str, Sequence[str]], values: Mapping[str, int],
                 root: str = "root"):
        self.spec = GameSpec("explicit")
        self.children: Dict[str, tuple] = {k: tuple(v) for k, v in children.items()}
        self.values = dict(values)
        self.root_name = root

    def _pos(self, name: str, side: int, ply: int) -> Position:
        h = _name_key(name)
        return Position(name, side, ply, h ^ _SIDE_KEY if side == MIN else h)

    def root(self) -> Position:
        return self._pos(self.root_name, MAX, 0)

    def node(self, name: str, side: int = MAX, ply: int = 0) -> Position:
        return self._pos(name, side, ply)

    def moves(self, pos):
        return list(self.children.get(pos.board, ()))

    def apply(self, pos, move):
        assert move in self.children.get(pos.board, ()), f"{move} is not a child of {pos.board}"
        return self._pos(move, -pos.side, pos.ply + 1)

    def evaluate(self, pos):
        v = self.values.get(pos.board, 0)
        return v if pos.side == MAX else -v

    def zobrist_hash(self, pos):
        return self._pos(pos.board, pos.side, pos.ply).hash

    def with_side(self, pos, side):
        return self._pos(pos.board, side, pos.ply)
