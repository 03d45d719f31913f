"""Game interface shared by every reference game.

Scores are negamax-style: ``evaluate`` answers from the point of view of the
side to move.  Terminal positions score ``±(WIN_SCORE - ply)`` so that a win
found nearer the root outranks a deeper one, and every heuristic score stays
strictly inside ``[-HEURISTIC_LIMIT, HEURISTIC_LIMIT]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, List, Tuple

MAX = 1
MIN = -1

WIN_SCORE = 32000
HEURISTIC_LIMIT = 10000
INF = 32767
# Anything beyond this magnitude is a terminal (win/loss) score.
TERMINAL_THRESHOLD = WIN_SCORE - 1000

MASK64 = (1 << 64) - 1

GAME_IDS = ("othello6", "minicheckers", "synthetic")


def win_score(ply: int) -> int:
    return WIN_SCORE - ply


def loss_score(ply: int) -> int:
    return -(WIN_SCORE - ply)


def is_terminal_score(value: int) -> bool:
    return abs(value) >= TERMINAL_THRESHOLD


@dataclass(frozen=True, slots=True)
class Position:
    """Immutable game state.

    ``board`` is a game-specific hashable encoding.  ``hash`` is the 64-bit
    Zobrist key of ``(board, side)``; it never depends on ``ply``.
    """

    board: Any
    side: int
    ply: int
    hash: int

    @property
    def side_name(self) -> str:
        return "max" if self.side == MAX else "min"


@dataclass(frozen=True)
class GameSpec:
    """Selects a reference game and its parameters.

    Only the synthetic game reads the remaining fields; ``branching`` is a
    ``(min, max)`` pair and equal bounds mean a uniform tree.
    """

    game: str
    seed: int = 0
    branching: Tuple[int, int] = (3, 3)
    depth: int = 4
    density: float = 0.0
    values: Tuple[int, int] = (-1000, 1000)

    def __post_init__(self):
        if self.game not in GAME_IDS and self.game != "explicit":
            raise ValueError(f"unknown game id {self.game!r}")
        if self.game == "synthetic":
            lo, hi = self.branching
            if not 1 <= lo <= hi:
                raise ValueError(f"bad branching range {self.branching}")
            if self.depth < 0:
                raise ValueError(f"depth bound must be >= 0, got {self.depth}")
            if not 0.0 <= self.density <= 1.0:
                raise ValueError(f"transposition density must lie in [0, 1], got {self.density}")
            vlo, vhi = self.values
            if not (-HEURISTIC_LIMIT <= vlo <= vhi <= HEURISTIC_LIMIT):
                raise ValueError(f"value range {self.values} outside heuristic limits")
            if not 0 <= self.seed <= MASK64:
                raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def uniform(self) -> bool:
        return self.branching[0] == self.branching[1]

    def describe(self) -> str:
        if self.game != "synthetic":
            return self.game
        lo, hi = self.branching
        w = str(lo) if lo == hi else f"{lo}..{hi}"
        return (f"synthetic(seed={self.seed} w={w} d={self.depth} t={self.density:g} "
                f"v={self.values[0]}..{self.values[1]})")


class Game:
    """Base class for the reference games.

    Subclasses implement ``moves`` (empty list on terminal positions),
    ``apply``, ``undo``, ``evaluate`` and ``zobrist_hash``.
    """

    name = "abstract"
    spec: GameSpec

    def root(self) -> Position:
        raise NotImplementedError

    def moves(self, pos: Position) -> List[Hashable]:
        raise NotImplementedError

    def legal_moves(self, pos: Position) -> List[Hashable]:
        moves = self.moves(pos)
        assert moves, "legal_moves called on a terminal position"
        return moves

    def is_terminal(self, pos: Position) -> bool:
        return not self.moves(pos)

    def apply(self, pos: Position, move) -> Position:
        raise NotImplementedError

    def undo(self, pos: Position, move) -> Position:
        raise NotImplementedError

    def evaluate(self, pos: Position) -> int:
        raise NotImplementedError

    def zobrist_hash(self, pos: Position) -> int:
        """Recompute the key of ``pos`` from scratch."""
        raise NotImplementedError

    def signature(self, move) -> Hashable:
        """Small key used by the history heuristic."""
        return move

    def with_side(self, pos: Position, side: int) -> Position:
        raise NotImplementedError


def make_game(spec: GameSpec) -> Game:
    if spec.game == "othello6":
        from gamesearch.games.othello import Othello6
        return Othello6()
    if spec.game == "minicheckers":
        from gamesearch.games.minicheckers import MiniCheckers
        return MiniCheckers()
    if spec.game == "synthetic":
        from gamesearch.games.synthetic import SyntheticGame
        return SyntheticGame(spec)
    raise ValueError(f"no factory for game {spec.game!r}")
