"""6x6 Othello on 36-bit bitboards.

Square ``r*6 + c`` is bit ``r*6 + c``.  Black is MAX and moves first.  A side
without a placement passes; the game ends when neither side can place.
"""

from __future__ import annotations

from gamesearch.games.core import MAX, MIN, Game, GameSpec, Position, loss_score, win_score
from gamesearch.games.zobrist import ZobristTable

SIZE = 6
N_SQUARES = SIZE * SIZE
FULL = (1 << N_SQUARES) - 1
COL0 = sum(1 << (r * SIZE) for r in range(SIZE))
COL5 = COL0 << (SIZE - 1)
NOT_COL0 = FULL & ~COL0
NOT_COL5 = FULL & ~COL5
CORNERS = (1 << 0) | (1 << 5) | (1 << 30) | (1 << 35)

PASS = (-1, 0)

# (shift, mask applied to the source before shifting)
_DIRS = (
    (1, NOT_COL5), (-1, NOT_COL0),
    (SIZE, FULL), (-SIZE, FULL),
    (SIZE + 1, NOT_COL5), (-(SIZE + 1), NOT_COL0),
    (SIZE - 1, NOT_COL0), (-(SIZE - 1), NOT_COL5),
)

INITIAL_BLACK = (1 << (2 * SIZE + 3)) | (1 << (3 * SIZE + 2))
INITIAL_WHITE = (1 << (2 * SIZE + 2)) | (1 << (3 * SIZE + 3))


def move_mask(own: int, opp: int) -> int:
    empty = FULL & ~(own | opp)
    moves = 0
    for s, m in _DIRS:
        if s > 0:
            x = ((own & m) << s) & opp
            x |= ((x & m) << s) & opp
            x |= ((x & m) << s) & opp
            x |= ((x & m) << s) & opp
            moves |= ((x & m) << s) & empty
        else:
            s = -s
            x = ((own & m) >> s) & opp
            x |= ((x & m) >> s) & opp
            x |= ((x & m) >> s) & opp
            x |= ((x & m) >> s) & opp
            moves |= ((x & m) >> s) & empty
    return moves


def flips_for(sq: int, own: int, opp: int) -> int:
    flips = 0
    start = 1 << sq
    for s, m in _DIRS:
        line = 0
        if s > 0:
            x = ((start & m) << s) & FULL
            while x & opp:
                line |= x
                x = ((x & m) << s) & FULL
        else:
            x = (start & m) >> -s
            while x & opp:
                line |= x
                x = (x & m) >> -s
        if x & own:
            flips |= line
    return flips


def popcount(x: int) -> int:
    return bin(x).count("1")


class Othello6(Game):
    name = "othello6"

    def __init__(self):
        self.spec = GameSpec("othello6")
        self.zobrist = ZobristTable(2, N_SQUARES, salt=0x07E110)

    def make(self, black: int, white: int, side: int = MAX, ply: int = 0) -> Position:
        h = self.zobrist.board_key((black, white))
        if side == MIN:
            h ^= self.zobrist.side
        return Position((black, white), side, ply, h)

    def root(self) -> Position:
        return self.make(INITIAL_BLACK, INITIAL_WHITE)

    def _own_opp(self, pos: Position):
        black, white = pos.board
        return (black, white) if pos.side == MAX else (white, black)

    def moves(self, pos):
        own, opp = self._own_opp(pos)
        mask = move_mask(own, opp)
        if not mask:
            return [PASS] if move_mask(opp, own) else []
        out = []
        while mask:
            low = mask & -mask
            sq = low.bit_length() - 1
            out.append((sq, flips_for(sq, own, opp)))
            mask ^= low
        return out

    def is_terminal(self, pos):
        black, white = pos.board
        if (black | white) == FULL:
            return True
        return not move_mask(black, white) and not move_mask(white, black)

    def apply(self, pos, move):
        sq, flips = move
        black, white = pos.board
        h = pos.hash ^ self.zobrist.side
        if sq >= 0:
            assert flips, "illegal othello placement"
            bit = 1 << sq
            assert not (black | white) & bit, "square occupied"
            kind = 0 if pos.side == MAX else 1
            h ^= self.zobrist.pieces[kind][sq]
            swap = self.zobrist.swap
            f = flips
            while f:
                low = f & -f
                h ^= swap[low.bit_length() - 1]
                f ^= low
            if pos.side == MAX:
                black |= bit | flips
                white &= ~flips
            else:
                white |= bit | flips
                black &= ~flips
        return Position((black, white), -pos.side, pos.ply + 1, h)

    def undo(self, pos, move):
        sq, flips = move
        black, white = pos.board
        mover = -pos.side
        h = pos.hash ^ self.zobrist.side
        if sq >= 0:
            bit = 1 << sq
            kind = 0 if mover == MAX else 1
            h ^= self.zobrist.pieces[kind][sq]
            swap = self.zobrist.swap
            f = flips
            while f:
                low = f & -f
                h ^= swap[low.bit_length() - 1]
                f ^= low
            if mover == MAX:
                black &= ~(bit | flips)
                white |= flips
            else:
                white &= ~(bit | flips)
                black |= flips
        return Position((black, white), mover, pos.ply - 1, h)

    def evaluate(self, pos):
        own, opp = self._own_opp(pos)
        if self.is_terminal(pos):
            diff = popcount(own) - popcount(opp)
            if diff > 0:
                return win_score(pos.ply)
            if diff < 0:
                return loss_score(pos.ply)
            return 0
        return (100 * (popcount(own) - popcount(opp))
                + 300 * (popcount(own & CORNERS) - popcount(opp & CORNERS)))

    def zobrist_hash(self, pos):
        h = self.zobrist.board_key(pos.board)
        return h ^ self.zobrist.side if pos.side == MIN else h

    def signature(self, move):
        return move[0]

    def with_side(self, pos, side):
        return self.make(*pos.board, side=side, ply=pos.ply)
