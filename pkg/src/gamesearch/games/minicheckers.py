"""Mini-checkers: 6x6 board, six men a side, forced captures.

Men stand on dark squares (``(row + col)`` odd).  MAX starts on rows 4-5 and
moves toward row 0, MIN starts on rows 0-1 and moves toward row 5.  A move
captures at most one man; there are no kings, so a man on the far row is
stuck.  A side with no legal move loses.
"""

from __future__ import annotations

from gamesearch.games.core import MAX, MIN, Game, GameSpec, Position, loss_score
from gamesearch.games.zobrist import ZobristTable

SIZE = 6
N_SQUARES = SIZE * SIZE
FULL = (1 << N_SQUARES) - 1
DARK = sum(1 << (r * SIZE + c) for r in range(SIZE) for c in range(SIZE) if (r + c) % 2 == 1)

INITIAL_MIN = sum(1 << (r * SIZE + c) for r in (0, 1) for c in range(SIZE) if (r + c) % 2 == 1)
INITIAL_MAX = sum(1 << (r * SIZE + c) for r in (4, 5) for c in range(SIZE) if (r + c) % 2 == 1)


def _step(sq: int, dr: int, dc: int) -> int:
    r, c = divmod(sq, SIZE)
    r += dr
    c += dc
    if 0 <= r < SIZE and 0 <= c < SIZE:
        return r * SIZE + c
    return -1


def _build_rays():
    # rays[side_index][sq] -> tuple of (to, landing) per forward diagonal
    rays = []
    for dr in (-1, 1):
        per_sq = []
        for sq in range(N_SQUARES):
            out = []
            for dc in (-1, 1):
                to = _step(sq, dr, dc)
                land = _step(to, dr, dc) if to >= 0 else -1
                if to >= 0:
                    out.append((to, land))
            per_sq.append(tuple(out))
        rays.append(tuple(per_sq))
    return rays


_RAYS = _build_rays()  # [0]: MAX (upward), [1]: MIN (downward)


def _advancement(men: int, side: int) -> int:
    total = 0
    while men:
        low = men & -men
        r = (low.bit_length() - 1) // SIZE
        total += (SIZE - 1 - r) if side == MAX else r
        men ^= low
    return total


def _popcount(x: int) -> int:
    return bin(x).count("1")


class MiniCheckers(Game):
    name = "minicheckers"

    def __init__(self):
        self.spec = GameSpec("minicheckers")
        self.zobrist = ZobristTable(2, N_SQUARES, salt=0xC4EC)

    def make(self, max_men: int, min_men: int, side: int = MAX, ply: int = 0) -> Position:
        h = self.zobrist.board_key((max_men, min_men))
        if side == MIN:
            h ^= self.zobrist.side
        return Position((max_men, min_men), side, ply, h)

    def root(self) -> Position:
        return self.make(INITIAL_MAX, INITIAL_MIN)

    def moves(self, pos):
        max_men, min_men = pos.board
        if pos.side == MAX:
            own, opp, rays = max_men, min_men, _RAYS[0]
        else:
            own, opp, rays = min_men, max_men, _RAYS[1]
        occupied = own | opp
        quiet = []
        captures = []
        m = own
        while m:
            low = m & -m
            frm = low.bit_length() - 1
            m ^= low
            for to, land in rays[frm]:
                if (opp >> to) & 1:
                    if land >= 0 and not (occupied >> land) & 1:
                        captures.append((frm, land, to))
                elif not (occupied >> to) & 1 and not captures:
                    quiet.append((frm, to, -1))
        return captures if captures else quiet

    def apply(self, pos, move):
        frm, to, cap = move
        max_men, min_men = pos.board
        z = self.zobrist
        kind = 0 if pos.side == MAX else 1
        h = pos.hash ^ z.side ^ z.pieces[kind][frm] ^ z.pieces[kind][to]
        step = (1 << frm) | (1 << to)
        if pos.side == MAX:
            assert (max_men >> frm) & 1, "no MAX man on source square"
            max_men ^= step
            if cap >= 0:
                min_men &= ~(1 << cap)
                h ^= z.pieces[1][cap]
        else:
            assert (min_men >> frm) & 1, "no MIN man on source square"
            min_men ^= step
            if cap >= 0:
                max_men &= ~(1 << cap)
                h ^= z.pieces[0][cap]
        return Position((max_men, min_men), -pos.side, pos.ply + 1, h)

    def undo(self, pos, move):
        frm, to, cap = move
        max_men, min_men = pos.board
        mover = -pos.side
        z = self.zobrist
        kind = 0 if mover == MAX else 1
        h = pos.hash ^ z.side ^ z.pieces[kind][frm] ^ z.pieces[kind][to]
        step = (1 << frm) | (1 << to)
        if mover == MAX:
            max_men ^= step
            if cap >= 0:
                min_men |= 1 << cap
                h ^= z.pieces[1][cap]
        else:
            min_men ^= step
            if cap >= 0:
                max_men |= 1 << cap
                h ^= z.pieces[0][cap]
        return Position((max_men, min_men), mover, pos.ply - 1, h)

    def evaluate(self, pos):
        if not self.moves(pos):
            return loss_score(pos.ply)
        max_men, min_men = pos.board
        score = (100 * (_popcount(max_men) - _popcount(min_men))
                 + 10 * (_advancement(max_men, MAX) - _advancement(min_men, MIN)))
        return score if pos.side == MAX else -score

    def zobrist_hash(self, pos):
        h = self.zobrist.board_key(pos.board)
        return h ^ self.zobrist.side if pos.side == MIN else h

    def signature(self, move):
        return move[0] * N_SQUARES + move[1]

    def with_side(self, pos, side):
        return self.make(*pos.board, side=side, ply=pos.ply)
