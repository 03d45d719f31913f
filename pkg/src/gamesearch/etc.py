"""Enhanced Transposition Cutoffs.

Before expanding a node, look every successor up in the transposition table.
A successor whose stored bound already proves the parent fails high lets the
parent return at once, without searching any child.  This catches lines on
the right of the tree that transpose into positions searched on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from gamesearch.stats import SearchStats
from gamesearch.ttable import TTable, sufficient


@dataclass(frozen=True)
class EtcConfig:
    enabled: bool = False
    # 3 = only at nodes more than two plies above the horizon
    min_remaining_depth: int = 3

    def __post_init__(self):
        if self.min_remaining_depth < 1:
            raise ValueError("ETC min_remaining_depth must be >= 1")


ETC_OFF = EtcConfig(enabled=False)
ETC_ON = EtcConfig(enabled=True)


def etc_enabled_at(depth: int, config: EtcConfig) -> bool:
    return config.enabled and depth >= config.min_remaining_depth


def etc_probe(game, pos, moves: Sequence, depth: int, alpha: int, beta: int,
              table: TTable, stats: Optional[SearchStats] = None) -> Optional[Tuple[int, object]]:
    """Return ``(value, move)`` for the first successor that proves a cutoff, else None.

    Successors are probed in ``moves`` order.  The table is never written and
    its hit counters are left alone; probes are tallied in
    ``stats.etc_probes``.
    """
    child_ply = pos.ply + 1
    for m in moves:
        child = game.apply(pos, m)
        if stats is not None:
            stats.etc_probes += 1
        entry = table.peek(child.hash)
        if entry is None:
            continue
        v = sufficient(entry, depth - 1, -beta, -alpha, child_ply)
        if v is not None and -v >= beta:
            return -v, m
    return None
