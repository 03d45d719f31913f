"""Move ordering: transposition-table move first, then history heuristic, then static order."""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Callable, Hashable, List, Optional, Sequence

from gamesearch.stats import SearchStats, record_cutoff_rank

log = logging.getLogger(__name__)

_warned_foreign_tt_move = False


class HistoryTable:
    """Cutoff scores keyed by a game-supplied move signature."""

    def __init__(self):
        self.scores = defaultdict(int)

    def score(self, signature: Hashable) -> int:
        return self.scores.get(signature, 0)

    def update(self, signature: Hashable, depth: int) -> None:
        if depth > 0:
            self.scores[signature] += depth * depth

    def clear(self) -> None:
        self.scores.clear()

    def __len__(self) -> int:
        return len(self.scores)


def history_update(hist: HistoryTable, move, depth: int,
                   signature: Callable[[object], Hashable] = lambda m: m) -> None:
    hist.update(signature(move), depth)


def order_moves(moves: Sequence, tt_move=None, hist: Optional[HistoryTable] = None,
                signature: Callable[[object], Hashable] = lambda m: m) -> List:
    """Permutation of ``moves``: ``tt_move`` first, the rest by descending history score.

    The sort is stable, so equal scores keep the game's static order.  A
    ``tt_move`` that is not among ``moves`` is ignored.
    """
    global _warned_foreign_tt_move
    rest = list(moves)
    first = None
    if tt_move is not None:
        try:
            rest.remove(tt_move)
            first = tt_move
        except ValueError:
            if not _warned_foreign_tt_move:
                log.warning("ignoring a transposition-table move that is not legal here: %r", tt_move)
                _warned_foreign_tt_move = True
    if hist is not None and hist.scores and len(rest) > 1:
        scores = hist.scores
        rest.sort(key=lambda m: -scores.get(signature(m), 0))
    if first is not None:
        rest.insert(0, first)
    return rest


__all__ = ["HistoryTable", "SearchStats", "history_update", "order_moves", "record_cutoff_rank"]
