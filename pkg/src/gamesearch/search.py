"""Fail-soft negamax Alpha-Beta, NegaScout, aspiration windows, MTD(f) and
iterative deepening, with exact node accounting.

All engines run inside a :class:`Searcher`, which owns the transposition
table, the history table and the statistics of the current search.  Scores
are from the point of view of the side to move at the node searched.

Fail-soft contract for a search of ``(alpha, beta)`` returning ``g``:

* ``g <= alpha``: the true value is at most ``g``;
* ``g >= beta``: the true value is at least ``g``;
* otherwise ``g`` is the exact fixed-depth minimax value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

from gamesearch.errors import BudgetExceeded
from gamesearch.etc import ETC_OFF, EtcConfig, etc_probe
from gamesearch.games.core import INF, Game, Position
from gamesearch.ordering import HistoryTable, order_moves
from gamesearch.stats import SearchStats
from gamesearch.ttable import EXACT, LOWER, UPPER, TTable, sufficient, value_to_tt

ENGINES = ("alphabeta", "negascout", "aspnegascout", "mtdf")
DEFAULT_ASPIRATION_DELTA = 50


@dataclass
class SearchResult:
    value: int
    best_move: Any
    stats: SearchStats
    depth: int = 0
    alpha: int = -INF
    beta: int = INF
    passes: int = 1

    @property
    def bound(self) -> int:
        if self.value <= self.alpha:
            return UPPER
        if self.value >= self.beta:
            return LOWER
        return EXACT


@dataclass
class SearchConfig:
    history: bool = True
    etc: EtcConfig = ETC_OFF
    tt_cutoffs: bool = True
    # Only reuse entries searched to exactly the needed depth; deeper entries
    # would make the result differ from the pure fixed-depth value.
    tt_exact_depth: bool = True
    aspiration_delta: int = DEFAULT_ASPIRATION_DELTA
    node_budget: Optional[int] = None


class Searcher:
    """Search context: one game, one (optional) table, one history table.

    ``move_oracle`` maps position keys to a move that is tried first,
    overriding the table's move; it is how perfect-ordering and best-move
    oracle runs are driven.
    """

    def __init__(self, game: Game, table: Optional[TTable] = None,
                 config: Optional[SearchConfig] = None,
                 move_oracle: Optional[Mapping[int, Any]] = None):
        self.game = game
        self.table = table
        self.config = config or SearchConfig()
        self.history = HistoryTable() if self.config.history else None
        self.move_oracle = move_oracle
        self.stats = SearchStats()
        self._root_best = None

    # -- node bookkeeping ------------------------------------------------------

    def _enter(self, pos: Position, depth: int, alpha: int, beta: int):
        """Settle the node without expanding it, or return its ordered moves.

        Returns ``(value, None)`` or ``(None, moves)``.
        """
        stats = self.stats
        table = self.table
        config = self.config
        tt_move = None
        if table is not None:
            entry = table.probe(pos.hash)
            if entry is not None:
                if config.tt_cutoffs and (entry.depth == depth or not config.tt_exact_depth):
                    v = sufficient(entry, depth, alpha, beta, pos.ply)
                    if v is not None:
                        stats.tt_cutoffs += 1
                        return v, None
                tt_move = entry.best_move
        if self.move_oracle is not None:
            m = self.move_oracle.get(pos.hash)
            if m is not None:
                tt_move = m
        game = self.game
        moves = game.moves(pos) if depth > 0 else None
        if not moves:
            stats.leaf_evaluations += 1
            v = game.evaluate(pos)
            if table is not None:
                table.put(pos.hash, depth, value_to_tt(v, pos.ply), EXACT)
            return v, None
        if config.node_budget is not None and stats.node_accesses > config.node_budget:
            raise BudgetExceeded(f"search exceeded {config.node_budget} node accesses",
                                 config.node_budget)
        ordered = order_moves(moves, tt_move, self.history, game.signature)
        etc = config.etc
        if etc.enabled and depth >= etc.min_remaining_depth and table is not None:
            hit = etc_probe(game, pos, ordered, depth, alpha, beta, table, stats)
            if hit is not None:
                v, m = hit
                stats.tt_cutoffs += 1
                stats.etc_cutoffs += 1
                table.put(pos.hash, depth, value_to_tt(v, pos.ply), LOWER, m)
                if depth > 0 and self.history is not None:
                    self.history.update(game.signature(m), depth)
                return v, None
        stats.interior_expansions += 1
        return None, ordered

    def _leave(self, pos: Position, depth: int, alpha: int, beta: int, g: int, best, level: int):
        if g <= alpha:
            bound = UPPER
        elif g >= beta:
            bound = LOWER
        else:
            bound = EXACT
        if self.table is not None:
            self.table.put(pos.hash, depth, value_to_tt(g, pos.ply), bound, best)
        if bound != UPPER and self.history is not None:
            self.history.update(self.game.signature(best), depth)
        if level == 0:
            self._root_best = best

    # -- recursive engines -----------------------------------------------------

    def _ab(self, pos, depth, alpha, beta, level):
        v, moves = self._enter(pos, depth, alpha, beta)
        if moves is None:
            return v
        apply = self.game.apply
        g = -INF
        best = None
        a = alpha
        for i, m in enumerate(moves):
            t = -self._ab(apply(pos, m), depth - 1, -beta, -a, level + 1)
            if t > g:
                g = t
                best = m
                if t > a:
                    a = t
                    if a >= beta:
                        self.stats.record_cutoff_rank(level, i)
                        break
        self._leave(pos, depth, alpha, beta, g, best, level)
        return g

    def _ns(self, pos, depth, alpha, beta, level):
        v, moves = self._enter(pos, depth, alpha, beta)
        if moves is None:
            return v
        apply = self.game.apply
        # With depth-1 children the scout value is exact unless the table can
        # hand back a bound from a deeper search.
        scout_exact_at_1 = self.config.tt_exact_depth or not self.config.tt_cutoffs
        g = -INF
        best = None
        a = alpha
        b = beta
        for i, m in enumerate(moves):
            child = apply(pos, m)
            t = -self._ns(child, depth - 1, -b, -a, level + 1)
            if i > 0 and a < t < beta and (depth > 1 or not scout_exact_at_1):
                t = -self._ns(child, depth - 1, -beta, -t, level + 1)
            if t > g:
                g = t
                best = m
            if t > a:
                a = t
            if a >= beta:
                self.stats.record_cutoff_rank(level, i)
                break
            b = a + 1
        self._leave(pos, depth, alpha, beta, g, best, level)
        return g

    def _engine(self, name: str):
        if name == "alphabeta":
            return self._ab
        if name == "negascout":
            return self._ns
        raise ValueError(f"unknown window engine {name!r}")

    # -- public entry points -----------------------------------------------------

    def _begin(self) -> None:
        self.stats = SearchStats()
        self._root_best = None

    def _result(self, value, depth, alpha=-INF, beta=INF, passes=1) -> SearchResult:
        return SearchResult(value, self._root_best, self.stats, depth, alpha, beta, passes)

    def alphabeta(self, pos: Position, depth: int, alpha: int = -INF, beta: int = INF) -> SearchResult:
        assert alpha < beta and depth >= 0
        self._begin()
        return self._result(self._ab(pos, depth, alpha, beta, 0), depth, alpha, beta)

    def negascout(self, pos: Position, depth: int, alpha: int = -INF, beta: int = INF) -> SearchResult:
        assert alpha < beta and depth >= 0
        self._begin()
        return self._result(self._ns(pos, depth, alpha, beta, 0), depth, alpha, beta)

    def aspiration(self, pos: Position, depth: int, guess: int, delta: Optional[int] = None,
                   engine: str = "negascout") -> SearchResult:
        """Search ``(guess - delta, guess + delta)`` and re-search on failure."""
        delta = self.config.aspiration_delta if delta is None else delta
        assert delta > 0
        search = self._engine(engine)
        self._begin()
        alpha = max(-INF, guess - delta)
        beta = min(INF, guess + delta)
        g = search(pos, depth, alpha, beta, 0)
        passes = 1
        if g <= alpha and alpha > -INF:
            g = search(pos, depth, -INF, g + 1, 0)
            passes += 1
        elif g >= beta and beta < INF:
            g = search(pos, depth, g - 1, INF, 0)
            passes += 1
        return self._result(g, depth, passes=passes)

    def mtd_f(self, pos: Position, depth: int, first_guess: int = 0) -> SearchResult:
        """Converge on the minimax value with null-window Alpha-Beta passes."""
        self._begin()
        g = max(-INF + 1, min(INF, first_guess))
        lower, upper = -INF, INF
        passes = 0
        best = None
        while lower < upper:
            beta = g + 1 if g == lower else g
            g = self._ab(pos, depth, beta - 1, beta, 0)
            passes += 1
            if g < beta:
                upper = g
            else:
                lower = g
                best = self._root_best
            assert passes <= 2 * INF + 2, "MTD(f) failed to converge"
        if best is not None:
            self._root_best = best
        return self._result(g, depth, passes=passes)

    def search(self, pos: Position, depth: int, engine: str = "aspnegascout", guess: int = 0) -> SearchResult:
        if engine == "alphabeta":
            return self.alphabeta(pos, depth)
        if engine == "negascout":
            return self.negascout(pos, depth)
        if engine == "aspnegascout":
            return self.aspiration(pos, depth, guess, engine="negascout")
        if engine == "mtdf":
            return self.mtd_f(pos, depth, guess)
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")

    def iterative_deepening(self, pos: Position, max_depth: int, engine: str = "aspnegascout") -> List[SearchResult]:
        """Search depths 1..max_depth reusing the table; one result per iteration."""
        assert max_depth >= 1
        results = []
        guess = self.game.evaluate(pos)
        for depth in range(1, max_depth + 1):
            if self.table is not None:
                self.table.new_iteration()
            result = self.search(pos, depth, engine, guess)
            results.append(result)
            guess = result.value
        return results


# -- functional wrappers ----------------------------------------------------------

def alphabeta(game: Game, pos: Position, depth: int, alpha: int = -INF, beta: int = INF,
              table: Optional[TTable] = None, **config) -> SearchResult:
    return Searcher(game, table, SearchConfig(**config)).alphabeta(pos, depth, alpha, beta)


def negascout(game: Game, pos: Position, depth: int, alpha: int = -INF, beta: int = INF,
              table: Optional[TTable] = None, **config) -> SearchResult:
    return Searcher(game, table, SearchConfig(**config)).negascout(pos, depth, alpha, beta)


def aspiration(game: Game, pos: Position, depth: int, guess: int, delta: int = DEFAULT_ASPIRATION_DELTA,
               engine: str = "negascout", table: Optional[TTable] = None, **config) -> SearchResult:
    return Searcher(game, table, SearchConfig(**config)).aspiration(pos, depth, guess, delta, engine)


def mtd_f(game: Game, pos: Position, depth: int, first_guess: int = 0,
          table: Optional[TTable] = None, **config) -> SearchResult:
    if table is None:
        table = TTable()
    return Searcher(game, table, SearchConfig(**config)).mtd_f(pos, depth, first_guess)


def iterative_deepening(game: Game, pos: Position, max_depth: int, engine: str = "aspnegascout",
                        table: Optional[TTable] = None, **config) -> List[SearchResult]:
    if table is None:
        table = TTable()
    return Searcher(game, table, SearchConfig(**config)).iterative_deepening(pos, max_depth, engine)
