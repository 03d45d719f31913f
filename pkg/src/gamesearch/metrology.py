"""Minimal tree and minimal graph measurements.

* LFMT / LFMG: search once to get the minimax value ``f`` and a best move at
  every node, strip the table down to those best moves, then re-search with
  the window ``(f - 1, f + 1)`` trying the stored best move first.  Without
  transposition reuse the re-search walks the left-first minimal tree; with
  reuse of results written during the re-search itself it walks the
  left-first minimal graph.
* RMT: the cheapest proof tree of ``f`` when every cutoff node picks the cutoff
  move with the smallest proof subtree.  Transpositions are not reused in the
  count; a value/cost memo only speeds up the computation.
* ARMG: the LFMG procedure, except that in the bottom ``mm_d`` plies every
  cutoff node keeps searching for a cheaper cutoff move.  A final pass recounts
  the graph spanned by the chosen moves.

Counts use the same node-access convention as the search engines: a
transposition cutoff is one access, never an expansion.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from gamesearch.errors import BudgetExceeded, ConfigError, InvariantViolation, OracleError
from gamesearch.etc import ETC_OFF, EtcConfig, etc_probe
from gamesearch.games.core import INF, Game, Position
from gamesearch.ordering import order_moves
from gamesearch.search import ENGINES, SearchConfig, Searcher
from gamesearch.stats import SearchStats
from gamesearch.ttable import EXACT, LOWER, UPPER, TTable, sufficient, value_to_tt

QUANTITIES = ("ACTUAL", "LFMT", "LFMG", "RMT", "ARMG")
DEFAULT_BUDGET = 10 ** 8


@dataclass
class NodeCountReport:
    quantity: str
    game: str
    depth: int
    f: int
    leaf_count: int
    interior_count: int
    tt_hits: int = 0
    etc_cutoffs: int = 0
    oracle_misses: int = 0
    engine: str = ""
    mm_d: Optional[int] = None
    window: Optional[Tuple[int, int]] = None
    stats: Optional[SearchStats] = field(default=None, repr=False)

    @property
    def total_node_accesses(self) -> int:
        return self.leaf_count + self.interior_count + self.tt_hits

    @property
    def label(self) -> str:
        if self.quantity == "ARMG":
            return f"ARMG-MM({self.mm_d})"
        if self.quantity == "ACTUAL":
            return self.engine or "ACTUAL"
        return self.quantity


@dataclass
class MetrologyConfig:
    """Knobs shared by the metrology procedures.

    ``tt_bits=None`` (the default) gives the best-move oracle an unbounded
    table, which can always hold the whole minimal tree.
    """

    step1_engine: str = "negascout"
    tt_bits: Optional[int] = None
    history: bool = True
    budget: int = DEFAULT_BUDGET
    etc: EtcConfig = ETC_OFF

    def __post_init__(self):
        if self.step1_engine not in ENGINES:
            raise ConfigError(f"unknown engine {self.step1_engine!r}")


def _ensure_recursion(depth: int) -> None:
    need = 4 * depth + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


# -- step 1: value and best moves --------------------------------------------------

def best_move_oracle(game: Game, pos: Position, depth: int,
                     config: Optional[MetrologyConfig] = None) -> Tuple[int, TTable]:
    """Iterative-deepening search to ``depth``; returns ``f`` and the best-move-only table."""
    config = config or MetrologyConfig()
    table = TTable(config.tt_bits)
    searcher = Searcher(game, table, SearchConfig(history=config.history, node_budget=config.budget))
    results = searcher.iterative_deepening(pos, depth, config.step1_engine)
    if table.bits is not None and table.evictions:
        raise OracleError(f"transposition table saturated: {table.evictions} entries evicted "
                          f"with 2^{table.bits} slots; use a larger table")
    table.retain_best_moves_only()
    return results[-1].value, table


# -- counting traversals -------------------------------------------------------------

class _Traversal:
    """Alpha-Beta pass guided by a best-move oracle, counting what it touches.

    ``live`` is the table that may supply transposition cutoffs; it only ever
    holds results written during this traversal.
    """

    def __init__(self, game: Game, oracle: TTable, live: Optional[TTable], budget: int,
                 etc: EtcConfig = ETC_OFF, overrides: Optional[Dict[int, object]] = None):
        self.game = game
        self.oracle = oracle
        self.live = live
        self.budget = budget
        self.etc = etc
        self.overrides = overrides if overrides is not None else {}
        self.leaves = 0
        self.interior = 0
        self.tt_hits = 0
        self.etc_cutoffs = 0
        self.misses = 0

    @property
    def total(self) -> int:
        return self.leaves + self.interior + self.tt_hits

    def _first_move(self, key: int):
        m = self.overrides.get(key)
        if m is None:
            m = self.oracle.best_move(key)
        return m

    def _settle(self, pos: Position, depth: int, alpha: int, beta: int):
        """Shared node entry: ``(value, None)`` if settled, else ``(None, ordered moves)``."""
        live = self.live
        if live is not None:
            entry = live.probe(pos.hash)
            if entry is not None and entry.depth == depth:
                v = sufficient(entry, depth, alpha, beta, pos.ply)
                if v is not None:
                    self.tt_hits += 1
                    return v, None
        game = self.game
        moves = game.moves(pos) if depth > 0 else None
        if not moves:
            self.leaves += 1
            v = game.evaluate(pos)
            if live is not None:
                live.put(pos.hash, depth, value_to_tt(v, pos.ply), EXACT)
            return v, None
        if self.total > self.budget:
            raise BudgetExceeded(f"metrology pass exceeded {self.budget} node accesses", self.budget)
        first = self._first_move(pos.hash)
        if first is None:
            self.misses += 1
        ordered = order_moves(moves, first)
        if (live is not None and self.etc.enabled and depth >= self.etc.min_remaining_depth):
            hit = etc_probe(game, pos, ordered, depth, alpha, beta, live)
            if hit is not None:
                v, m = hit
                self.tt_hits += 1
                self.etc_cutoffs += 1
                live.put(pos.hash, depth, value_to_tt(v, pos.ply), LOWER, m)
                return v, None
        self.interior += 1
        return None, ordered

    def _store(self, pos, depth, alpha, beta, g, best):
        if self.live is not None:
            bound = UPPER if g <= alpha else LOWER if g >= beta else EXACT
            self.live.put(pos.hash, depth, value_to_tt(g, pos.ply), bound, best)

    def count(self, pos: Position, depth: int, alpha: int, beta: int) -> int:
        v, moves = self._settle(pos, depth, alpha, beta)
        if moves is None:
            return v
        apply = self.game.apply
        g = -INF
        best = None
        a = alpha
        for m in moves:
            t = -self.count(apply(pos, m), depth - 1, -beta, -a)
            if t > g:
                g = t
                best = m
                if t > a:
                    a = t
                    if a >= beta:
                        break
        self._store(pos, depth, alpha, beta, g, best)
        return g

    def explore(self, pos: Position, depth: int, alpha: int, beta: int, mm_d: int) -> Tuple[int, int]:
        """Like :meth:`count`, but cutoff nodes within ``mm_d`` plies of the
        horizon try every remaining move for a cheaper cutoff.

        Returns ``(value, size)`` where ``size`` is the number of accesses a
        recount following the chosen moves would make below and at this node,
        ignoring transpositions into discarded subtrees.
        """
        v, moves = self._settle(pos, depth, alpha, beta)
        if moves is None:
            return v, 1
        apply = self.game.apply
        g = -INF
        best = None
        a = alpha
        size = 1
        for i, m in enumerate(moves):
            t, s = self.explore(apply(pos, m), depth - 1, -beta, -a, mm_d)
            t = -t
            size += s
            if t > g:
                g = t
                best = m
            if t > a:
                a = t
                if a >= beta:
                    if depth <= mm_d:
                        cheapest = s
                        for m2 in moves[i + 1:]:
                            t2, s2 = self.explore(apply(pos, m2), depth - 1, -beta, -alpha, mm_d)
                            t2 = -t2
                            if t2 >= beta and s2 < cheapest:
                                cheapest, best, g = s2, m2, t2
                        self.overrides[pos.hash] = best
                        size = 1 + cheapest
                    break
        self._store(pos, depth, alpha, beta, g, best)
        return g, size


def _report(quantity: str, game: Game, depth: int, f: int, trav: _Traversal, **extra) -> NodeCountReport:
    return NodeCountReport(quantity, game.spec.describe(), depth, f, trav.leaves, trav.interior,
                           tt_hits=trav.tt_hits, etc_cutoffs=trav.etc_cutoffs,
                           oracle_misses=trav.misses, window=(f - 1, f + 1), **extra)


def _check_f(value: int, f: int, what: str) -> None:
    if value != f:
        raise InvariantViolation(f"{what} returned {value}, expected minimax value {f}")


def _check_misses(trav: _Traversal, oracle: TTable, what: str) -> None:
    if trav.misses and oracle.bits is not None:
        raise OracleError(f"{what}: {trav.misses} nodes had no best move in a 2^{oracle.bits}-slot table")


def count_with_oracle(game: Game, pos: Position, depth: int, f: int, oracle: TTable,
                      transpositions: bool, config: Optional[MetrologyConfig] = None,
                      quantity: Optional[str] = None) -> NodeCountReport:
    """One counting pass with window ``(f - 1, f + 1)`` driven by ``oracle``."""
    config = config or MetrologyConfig()
    _ensure_recursion(depth)
    live = TTable(None) if transpositions else None
    trav = _Traversal(game, oracle, live, config.budget, config.etc if transpositions else ETC_OFF)
    g = trav.count(pos, depth, f - 1, f + 1)
    quantity = quantity or ("LFMG" if transpositions else "LFMT")
    _check_f(g, f, quantity)
    _check_misses(trav, oracle, quantity)
    return _report(quantity, game, depth, f, trav, engine=config.step1_engine)


def compute_lfmt(game: Game, pos: Position, depth: int,
                 config: Optional[MetrologyConfig] = None) -> NodeCountReport:
    """Left-first minimal tree: the oracle-guided re-search with no transposition reuse."""
    config = config or MetrologyConfig()
    f, oracle = best_move_oracle(game, pos, depth, config)
    return count_with_oracle(game, pos, depth, f, oracle, False, config)


def compute_lfmg(game: Game, pos: Position, depth: int,
                 config: Optional[MetrologyConfig] = None) -> NodeCountReport:
    """Left-first minimal graph: the same re-search, reusing its own results on transpositions."""
    config = config or MetrologyConfig()
    f, oracle = best_move_oracle(game, pos, depth, config)
    return count_with_oracle(game, pos, depth, f, oracle, True, config)


def compute_left_first(game: Game, pos: Position, depth: int,
                       config: Optional[MetrologyConfig] = None) -> Tuple[NodeCountReport, NodeCountReport]:
    """LFMT and LFMG from a single step-1 search."""
    config = config or MetrologyConfig()
    f, oracle = best_move_oracle(game, pos, depth, config)
    return (count_with_oracle(game, pos, depth, f, oracle, False, config),
            count_with_oracle(game, pos, depth, f, oracle, True, config))


def compute_armg(game: Game, pos: Position, depth: int, mm_d: int,
                 config: Optional[MetrologyConfig] = None,
                 oracle: Optional[Tuple[int, TTable]] = None) -> NodeCountReport:
    """Approximate real minimal graph with cheapest-cutoff minimaxing of the bottom ``mm_d`` plies."""
    if not 0 <= mm_d <= depth:
        raise ConfigError(f"mm_d must lie in 0..{depth}, got {mm_d}")
    config = config or MetrologyConfig()
    _ensure_recursion(depth)
    f, table = oracle if oracle is not None else best_move_oracle(game, pos, depth, config)
    overrides: Dict[int, object] = {}
    if mm_d > 0:
        phase2 = _Traversal(game, table, TTable(None), config.budget * max(1, mm_d), config.etc)
        g, _ = phase2.explore(pos, depth, f - 1, f + 1, mm_d)
        _check_f(g, f, "ARMG phase 2")
        overrides = phase2.overrides
    live = TTable(None)
    trav = _Traversal(game, table, live, config.budget, config.etc, overrides=dict(overrides))
    g = trav.count(pos, depth, f - 1, f + 1)
    _check_f(g, f, "ARMG recount")
    _check_misses(trav, table, "ARMG recount")
    return _report("ARMG", game, depth, f, trav, engine=config.step1_engine, mm_d=mm_d)


# -- real minimal tree -------------------------------------------------------------------

class _ProofCost:
    """Cheapest proof-tree sizes over a fixed-depth game tree.

    ``high(n, b)`` is the cheapest proof that ``n`` is worth at least ``b``;
    ``low(n, a)`` that it is worth at most ``a``; ``exact(n, a, b)`` the cheapest
    Alpha-Beta tree establishing a value strictly inside ``(a, b)``.  Costs are
    ``(total, leaves)`` pairs compared on ``total``, first-found winning ties.
    A ``limit`` abandons a candidate once it cannot beat the cheapest so far.
    """

    def __init__(self, game: Game, budget: int):
        self.game = game
        self.budget = budget
        self.work = 0
        self._values: Dict[tuple, int] = {}
        self._children: Dict[tuple, list] = {}
        self._costs: Dict[tuple, Tuple[int, int]] = {}
        self._floors: Dict[tuple, int] = {}

    def _tick(self) -> None:
        self.work += 1
        if self.work > self.budget:
            raise BudgetExceeded(f"real-minimal-tree computation exceeded {self.budget} steps", self.budget)

    def children(self, pos: Position, depth: int):
        key = (pos.hash, depth, pos.ply)
        kids = self._children.get(key)
        if kids is None:
            moves = self.game.moves(pos) if depth > 0 else []
            kids = [self.game.apply(pos, m) for m in moves]
            self._children[key] = kids
        return kids

    def value(self, pos: Position, depth: int) -> int:
        key = (pos.hash, depth, pos.ply)
        v = self._values.get(key)
        if v is None:
            self._tick()
            kids = self.children(pos, depth)
            if kids:
                v = max(-self.value(c, depth - 1) for c in kids)
            else:
                v = self.game.evaluate(pos)
            self._values[key] = v
        return v

    def _memo(self, key, limit):
        hit = self._costs.get(key)
        if hit is not None:
            return hit if hit[0] <= limit else False
        floor = self._floors.get(key)
        if floor is not None and limit <= floor:
            return False
        return None

    def _remember(self, key, cost, limit):
        if cost is None:
            self._floors[key] = max(limit, self._floors.get(key, -1))
        else:
            self._costs[key] = cost

    def high(self, pos: Position, depth: int, b: int, limit: int):
        kids = self.children(pos, depth)
        if not kids:
            return (1, 1) if limit >= 1 else None
        key = ("H", pos.hash, depth, pos.ply, b)
        hit = self._memo(key, limit)
        if hit is not None:
            return hit or None
        self._tick()
        best = None
        for c in kids:
            if -self.value(c, depth - 1) < b:
                continue
            # a replacement must be strictly cheaper than the current best
            cap = best[0] - 2 if best is not None else limit - 1
            sub = self.low(c, depth - 1, -b, cap)
            if sub is not None:
                best = (sub[0] + 1, sub[1])
        result = best if best is not None and best[0] <= limit else None
        self._remember(key, result, limit)
        return result

    def low(self, pos: Position, depth: int, a: int, limit: int):
        kids = self.children(pos, depth)
        if not kids:
            return (1, 1) if limit >= 1 else None
        key = ("L", pos.hash, depth, pos.ply, a)
        hit = self._memo(key, limit)
        if hit is not None:
            return hit or None
        self._tick()
        total, leaves = 1, 0
        result = None
        for c in kids:
            sub = self.high(c, depth - 1, -a, limit - total)
            if sub is None:
                break
            total += sub[0]
            leaves += sub[1]
        else:
            result = (total, leaves) if total <= limit else None
        self._remember(key, result, limit)
        return result

    def exact(self, pos: Position, depth: int, a: int, b: int) -> Tuple[int, int]:
        kids = self.children(pos, depth)
        if not kids:
            return (1, 1)
        self._tick()
        v = self.value(pos, depth)
        assert a < v < b
        best = None
        for i, c in enumerate(kids):
            if -self.value(c, depth - 1) != v:
                continue
            pv = self.exact(c, depth - 1, -b, -a)
            total, leaves = 1 + pv[0], pv[1]
            limit = (best[0] - 1) if best is not None else INF * INF
            for j, other in enumerate(kids):
                if j == i:
                    continue
                sub = self.high(other, depth - 1, -v, limit - total)
                if sub is None:
                    total = None
                    break
                total += sub[0]
                leaves += sub[1]
            if total is not None and (best is None or total < best[0]):
                best = (total, leaves)
        assert best is not None
        return best


def compute_rmt(game: Game, pos: Position, depth: int,
                config: Optional[MetrologyConfig] = None) -> NodeCountReport:
    """Real minimal tree: cheapest cutoff everywhere, transpositions disabled."""
    config = config or MetrologyConfig()
    _ensure_recursion(depth)
    pc = _ProofCost(game, config.budget)
    f = pc.value(pos, depth)
    total, leaves = pc.exact(pos, depth, f - 1, f + 1)
    return NodeCountReport("RMT", game.spec.describe(), depth, f, leaves, total - leaves,
                           window=(f - 1, f + 1), engine="minimax")


# -- the program under test ---------------------------------------------------------------

def compute_actual(game: Game, pos: Position, depth: int, engine: str = "aspnegascout",
                   tt_bits: Optional[int] = 21, etc: EtcConfig = ETC_OFF, history: bool = True,
                   budget: Optional[int] = None) -> NodeCountReport:
    """Iterative-deepening search; counts are those of the last iteration."""
    table = TTable(tt_bits) if tt_bits is not None else None
    searcher = Searcher(game, table, SearchConfig(history=history, etc=etc, node_budget=budget))
    results = searcher.iterative_deepening(pos, depth, engine)
    last = results[-1]
    st = last.stats
    name = engine + ("+etc" if etc.enabled else "")
    return NodeCountReport("ACTUAL", game.spec.describe(), depth, last.value, st.leaf_evaluations,
                           st.interior_expansions, tt_hits=st.tt_cutoffs, etc_cutoffs=st.etc_cutoffs,
                           engine=name, stats=st)


def efficiency_ratio(actual: NodeCountReport, lfmg: NodeCountReport, basis: str = "total") -> Fraction:
    """How many times larger the searched tree is than the left-first minimal graph."""
    if actual.game != lfmg.game or actual.depth != lfmg.depth:
        raise ConfigError(f"cannot compare {actual.game} d={actual.depth} "
                          f"with {lfmg.game} d={lfmg.depth}")
    if actual.f != lfmg.f:
        raise ConfigError(f"reports disagree on the minimax value ({actual.f} vs {lfmg.f})")
    if basis == "total":
        return Fraction(actual.total_node_accesses, lfmg.total_node_accesses)
    if basis == "leaf":
        return Fraction(actual.leaf_count, max(1, lfmg.leaf_count))
    raise ValueError(f"basis must be 'total' or 'leaf', got {basis!r}")
