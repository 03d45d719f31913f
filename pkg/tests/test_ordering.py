import random

from gamesearch.games import GameSpec, make_game
from gamesearch.ordering import HistoryTable, history_update, order_moves
from gamesearch.search import SearchConfig, Searcher
from gamesearch.stats import SearchStats, record_cutoff_rank
from gamesearch.ttable import TTable
from oracles import minimax


def test_tt_move_goes_first():
    assert order_moves(["a", "b", "c"], tt_move="c") == ["c", "a", "b"]


def test_no_information_keeps_static_order():
    assert order_moves(["a", "b", "c"]) == ["a", "b", "c"]
    assert order_moves(["a", "b", "c"], hist=HistoryTable()) == ["a", "b", "c"]


def test_history_orders_by_score():
    hist = HistoryTable()
    hist.scores.update({"b": 9, "a": 5})
    assert order_moves(["a", "b", "c"], hist=hist) == ["b", "a", "c"]


def test_tt_move_beats_history():
    hist = HistoryTable()
    hist.scores.update({"b": 9, "a": 5})
    assert order_moves(["a", "b", "c"], tt_move="c", hist=hist) == ["c", "b", "a"]


def test_foreign_tt_move_is_ignored():
    assert order_moves(["a", "b"], tt_move="z") == ["a", "b"]


def test_history_update_adds_depth_squared():
    hist = HistoryTable()
    history_update(hist, "m", 4)
    assert hist.score("m") == 16
    history_update(hist, "m", 0)
    assert hist.score("m") == 16
    hist2 = HistoryTable()
    history_update(hist2, "m", 2)
    history_update(hist2, "m", 3)
    assert hist2.score("m") == 13


def test_history_uses_signature():
    hist = HistoryTable()
    history_update(hist, ("x", 1), 2, signature=lambda m: m[0])
    assert order_moves([("y", 0), ("x", 9)], hist=hist, signature=lambda m: m[0]) == [("x", 9), ("y", 0)]


def test_cutoff_rank_histogram():
    s = SearchStats()
    for rank in (0, 0, 0, 2):
        record_cutoff_rank(s, 1, rank)
    record_cutoff_rank(s, 3, 1)
    assert s.cutoffs_at(1) == 4 and s.first_move_cutoff_rate(1) == 0.75
    assert s.first_move_cutoff_rate(3) == 0.0
    assert s.first_move_cutoff_rate(7) is None
    assert s.levels() == [1, 3]


def test_ordering_is_a_permutation():
    rng = random.Random(1)
    for _ in range(100):
        moves = list(range(rng.randint(1, 8)))
        hist = HistoryTable()
        for m in moves:
            hist.scores[m] = rng.randint(0, 3)
        tt = rng.choice(moves + [None, 99])
        out = order_moves(moves, tt, hist)
        assert sorted(out) == moves


class _Shuffled:
    """Wraps a game and permutes move lists with a fixed seed per position."""

    def __init__(self, game, seed):
        self.game = game
        self.seed = seed

    def __getattr__(self, name):
        return getattr(self.game, name)

    def moves(self, pos):
        moves = list(self.game.moves(pos))
        random.Random(self.seed * 1_000_003 + pos.hash).shuffle(moves)
        return moves


def test_ordering_never_changes_the_value():
    for seed in range(30):
        game = make_game(GameSpec("synthetic", seed=seed, branching=(2, 4), depth=6, density=0.5))
        pos = game.root()
        true = minimax(game, pos, 6)
        for k in range(3):
            g = _Shuffled(game, k)
            for history in (True, False):
                s = Searcher(g, TTable(12), SearchConfig(history=history))
                assert s.iterative_deepening(pos, 6, "negascout")[-1].value == true


def test_search_records_cutoff_levels():
    game = make_game(GameSpec("synthetic", seed=3, branching=(3, 3), depth=6))
    r = Searcher(game, TTable(12)).iterative_deepening(game.root(), 6, "alphabeta")[-1]
    levels = r.stats.levels()
    assert levels and min(levels) >= 0 and max(levels) < 6
    for lv in levels:
        assert 0.0 <= r.stats.first_move_cutoff_rate(lv) <= 1.0


def test_move_ordering_is_better_near_the_root():
    from gamesearch.harness.fixtures import load_bundled

    shallow, deep = [], []
    for f in load_bundled("othello6", range(1, 11)):
        game = make_game(f.spec)
        stats = Searcher(game, TTable(18)).iterative_deepening(f.pos, 6, "aspnegascout")[-1].stats
        shallow.append(stats.first_move_cutoff_rate(1))
        deep.append(stats.first_move_cutoff_rate(5))
    assert sum(shallow) / len(shallow) > sum(deep) / len(deep)
