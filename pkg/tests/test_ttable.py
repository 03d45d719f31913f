import random

import pytest

from gamesearch.games import GameSpec, make_game
from gamesearch.search import Searcher
from gamesearch.ttable import (
    EXACT,
    LOWER,
    NO_DEPTH,
    UPPER,
    TTable,
    TTEntry,
    sufficient,
    value_from_tt,
    value_to_tt,
)


def test_probe_empty_table():
    t = TTable(12)
    assert t.probe(12345) is None
    assert t.probes == 1 and t.hits == 0


def test_store_probe_roundtrip():
    t = TTable(12)
    e = TTEntry(0xDEADBEEF, 3, 17, EXACT, "m")
    t.store(e)
    assert t.probe(0xDEADBEEF) is e
    assert t.hits == 1


def test_colliding_key_is_a_miss():
    t = TTable(12)
    k1 = 0x1234
    k2 = k1 + (1 << 12)  # same slot, different key
    t.store(TTEntry(k1, 2, 5, LOWER))
    assert t.probe(k2) is None
    assert t.collisions == 1


def test_capacity_is_power_of_two():
    assert TTable(12).capacity == 4096
    assert TTable().capacity == 1 << 21
    assert TTable(None).capacity is None
    with pytest.raises(ValueError):
        TTable(0)


@pytest.mark.parametrize(
    "resident, newcomer, kept",
    [
        ((5, 0), (2, 0), "resident"),  # shallow over deep, same age
        ((2, 0), (5, 0), "newcomer"),  # deep over shallow
        ((3, 0), (3, 0), "newcomer"),  # equal depth: newcomer wins
        ((9, 0), (1, 1), "newcomer"),  # newer age always replaces
    ],
)
def test_replacement_policy(resident, newcomer, kept):
    t = TTable(8)
    slot_key = 7
    old = TTEntry(slot_key, resident[0], 1, EXACT, age=resident[1])
    new = TTEntry(slot_key + (1 << 8), newcomer[0], 2, EXACT, age=newcomer[1])
    t.store(old)
    t.store(new)
    assert (t.peek(new.full_key) is new) == (kept == "newcomer")
    assert (t.peek(old.full_key) is old) == (kept == "resident")


def test_put_uses_current_age():
    t = TTable(8)
    t.new_iteration()
    t.put(3, 1, 0, EXACT)
    assert t.peek(3).age == 1


def test_retain_best_moves_only():
    t = TTable(12)
    t.store(TTEntry(99, 5, 13, LOWER, "m"))
    t.retain_best_moves_only()
    e = t.probe(99)
    assert (e.full_key, e.best_move) == (99, "m")
    assert e.depth == NO_DEPTH and e.value is None and e.bound is None
    # usable as a move oracle, never as a cutoff source
    assert sufficient(e, 0, -10, 10) is None
    assert t.best_move(99) == "m"


def test_retain_best_moves_only_on_empty_table():
    t = TTable(12)
    t.retain_best_moves_only()
    assert len(t) == 0


def test_sufficient_lower_bound_cutoff():
    assert sufficient(TTEntry(1, 4, 10, LOWER), 3, -1, 1) == 10


def test_sufficient_too_shallow():
    assert sufficient(TTEntry(1, 2, 5, EXACT), 4, -100, 100) is None


def test_sufficient_upper_bound_not_low_enough():
    assert sufficient(TTEntry(1, 4, 0, UPPER), 3, -1, 1) is None
    assert sufficient(TTEntry(1, 4, -1, UPPER), 3, -1, 1) == -1


def test_sufficient_exact_always_cuts():
    assert sufficient(TTEntry(1, 4, 50, EXACT), 4, -1, 1) == 50


def test_terminal_scores_are_stored_node_relative():
    win_at_ply_9 = 32000 - 9
    stored = value_to_tt(win_at_ply_9, 4)
    assert value_from_tt(stored, 4) == win_at_ply_9
    # the same position reached at ply 6 is five plies from the win
    assert value_from_tt(stored, 6) == 32000 - 11
    assert value_to_tt(123, 7) == 123


def test_copy_is_independent():
    t = TTable(10)
    t.put(5, 2, 3, EXACT, "a")
    c = t.copy()
    c.retain_best_moves_only()
    assert t.peek(5).value == 3 and c.peek(5).value is None


def _alphabeta_no_table(game, pos, depth):
    return Searcher(game, None).alphabeta(pos, depth).value


def test_table_never_changes_the_value():
    rng = random.Random(8)
    for seed in range(40):
        spec = GameSpec("synthetic", seed=seed, branching=(2, 4), depth=6, density=rng.random())
        game = make_game(spec)
        pos = game.root()
        expect = _alphabeta_no_table(game, pos, 6)
        for bits in (4, 12, None):
            assert Searcher(game, TTable(bits)).alphabeta(pos, 6).value == expect


def test_hit_counts_are_deterministic():
    spec = GameSpec("synthetic", seed=4, branching=(2, 4), depth=7, density=0.6)
    counts = []
    for _ in range(2):
        game = make_game(spec)
        t = TTable(10)
        Searcher(game, t).iterative_deepening(game.root(), 7)
        counts.append((t.probes, t.hits, t.collisions, t.stores))
    assert counts[0] == counts[1]
