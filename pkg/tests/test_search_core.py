import random
import statistics

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamesearch.games import INF, GameSpec, MiniCheckers, make_game
from gamesearch.search import (
    ENGINES,
    SearchConfig,
    Searcher,
    alphabeta,
    aspiration,
    iterative_deepening,
    mtd_f,
    negascout,
)
from gamesearch.ttable import EXACT, LOWER, UPPER, TTable
from oracles import best_move_map, minimax

PLAIN = SearchConfig(history=False)


def synthetic(seed, w=(2, 4), d=6, t=0.0, values=(-1000, 1000)):
    game = make_game(GameSpec("synthetic", seed=seed, branching=w, depth=d, density=t, values=values))
    return game, game.root()


def perfect(game, pos, depth):
    _, oracle = best_move_map(game, pos, depth)
    return Searcher(game, None, PLAIN, move_oracle=oracle)


# -- alphabeta -------------------------------------------------------------------------

def test_depth_zero_is_one_evaluation():
    game, pos = synthetic(1)
    r = alphabeta(game, pos, 0)
    assert r.value == game.evaluate(pos)
    assert r.stats.leaf_evaluations == 1 and r.stats.node_accesses == 1


def test_alphabeta_matches_brute_force_on_seed_42():
    game, pos = synthetic(42, w=(3, 3), d=4)
    assert alphabeta(game, pos, 4).value == minimax(game, pos, 4)


def test_perfect_ordering_minimal_leaf_count_w2_d4():
    game, pos = synthetic(3, w=(2, 2), d=4)
    r = perfect(game, pos, 4).alphabeta(pos, 4)
    assert r.stats.leaf_evaluations == 2 ** 2 + 2 ** 2 - 1 == 7


@pytest.mark.parametrize("w", [2, 3, 4])
@pytest.mark.parametrize("d", [2, 3, 5])
def test_knuth_moore_leaf_count(w, d):
    game, pos = synthetic(17, w=(w, w), d=d)
    r = perfect(game, pos, d).alphabeta(pos, d)
    assert r.stats.leaf_evaluations == w ** ((d + 1) // 2) + w ** (d // 2) - 1


def test_stats_identity_and_exact_result_has_move():
    game, pos = synthetic(5, t=0.5)
    r = Searcher(game, TTable(12)).alphabeta(pos, 6)
    s = r.stats
    assert s.node_accesses == s.interior_expansions + s.leaf_evaluations + s.tt_cutoffs
    assert r.bound == EXACT and r.best_move in game.moves(pos)


def _classify(g, alpha, beta):
    return UPPER if g <= alpha else LOWER if g >= beta else EXACT


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6), depth=st.integers(1, 6), t=st.sampled_from([0.0, 0.5, 1.0]),
       lo=st.integers(-1200, 1200), width=st.integers(1, 800))
def test_fail_soft_bounds_are_valid(seed, depth, t, lo, width):
    game, pos = synthetic(seed, d=depth, t=t)
    true = minimax(game, pos, depth)
    alpha, beta = lo, lo + width
    for engine in ("alphabeta", "negascout"):
        s = Searcher(game, TTable(10))
        r = getattr(s, engine)(pos, depth, alpha, beta)
        g = r.value
        if g <= alpha:
            assert true <= g
        elif g >= beta:
            assert true >= g
        else:
            assert g == true


# -- negascout -----------------------------------------------------------------------

def test_negascout_classification_equals_alphabeta():
    rng = random.Random(200)
    for seed in range(200):
        depth = rng.randint(1, 6)
        game, pos = synthetic(seed, d=depth, t=rng.choice([0.0, 0.3, 0.8]))
        true = minimax(game, pos, depth)
        alpha = true + rng.randint(-300, 300)
        beta = alpha + rng.randint(1, 400)
        a = Searcher(game, TTable(12)).alphabeta(pos, depth, alpha, beta)
        n = Searcher(game, TTable(12)).negascout(pos, depth, alpha, beta)
        assert _classify(a.value, alpha, beta) == _classify(n.value, alpha, beta)
        if a.bound == EXACT:
            assert a.value == n.value == true


def test_negascout_depth_one_counts_equal_alphabeta():
    for seed in range(20):
        game, pos = synthetic(seed)
        a = alphabeta(game, pos, 1, history=False)
        n = negascout(game, pos, 1, history=False)
        assert a.stats.as_dict() == n.stats.as_dict()


def test_negascout_leaf_count_on_well_ordered_trees():
    for seed in range(30):
        game, pos = synthetic(seed, w=(2, 4), d=6)
        s = perfect(game, pos, 6)
        a = s.alphabeta(pos, 6).stats.leaf_evaluations
        n = s.negascout(pos, 6).stats.leaf_evaluations
        assert n <= a


# -- aspiration ------------------------------------------------------------------------

def test_aspiration_exact_guess_single_pass():
    game, pos = synthetic(8)
    true = minimax(game, pos, 6)
    r = aspiration(game, pos, 6, guess=true, table=TTable(12))
    assert r.passes == 1 and r.value == true


def test_aspiration_fail_low_researches():
    game, pos = synthetic(8)
    true = minimax(game, pos, 6)
    r = aspiration(game, pos, 6, guess=true + 1000, table=TTable(12))
    assert r.passes == 2 and r.value == true


def test_aspiration_fail_high_researches():
    game, pos = synthetic(9)
    true = minimax(game, pos, 6)
    r = aspiration(game, pos, 6, guess=true - 1000, table=TTable(12))
    assert r.passes == 2 and r.value == true


def test_aspiration_infinite_delta_is_plain_search():
    game, pos = synthetic(10, t=0.5)
    a = aspiration(game, pos, 6, guess=0, delta=INF, table=TTable(12))
    b = negascout(game, pos, 6, table=TTable(12))
    assert a.value == b.value and a.stats.as_dict() == b.stats.as_dict()


def test_aspiration_rejects_nonpositive_delta():
    game, pos = synthetic(1)
    with pytest.raises(AssertionError):
        aspiration(game, pos, 3, guess=0, delta=0)


# -- mtd(f) ------------------------------------------------------------------------

def test_mtdf_with_true_guess_takes_at_most_two_passes():
    for seed in range(20):
        game, pos = synthetic(seed, t=0.4)
        true = minimax(game, pos, 6)
        r = mtd_f(game, pos, 6, first_guess=true)
        assert r.value == true and r.passes <= 2


def test_mtdf_equals_alphabeta():
    for seed in range(40):
        game, pos = synthetic(seed, t=0.6)
        assert mtd_f(game, pos, 6, first_guess=0).value == alphabeta(game, pos, 6).value


def test_mtdf_depth_zero():
    game, pos = synthetic(4)
    assert mtd_f(game, pos, 0).value == game.evaluate(pos)


# -- iterative deepening ---------------------------------------------------------------

def test_id_single_iteration():
    game, pos = synthetic(2)
    results = iterative_deepening(game, pos, 1, engine="alphabeta")
    assert len(results) == 1 and results[0].value == alphabeta(game, pos, 1).value


@pytest.mark.parametrize("engine", ENGINES)
def test_id_final_value_equals_direct_search(engine):
    for seed in range(15):
        game, pos = synthetic(seed, t=0.5, d=7)
        results = iterative_deepening(game, pos, 7, engine=engine)
        assert [r.depth for r in results] == list(range(1, 8))
        assert results[-1].value == alphabeta(game, pos, 7, table=TTable(16)).value


def test_id_increments_table_age():
    game, pos = synthetic(6)
    t = TTable(12)
    iterative_deepening(game, pos, 5, table=t)
    assert t.age == 5


def test_id_last_iteration_usually_cheaper_than_cold_search():
    ratios = []
    for seed in range(30):
        game, pos = synthetic(seed, w=(3, 5), d=7, t=0.3)
        warm = iterative_deepening(game, pos, 7, engine="negascout")[-1].stats.node_accesses
        cold = negascout(game, pos, 7, table=TTable()).stats.node_accesses
        ratios.append(warm / cold)
    violations = sum(r > 1 for r in ratios)
    print(f"ID warm/cold node ratio: median {statistics.median(ratios):.3f}, "
          f"{violations}/{len(ratios)} seeds where ID was not cheaper")
    assert statistics.median(ratios) <= 1.0


# -- properties --------------------------------------------------------------------------

def test_engines_agree_with_brute_force_on_synthetic_games():
    rng = random.Random(11)
    for seed in range(60):
        depth = rng.randint(1, 7)
        game, pos = synthetic(seed, w=(1, 4), d=depth, t=rng.random())
        true = minimax(game, pos, depth)
        s = Searcher(game, TTable(14))
        for engine in ENGINES:
            assert s.search(pos, depth, engine, guess=0).value == true, (seed, engine)


def test_engines_agree_on_positions_with_forced_wins():
    game = MiniCheckers()
    rng = random.Random(4)
    checked = 0
    for _ in range(40):
        pos = game.root()
        for _ in range(rng.randint(10, 30)):
            moves = game.moves(pos)
            if not moves:
                break
            pos = game.apply(pos, rng.choice(moves))
        if not game.moves(pos):
            continue
        true = minimax(game, pos, 6)
        for engine in ENGINES:
            assert Searcher(game, TTable(14)).iterative_deepening(pos, 6, engine)[-1].value == true
        checked += 1
    assert checked > 10


def test_narrower_window_never_costs_more():
    for seed in range(40):
        game, pos = synthetic(seed, d=6, t=0.0)
        f = minimax(game, pos, 6)
        wide = Searcher(game, None, PLAIN).alphabeta(pos, 6, f - 500, f + 500)
        narrow = Searcher(game, None, PLAIN).alphabeta(pos, 6, f - 1, f + 1)
        assert wide.value == narrow.value == f
        assert narrow.stats.node_accesses <= wide.stats.node_accesses


def test_node_budget_is_enforced():
    from gamesearch.errors import BudgetExceeded

    game, pos = synthetic(1, w=(4, 4), d=8)
    with pytest.raises(BudgetExceeded):
        Searcher(game, TTable(12), SearchConfig(node_budget=50)).alphabeta(pos, 8)
