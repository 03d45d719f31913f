import random
from fractions import Fraction

import pytest

from gamesearch.errors import BudgetExceeded, ConfigError
from gamesearch.games import GameSpec, make_game
from gamesearch.games.explicit import ExplicitGame
from gamesearch.metrology import (
    MetrologyConfig,
    best_move_oracle,
    compute_actual,
    compute_armg,
    compute_left_first,
    compute_lfmg,
    compute_lfmt,
    compute_rmt,
    efficiency_ratio,
)
from oracles import min_exact_proof, min_subtree_proof, minimax


def synthetic(seed, w=(3, 3), d=4, t=0.0, values=(-1000, 1000)):
    game = make_game(GameSpec("synthetic", seed=seed, branching=w, depth=d, density=t, values=values))
    return game, game.root()


def knuth_moore(w, d):
    return w ** ((d + 1) // 2) + w ** (d // 2) - 1


def test_lfmt_uniform_tree_leaf_count():
    game, pos = synthetic(42)
    r = compute_lfmt(game, pos, 4)
    assert r.leaf_count == knuth_moore(3, 4) == 17
    assert r.f == minimax(game, pos, 4)
    assert r.window == (r.f - 1, r.f + 1)


def test_lfmt_never_below_the_minimal_tree():
    for seed in range(20):
        for d in (2, 3, 5):
            game, pos = synthetic(seed, w=(3, 3), d=d)
            assert compute_lfmt(game, pos, d).leaf_count >= knuth_moore(3, d)


def test_depth_one_visits_every_root_child():
    game, pos = synthetic(9, w=(2, 5), d=3)
    r = compute_lfmt(game, pos, 1)
    assert r.leaf_count == len(game.moves(pos)) and r.interior_count == 1


def test_reports_are_deterministic():
    game, pos = synthetic(5, w=(2, 4), d=6, t=0.5)
    a = compute_left_first(game, pos, 6)
    b = compute_left_first(game, pos, 6)
    assert a == b


def test_strict_tree_lfmg_equals_lfmt():
    for seed in range(15):
        game, pos = synthetic(seed, w=(2, 4), d=6, t=0.0)
        lfmt, lfmg = compute_left_first(game, pos, 6)
        assert (lfmg.leaf_count, lfmg.interior_count, lfmg.tt_hits) == (lfmt.leaf_count, lfmt.interior_count, 0)


def test_transpositions_shrink_the_graph():
    smaller = 0
    for seed in range(20):
        game, pos = synthetic(seed, w=(3, 3), d=5, t=1.0)
        lfmt, lfmg = compute_left_first(game, pos, 5)
        assert lfmg.total_node_accesses <= lfmt.total_node_accesses
        smaller += lfmg.total_node_accesses < lfmt.total_node_accesses
    assert smaller > 10


def test_tiny_transposing_tree_merges():
    game, pos = synthetic(3, w=(2, 2), d=2, t=1.0)
    lfmt, lfmg = compute_left_first(game, pos, 2)
    assert lfmg.f == lfmt.f == minimax(game, pos, 2)
    assert lfmg.leaf_count <= lfmt.leaf_count


def cheaper_cutoff_tree():
    # B's best refutation B1 needs three leaves; the weaker B2 needs one.
    children = {"R": ["A", "B"], "B": ["B1", "B2"], "B1": ["B1a", "B1b", "B1c"]}
    values = {"A": 0, "B1a": -10, "B1b": -10, "B1c": -10, "B2": -5}
    return ExplicitGame(children, values, root="R")


def test_rmt_takes_the_cheaper_cutoff():
    game = cheaper_cutoff_tree()
    pos = game.root()
    lfmt = compute_lfmt(game, pos, 3)
    rmt = compute_rmt(game, pos, 3)
    assert lfmt.f == rmt.f == 0
    assert lfmt.total_node_accesses == 7 and lfmt.leaf_count == 4
    assert rmt.total_node_accesses == 4 and rmt.leaf_count == 2


def test_armg_finds_the_cheaper_cutoff_too():
    game = cheaper_cutoff_tree()
    pos = game.root()
    assert compute_armg(game, pos, 3, 3).total_node_accesses == 4
    assert compute_armg(game, pos, 3, 0).total_node_accesses == 7


@pytest.mark.parametrize("seed", range(6))
def test_uniform_tree_rmt_equals_lfmt_and_enumeration(seed):
    game, pos = synthetic(seed, w=(2, 2), d=4)
    lfmt = compute_lfmt(game, pos, 4)
    rmt = compute_rmt(game, pos, 4)
    total, leaves, v = min_exact_proof(game, pos, 4)
    assert (rmt.total_node_accesses, rmt.leaf_count, rmt.f) == (total, leaves, v)
    assert (lfmt.total_node_accesses, lfmt.leaf_count) == (total, leaves)


def test_rmt_matches_enumeration_on_irregular_trees():
    rng = random.Random(3)
    for seed in range(25):
        d = rng.randint(1, 4)
        game, pos = synthetic(seed, w=(1, 3), d=d, values=(-20, 20))
        rmt = compute_rmt(game, pos, d)
        assert (rmt.total_node_accesses, rmt.leaf_count, rmt.f) == min_exact_proof(game, pos, d)
        assert rmt.total_node_accesses <= compute_lfmt(game, pos, d).total_node_accesses


def test_rmt_agrees_with_subset_enumeration_on_tiny_trees():
    for seed in range(10):
        for w, d in (((1, 3), 2), ((1, 2), 3)):
            game, pos = synthetic(seed, w=w, d=d, values=(-5, 5))
            assert compute_rmt(game, pos, d).total_node_accesses == min_subtree_proof(game, pos, d)


def test_uniform_armg_equals_lfmg():
    for seed in range(8):
        game, pos = synthetic(seed, w=(3, 3), d=5)
        lfmg = compute_lfmg(game, pos, 5)
        for mm_d in (1, 3, 5):
            armg = compute_armg(game, pos, 5, mm_d)
            assert armg.total_node_accesses == lfmg.total_node_accesses


def test_armg_zero_is_lfmg():
    for seed in range(10):
        game, pos = synthetic(seed, w=(2, 4), d=6, t=0.6)
        lfmg = compute_lfmg(game, pos, 6)
        armg = compute_armg(game, pos, 6, 0)
        assert (armg.leaf_count, armg.interior_count, armg.tt_hits) == \
            (lfmg.leaf_count, lfmg.interior_count, lfmg.tt_hits)
        assert armg.label == "ARMG-MM(0)"


def test_armg_rejects_bad_mm_d():
    game, pos = synthetic(1)
    with pytest.raises(ConfigError):
        compute_armg(game, pos, 4, 5)


def test_efficiency_ratio():
    game, pos = synthetic(4, w=(2, 4), d=5, t=0.3)
    lfmg = compute_lfmg(game, pos, 5)
    assert efficiency_ratio(lfmg, lfmg) == 1
    actual = compute_actual(game, pos, 5)
    r = efficiency_ratio(actual, lfmg)
    assert isinstance(r, Fraction)
    assert r == Fraction(actual.total_node_accesses, lfmg.total_node_accesses)
    assert efficiency_ratio(actual, lfmg, "leaf") == Fraction(actual.leaf_count, lfmg.leaf_count)
    with pytest.raises(ValueError):
        efficiency_ratio(actual, lfmg, "nodes")


def test_efficiency_ratio_refuses_mismatched_reports():
    game, pos = synthetic(4, w=(2, 4), d=5)
    with pytest.raises(ConfigError):
        efficiency_ratio(compute_actual(game, pos, 4), compute_lfmg(game, pos, 5))


def test_budget_guard():
    game, pos = synthetic(1, w=(4, 4), d=8)
    f, oracle = best_move_oracle(game, pos, 6)
    with pytest.raises(BudgetExceeded):
        compute_lfmt(game, pos, 6, MetrologyConfig(budget=20))
    with pytest.raises(BudgetExceeded):
        compute_rmt(game, pos, 6, MetrologyConfig(budget=20))


def test_chain_invariants_on_transposing_games():
    for seed in range(12):
        game, pos = synthetic(seed, w=(2, 4), d=6, t=0.5)
        lfmt, lfmg = compute_left_first(game, pos, 6)
        rmt = compute_rmt(game, pos, 6)
        actual = compute_actual(game, pos, 6)
        assert lfmt.f == lfmg.f == rmt.f == actual.f
        assert rmt.total_node_accesses <= lfmt.total_node_accesses
        assert lfmg.total_node_accesses <= lfmt.total_node_accesses
        assert rmt.leaf_count <= lfmt.leaf_count or rmt.total_node_accesses < lfmt.total_node_accesses


def test_minicheckers_depth_9_rmt_below_lfmt():
    from gamesearch.harness.fixtures import load_bundled

    ratios = []
    for f in load_bundled("minicheckers", range(1, 6)):
        game = make_game(f.spec)
        lfmt, rmt = compute_lfmt(game, f.pos, 9), compute_rmt(game, f.pos, 9)
        assert rmt.total_node_accesses <= lfmt.total_node_accesses
        ratios.append(Fraction(lfmt.total_node_accesses, rmt.total_node_accesses))
    assert sorted(ratios)[len(ratios) // 2] > 1


def test_aspiration_negascout_is_near_the_minimal_graph():
    for seed in range(10):
        game, pos = synthetic(seed, w=(3, 3), d=6)
        ratio = efficiency_ratio(compute_actual(game, pos, 6), compute_lfmg(game, pos, 6))
        assert ratio >= Fraction(99, 100)
