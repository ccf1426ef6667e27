"""Clique covers: certificate checking, exact vs brute force, greedy, beta_tilde."""

import pytest

from nbcc.clique_cover import (CliqueCover, beta_tilde, exact_clique_cover,
                               greedy_clique_cover, verify_cover)
from nbcc.errors import InputError, SizeError
from nbcc.graph_core import closed_neighborhood, new_graph
from nbcc.graph_families import gen_chordal, gen_erdos_renyi, gen_named
from nbcc.separator_lab import max_independent_set

from conftest import brute_force_beta


def test_verify_cover_complete_single_block():
    k3 = gen_named("complete", 3)
    ok, problem = verify_cover(k3, CliqueCover(((0, 1, 2),)))
    assert ok and problem is None


def test_verify_cover_detects_non_clique():
    p3 = gen_named("path", 3)
    ok, problem = verify_cover(p3, CliqueCover(((0, 1, 2),)))
    assert not ok and "(0,2)" in problem.replace(" ", "")


def test_verify_cover_valid_two_blocks():
    p3 = gen_named("path", 3)
    ok, _ = verify_cover(p3, CliqueCover(((0, 1), (2,))))
    assert ok


def test_verify_cover_detects_missing_and_duplicate():
    p3 = gen_named("path", 3)
    ok, problem = verify_cover(p3, CliqueCover(((0, 1),)))
    assert not ok and "not covered" in problem
    ok, problem = verify_cover(p3, CliqueCover(((0, 1), (1,), (2,))))
    assert not ok and "more than one block" in problem
    ok, problem = verify_cover(p3, CliqueCover(((0, 1), (), (2,))))
    assert not ok and "empty" in problem


def test_exact_cover_complete_and_empty():
    assert exact_clique_cover(gen_named("complete", 6)).value == 1
    assert exact_clique_cover(gen_named("empty", 5)).value == 5


def test_exact_cover_c5_is_three():
    c5 = gen_named("cycle", 5)
    cover = exact_clique_cover(c5)
    assert cover.value == 3 == brute_force_beta(c5)
    ok, _ = verify_cover(c5, cover)
    assert ok


def test_exact_cover_matches_brute_force_on_random_graphs():
    for i in range(40):
        g = gen_erdos_renyi(4 + i % 4, (0.3, 0.5, 0.7)[i % 3], 2000 + i)
        cover = exact_clique_cover(g)
        assert cover.value == brute_force_beta(g)
        ok, problem = verify_cover(g, cover)
        assert ok, problem


def test_exact_cover_cap():
    with pytest.raises(SizeError, match="greedy"):
        exact_clique_cover(gen_named("empty", 21))


def test_exact_cover_deterministic():
    g = gen_erdos_renyi(8, 0.5, 5)
    assert exact_clique_cover(g).blocks == exact_clique_cover(g).blocks


def test_greedy_cover_examples():
    assert greedy_clique_cover(gen_named("complete", 4)).blocks == ((0, 1, 2, 3),)
    assert greedy_clique_cover(gen_named("cycle", 5)).blocks == ((0, 1), (2, 3), (4,))
    assert greedy_clique_cover(gen_named("empty", 3)).value == 3


def test_greedy_at_least_exact_and_valid():
    for i in range(30):
        g = gen_erdos_renyi(4 + i % 5, 0.5, 3000 + i)
        greedy = greedy_clique_cover(g)
        assert greedy.value >= exact_clique_cover(g).value
        ok, problem = verify_cover(g, greedy)
        assert ok, problem


def test_beta_tilde_chordal_graphs_are_one():
    for seed in range(15):
        g = gen_chordal(7, seed, 3)
        value, x, cover = beta_tilde(g)
        assert value == 1
        # witness neighborhood really is a clique
        nb = closed_neighborhood(g, x)
        assert cover.blocks == (nb,)


def test_beta_tilde_c5():
    value, x, cover = beta_tilde(gen_named("cycle", 5))
    assert (value, x) == (2, 0)
    assert cover.blocks == ((0, 1), (4,))


def test_beta_tilde_star_witnesses_a_leaf():
    value, x, _ = beta_tilde(gen_named("star", 3))
    assert value == 1 and x == 1  # lowest-id leaf; the center's nbhd is no clique


def test_beta_tilde_min_property_and_degree_bound():
    from nbcc.graph_core import induced_subgraph

    for i in range(20):
        g = gen_erdos_renyi(7, 0.5, 4000 + i)
        value, _, _ = beta_tilde(g)
        for x in range(g.n):
            h, _ = induced_subgraph(g, closed_neighborhood(g, x))
            beta_x = exact_clique_cover(h).value
            assert value <= beta_x
            assert beta_x <= max(1, g.degree(x))


def test_beta_tilde_greedy_upper_bounds_exact():
    for i in range(15):
        g = gen_erdos_renyi(7, 0.6, 5000 + i)
        assert beta_tilde(g, "greedy")[0] >= beta_tilde(g, "exact")[0]


def test_beta_tilde_rejects_empty_and_bad_mode():
    with pytest.raises(InputError):
        beta_tilde(new_graph(0, []))
    with pytest.raises(InputError):
        beta_tilde(gen_named("path", 3), mode="fast")


def test_beta_at_least_alpha():
    for i in range(20):
        g = gen_erdos_renyi(4 + i % 5, 0.5, 6000 + i)
        assert exact_clique_cover(g).value >= max_independent_set(g)[0]
