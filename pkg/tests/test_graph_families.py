"""Generators, the chordality recognizer, posets, and Mirsky layering."""

import pytest

from nbcc.clique_cover import verify_cover
from nbcc.errors import InputError
from nbcc.graph_core import Graph
from nbcc.graph_families import (ChordlessWitness, gen_chordal,
                                 gen_erdos_renyi, gen_family, gen_interval,
                                 gen_named, gen_poset_incomparability,
                                 is_chordal, make_poset, mirsky_clique_cover,
                                 poset_from_json_dict)
from nbcc.separator_lab import max_independent_set


def test_gen_named_shapes():
    assert gen_named("complete", 4).m == 6
    assert gen_named("cycle", 5).m == 5
    star = gen_named("star", 3)
    assert star.n == 4 and star.degree(0) == 3
    assert gen_named("path", 4).m == 3
    assert gen_named("grid", 2, 3).m == 7
    assert gen_named("empty", 3).m == 0


def test_gen_named_rejects_bad_params():
    with pytest.raises(InputError):
        gen_named("cycle", 2)
    with pytest.raises(InputError):
        gen_named("star", 0)
    with pytest.raises(InputError):
        gen_named("blob", 3)
    with pytest.raises(InputError):
        gen_named("complete")


def test_er_extremes():
    assert gen_erdos_renyi(5, 0.0, 1).m == 0
    assert gen_erdos_renyi(5, 1.0, 1).m == 10
    with pytest.raises(InputError):
        gen_erdos_renyi(5, 1.5, 1)


def test_er_golden_edges():
    # recorded once from the documented splitmix64 stream
    g = gen_erdos_renyi(8, 0.5, 42)
    assert g.edges() == [(0, 2), (0, 3), (0, 4), (0, 5), (0, 7), (1, 3),
                         (1, 5), (1, 6), (2, 5), (2, 6), (2, 7), (3, 4),
                         (3, 7), (4, 7), (5, 6)]
    assert gen_erdos_renyi(8, 0.5, 42).edges() == g.edges()


def test_gen_chordal_is_chordal():
    assert gen_chordal(1, 0).n == 1
    for seed in range(40):
        g = gen_chordal(4 + seed % 9, seed, 3)
        ok, order = is_chordal(g)
        assert ok, f"seed {seed} produced a non-chordal graph"
        assert len(order) == g.n


def test_gen_chordal_attach_max_bounds_added_degree():
    g = gen_chordal(10, 7, 2)
    # each vertex joins at most attach_max earlier vertices
    for i in range(g.n):
        earlier = [w for w in g.adj[i] if w < i]
        assert len(earlier) <= 2


def test_gen_interval_is_chordal():
    for seed in range(30):
        g = gen_interval(4 + seed % 7, seed)
        assert is_chordal(g)[0]
    assert is_chordal(gen_interval(6, 3))[0]


def test_poset_chain_and_antichain():
    chain = gen_poset_incomparability(5, 3, 1.0)
    assert chain.incomparability_graph.m == 0
    anti = gen_poset_incomparability(5, 3, 0.0)
    assert anti.incomparability_graph.m == 10


def test_poset_invariants_and_complement():
    for seed in range(20):
        p = gen_poset_incomparability(6, seed, 0.4)
        rel = p.relation
        for a, b in rel:
            assert (b, a) not in rel and a != b
            for c, d in rel:
                if b == c:
                    assert (a, d) in rel
        g = p.incomparability_graph
        comparable = {(min(a, b), max(a, b)) for a, b in rel}
        non_edges = {(a, b) for a in range(6) for b in range(a + 1, 6)
                     if not g.has_edge(a, b)}
        assert non_edges == comparable


def test_make_poset_rejects_bad_relations():
    with pytest.raises(InputError):
        make_poset(3, [(0, 0)])
    with pytest.raises(InputError):
        make_poset(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        make_poset(3, [(0, 1), (1, 2)])  # missing (0,2)
    with pytest.raises(InputError):
        make_poset(2, [(0, 5)])


def test_poset_json_roundtrip():
    p = gen_poset_incomparability(6, 9, 0.5)
    back = poset_from_json_dict(p.to_json_dict())
    assert back.relation == p.relation
    assert back.incomparability_graph.edge_set() == p.incomparability_graph.edge_set()


def test_is_chordal_c4_false_with_certificate():
    ok, witness = is_chordal(gen_named("cycle", 4))
    assert not ok and isinstance(witness, ChordlessWitness)
    x, y = witness.pair
    assert not gen_named("cycle", 4).has_edge(x, y)
    if witness.cycle is not None:
        cyc = witness.cycle
        assert len(cyc) >= 4
        g = gen_named("cycle", 4)
        for i, u in enumerate(cyc):
            assert g.has_edge(u, cyc[(i + 1) % len(cyc)])
        for i in range(len(cyc)):
            for j in range(i + 2, len(cyc)):
                if (i, j) != (0, len(cyc) - 1):
                    assert not g.has_edge(cyc[i], cyc[j])


def test_is_chordal_k4_and_fan():
    assert is_chordal(gen_named("complete", 4))[0]
    fan = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
    assert is_chordal(fan)[0]


def test_is_chordal_returns_perfect_elimination_order():
    for seed in range(10):
        g = gen_chordal(8, 100 + seed, 3)
        ok, order = is_chordal(g)
        assert ok
        pos = {v: i for i, v in enumerate(order)}
        for v in order:
            later = [w for w in g.adj[v] if pos[w] > pos[v]]
            for i in range(len(later)):
                for j in range(i + 1, len(later)):
                    assert g.has_edge(later[i], later[j])


def test_is_chordal_cycles_and_cycle_certificates():
    for n in range(4, 9):
        ok, witness = is_chordal(gen_named("cycle", n))
        assert not ok
        assert witness.cycle is not None and len(witness.cycle) == n


def test_mirsky_chain_antichain_and_vee():
    chain = make_poset(3, [(0, 1), (0, 2), (1, 2)])
    cover = mirsky_clique_cover(chain)
    assert cover.blocks == ((0,), (1,), (2,))
    anti = make_poset(3, [])
    assert mirsky_clique_cover(anti).blocks == ((0, 1, 2),)
    vee = make_poset(3, [(0, 2), (1, 2)])  # a<c, b<c
    assert mirsky_clique_cover(vee).blocks == ((0, 1), (2,))


def test_mirsky_equals_alpha_and_verifies():
    for seed in range(25):
        p = gen_poset_incomparability(4 + seed % 7, 200 + seed, 0.4)
        cover = mirsky_clique_cover(p)
        g = p.incomparability_graph
        ok, problem = verify_cover(g, cover)
        assert ok, problem
        assert cover.value == max_independent_set(g)[0]


def test_gen_family_dispatch():
    assert gen_family("cycle", 5).m == 5
    assert gen_family("grid", 0, rows=2, cols=2).m == 4
    assert gen_family("er", 6, 3, p=0.5).n == 6
    assert gen_family("poset", 5, 2).n == 5
    with pytest.raises(InputError):
        gen_family("grid", 4)
    with pytest.raises(InputError):
        gen_family("nope", 4)
