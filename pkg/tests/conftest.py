"""Shared brute-force oracles, kept independent of the library's solvers."""

from itertools import combinations

import pytest

from nbcc.graph_core import Graph


def set_partitions(items):
    """All partitions of a sequence into unordered nonempty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def brute_force_beta(G: Graph) -> int:
    """Minimum clique partition size by exhausting all set partitions."""
    best = G.n
    for part in set_partitions(range(G.n)):
        if len(part) >= best:
            continue
        if all(G.has_edge(a, b) for block in part
               for a, b in combinations(block, 2)):
            best = len(part)
    return best if G.n else 0


def brute_force_alpha(G: Graph) -> int:
    """Maximum independent set size by subset dynamic programming."""
    n = G.n
    if n == 0:
        return 0
    masks = G.masks
    indep = bytearray(1 << n)
    indep[0] = 1
    best = 0
    for m in range(1, 1 << n):
        low = m & -m
        rest = m ^ low
        if indep[rest] and not masks[low.bit_length() - 1] & rest:
            indep[m] = 1
            pc = bin(m).count("1")
            if pc > best:
                best = pc
    return best


def oracle_distances(G: Graph, members):
    """All-pairs distances inside the induced subgraph, by Floyd-Warshall."""
    INF = float("inf")
    members = list(members)
    idx = {v: i for i, v in enumerate(members)}
    k = len(members)
    dist = [[0 if i == j else INF for j in range(k)] for i in range(k)]
    for u in members:
        for v in G.adj[u]:
            if v in idx:
                dist[idx[u]][idx[v]] = 1
    for m in range(k):
        for i in range(k):
            for j in range(k):
                if dist[i][m] + dist[m][j] < dist[i][j]:
                    dist[i][j] = dist[i][m] + dist[m][j]
    return dist


def oracle_radius(G: Graph, members):
    """Radius of the induced subgraph, None when disconnected."""
    dist = oracle_distances(G, members)
    eccs = [max(row) for row in dist]
    best = min(eccs) if eccs else None
    return None if best == float("inf") else best


def brute_force_minor_families(G: Graph, t: int):
    """Every family of disjoint valid branch sets, as a frozenset of tuples."""
    valid_sets = []
    for size in range(1, G.n + 1):
        for combo in combinations(range(G.n), size):
            r = oracle_radius(G, combo)
            if r is not None and r <= t:
                valid_sets.append(combo)
    families = set()

    def grow(used, chosen, start):
        if chosen:
            families.add(frozenset(chosen))
        for i in range(start, len(valid_sets)):
            s = valid_sets[i]
            if used.isdisjoint(s):
                grow(used | set(s), chosen + [s], i + 1)

    grow(set(), [], 0)
    return families


@pytest.fixture
def er_corpus():
    """A small deterministic mixed-density corpus for property tests."""
    from nbcc.graph_families import gen_erdos_renyi

    graphs = []
    for i in range(24):
        n = 4 + i % 5
        p = (0.25, 0.5, 0.75)[i % 3]
        graphs.append(gen_erdos_renyi(n, p, 1000 + i))
    return graphs
