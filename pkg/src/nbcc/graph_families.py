"""Generators and recognizers for the graph classes the checks quantify over.

Random generators draw exclusively from :class:`nbcc.rng.SplitMix64` streams
and document their draw order, so instances are bit-reproducible from
(params, seed) on any platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .clique_cover import CliqueCover
from .errors import InputError
from .graph_core import Graph
from .rng import SplitMix64


# -- named families ----------------------------------------------------------


def gen_named(kind: str, *params: int) -> Graph:
    """Named graphs with canonical vertex numbering.

    complete(n), cycle(n >= 3), path(n), star(leaves; center is vertex 0),
    grid(rows, cols), empty(n).
    """
    def need(count):
        if len(params) != count or any(not isinstance(x, int) for x in params):
            raise InputError(f"{kind} expects {count} integer parameter(s)")

    if kind == "complete":
        need(1)
        n = params[0]
        if n < 1:
            raise InputError("complete graph needs n >= 1")
        return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    if kind == "cycle":
        need(1)
        n = params[0]
        if n < 3:
            raise InputError("cycle needs n >= 3")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "path":
        need(1)
        n = params[0]
        if n < 1:
            raise InputError("path needs n >= 1")
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "star":
        need(1)
        s = params[0]
        if s < 1:
            raise InputError("star needs at least one leaf")
        return Graph(s + 1, [(0, i) for i in range(1, s + 1)])
    if kind == "grid":
        need(2)
        rows, cols = params
        if rows < 1 or cols < 1:
            raise InputError("grid needs positive dimensions")
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return Graph(rows * cols, edges)
    if kind == "empty":
        need(1)
        n = params[0]
        if n < 1:
            raise InputError("empty graph needs n >= 1")
        return Graph(n, [])
    raise InputError(f"unknown named family {kind!r}")


def gen_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with a documented stream: one draw per pair (u, v), u < v, in
    lexicographic order; the pair is an edge iff next_float() < p."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must be in [0,1], got {p}")
    if n < 0:
        raise InputError("vertex count must be non-negative")
    rng = SplitMix64(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.next_float() < p]
    return Graph(n, edges)


def gen_chordal(n: int, seed: int, attach_max: int = 3) -> Graph:
    """Random chordal graph by incremental attach-to-clique construction.

    Vertex i >= 1 picks an anchor below(i), greedily builds a clique inside
    the anchor's closed neighborhood (ascending ids, no draws), draws an
    attach size s = 1 + below(min(|K|, attach_max)), and joins to sample(K, s).
    The reverse insertion order is then a perfect elimination order, so the
    output is chordal by construction.
    """
    if n < 1:
        raise InputError("chordal generator needs n >= 1")
    if attach_max < 1:
        raise InputError("attach_max must be at least 1")
    rng = SplitMix64(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    edges = []
    for i in range(1, n):
        a = rng.below(i)
        clique = [a]
        for v in sorted(adj[a]):
            if all(v in adj[w] for w in clique):
                clique.append(v)
        s = 1 + rng.below(min(len(clique), attach_max))
        attach = rng.sample(clique, s)
        for w in attach:
            adj[i].add(w)
            adj[w].add(i)
            edges.append((w, i))
    return Graph(n, edges)


def gen_interval(n: int, seed: int) -> Graph:
    """Random interval graph: per interval two floats in [0,1] (lo = min,
    hi = max), edge iff closed intervals overlap."""
    if n < 1:
        raise InputError("interval generator needs n >= 1")
    rng = SplitMix64(seed)
    spans = []
    for _ in range(n):
        a = rng.next_float()
        b = rng.next_float()
        spans.append((min(a, b), max(a, b)))
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if spans[i][0] <= spans[j][1] and spans[j][0] <= spans[i][1]]
    return Graph(n, edges)


# -- posets and incomparability graphs ----------------------------------------


@dataclass(frozen=True)
class PosetInstance:
    """A strict partial order with its derived incomparability graph.

    The relation is transitively closed; the incomparability graph has an
    edge exactly between unrelated pairs, so its complement carries the
    transitive orientation given by the relation.
    """

    n: int
    relation: frozenset[tuple[int, int]]
    incomparability_graph: Graph

    def to_json_dict(self) -> dict:
        return {"n": self.n, "relation": sorted([a, b] for a, b in self.relation)}


def _validate_relation(n: int, relation) -> frozenset[tuple[int, int]]:
    rel = set()
    for pair in relation:
        a, b = pair
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"relation pair ({a},{b}) out of range for n={n}")
        if a == b:
            raise InputError(f"relation is not irreflexive: ({a},{b})")
        rel.add((a, b))
    for a, b in rel:
        if (b, a) in rel:
            raise InputError(f"relation is not antisymmetric: ({a},{b}) and ({b},{a})")
    for a, b in rel:
        for c, d in rel:
            if b == c and (a, d) not in rel:
                raise InputError(
                    f"relation is not transitive: ({a},{b}),({b},{d}) without ({a},{d})")
    return frozenset(rel)


def make_poset(n: int, relation) -> PosetInstance:
    """Validate a strict order and attach its incomparability graph."""
    if n < 1:
        raise InputError("poset needs n >= 1")
    rel = _validate_relation(n, relation)
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)
             if (a, b) not in rel and (b, a) not in rel]
    return PosetInstance(n, rel, Graph(n, edges))


def gen_poset_incomparability(n: int, seed: int, edge_prob: float) -> PosetInstance:
    """Random poset: shuffle 0..n-1 into a linear order (n-1 draws), relate
    each forward pair with probability edge_prob (one draw per pair, positions
    in lexicographic order), then close transitively."""
    if n < 1:
        raise InputError("poset generator needs n >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise InputError(f"edge probability must be in [0,1], got {edge_prob}")
    rng = SplitMix64(seed)
    order = list(range(n))
    rng.shuffle(order)
    closed = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next_float() < edge_prob:
                closed[order[i]][order[j]] = True
    for k in range(n):
        for a in range(n):
            if closed[a][k]:
                row_k = closed[k]
                row_a = closed[a]
                for b in range(n):
                    if row_k[b]:
                        row_a[b] = True
    relation = [(a, b) for a in range(n) for b in range(n) if closed[a][b]]
    return make_poset(n, relation)


# -- chordality ----------------------------------------------------------------


@dataclass(frozen=True)
class ChordlessWitness:
    """Failure evidence from the chordality check.

    ``vertex`` is the maximum-cardinality-search vertex whose earlier
    neighbors ``pair`` are non-adjacent; ``cycle`` is a chordless cycle of
    length >= 4 through them when one could be extracted.
    """

    vertex: int
    pair: tuple[int, int]
    cycle: Optional[tuple[int, ...]]


def is_chordal(G: Graph) -> tuple[bool, Union[tuple[int, ...], ChordlessWitness]]:
    """Maximum cardinality search chordality test.

    On success returns (True, perfect elimination order). On failure returns
    (False, witness) with the violating vertex pair and, when possible, an
    extracted chordless cycle as a diagnostic.
    """
    n = G.n
    selected: list[int] = []
    in_sel = [False] * n
    weight = [0] * n
    for _ in range(n):
        v = max((u for u in range(n) if not in_sel[u]),
                key=lambda u: (weight[u], -u))
        selected.append(v)
        in_sel[v] = True
        for w in G.adj[v]:
            if not in_sel[w]:
                weight[w] += 1
    pos = {v: i for i, v in enumerate(selected)}
    for k, v in enumerate(selected):
        earlier = [w for w in G.adj[v] if pos[w] < k]
        for i in range(len(earlier)):
            for j in range(i + 1, len(earlier)):
                x, y = earlier[i], earlier[j]
                if not G.has_edge(x, y):
                    return False, ChordlessWitness(v, (x, y), _chordless_cycle(G, v, x, y))
    return True, tuple(reversed(selected))


def _chordless_cycle(G: Graph, v: int, x: int, y: int) -> Optional[tuple[int, ...]]:
    """Best-effort chordless cycle through v, x, ..., y.

    Looks for a shortest x-y path avoiding v and all of v's other neighbors;
    shortest-ness keeps the path chordless, and v contributes no chord since
    only x and y among its neighbors survive.
    """
    blocked = set(G.adj[v]) | {v}
    blocked.discard(x)
    blocked.discard(y)
    prev = {x: None}
    queue = [x]
    while queue:
        nxt = []
        for u in queue:
            for w in G.adj[u]:
                if w in blocked or w in prev:
                    continue
                prev[w] = u
                if w == y:
                    path = [y]
                    while path[-1] is not None:
                        path.append(prev[path[-1]])
                    path.pop()
                    path.reverse()
                    return (v, *path)
                nxt.append(w)
        queue = nxt
    return None


# -- Mirsky layering -----------------------------------------------------------


def mirsky_clique_cover(P: PosetInstance) -> CliqueCover:
    """Layered antichain cover of the incomparability graph.

    Layer 0 holds the minimal elements, layer i+1 the elements minimal after
    removing layers 0..i. Each layer is an antichain, hence a clique of the
    incomparability graph, and the layer count equals the longest chain
    length, which is the independence number of that graph.
    """
    rel = _validate_relation(P.n, P.relation)
    below: list[set[int]] = [set() for _ in range(P.n)]
    for a, b in rel:
        below[b].add(a)
    remaining = set(range(P.n))
    blocks = []
    while remaining:
        layer = tuple(sorted(v for v in remaining if not (below[v] & remaining)))
        blocks.append(layer)
        remaining.difference_update(layer)
    return CliqueCover(tuple(blocks))


# -- unified family entry point -------------------------------------------------

FAMILY_NAMES = ("complete", "cycle", "path", "star", "grid", "empty",
                "er", "chordal", "interval", "poset")


def gen_family(family: str, n: int, seed: int = 0, *, p: float = 0.5,
               edge_prob: float = 0.4, attach_max: int = 3,
               rows: Optional[int] = None, cols: Optional[int] = None
               ) -> Union[Graph, PosetInstance]:
    """Dispatch on a family name; used by the CLI and the fuzzing corpus."""
    if family in ("complete", "cycle", "path", "star", "empty"):
        return gen_named(family, n)
    if family == "grid":
        if rows is None or cols is None:
            raise InputError("grid family needs rows and cols")
        return gen_named("grid", rows, cols)
    if family == "er":
        return gen_erdos_renyi(n, p, seed)
    if family == "chordal":
        return gen_chordal(n, seed, attach_max)
    if family == "interval":
        return gen_interval(n, seed)
    if family == "poset":
        return gen_poset_incomparability(n, seed, edge_prob)
    raise InputError(f"unknown family {family!r}")


def poset_from_json_dict(d: dict) -> PosetInstance:
    try:
        n = int(d["n"])
        relation = [(int(a), int(b)) for a, b in d["relation"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed poset JSON: {exc}") from exc
    return make_poset(n, relation)


def dumps_poset(P: PosetInstance) -> str:
    return json.dumps(P.to_json_dict(), sort_keys=True) + "\n"
