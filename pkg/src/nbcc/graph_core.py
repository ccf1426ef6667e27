"""Simple undirected graphs and the primitives everything else builds on.

Vertices are dense integer ids ``0 .. n-1``. A :class:`Graph` is immutable
after construction and safe to share between workers; every operation here is
a pure function of its inputs. Adjacency is kept both as sorted tuples (for
iteration) and as per-vertex integer bitmasks (for the adjacency-test-bound
exact solvers).
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, Optional, Sequence

from .errors import InputError


class Graph:
    """Immutable simple undirected graph.

    Optional per-vertex ``labels`` carry provenance (for example the branch
    set a minor vertex came from) so that solver witnesses stay readable.
    """

    __slots__ = ("n", "adj", "masks", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n) or not (0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in neighbor_sets)
        self.masks = tuple(sum(1 << w for w in s) for s in neighbor_sets)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise InputError(f"expected {n} labels, got {len(labels)}")
        self.labels = labels

    # -- basic accessors ---------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.adj, self.labels) == (other.n, other.adj, other.labels)

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def new_graph(n: int, edges: Iterable[tuple[int, int]],
              labels: Optional[Sequence[str]] = None) -> Graph:
    """Build a simple graph; duplicate edges collapse, self-loops are rejected."""
    return Graph(n, edges, labels)


def graph_from_masks(masks: Sequence[int]) -> Graph:
    """Rebuild a Graph from adjacency bitmasks (assumed symmetric, loop-free)."""
    n = len(masks)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1]
    return Graph(n, edges)


def vertex_set(G: Graph, S: Iterable[int]) -> tuple[int, ...]:
    """Validate and normalize a vertex subset to a sorted duplicate-free tuple."""
    out = []
    seen = set()
    for v in S:
        if not isinstance(v, int) or isinstance(v, bool):
            raise InputError(f"vertex id {v!r} is not an integer")
        if not 0 <= v < G.n:
            raise InputError(f"vertex {v} out of range for n={G.n}")
        if v in seen:
            raise InputError(f"duplicate vertex {v} in vertex set")
        seen.add(v)
        out.append(v)
    return tuple(sorted(out))


def closed_neighborhood(G: Graph, v: int) -> tuple[int, ...]:
    """{v} together with its neighbors, sorted."""
    if not 0 <= v < G.n:
        raise InputError(f"vertex {v} out of range for n={G.n}")
    return tuple(sorted((v,) + G.adj[v]))


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on S, reindexed 0..|S|-1 in sorted order.

    Returns the new graph together with the old-id -> new-id mapping so
    results can be traced back to the host.
    """
    S = vertex_set(G, S)
    mapping = {v: i for i, v in enumerate(S)}
    edges = [(mapping[u], mapping[v])
             for u in S for v in G.adj[u] if u < v and v in mapping]
    labels = tuple(G.labels[v] for v in S) if G.labels is not None else None
    return Graph(len(S), edges, labels), mapping


def complement(G: Graph) -> Graph:
    """Graph on the same vertices whose edges are exactly the non-edges of G."""
    edges = [(u, v) for u in range(G.n) for v in range(u + 1, G.n)
             if not G.masks[u] >> v & 1]
    return Graph(G.n, edges, G.labels)


def _bfs_levels(masks: Sequence[int], start: int, within: int) -> dict[int, int]:
    """Distances from start restricted to the vertex bitmask ``within``."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        reach = masks[u] & within
        while reach:
            low = reach & -reach
            v = low.bit_length() - 1
            reach ^= low
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def radius_within(G: Graph, S: Iterable[int]) -> Optional[int]:
    """Radius of the induced subgraph on S; None when it is disconnected.

    The radius is the smallest eccentricity over candidate centers, with all
    distances measured inside the induced subgraph.
    """
    S = vertex_set(G, S)
    if not S:
        raise InputError("radius_within needs a nonempty vertex set")
    within = sum(1 << v for v in S)
    best = None
    for u in S:
        dist = _bfs_levels(G.masks, u, within)
        if len(dist) != len(S):
            return None
        ecc = max(dist.values())
        if best is None or ecc < best:
            best = ecc
    return best


def diameter_within(G: Graph, S: Iterable[int]) -> Optional[int]:
    """Largest eccentricity inside the induced subgraph on S; None if disconnected."""
    S = vertex_set(G, S)
    if not S:
        raise InputError("diameter_within needs a nonempty vertex set")
    within = sum(1 << v for v in S)
    worst = 0
    for u in S:
        dist = _bfs_levels(G.masks, u, within)
        if len(dist) != len(S):
            return None
        worst = max(worst, max(dist.values()))
    return worst


def induce_masks(masks: Sequence[int], submask: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Mask-level induced subgraph: reindexed bitmasks plus the member list."""
    members = []
    mm = submask
    while mm:
        low = mm & -mm
        members.append(low.bit_length() - 1)
        mm ^= low
    pos = {v: i for i, v in enumerate(members)}
    out = []
    for v in members:
        e = masks[v] & submask
        acc = 0
        while e:
            low = e & -e
            acc |= 1 << pos[low.bit_length() - 1]
            e ^= low
        out.append(acc)
    return tuple(out), tuple(members)


def degeneracy(G: Graph) -> tuple[int, tuple[int, ...]]:
    """Degeneracy via min-degree peeling.

    Returns (value, order) where value is the largest minimum degree over all
    induced subgraphs and order is the peeling sequence. The order certifies
    the value: every vertex has at most ``value`` neighbors later in it, and
    the suffix starting where the peel attained its maximum induces a
    subgraph of minimum degree exactly ``value``.
    """
    remaining = set(range(G.n))
    deg = {v: G.degree(v) for v in remaining}
    order = []
    value = 0
    while remaining:
        v = min(remaining, key=lambda x: (deg[x], x))
        value = max(value, deg[v])
        order.append(v)
        remaining.remove(v)
        for w in G.adj[v]:
            if w in remaining:
                deg[w] -= 1
    return value, tuple(order)


def connected_components(G: Graph) -> list[tuple[int, ...]]:
    """Maximal connected vertex sets, ordered by smallest member."""
    seen = [False] * G.n
    components = []
    full = (1 << G.n) - 1
    for v in range(G.n):
        if seen[v]:
            continue
        comp = sorted(_bfs_levels(G.masks, v, full))
        for u in comp:
            seen[u] = True
        components.append(tuple(comp))
    return components


# -- serialization ---------------------------------------------------------


def graph_to_json_dict(G: Graph) -> dict:
    d: dict = {"n": G.n, "edges": [[u, v] for u, v in G.edges()]}
    if G.labels is not None:
        d["labels"] = list(G.labels)
    return d


def graph_from_json_dict(d: dict) -> Graph:
    try:
        n = d["n"]
        edges = [(int(u), int(v)) for u, v in d["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc
    return Graph(int(n), edges, d.get("labels"))


def dumps_graph(G: Graph) -> str:
    return json.dumps(graph_to_json_dict(G), sort_keys=True) + "\n"


def loads_graph(text: str) -> Graph:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    return graph_from_json_dict(d)


def write_dimacs(G: Graph) -> str:
    """DIMACS edge format with 1-based vertex ids."""
    lines = [f"p edge {G.n} {G.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> Graph:
    """Parse DIMACS edge format; comment lines start with 'c'."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise InputError(f"line {lineno}: bad problem line {line!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise InputError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise InputError(f"line {lineno}: bad edge line {line!r}")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v))
        else:
            raise InputError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise InputError("missing problem line 'p edge n m'")
    return Graph(n, edges)
