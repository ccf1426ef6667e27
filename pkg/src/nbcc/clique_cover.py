"""Clique cover computation: exact, greedy, and the neighborhood minimum.

The clique cover number beta(G) is the minimum number of cliques that
partition V(G); it equals the chromatic number of the complement, so one
exact coloring kernel serves both. beta_tilde(G) is the minimum of
beta over the subgraphs induced by closed neighborhoods -- the quantity the
shallow-minor maximum is built from.

All tie-breaking is by lowest vertex id so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InputError, SizeError
from .graph_core import Graph, induce_masks

EXACT_COVER_CAP = 20


@dataclass(frozen=True)
class CliqueCover:
    """A partition of a target graph's vertices into cliques."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def value(self) -> int:
        return len(self.blocks)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def verify_cover(G: Graph, cover: CliqueCover) -> tuple[bool, Optional[str]]:
    """Check the partition-into-cliques invariants; report the first violation."""
    seen: set[int] = set()
    for i, block in enumerate(cover.blocks):
        if not block:
            return False, f"block {i} is empty"
        for v in block:
            if not 0 <= v < G.n:
                return False, f"block {i} contains out-of-range vertex {v}"
            if v in seen:
                return False, f"vertex {v} appears in more than one block"
            seen.add(v)
        for a in block:
            for b in block:
                if a < b and not G.has_edge(a, b):
                    return False, f"block {i} is not a clique: edge ({a},{b}) missing"
    if len(seen) != G.n:
        missing = min(set(range(G.n)) - seen)
        return False, f"vertex {missing} is not covered"
    return True, None


# -- exact kernel ------------------------------------------------------------
#
# beta(G) = chi(complement(G)). The coloring search below runs on adjacency
# bitmasks: greedy upper bound, greedy-clique lower bound, then depth-first
# branch and bound over color assignments in vertex-id order with the usual
# symmetry break (vertex v may open at most one new color index).

_BETA_CACHE: dict[tuple[int, ...], tuple[int, tuple[tuple[int, ...], ...]]] = {}


def _greedy_coloring(masks: tuple[int, ...]) -> tuple[int, list[int]]:
    n = len(masks)
    colors = [-1] * n
    used = 0
    for v in range(n):
        taken = 0
        for w in range(v):
            if masks[v] >> w & 1:
                taken |= 1 << colors[w]
        c = 0
        while taken >> c & 1:
            c += 1
        colors[v] = c
        used = max(used, c + 1)
    return used, colors


def _greedy_clique_size(masks: tuple[int, ...]) -> int:
    n = len(masks)
    if n == 0:
        return 0
    start = max(range(n), key=lambda v: (bin(masks[v]).count("1"), -v))
    clique = 1
    cand = masks[start]
    while cand:
        v = max((w for w in range(n) if cand >> w & 1),
                key=lambda w: (bin(masks[w] & cand).count("1"), -w))
        clique += 1
        cand &= masks[v]
    return clique


def _chromatic(masks: tuple[int, ...]) -> tuple[int, list[int]]:
    """Exact chromatic number and one optimal coloring of a bitmask graph."""
    n = len(masks)
    if n == 0:
        return 0, []
    ub, greedy = _greedy_coloring(masks)
    lb = _greedy_clique_size(masks)
    if lb >= ub:
        return ub, greedy
    best_k = ub
    best_cols = list(greedy)
    colors = [-1] * n

    def dfs(v: int, used: int) -> None:
        nonlocal best_k, best_cols
        if used >= best_k or best_k == lb:
            return
        if v == n:
            best_k = used
            best_cols = colors.copy()
            return
        taken = 0
        for w in range(v):
            if masks[v] >> w & 1:
                taken |= 1 << colors[w]
        limit = min(used + 1, best_k - 1)
        for c in range(limit):
            if taken >> c & 1:
                continue
            colors[v] = c
            dfs(v + 1, max(used, c + 1))
            colors[v] = -1

    dfs(0, 0)
    return best_k, best_cols


def beta_of_masks(masks: tuple[int, ...]) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Exact clique cover number and an optimal cover, from adjacency bitmasks.

    Memoized globally: the same small graph shows up thousands of times as a
    minor quotient or closed neighborhood.
    """
    hit = _BETA_CACHE.get(masks)
    if hit is not None:
        return hit
    n = len(masks)
    full = (1 << n) - 1
    comp = tuple(full & ~m & ~(1 << v) for v, m in enumerate(masks))
    k, colors = _chromatic(comp)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        groups.setdefault(c, []).append(v)
    blocks = tuple(sorted((tuple(sorted(g)) for g in groups.values())))
    result = (k, blocks)
    _BETA_CACHE[masks] = result
    return result


def exact_clique_cover(G: Graph, cap: int = EXACT_COVER_CAP) -> CliqueCover:
    """Minimum clique cover via exact coloring of the complement.

    Deterministic for a fixed graph. Raises SizeError above ``cap`` vertices;
    use greedy_clique_cover for larger instances.
    """
    if G.n > cap:
        raise SizeError(
            f"exact clique cover capped at n={cap} (got n={G.n}); "
            "use greedy_clique_cover instead")
    _, blocks = beta_of_masks(G.masks)
    return CliqueCover(blocks)


def greedy_cover_masks(masks: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Mask-level greedy cover; see greedy_clique_cover for the growth rule."""
    n = len(masks)
    uncovered = (1 << n) - 1
    blocks = []
    while uncovered:
        v = (uncovered & -uncovered).bit_length() - 1
        block = [v]
        common = masks[v] & uncovered
        while common:
            w = (common & -common).bit_length() - 1
            block.append(w)
            common &= masks[w]
        block.sort()
        for w in block:
            uncovered &= ~(1 << w)
        blocks.append(tuple(block))
    return tuple(blocks)


def greedy_clique_cover(G: Graph) -> CliqueCover:
    """Greedy cover: grow a clique from the lowest uncovered id by repeatedly
    adding the lowest uncovered common neighbor."""
    return CliqueCover(greedy_cover_masks(G.masks))


def _is_clique_mask(masks: tuple[int, ...], mask: int) -> bool:
    mm = mask
    while mm:
        low = mm & -mm
        v = low.bit_length() - 1
        mm ^= low
        if (masks[v] | low) & mask != mask:
            return False
    return True


def neighborhood_cover_masks(masks: tuple[int, ...], x: int, within: int,
                             mode: str = "exact",
                             cap: int = EXACT_COVER_CAP) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Cover of the closed neighborhood of x restricted to ``within``.

    Blocks come back in the ids of ``masks``. Exact mode is optimal; greedy
    mode is an upper bound.
    """
    nb_mask = (masks[x] | 1 << x) & within
    if _is_clique_mask(masks, nb_mask):
        members, _ = _mask_members(nb_mask)
        return 1, (members,)
    ind, members = induce_masks(masks, nb_mask)
    if mode == "exact":
        if len(members) > cap:
            raise SizeError(
                f"closed neighborhood of vertex {x} has {len(members)} vertices, "
                f"above the exact cap {cap}")
        value, blocks = beta_of_masks(ind)
    else:
        blocks = greedy_cover_masks(ind)
        value = len(blocks)
    return value, tuple(tuple(members[i] for i in b) for b in blocks)


def _mask_members(mask: int) -> tuple[tuple[int, ...], int]:
    members = []
    while mask:
        low = mask & -mask
        members.append(low.bit_length() - 1)
        mask ^= low
    return tuple(members), len(members)


def btilde_masks(masks: tuple[int, ...], mode: str = "exact",
                 cap: int = EXACT_COVER_CAP) -> tuple[int, int, tuple[tuple[int, ...], ...]]:
    """Mask-level beta_tilde: (value, witness vertex, cover blocks)."""
    n = len(masks)
    full = (1 << n) - 1
    best = None
    for x in range(n):
        value, blocks = neighborhood_cover_masks(masks, x, full, mode, cap)
        if best is None or value < best[0]:
            best = (value, x, blocks)
            if value == 1:
                break
    assert best is not None
    return best


def beta_tilde(G: Graph, mode: str = "exact",
               cap: int = EXACT_COVER_CAP) -> tuple[int, int, CliqueCover]:
    """Minimum over vertices x of beta(G[N[x]]).

    Returns (value, witness vertex, cover of that closed neighborhood); the
    cover's blocks are in host vertex ids. Ties go to the lowest vertex id.
    In greedy mode the value is only an upper bound per neighborhood.
    """
    if mode not in ("exact", "greedy"):
        raise InputError(f"unknown mode {mode!r}")
    if G.n == 0:
        raise InputError("beta_tilde needs a nonempty graph")
    value, x, blocks = btilde_masks(G.masks, mode, cap)
    return value, x, CliqueCover(blocks)


def peel_masks(masks: tuple[int, ...], mode: str = "exact",
               cap: int = EXACT_COVER_CAP):
    """Neighborhood-peeling cover kernel.

    Repeatedly pick, in the remaining graph, the vertex whose closed
    neighborhood has the smallest clique cover number (ties to the lowest
    id), record an optimal cover of that neighborhood, and delete it. The
    picked vertices form an independent set; the recorded blocks form a
    clique cover of the whole graph.

    Returns (picked vertices, per-iteration block tuples, per-iteration
    cover values).
    """
    n = len(masks)
    remaining = (1 << n) - 1
    picked: list[int] = []
    iterations: list[tuple[tuple[int, ...], ...]] = []
    values: list[int] = []
    while remaining:
        best = None
        rr = remaining
        while rr:
            low = rr & -rr
            x = low.bit_length() - 1
            rr ^= low
            value, blks = neighborhood_cover_masks(masks, x, remaining, mode, cap)
            if best is None or value < best[0]:
                best = (value, x, blks)
                if value == 1:
                    break
        value, x, blks = best
        picked.append(x)
        values.append(value)
        iterations.append(blks)
        remaining &= ~((masks[x] | 1 << x) & remaining)
    return tuple(picked), tuple(iterations), tuple(values)
