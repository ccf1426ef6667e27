"""Exact independence numbers and experimental alpha-measure separators.

A separator here is a vertex set S whose removal leaves components C with
alpha(C) <= alpha(G)/2; its quality is alpha(S). The strategies are
heuristics that measure what they achieve -- they certify nothing asymptotic.
All alpha comparisons are exact integer arithmetic (2*alpha(C) <= alpha(G)).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .clique_cover import btilde_masks
from .errors import InputError, SizeError
from .graph_core import Graph, induce_masks, vertex_set

MIS_CAP = 50


# -- exact maximum independent set --------------------------------------------


def _greedy_cover_count(masks: Sequence[int], sub: int) -> int:
    count = 0
    uncovered = sub
    while uncovered:
        v = (uncovered & -uncovered).bit_length() - 1
        common = masks[v] & uncovered
        block = 1 << v
        while common:
            w = (common & -common).bit_length() - 1
            block |= 1 << w
            common &= masks[w]
        uncovered &= ~block
        count += 1
    return count


def _greedy_indep(masks: Sequence[int], sub: int) -> int:
    """Min-degree greedy independent set inside ``sub``, as a bitmask."""
    chosen = 0
    residual = sub
    while residual:
        v = None
        best_deg = None
        mm = residual
        while mm:
            low = mm & -mm
            u = low.bit_length() - 1
            mm ^= low
            deg = (masks[u] & residual).bit_count()
            if best_deg is None or deg < best_deg:
                best_deg = deg
                v = u
        chosen |= 1 << v
        residual &= ~(masks[v] | 1 << v)
    return chosen


def _mis_masks(masks: Sequence[int], sub: int) -> tuple[int, int]:
    """Exact maximum independent set within the bitmask ``sub``.

    Branch and bound: branch on a maximum-degree vertex (in first), bound by
    a greedy clique cover of the residue (each clique contributes at most
    one vertex). Returns (size, witness bitmask), deterministically.
    """
    seed = _greedy_indep(masks, sub)
    best = [seed.bit_count(), seed]

    def rec(residual: int, size: int, current: int) -> None:
        if residual == 0:
            if size > best[0]:
                best[0] = size
                best[1] = current
            return
        if size + residual.bit_count() <= best[0]:
            return
        v = None
        best_deg = -1
        mm = residual
        while mm:
            low = mm & -mm
            u = low.bit_length() - 1
            mm ^= low
            deg = (masks[u] & residual).bit_count()
            if deg > best_deg:
                best_deg = deg
                v = u
        if best_deg == 0:
            size += residual.bit_count()
            if size > best[0]:
                best[0] = size
                best[1] = current | residual
            return
        if size + _greedy_cover_count(masks, residual) <= best[0]:
            return
        rec(residual & ~(masks[v] | 1 << v), size + 1, current | 1 << v)
        rec(residual & ~(1 << v), size, current)

    rec(sub, 0, 0)
    return best[0], best[1]


def max_independent_set(G: Graph, cap: int = MIS_CAP) -> tuple[int, tuple[int, ...]]:
    """Exact alpha(G) with a witness set; SizeError above ``cap`` vertices."""
    if G.n > cap:
        raise SizeError(f"exact independent set capped at n={cap} (got {G.n})")
    size, mask = _mis_masks(G.masks, (1 << G.n) - 1)
    witness = tuple(v for v in range(G.n) if mask >> v & 1)
    return size, witness


def alpha_of_masks(masks: Sequence[int]) -> int:
    return _mis_masks(masks, (1 << len(masks)) - 1)[0]


def alpha_measure(G: Graph, A: Iterable[int], cap: int = MIS_CAP) -> int:
    """alpha of the subgraph induced on A (0 for the empty set)."""
    A = vertex_set(G, A)
    if not A:
        return 0
    if len(A) > cap:
        raise SizeError(f"exact independent set capped at n={cap} (got {len(A)})")
    ind, _ = induce_masks(G.masks, sum(1 << v for v in A))
    return alpha_of_masks(ind)


# -- separator search ----------------------------------------------------------


@dataclass(frozen=True)
class SeparatorResult:
    """Outcome of one separator search, with exact alpha bookkeeping."""

    S: tuple[int, ...]
    alpha_G: int
    alpha_S: int
    component_alphas: tuple[int, ...]
    strategy: str
    exponent: Optional[float]
    qualified: bool

    def to_json_dict(self) -> dict:
        return {
            "S": list(self.S),
            "alpha_G": self.alpha_G,
            "alpha_S": self.alpha_S,
            "component_alphas": list(self.component_alphas),
            "strategy": self.strategy,
            "exponent": self.exponent,
            "qualified": self.qualified,
        }


def _components_in_mask(masks: Sequence[int], sub: int) -> list[int]:
    comps = []
    left = sub
    while left:
        start = left & -left
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            ff = frontier
            while ff:
                low = ff & -ff
                nxt |= masks[low.bit_length() - 1]
                ff ^= low
            frontier = nxt & sub & ~seen
            seen |= frontier
        comps.append(seen)
        left &= ~seen
    return comps


def _alpha_in_mask(masks: Sequence[int], sub: int) -> int:
    if sub == 0:
        return 0
    ind, _ = induce_masks(masks, sub)
    return alpha_of_masks(ind)


def _exponent(alpha_G: int, alpha_S: int) -> Optional[float]:
    if alpha_G < 2 or alpha_S < 1:
        return None
    return math.log(alpha_S) / math.log(alpha_G)


def _build_result(G: Graph, s_mask: int, alpha_G: int, strategy: str) -> SeparatorResult:
    masks = G.masks
    full = (1 << G.n) - 1
    comp_alphas = tuple(_alpha_in_mask(masks, c)
                        for c in _components_in_mask(masks, full & ~s_mask))
    alpha_S = _alpha_in_mask(masks, s_mask)
    qualified = all(2 * a <= alpha_G for a in comp_alphas)
    S = tuple(v for v in range(G.n) if s_mask >> v & 1)
    return SeparatorResult(S=S, alpha_G=alpha_G, alpha_S=alpha_S,
                           component_alphas=comp_alphas, strategy=strategy,
                           exponent=_exponent(alpha_G, alpha_S),
                           qualified=qualified)


SEPARATOR_STRATEGIES = ("degree-peel", "neighborhood-peel")


def find_alpha_separator(G: Graph, strategy: str = "degree-peel",
                         cap: int = MIS_CAP) -> SeparatorResult:
    """Heuristic separator growth until every component has alpha <= alpha(G)/2.

    degree-peel moves one maximum-degree vertex of the largest-alpha
    component into S per round; neighborhood-peel moves the whole closed
    neighborhood of that component's beta_tilde witness vertex. Exact alpha
    accounting, no asymptotic claim.
    """
    if strategy not in SEPARATOR_STRATEGIES:
        raise InputError(f"unknown separator strategy {strategy!r}")
    if G.n > cap:
        raise SizeError(f"separator search capped at n={cap} (got {G.n})")
    masks = G.masks
    full = (1 << G.n) - 1
    alpha_G = _alpha_in_mask(masks, full)
    s_mask = 0
    while True:
        comps = _components_in_mask(masks, full & ~s_mask)
        alphas = [_alpha_in_mask(masks, c) for c in comps]
        offenders = [(a, i) for i, a in enumerate(alphas) if 2 * a > alpha_G]
        if not offenders:
            break
        target = comps[max(offenders, key=lambda ai: (ai[0], -ai[1]))[1]]
        if strategy == "degree-peel":
            v = None
            best_deg = -1
            mm = target
            while mm:
                low = mm & -mm
                u = low.bit_length() - 1
                mm ^= low
                deg = (masks[u] & target).bit_count()
                if deg > best_deg:
                    best_deg = deg
                    v = u
            s_mask |= 1 << v
        else:
            ind, members = induce_masks(masks, target)
            _, x_local, _ = btilde_masks(ind)
            x = members[x_local]
            s_mask |= (masks[x] | 1 << x) & target
    return _build_result(G, s_mask, alpha_G, strategy)


def geometric_cut_separator(scene, axis: int = 0, sweep_steps: int = 32,
                            cap: int = MIS_CAP) -> SeparatorResult:
    """Axis-aligned sweep separator for a geometric scene.

    S is the set of objects meeting a slab of width equal to the median
    object size centered at the cut; among cuts where both sides satisfy
    alpha(side) <= alpha(G)/2 the one minimizing alpha(S) wins. When no cut
    qualifies the best-effort cut is returned with qualified=False.
    """
    from .geometry import bounding_box, intersection_graph, object_size

    G = intersection_graph(scene)
    if G.n > cap:
        raise SizeError(f"separator search capped at n={cap} (got {G.n})")
    if G.n == 0:
        raise InputError("scene has no objects")
    if not 0 <= axis < scene.d:
        raise InputError(f"axis {axis} out of range for dimension {scene.d}")
    if sweep_steps < 1:
        raise InputError("sweep_steps must be positive")
    masks = G.masks
    full = (1 << G.n) - 1
    alpha_G = _alpha_in_mask(masks, full)
    sizes = sorted(object_size(o) for o in scene.objects)
    width = sizes[(len(sizes) - 1) // 2]
    spans = []
    for obj in scene.objects:
        low, high = bounding_box(obj)
        spans.append((low[axis], high[axis]))
    lo = min(s[0] for s in spans)
    hi = max(s[1] for s in spans)
    candidates = []
    for k in range(sweep_steps):
        cut = lo + (k + 0.5) * (hi - lo) / sweep_steps
        slab_lo, slab_hi = cut - width / 2, cut + width / 2
        s_mask = 0
        left_mask = 0
        right_mask = 0
        for i, (a, b) in enumerate(spans):
            if b < slab_lo:
                left_mask |= 1 << i
            elif a > slab_hi:
                right_mask |= 1 << i
            else:
                s_mask |= 1 << i
        a_left = _alpha_in_mask(masks, left_mask)
        a_right = _alpha_in_mask(masks, right_mask)
        a_s = _alpha_in_mask(masks, s_mask)
        qualifies = 2 * a_left <= alpha_G and 2 * a_right <= alpha_G
        candidates.append((qualifies, max(a_left, a_right), a_s, k, s_mask))
    qualifying = [c for c in candidates if c[0]]
    if qualifying:
        _, _, _, _, s_mask = min(qualifying, key=lambda c: (c[2], c[3]))
    else:
        _, _, _, _, s_mask = min(candidates, key=lambda c: (c[1], c[2], c[3]))
    return _build_result(G, s_mask, alpha_G, f"geometric-cut:axis{axis}")


# -- conjecture exploration ------------------------------------------------------


@dataclass(frozen=True)
class ConjectureInstance:
    instance_id: str
    family: str
    graph: Graph
    t: int


CONJECTURE_COLUMNS = ("instance_id", "family", "n", "t", "strategy", "alpha_G",
                      "alpha_S", "max_component_alpha", "exponent", "qualified")


def conjecture_report(instances: Sequence[ConjectureInstance],
                      strategies: Sequence[str] = SEPARATOR_STRATEGIES,
                      cap: int = MIS_CAP) -> tuple[list[dict], list[tuple[str, str]]]:
    """One row per instance per strategy; exploratory data, no verdicts.

    Instances with alpha(G) < 2 degenerate the target (alpha(C) <= alpha/2
    forces empty components) and are skipped; skips are returned alongside
    the rows as (instance_id, reason).
    """
    rows = []
    skipped = []
    for inst in instances:
        try:
            alpha_G, _ = max_independent_set(inst.graph, cap)
        except SizeError as exc:
            skipped.append((inst.instance_id, str(exc)))
            continue
        if alpha_G < 2:
            skipped.append((inst.instance_id, f"alpha(G)={alpha_G} degenerates the target"))
            continue
        for strategy in strategies:
            result = find_alpha_separator(inst.graph, strategy, cap)
            rows.append({
                "instance_id": inst.instance_id,
                "family": inst.family,
                "n": inst.graph.n,
                "t": inst.t,
                "strategy": strategy,
                "alpha_G": result.alpha_G,
                "alpha_S": result.alpha_S,
                "max_component_alpha": max(result.component_alphas, default=0),
                "exponent": result.exponent,
                "qualified": result.qualified,
            })
    return rows, skipped


def conjecture_csv(rows: Sequence[dict]) -> str:
    """Fixed-column CSV for conjecture_report rows."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CONJECTURE_COLUMNS)
    for row in rows:
        exponent = row["exponent"]
        writer.writerow([
            row["instance_id"], row["family"], row["n"], row["t"],
            row["strategy"], row["alpha_G"], row["alpha_S"],
            row["max_component_alpha"],
            "" if exponent is None else f"{exponent:.6f}",
            "true" if row["qualified"] else "false",
        ])
    return buf.getvalue()
