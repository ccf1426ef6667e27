"""Shallow minor machinery: models, quotients, enumeration, and the derived
maximum parameters.

A depth-t minor model of a host graph is a family of pairwise disjoint branch
sets, each inducing a connected subgraph of radius at most t; vertices outside
every branch set are deleted, and edges between branch sets survive
contraction. Enumerating all models of a small host gives exact values for
the max-over-minors parameters:

* grad(G, t): largest edge density |E(H)|/|V(H)| of any quotient (an exact
  ``fractions.Fraction``),
* grad_hat(G, t): largest minimum degree of any quotient,
* beta_hat(G, t): largest neighborhood clique cover minimum (beta_tilde) of
  any quotient -- the central parameter of this package,
* largest clique / star quotients.

Everything here is exponential by design and guarded by caps (default host
size 8, hard limit 10, depth limit 2 unless raised).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Callable, Iterator, Optional

from .clique_cover import CliqueCover, btilde_masks
from .errors import InputError, ModelError, SizeError
from .graph_core import Graph

ENUM_DEFAULT_CAP = 8
ENUM_HARD_CAP = 10
DEPTH_DEFAULT_CAP = 2

# Permutation budget for canonical forms: below this the canonical adjacency
# bitstring is cheaper than re-evaluating a duplicate quotient, above it the
# labeled-key memo alone carries the load (duplicates are just re-evaluated).
_CANON_PERM_LIMIT = 720


@dataclass(frozen=True)
class MinorModel:
    """A witness that a specific quotient is a depth-t minor of the host."""

    host: Graph
    t: int
    branch_sets: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {"t": self.t, "branch_sets": [list(b) for b in self.branch_sets]}

    def __repr__(self):
        sets = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.branch_sets)
        return f"MinorModel(t={self.t}, [{sets}])"


def make_minor_model(host: Graph, t: int, branch_sets) -> MinorModel:
    """Normalize branch sets (members sorted, sets ordered by minimum)."""
    norm = tuple(sorted(tuple(sorted(b)) for b in branch_sets))
    return MinorModel(host, t, norm)


def validate_model(model: MinorModel) -> list[str]:
    """Return the list of invariant violations (empty means the model is valid)."""
    from .graph_core import radius_within

    host = model.host
    violations = []
    if model.t < 0:
        violations.append(f"depth t={model.t} is negative")
    seen: dict[int, int] = {}
    for i, b in enumerate(model.branch_sets):
        if not b:
            violations.append(f"branch set {i} is empty")
            continue
        bad = False
        for v in b:
            if not isinstance(v, int) or not 0 <= v < host.n:
                violations.append(f"branch set {i} has out-of-range vertex {v}")
                bad = True
                break
            if v in seen and seen[v] != i:
                violations.append(
                    f"branch sets {seen[v]} and {i} overlap at vertex {v}")
                bad = True
                break
            seen[v] = i
        if bad:
            continue
        if len(set(b)) != len(b):
            violations.append(f"branch set {i} has duplicate vertices")
            continue
        r = radius_within(host, b)
        if r is None:
            violations.append(f"branch set {i} {list(b)} is disconnected")
        elif model.t >= 0 and r > model.t:
            violations.append(
                f"branch set {i} {list(b)} has radius {r} > t={model.t}")
    return violations


def _branch_label(host: Graph, b: tuple[int, ...]) -> str:
    tokens = [host.labels[v] if host.labels is not None else str(v) for v in b]
    return "{" + ",".join(tokens) + "}"


def _quotient_masks(host_masks, branch_masks: list[int]) -> tuple[int, ...]:
    k = len(branch_masks)
    nbr = []
    for bm in branch_masks:
        acc = 0
        mm = bm
        while mm:
            low = mm & -mm
            acc |= host_masks[low.bit_length() - 1]
            mm ^= low
        nbr.append(acc)
    out = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if nbr[i] & branch_masks[j]:
                out[i] |= 1 << j
                out[j] |= 1 << i
    return tuple(out)


def _branch_masks(model: MinorModel) -> list[int]:
    return [sum(1 << v for v in b) for b in model.branch_sets]


def quotient(model: MinorModel) -> Graph:
    """Contract each branch set to one vertex; cross edges survive.

    Quotient vertex i corresponds to branch_sets[i] and is labeled with the
    branch set's member list.
    """
    violations = validate_model(model)
    if violations:
        raise ModelError("invalid minor model: " + "; ".join(violations))
    qmasks = _quotient_masks(model.host.masks, _branch_masks(model))
    k = len(qmasks)
    edges = [(i, j) for i in range(k) for j in range(i + 1, k) if qmasks[i] >> j & 1]
    labels = [_branch_label(model.host, b) for b in model.branch_sets]
    return Graph(k, edges, labels)


# -- enumeration -------------------------------------------------------------


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _radius_of_mask(masks, smask: int) -> Optional[int]:
    """Radius of the induced subgraph on the bitmask, None when disconnected."""
    size = smask.bit_count()
    best = None
    mm = smask
    while mm:
        low = mm & -mm
        mm ^= low
        frontier = low
        seen = low
        ecc = 0
        while seen != smask:
            nxt = 0
            ff = frontier
            while ff:
                fl = ff & -ff
                nxt |= masks[fl.bit_length() - 1]
                ff ^= fl
            nxt &= smask & ~seen
            if not nxt:
                return None
            seen |= nxt
            frontier = nxt
            ecc += 1
        if best is None or ecc < best:
            best = ecc
    return best if size else None


def _connected_sets_from(masks, root: int, pool: int) -> list[int]:
    """All connected sets containing root with the other members inside pool."""
    out = []

    def grow(smask: int, forbidden: int) -> None:
        out.append(smask)
        nbr = 0
        mm = smask
        while mm:
            low = mm & -mm
            nbr |= masks[low.bit_length() - 1]
            mm ^= low
        ext = nbr & pool & ~smask & ~forbidden
        f = forbidden
        while ext:
            low = ext & -ext
            ext ^= low
            grow(smask | low, f)
            f |= low

    grow(1 << root, 0)
    return out


def enumerate_minor_models(G: Graph, t: int, max_n: int = ENUM_DEFAULT_CAP,
                           max_t: int = DEPTH_DEFAULT_CAP) -> Iterator[MinorModel]:
    """Yield every valid depth-t minor model of G exactly once.

    Models stream in lexicographic order of their branch-set tuples (branch
    sets ordered by smallest member). Deleted vertices are simply the ones no
    branch set includes, so every nonempty family of disjoint valid branch
    sets appears. Raises SizeError above the caps.
    """
    if t < 0:
        raise InputError(f"depth t must be non-negative, got {t}")
    cap = min(max_n, ENUM_HARD_CAP)
    if G.n > cap:
        raise SizeError(
            f"minor enumeration capped at n={cap} (host has {G.n} vertices)")
    if t > max_t:
        raise SizeError(f"minor enumeration capped at t={max_t} (got t={t})")
    n = G.n
    masks = G.masks
    valid_sets: dict[tuple[int, int], list[tuple[int, tuple[int, ...]]]] = {}

    def sets_for(root: int, pool: int):
        key = (root, pool)
        hit = valid_sets.get(key)
        if hit is None:
            if t == 0:
                hit = [(1 << root, (root,))]
            else:
                found = []
                for smask in _connected_sets_from(masks, root, pool):
                    r = _radius_of_mask(masks, smask)
                    if r is not None and r <= t:
                        found.append((smask, _mask_to_tuple(smask)))
                found.sort(key=lambda item: item[1])
                hit = found
            valid_sets[key] = hit
        return hit

    def extend(used: int, start: int,
               prefix: tuple[tuple[int, ...], ...]) -> Iterator[MinorModel]:
        for m in range(start, n):
            if used >> m & 1:
                continue
            pool = ~used & ~((1 << (m + 1)) - 1) & ((1 << n) - 1)
            for smask, members in sets_for(m, pool):
                family = prefix + (members,)
                yield MinorModel(G, t, family)
                yield from extend(used | smask, m + 1, family)

    yield from extend(0, 0, ())


# -- per-quotient evaluation with memoization --------------------------------

_VALUE_CACHE: dict[tuple, object] = {}
_CANON_KEY_CACHE: dict[tuple[int, ...], object] = {}


def canonical_key(masks: tuple[int, ...]) -> Optional[tuple]:
    """Isomorphism-invariant key for a small bitmask graph, or None.

    Complete and edgeless graphs get constant-time keys. Otherwise the key is
    the minimum adjacency bitstring over vertex orderings compatible with a
    degree-based color refinement; when the refinement leaves more than
    _CANON_PERM_LIMIT compatible orderings the function gives up and returns
    None (callers then fall back to exact-labeled caching).
    """
    k = len(masks)
    full = (1 << k) - 1
    if all(m == full ^ (1 << v) for v, m in enumerate(masks)):
        return ("K", k)
    if all(m == 0 for m in masks):
        return ("E", k)
    colors = tuple(m.bit_count() for m in masks)
    while True:
        sigs = []
        for v in range(k):
            nb = masks[v]
            sig = []
            while nb:
                low = nb & -nb
                sig.append(colors[low.bit_length() - 1])
                nb ^= low
            sigs.append((colors[v], tuple(sorted(sig))))
        uniq = sorted(set(sigs))
        fresh = tuple(uniq.index(s) for s in sigs)
        if fresh == colors:
            break
        colors = fresh
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    count = 1
    for cls in ordered:
        count *= factorial(len(cls))
        if count > _CANON_PERM_LIMIT:
            return None
    best = None
    for combo in product(*(permutations(cls) for cls in ordered)):
        order = [v for cls in combo for v in cls]
        bits = 0
        for i in range(k):
            mi = masks[order[i]]
            for j in range(i + 1, k):
                bits = bits << 1 | (mi >> order[j] & 1)
        if best is None or bits < best:
            best = bits
    sizes = tuple(len(cls) for cls in ordered)
    return ("C", k, sizes, best)


def _canon_of(qmasks: tuple[int, ...]):
    if len(qmasks) > 8:
        return None
    hit = _CANON_KEY_CACHE.get(qmasks)
    if hit is None and qmasks not in _CANON_KEY_CACHE:
        hit = canonical_key(qmasks)
        _CANON_KEY_CACHE[qmasks] = hit
    return hit


def _alpha_masks_small(masks: tuple[int, ...]) -> int:
    """Exact independence number by subset DP; meant for <= ~16 vertices."""
    k = len(masks)
    indep = bytearray(1 << k)
    indep[0] = 1
    best = 0
    for m in range(1, 1 << k):
        low = m & -m
        rest = m ^ low
        if indep[rest] and not masks[low.bit_length() - 1] & rest:
            indep[m] = 1
            pc = m.bit_count()
            if pc > best:
                best = pc
    return best


def _density_of(qmasks) -> Fraction:
    k = len(qmasks)
    edges = sum(m.bit_count() for m in qmasks) // 2
    return Fraction(edges, k)


def _mindeg_of(qmasks) -> int:
    return min(m.bit_count() for m in qmasks)


def _clique_size_of(qmasks) -> int:
    """k when the quotient is complete, else 0."""
    k = len(qmasks)
    full = (1 << k) - 1
    return k if all(m == full ^ (1 << v) for v, m in enumerate(qmasks)) else 0


def _star_leaves_of(qmasks) -> int:
    """s when the quotient is a star with s >= 1 leaves, else 0.

    A graph with k-1 edges and a vertex of degree k-1 has all its edges at
    that vertex, so the rest is independent: exactly the star on k-1 leaves
    (k=2 gives the single edge, the 1-leaf star).
    """
    k = len(qmasks)
    if k < 2:
        return 0
    edges = sum(m.bit_count() for m in qmasks) // 2
    if edges != k - 1 or max(m.bit_count() for m in qmasks) != k - 1:
        return 0
    return k - 1


def quotient_value(qmasks: tuple[int, ...], name: str,
                   fn: Callable[[tuple[int, ...]], object],
                   invariant: bool = True):
    """Evaluate fn on a labeled quotient with two-level memoization.

    The first level is keyed by the exact adjacency bitmasks; the second by
    the canonical key, so isomorphic relabelings are skipped when the
    canonical form is affordable. Only values with ``invariant=True`` may use
    the canonical level (vertex-id-dependent quantities, like the outcome of
    a tie-breaking algorithm, must not cross relabelings). Names act as cache
    keys and must be used consistently for the same semantic value.
    """
    key = (qmasks, name)
    hit = _VALUE_CACHE.get(key)
    if hit is not None or key in _VALUE_CACHE:
        return hit
    canon = _canon_of(qmasks) if invariant else None
    if canon is not None:
        ckey = ("canon", canon, name)
        chit = _VALUE_CACHE.get(ckey)
        if chit is not None or ckey in _VALUE_CACHE:
            _VALUE_CACHE[key] = chit
            return chit
        value = fn(qmasks)
        _VALUE_CACHE[key] = value
        _VALUE_CACHE[ckey] = value
        return value
    value = fn(qmasks)
    _VALUE_CACHE[key] = value
    return value


@dataclass
class ScanOutcome:
    """Aggregated results of one pass over all depth-t minor models."""

    models: int
    maxima: dict
    alls: dict
    btilde_best: Optional[tuple]


def scan_minors(G: Graph, t: int, *,
                maxima: Optional[dict[str, Callable]] = None,
                alls: Optional[dict[str, Callable]] = None,
                btilde_mode: Optional[str] = None,
                non_invariant: frozenset[str] = frozenset(),
                max_n: int = ENUM_DEFAULT_CAP,
                max_t: int = DEPTH_DEFAULT_CAP) -> ScanOutcome:
    """One streaming pass over all models, reducing per-quotient values.

    ``maxima`` maps names to per-quotient value functions reduced by max;
    ``alls`` maps names to boolean predicates reduced by conjunction (with
    the first violating model kept as witness). ``btilde_mode`` switches on
    the beta_tilde maximum including its vertex/cover witness. Objectives
    listed in ``non_invariant`` depend on vertex ids and skip the
    isomorphism-level cache. Witness ties go to the first model in
    enumeration order, which is the lexicographically least one.
    """
    if G.n == 0:
        raise InputError("minor scan needs a nonempty host graph")
    maxima = maxima or {}
    alls = alls or {}
    best_max: dict[str, tuple] = {}
    all_state: dict[str, tuple] = {name: (True, None) for name in alls}
    btilde_best = None
    bt_name = f"btilde:{btilde_mode}" if btilde_mode else None
    models = 0
    host_masks = G.masks
    for model in enumerate_minor_models(G, t, max_n=max_n, max_t=max_t):
        models += 1
        qmasks = _quotient_masks(host_masks, _branch_masks(model))
        for name, fn in maxima.items():
            value = quotient_value(qmasks, name, fn,
                                   invariant=name not in non_invariant)
            cur = best_max.get(name)
            if cur is None or value > cur[0]:
                best_max[name] = (value, model)
        if bt_name is not None:
            value = quotient_value(qmasks, bt_name,
                                   lambda q: btilde_masks(q, btilde_mode)[0])
            if btilde_best is None or value > btilde_best[0]:
                bt_value, bt_vertex, bt_blocks = btilde_masks(qmasks, btilde_mode)
                btilde_best = (bt_value, model, bt_vertex, bt_blocks)
        for name, fn in alls.items():
            ok, witness = all_state[name]
            if ok:
                value = quotient_value(qmasks, name, fn)
                if not value:
                    all_state[name] = (False, model)
    if models == 0:
        raise InputError("host graph admits no minor models")
    return ScanOutcome(models=models, maxima=best_max, alls=all_state,
                       btilde_best=btilde_best)


# -- public parameters -------------------------------------------------------


@dataclass(frozen=True)
class BetaHatWitness:
    """Attaining minor for beta_hat: model, quotient, vertex, and its cover."""

    model: MinorModel
    quotient: Graph
    vertex: int
    cover: CliqueCover


def grad(G: Graph, t: int, max_n: int = ENUM_DEFAULT_CAP,
         max_t: int = DEPTH_DEFAULT_CAP) -> tuple[Fraction, MinorModel]:
    """Largest edge density of any depth-t minor, as an exact fraction."""
    out = scan_minors(G, t, maxima={"density": _density_of},
                      max_n=max_n, max_t=max_t)
    return out.maxima["density"]


def grad_hat(G: Graph, t: int, max_n: int = ENUM_DEFAULT_CAP,
             max_t: int = DEPTH_DEFAULT_CAP) -> tuple[int, MinorModel]:
    """Largest minimum degree of any depth-t minor."""
    out = scan_minors(G, t, maxima={"mindeg": _mindeg_of},
                      max_n=max_n, max_t=max_t)
    return out.maxima["mindeg"]


def beta_hat(G: Graph, t: int, mode: str = "exact",
             max_n: int = ENUM_DEFAULT_CAP,
             max_t: int = DEPTH_DEFAULT_CAP) -> tuple[int, BetaHatWitness]:
    """Largest beta_tilde over all depth-t minors, with a full witness."""
    if mode not in ("exact", "greedy"):
        raise InputError(f"unknown mode {mode!r}")
    out = scan_minors(G, t, btilde_mode=mode, max_n=max_n, max_t=max_t)
    value, model, vertex, blocks = out.btilde_best
    witness = BetaHatWitness(model=model, quotient=quotient(model),
                             vertex=vertex, cover=CliqueCover(blocks))
    return value, witness


def largest_clique_minor(G: Graph, t: int, max_n: int = ENUM_DEFAULT_CAP,
                         max_t: int = DEPTH_DEFAULT_CAP) -> tuple[int, MinorModel]:
    """Largest p such that some depth-t minor is complete on p vertices."""
    out = scan_minors(G, t, maxima={"clique": _clique_size_of},
                      max_n=max_n, max_t=max_t)
    return out.maxima["clique"]


def largest_star_minor(G: Graph, t: int, max_n: int = ENUM_DEFAULT_CAP,
                       max_t: int = DEPTH_DEFAULT_CAP) -> tuple[int, Optional[MinorModel]]:
    """Largest s such that some depth-t minor is a star with s leaves.

    A single edge counts as the 1-leaf star, so the value is 0 exactly when
    G has no edges (then no minor contains an edge and the witness is None).
    """
    out = scan_minors(G, t, maxima={"star": _star_leaves_of},
                      max_n=max_n, max_t=max_t)
    value, model = out.maxima["star"]
    if value == 0:
        return 0, None
    return value, model


def model_from_json_dict(host: Graph, d: dict) -> MinorModel:
    try:
        t = int(d["t"])
        branch_sets = [tuple(int(v) for v in b) for b in d["branch_sets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed minor model JSON: {exc}") from exc
    return make_minor_model(host, t, branch_sets)


def dumps_model(model: MinorModel) -> str:
    return json.dumps(model.to_json_dict(), sort_keys=True) + "\n"
