"""Fat-object scenes, intersection graphs, cluster unions, and fatness probes.

Objects live in R^d: balls, axis-aligned boxes, and unions of those (the
result of clustering). The size of an object is the side length of its
smallest enclosing axis-aligned hypercube. All intersection tests use the
closed convention -- tangency counts -- matching the interval generator in
graph_families.

The fatness parameter of a scene is estimated, never certified: the
definition quantifies over every box size and position, so the probe samples
boxes, collects the large-enough objects meeting each box, and computes a
minimum piercing number per sample (exact via candidate-point set cover for
axis boxes and for small collections, a flagged greedy bound otherwise).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence, Union

from .errors import InputError, PreconditionError
from .graph_core import Graph, diameter_within, radius_within, vertex_set
from .rng import SplitMix64


def _as_point(xs) -> tuple[float, ...]:
    return tuple(float(x) for x in xs)


@dataclass(frozen=True)
class Ball:
    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.center:
            raise InputError("ball needs a nonempty center")
        if self.radius <= 0:
            raise InputError(f"ball radius must be positive, got {self.radius}")

    @property
    def dimension(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class AxisBox:
    low: tuple[float, ...]
    high: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "low", _as_point(self.low))
        object.__setattr__(self, "high", _as_point(self.high))
        if not self.low or len(self.low) != len(self.high):
            raise InputError("box corners must be nonempty and of equal dimension")
        for lo, hi in zip(self.low, self.high):
            if not lo < hi:
                raise InputError(f"box corners not ordered: {lo} !< {hi}")

    @property
    def dimension(self) -> int:
        return len(self.low)


@dataclass(frozen=True)
class UnionGroup:
    members: tuple[Union[Ball, AxisBox], ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise InputError("union group needs at least one member")
        dims = {m.dimension for m in self.members}
        if len(dims) != 1:
            raise InputError("union group members have mixed dimensions")
        for m in self.members:
            if isinstance(m, UnionGroup):
                raise InputError("union groups do not nest")

    @property
    def dimension(self) -> int:
        return self.members[0].dimension


FatObject = Union[Ball, AxisBox, UnionGroup]


@dataclass(frozen=True)
class FatScene:
    d: int
    objects: tuple[FatObject, ...]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        for i, obj in enumerate(self.objects):
            if obj.dimension != self.d:
                raise InputError(
                    f"object {i} has dimension {obj.dimension}, scene has {self.d}")


# -- measurements ----------------------------------------------------------


def bounding_box(obj: FatObject) -> tuple[tuple[float, ...], tuple[float, ...]]:
    if isinstance(obj, Ball):
        return (tuple(c - obj.radius for c in obj.center),
                tuple(c + obj.radius for c in obj.center))
    if isinstance(obj, AxisBox):
        return obj.low, obj.high
    lows, highs = zip(*(bounding_box(m) for m in obj.members))
    return (tuple(min(xs) for xs in zip(*lows)),
            tuple(max(xs) for xs in zip(*highs)))


def object_size(obj: FatObject) -> float:
    """Side length of the smallest enclosing axis-aligned hypercube."""
    low, high = bounding_box(obj)
    return max(h - l for l, h in zip(low, high))


def _clamp_to_box(point, box: AxisBox) -> tuple[float, ...]:
    return tuple(min(max(x, lo), hi)
                 for x, lo, hi in zip(point, box.low, box.high))


def _sqdist(p, q) -> float:
    return sum((a - b) ** 2 for a, b in zip(p, q))


def _primitive_intersects(a, b) -> bool:
    if isinstance(a, Ball) and isinstance(b, Ball):
        return _sqdist(a.center, b.center) <= (a.radius + b.radius) ** 2
    if isinstance(a, AxisBox) and isinstance(b, AxisBox):
        return all(al <= bh and bl <= ah for al, ah, bl, bh in
                   zip(a.low, a.high, b.low, b.high))
    if isinstance(a, AxisBox):
        a, b = b, a
    # ball vs box
    nearest = _clamp_to_box(a.center, b)
    return _sqdist(a.center, nearest) <= a.radius ** 2


def intersects(a: FatObject, b: FatObject) -> bool:
    """Closed intersection test; tangency counts."""
    if a.dimension != b.dimension:
        raise InputError(
            f"dimension mismatch: {a.dimension} vs {b.dimension}")
    amem = a.members if isinstance(a, UnionGroup) else (a,)
    bmem = b.members if isinstance(b, UnionGroup) else (b,)
    return any(_primitive_intersects(x, y) for x in amem for y in bmem)


def contains_point(obj: FatObject, point) -> bool:
    if isinstance(obj, Ball):
        return _sqdist(obj.center, point) <= obj.radius ** 2
    if isinstance(obj, AxisBox):
        return all(lo <= x <= hi for x, lo, hi in zip(point, obj.low, obj.high))
    return any(contains_point(m, point) for m in obj.members)


def intersection_graph(scene: FatScene) -> Graph:
    """One vertex per object, labeled by its index; edge iff objects meet."""
    n = len(scene.objects)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if intersects(scene.objects[i], scene.objects[j])]
    return Graph(n, edges, labels=[str(i) for i in range(n)])


# -- clustering -------------------------------------------------------------


def cluster_union(scene: FatScene, subsets: Sequence[Sequence[int]], t: int,
                  mode: str = "diameter") -> FatScene:
    """Merge object subsets into union groups; uncovered objects are dropped.

    Each subset must induce a connected subgraph of the scene's intersection
    graph with diameter at most t (mode="diameter", the default) or radius at
    most t (mode="radius"). Output groups are ordered by smallest member
    index, which makes group i correspond exactly to vertex i of the
    quotient of the intersection graph under the same branch sets; that
    correspondence is verified before returning.
    """
    from .shallow_minor import make_minor_model, quotient

    if mode not in ("diameter", "radius"):
        raise InputError(f"unknown cluster mode {mode!r}")
    if t < 0:
        raise InputError("t must be non-negative")
    G = intersection_graph(scene)
    norm = [vertex_set(G, s) for s in subsets]
    if not norm:
        raise InputError("cluster_union needs at least one subset")
    seen: set[int] = set()
    for s in norm:
        if not s:
            raise InputError("empty subset in clustering")
        overlap = seen.intersection(s)
        if overlap:
            raise InputError(f"subsets overlap at object {min(overlap)}")
        seen.update(s)
    measure = diameter_within if mode == "diameter" else radius_within
    for s in norm:
        value = measure(G, s)
        if value is None:
            raise PreconditionError(
                f"subset {list(s)} is disconnected in the intersection graph")
        if value > t:
            raise PreconditionError(
                f"subset {list(s)} has {mode} {value} > t={t}")
    norm.sort()
    groups = []
    for s in norm:
        members: list[Union[Ball, AxisBox]] = []
        for idx in s:
            obj = scene.objects[idx]
            if isinstance(obj, UnionGroup):
                members.extend(obj.members)
            else:
                members.append(obj)
        groups.append(UnionGroup(tuple(members)))
    new_scene = FatScene(scene.d, tuple(groups),
                         meta={"clustered_from": len(scene.objects),
                               "t": t, "mode": mode})
    model = make_minor_model(G, t, norm)
    expected = quotient(model)
    got = intersection_graph(new_scene)
    if got.edge_set() != expected.edge_set():
        raise AssertionError(
            "cluster union does not commute with the graph quotient; "
            f"got {sorted(got.edge_set())}, expected {sorted(expected.edge_set())}")
    return new_scene


# -- piercing and fatness -----------------------------------------------------


def _anchor_points(obj: FatObject) -> list[tuple[float, ...]]:
    if isinstance(obj, Ball):
        return [obj.center]
    if isinstance(obj, AxisBox):
        return [tuple((lo + hi) / 2 for lo, hi in zip(obj.low, obj.high))]
    return [p for m in obj.members for p in _anchor_points(m)]


def _primitive_witness(a, b) -> tuple[float, ...]:
    """A point in the intersection of two intersecting primitives."""
    if isinstance(a, Ball) and isinstance(b, Ball):
        d2 = _sqdist(a.center, b.center)
        if d2 == 0:
            return a.center
        d = d2 ** 0.5
        u = min(a.radius, max(d - b.radius, 0.0))
        return tuple(ca + (cb - ca) * (u / d)
                     for ca, cb in zip(a.center, b.center))
    if isinstance(a, AxisBox) and isinstance(b, AxisBox):
        return tuple(max(al, bl) for al, bl in zip(a.low, b.low))
    if isinstance(a, AxisBox):
        a, b = b, a
    return _clamp_to_box(a.center, b)


def _pair_witness(a: FatObject, b: FatObject) -> Optional[tuple[float, ...]]:
    amem = a.members if isinstance(a, UnionGroup) else (a,)
    bmem = b.members if isinstance(b, UnionGroup) else (b,)
    for x in amem:
        for y in bmem:
            if _primitive_intersects(x, y):
                return _primitive_witness(x, y)
    return None


def _exact_set_cover(coverages: list[int], universe: int) -> list[int]:
    """Minimum choice of coverage masks whose union is the universe.

    Branch and bound on the uncovered element with the fewest covering sets.
    ``coverages`` must be able to cover the universe.
    """
    # greedy upper bound
    chosen = []
    uncovered = universe
    while uncovered:
        i = max(range(len(coverages)),
                key=lambda j: ((coverages[j] & uncovered).bit_count(), -j))
        chosen.append(i)
        uncovered &= ~coverages[i]
    best = [len(chosen), chosen]
    max_cover = max((c.bit_count() for c in coverages), default=1)

    def rec(uncovered: int, picked: list[int]) -> None:
        if uncovered == 0:
            if len(picked) < best[0]:
                best[0] = len(picked)
                best[1] = picked.copy()
            return
        need = -(-uncovered.bit_count() // max_cover)
        if len(picked) + need >= best[0]:
            return
        # element with fewest covering sets
        target = None
        target_count = None
        mm = uncovered
        while mm:
            low = mm & -mm
            mm ^= low
            cnt = sum(1 for c in coverages if c & low)
            if target_count is None or cnt < target_count:
                target_count = cnt
                target = low
        for i, c in enumerate(coverages):
            if c & target:
                picked.append(i)
                rec(uncovered & ~c, picked)
                picked.pop()

    rec(universe, [])
    return best[1]


EXACT_PIERCE_LIMIT = 12


def piercing_number(objects: Sequence[FatObject]
                    ) -> tuple[int, tuple[tuple[float, ...], ...], bool]:
    """Minimum piercing of a collection over a derived candidate point set.

    Returns (count, points, exact). Candidates are, for all-box collections,
    the per-axis grid of box low coordinates (which provably contains an
    optimal piercing); otherwise object anchors plus pairwise intersection
    witnesses. Collections larger than EXACT_PIERCE_LIMIT that are not pure
    boxes get a greedy cover flagged exact=False.
    """
    objs = list(objects)
    if not objs:
        return 0, (), True
    all_boxes = all(isinstance(o, AxisBox) for o in objs)
    if all_boxes:
        axes = len(objs[0].low)
        coords = [sorted({o.low[ax] for o in objs}) for ax in range(axes)]
        candidates = [tuple(p) for p in product(*coords)]
        exact = True
    else:
        points: list[tuple[float, ...]] = []
        for o in objs:
            points.extend(_anchor_points(o))
        for i in range(len(objs)):
            for j in range(i + 1, len(objs)):
                w = _pair_witness(objs[i], objs[j])
                if w is not None:
                    points.append(w)
        candidates = sorted(set(points))
        exact = len(objs) <= EXACT_PIERCE_LIMIT
    coverages = []
    kept_points = []
    seen_cov = set()
    for pt in candidates:
        cov = 0
        for i, o in enumerate(objs):
            if contains_point(o, pt):
                cov |= 1 << i
        if cov and cov not in seen_cov:
            seen_cov.add(cov)
            coverages.append(cov)
            kept_points.append(pt)
    universe = (1 << len(objs)) - 1
    if exact:
        picked = _exact_set_cover(coverages, universe)
    else:
        picked = []
        uncovered = universe
        while uncovered:
            i = max(range(len(coverages)),
                    key=lambda j: ((coverages[j] & uncovered).bit_count(), -j))
            picked.append(i)
            uncovered &= ~coverages[i]
    return len(picked), tuple(kept_points[i] for i in picked), exact


@dataclass(frozen=True)
class FatnessSample:
    center: tuple[float, ...]
    r: float
    collected: tuple[int, ...]
    value: int
    exact: bool

    def to_json_dict(self) -> dict:
        return {"center": list(self.center), "r": self.r,
                "collected": list(self.collected), "value": self.value,
                "exact": self.exact}


@dataclass(frozen=True)
class FatnessEstimate:
    value: int
    exact: bool
    samples: tuple[FatnessSample, ...]


def estimate_fatness(scene: FatScene, samples: int, seed: int) -> FatnessEstimate:
    """Sampled fatness estimate.

    Per sample the stream draws d floats for the probe box center (uniform in
    the scene's bounding box, axis order 0..d-1) and one below(n) draw for
    the probe size r, taken from the multiset of object sizes. The sample
    value is the piercing number of the objects of size >= r meeting the
    probe box; the estimate is the max over samples. ``exact`` is False when
    any sample attaining the estimate used the greedy fallback.
    """
    if samples < 1:
        raise InputError("need at least one sample")
    if not scene.objects:
        raise InputError("scene has no objects")
    rng = SplitMix64(seed)
    sizes = [object_size(o) for o in scene.objects]
    boxes = [bounding_box(o) for o in scene.objects]
    lo = tuple(min(b[0][ax] for b in boxes) for ax in range(scene.d))
    hi = tuple(max(b[1][ax] for b in boxes) for ax in range(scene.d))
    log = []
    for _ in range(samples):
        center = tuple(lo[ax] + (hi[ax] - lo[ax]) * rng.next_float()
                       for ax in range(scene.d))
        r = sizes[rng.below(len(sizes))]
        probe = AxisBox(tuple(c - r / 2 for c in center),
                        tuple(c + r / 2 for c in center))
        collected = tuple(i for i, obj in enumerate(scene.objects)
                          if sizes[i] >= r and intersects(obj, probe))
        value, _, exact = piercing_number([scene.objects[i] for i in collected])
        log.append(FatnessSample(center, r, collected, value, exact))
    estimate = max(s.value for s in log)
    exact_overall = all(s.exact for s in log if s.value == estimate)
    return FatnessEstimate(estimate, exact_overall, tuple(log))


# -- generation and serialization ----------------------------------------------


def gen_scene(shape: str, n: int, d: int, size_range: tuple[float, float],
              area_side: float, seed: int) -> FatScene:
    """Random scene: per object, d floats for the center (uniform in
    [0, area_side]^d) then one float for the size (uniform in size_range).

    Balls get radius size/2; boxes are hypercubes of side size, so either
    way object_size equals the drawn size.
    """
    if shape not in ("ball", "box"):
        raise InputError(f"unknown shape {shape!r}")
    if n < 1 or d < 1:
        raise InputError("need n >= 1 objects and dimension d >= 1")
    lo, hi = float(size_range[0]), float(size_range[1])
    if not 0 < lo <= hi:
        raise InputError(f"bad size range [{lo}, {hi}]")
    if area_side <= 0:
        raise InputError("area side must be positive")
    rng = SplitMix64(seed)
    objects: list[FatObject] = []
    for _ in range(n):
        center = tuple(area_side * rng.next_float() for _ in range(d))
        size = lo + (hi - lo) * rng.next_float()
        if shape == "ball":
            objects.append(Ball(center, size / 2))
        else:
            objects.append(AxisBox(tuple(c - size / 2 for c in center),
                                   tuple(c + size / 2 for c in center)))
    meta = {"shape": shape, "n": n, "d": d, "size_range": [lo, hi],
            "area_side": float(area_side), "seed": seed}
    return FatScene(d, tuple(objects), meta)


def _object_to_json(obj: FatObject) -> dict:
    if isinstance(obj, Ball):
        return {"kind": "ball", "center": list(obj.center), "radius": obj.radius}
    if isinstance(obj, AxisBox):
        return {"kind": "box", "low": list(obj.low), "high": list(obj.high)}
    return {"kind": "group", "members": [_object_to_json(m) for m in obj.members]}


def _object_from_json(d: dict) -> FatObject:
    kind = d.get("kind")
    if kind == "ball":
        return Ball(d["center"], d["radius"])
    if kind == "box":
        return AxisBox(d["low"], d["high"])
    if kind == "group":
        members = [_object_from_json(m) for m in d["members"]]
        return UnionGroup(tuple(members))
    raise InputError(f"unknown object kind {kind!r}")


def scene_to_json_dict(scene: FatScene) -> dict:
    return {"d": scene.d,
            "objects": [_object_to_json(o) for o in scene.objects],
            "meta": scene.meta}


def scene_from_json_dict(d: dict) -> FatScene:
    try:
        dim = int(d["d"])
        objects = tuple(_object_from_json(o) for o in d["objects"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed scene JSON: {exc}") from exc
    return FatScene(dim, objects, d.get("meta", {}))


def dumps_scene(scene: FatScene) -> str:
    return json.dumps(scene_to_json_dict(scene), sort_keys=True) + "\n"
