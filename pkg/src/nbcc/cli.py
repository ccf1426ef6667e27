"""Command-line entry point.

Subcommands: gen, compute, verify, geom, sep. Every random draw flows from
the master seed (flag --seed, or env NBCC_SEED when the flag is absent), so
identical invocations produce byte-identical outputs.

Exit codes: 0 success (including stronger-form-only warnings), 1 a verified
inequality failed on some instance (the falsifier signal, reserved for that
alone), 2 bad input, cap violations, or I/O problems.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bounds_and_theorems import (CHECK_NAMES, reports_to_csv,
                                  reports_to_jsonl, run_fuzz)
from .clique_cover import beta_tilde, exact_clique_cover
from .errors import InputError, ModelError, PreconditionError, SizeError
from .geometry import (cluster_union, dumps_scene, estimate_fatness,
                       gen_scene, intersection_graph, scene_from_json_dict)
from .graph_core import (Graph, degeneracy, dumps_graph, graph_from_json_dict,
                         read_dimacs, write_dimacs)
from .graph_families import (FAMILY_NAMES, dumps_poset, gen_family, is_chordal,
                             poset_from_json_dict)
from .separator_lab import (SEPARATOR_STRATEGIES, ConjectureInstance,
                            conjecture_csv, conjecture_report,
                            find_alpha_separator, geometric_cut_separator,
                            max_independent_set)
from .shallow_minor import (beta_hat, grad, grad_hat, largest_clique_minor,
                            largest_star_minor)

EXIT_OK = 0
EXIT_THEOREM_FAIL = 1
EXIT_ERROR = 2


def _resolve_seed(seed) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("NBCC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"NBCC_SEED must be an integer, got {env!r}") from exc
    return 0


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load_graph_any(path: str) -> Graph:
    """Graph from a graph/poset/scene JSON file or a DIMACS file."""
    text = _read_text(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from exc
        if "objects" in data:
            return intersection_graph(scene_from_json_dict(data))
        if "relation" in data:
            return poset_from_json_dict(data).incomparability_graph
        return graph_from_json_dict(data)
    return read_dimacs(text)


def _load_scene(path: str):
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if "objects" not in data:
        raise InputError(f"{path}: not a scene file")
    return scene_from_json_dict(data)


def _json_line(data) -> str:
    return json.dumps(data, sort_keys=True) + "\n"


# -- gen ------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    seed = _resolve_seed(args.seed)
    instance = gen_family(args.family, args.n, seed, p=args.p,
                          edge_prob=args.edge_prob, attach_max=args.attach_max,
                          rows=args.rows, cols=args.cols)
    if isinstance(instance, Graph):
        if args.format == "dimacs":
            payload = write_dimacs(instance)
        else:
            payload = dumps_graph(instance)
        _note(f"{args.family}: n={instance.n} m={instance.m}")
    else:
        if args.format == "dimacs":
            raise InputError("poset instances have no DIMACS form")
        payload = dumps_poset(instance)
        g = instance.incomparability_graph
        _note(f"poset: n={g.n} incomparability edges={g.m}")
    _write_text(args.out, payload)
    return EXIT_OK


# -- compute ----------------------------------------------------------------------

COMPUTE_QUANTITIES = ("beta", "beta-tilde", "beta-hat", "grad", "grad-hat",
                      "degeneracy", "alpha", "clique-minor", "star-minor",
                      "is-chordal")


def _fmt_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _cmd_compute(args) -> int:
    if args.cap_n > 8 or args.cap_t > 2:
        _note(f"warning: caps raised to n<={args.cap_n}, t<={args.cap_t}; "
              "enumeration cost grows steeply")
    G = _load_graph_any(args.input)
    q = args.quantity
    witness = None
    if q == "beta":
        cover = exact_clique_cover(G)
        value = str(cover.value)
        witness = {"cover": cover.to_json()}
    elif q == "beta-tilde":
        v, x, cover = beta_tilde(G, args.mode)
        value = str(v)
        witness = {"vertex": x, "cover": cover.to_json()}
    elif q == "beta-hat":
        v, w = beta_hat(G, args.t, args.mode, args.cap_n, args.cap_t)
        value = str(v)
        witness = {"model": w.model.to_json_dict(), "vertex": w.vertex,
                   "cover": w.cover.to_json()}
    elif q == "grad":
        v, model = grad(G, args.t, args.cap_n, args.cap_t)
        value = _fmt_fraction(v)
        witness = {"model": model.to_json_dict()}
    elif q == "grad-hat":
        v, model = grad_hat(G, args.t, args.cap_n, args.cap_t)
        value = str(v)
        witness = {"model": model.to_json_dict()}
    elif q == "degeneracy":
        v, order = degeneracy(G)
        value = str(v)
        witness = {"order": list(order)}
    elif q == "alpha":
        v, members = max_independent_set(G, args.cap_mis)
        value = str(v)
        witness = {"set": list(members)}
    elif q == "clique-minor":
        v, model = largest_clique_minor(G, args.t, args.cap_n, args.cap_t)
        value = str(v)
        witness = {"model": model.to_json_dict()}
    elif q == "star-minor":
        v, model = largest_star_minor(G, args.t, args.cap_n, args.cap_t)
        value = str(v)
        witness = {"model": None if model is None else model.to_json_dict()}
    elif q == "is-chordal":
        ok, cert = is_chordal(G)
        value = "true" if ok else "false"
        if ok:
            witness = {"elimination_order": list(cert)}
        else:
            witness = {"vertex": cert.vertex, "pair": list(cert.pair),
                       "cycle": None if cert.cycle is None else list(cert.cycle)}
    else:
        raise InputError(f"unknown quantity {q!r}")
    sys.stdout.write(value + "\n")
    if args.witness and witness is not None:
        sys.stdout.write("witness: " + _json_line(witness))
    return EXIT_OK


# -- verify -----------------------------------------------------------------------


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.cap_n > 8 or args.cap_t > 2:
        _note(f"warning: caps raised to n<={args.cap_n}, t<={args.cap_t}; "
              "enumeration cost grows steeply")
    reports = run_fuzz(args.check, trials=args.trials, max_n=args.n, t=args.t,
                       master_seed=seed, family=args.family, p=args.p,
                       edge_prob=args.edge_prob, attach_max=args.attach_max,
                       jobs=args.jobs, cap_n=args.cap_n, cap_t=args.cap_t)
    for r in reports:
        d = r.descriptor
        print(f"{r.check} family={d['family']} n={d['n']} seed={d['seed']} "
              f"t={d['t']} verdict={r.verdict}")
    if args.out:
        if args.format == "jsonl":
            _write_text(args.out, reports_to_jsonl(reports))
        else:
            _write_text(args.out, reports_to_csv(reports))
    fails = sum(1 for r in reports if r.verdict == "fail")
    stronger = sum(1 for r in reports if r.verdict == "stronger-form-fail")
    print(f"checked {len(reports)} instance(s): {fails} fail, "
          f"{stronger} stronger-form-fail")
    if stronger:
        _note(f"warning: {stronger} instance(s) satisfy only the implied bound")
    return EXIT_THEOREM_FAIL if fails else EXIT_OK


# -- geom -------------------------------------------------------------------------


def _cmd_geom(args) -> int:
    if args.action == "gen":
        seed = _resolve_seed(args.seed)
        scene = gen_scene(args.shape, args.n, args.d,
                          (args.size_min, args.size_max), args.area, seed)
        _note(f"scene: {args.shape} n={args.n} d={args.d}")
        _write_text(args.out, dumps_scene(scene))
        return EXIT_OK
    if args.action == "graph":
        scene = _load_scene(args.input)
        G = intersection_graph(scene)
        _note(f"intersection graph: n={G.n} m={G.m}")
        _write_text(args.out, dumps_graph(G))
        return EXIT_OK
    if args.action == "fatness":
        seed = _resolve_seed(args.seed)
        scene = _load_scene(args.input)
        est = estimate_fatness(scene, args.samples, seed)
        sys.stdout.write(f"{est.value}\n")
        sys.stdout.write(f"exact: {'true' if est.exact else 'false'}\n")
        if args.log:
            _write_text(args.log, "".join(
                _json_line(s.to_json_dict()) for s in est.samples))
        return EXIT_OK
    if args.action == "cluster":
        scene = _load_scene(args.input)
        try:
            subsets = json.loads(args.subsets)
        except json.JSONDecodeError as exc:
            raise InputError(f"--subsets is not valid JSON: {exc}") from exc
        out = cluster_union(scene, subsets, args.t, args.mode)
        _note(f"clustered {len(scene.objects)} objects into {len(out.objects)} groups")
        _write_text(args.out, dumps_scene(out))
        return EXIT_OK
    raise InputError(f"unknown geom action {args.action!r}")


# -- sep --------------------------------------------------------------------------


def _sep_find(args) -> int:
    if args.strategy == "geometric-cut":
        scene = _load_scene(args.input)
        result = geometric_cut_separator(scene, args.axis, args.steps, args.cap_mis)
    else:
        G = _load_graph_any(args.input)
        result = find_alpha_separator(G, args.strategy, args.cap_mis)
    _write_text(args.out, _json_line(result.to_json_dict()))
    return EXIT_OK


def _sep_report(args) -> int:
    names = sorted(f for f in os.listdir(args.indir) if f.endswith(".json"))
    if not names:
        _note(f"warning: no .json files under {args.indir}")
    instances = []
    for name in names:
        path = os.path.join(args.indir, name)
        data = json.loads(_read_text(path))
        family = "file"
        if "objects" in data:
            family = data.get("meta", {}).get("shape", "scene")
        elif "relation" in data:
            family = "poset"
        G = _load_graph_any(path)
        instances.append(ConjectureInstance(
            instance_id=os.path.splitext(name)[0], family=family,
            graph=G, t=args.t))
    strategies = args.strategy or list(SEPARATOR_STRATEGIES)
    rows, skipped = conjecture_report(instances, strategies, args.cap_mis)
    for instance_id, reason in skipped:
        _note(f"skip {instance_id}: {reason}")
    _write_text(args.out, conjecture_csv(rows))
    return EXIT_OK


def _cmd_sep(args) -> int:
    if args.action == "find":
        return _sep_find(args)
    return _sep_report(args)


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbcc",
        description="Neighborhood clique cover numbers over shallow minors: "
                    "generators, exact computation, inequality fuzzing, "
                    "geometric scenes, separator experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph, poset, or write DIMACS")
    p.add_argument("--family", required=True, choices=FAMILY_NAMES)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--rows", type=int, default=None, help="grid rows")
    p.add_argument("--cols", type=int, default=None, help="grid cols")
    p.add_argument("--p", type=float, default=0.5, help="er edge probability")
    p.add_argument("--edge-prob", type=float, default=0.4,
                   help="poset relation probability")
    p.add_argument("--attach-max", type=int, default=3,
                   help="chordal attach clique size limit")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "dimacs"), default="json")
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("compute", help="compute one quantity of a graph file")
    p.add_argument("quantity", choices=COMPUTE_QUANTITIES)
    p.add_argument("input")
    p.add_argument("--t", type=int, default=0, help="minor depth")
    p.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    p.add_argument("--cap-n", type=int, default=8,
                   help="minor enumeration size cap (hard limit 10)")
    p.add_argument("--cap-t", type=int, default=2, help="minor depth cap")
    p.add_argument("--cap-mis", type=int, default=50,
                   help="exact independent set size cap")
    p.add_argument("--witness", action="store_true",
                   help="also print the witness JSON")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("verify", help="fuzz one inequality check over instances")
    p.add_argument("check", choices=CHECK_NAMES)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--n", type=int, default=8, help="largest instance size")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--family", default=None,
                   help="instance family (default depends on the check)")
    p.add_argument("--p", type=float, default=None,
                   help="fixed er probability (default cycles 0.3/0.5/0.7)")
    p.add_argument("--edge-prob", type=float, default=None,
                   help="fixed poset relation probability")
    p.add_argument("--attach-max", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap-n", type=int, default=8)
    p.add_argument("--cap-t", type=int, default=2)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("geom", help="geometric scene pipelines")
    geom_sub = p.add_subparsers(dest="action", required=True)

    g = geom_sub.add_parser("gen", help="generate a random scene")
    g.add_argument("--shape", choices=("ball", "box"), default="ball")
    g.add_argument("--n", type=int, default=20)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--size-min", type=float, default=1.0)
    g.add_argument("--size-max", type=float, default=1.0)
    g.add_argument("--area", type=float, default=10.0)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("-o", "--out", default="-")
    g.set_defaults(func=_cmd_geom)

    g = geom_sub.add_parser("graph", help="scene to intersection graph")
    g.add_argument("input")
    g.add_argument("-o", "--out", default="-")
    g.set_defaults(func=_cmd_geom)

    g = geom_sub.add_parser("fatness", help="sampled fatness estimate")
    g.add_argument("input")
    g.add_argument("--samples", type=int, default=100)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--log", default=None, help="write per-sample JSONL here")
    g.set_defaults(func=_cmd_geom)

    g = geom_sub.add_parser("cluster", help="merge object subsets into groups")
    g.add_argument("input")
    g.add_argument("--subsets", required=True,
                   help="JSON list of index lists, e.g. '[[0,1],[2]]'")
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--mode", choices=("diameter", "radius"), default="diameter")
    g.add_argument("-o", "--out", default="-")
    g.set_defaults(func=_cmd_geom)

    p = sub.add_parser("sep", help="separator experiments")
    sep_sub = p.add_subparsers(dest="action", required=True)

    s = sep_sub.add_parser("find", help="search one instance for a separator")
    s.add_argument("input")
    s.add_argument("--strategy", default="degree-peel",
                   choices=(*SEPARATOR_STRATEGIES, "geometric-cut"))
    s.add_argument("--axis", type=int, default=0)
    s.add_argument("--steps", type=int, default=32)
    s.add_argument("--cap-mis", type=int, default=50)
    s.add_argument("-o", "--out", default="-")
    s.set_defaults(func=_cmd_sep)

    s = sep_sub.add_parser("report", help="CSV report over a directory of instances")
    s.add_argument("--in", dest="indir", required=True)
    s.add_argument("--t", type=int, default=0)
    s.add_argument("--strategy", action="append", default=None,
                   choices=SEPARATOR_STRATEGIES)
    s.add_argument("--cap-mis", type=int, default=50)
    s.add_argument("-o", "--out", default="-")
    s.set_defaults(func=_cmd_sep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SizeError, ModelError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
