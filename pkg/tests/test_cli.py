"""CLI behavior: output formats, determinism, exit codes."""

import json
import os

import pytest

from nbcc.cli import main
from nbcc.graph_core import loads_graph
from nbcc.graph_families import gen_erdos_renyi, gen_named
from nbcc.separator_lab import CONJECTURE_COLUMNS


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_cycle_writes_graph(tmp_path, capsys):
    out = tmp_path / "c5.json"
    code, _, err = run(capsys, "gen", "--family", "cycle", "--n", "5",
                       "-o", str(out))
    assert code == 0
    assert "n=5 m=5" in err
    g = loads_graph(out.read_text())
    assert g.edge_set() == gen_named("cycle", 5).edge_set()


def test_gen_er_deterministic_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "gen", "--family", "er", "--n", "8", "--p", "0.5",
               "--seed", "42", "-o", str(a))[0] == 0
    assert run(capsys, "gen", "--family", "er", "--n", "8", "--p", "0.5",
               "--seed", "42", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert loads_graph(a.read_text()).edge_set() == \
        gen_erdos_renyi(8, 0.5, 42).edge_set()


def test_gen_dimacs_roundtrip(tmp_path, capsys):
    out = tmp_path / "g.col"
    run(capsys, "gen", "--family", "complete", "--n", "4",
        "--format", "dimacs", "-o", str(out))
    text = out.read_text()
    assert text.startswith("p edge 4 6\n")
    code, stdout, _ = run(capsys, "compute", "beta", str(out))
    assert code == 0 and stdout.splitlines()[0] == "1"


def test_gen_chordal_pipes_into_is_chordal(tmp_path, capsys):
    out = tmp_path / "chordal.json"
    run(capsys, "gen", "--family", "chordal", "--n", "9", "--seed", "1",
        "-o", str(out))
    code, stdout, _ = run(capsys, "compute", "is-chordal", str(out))
    assert code == 0 and stdout.splitlines()[0] == "true"


def test_compute_quantities(tmp_path, capsys):
    k5 = tmp_path / "k5.json"
    c5 = tmp_path / "c5.json"
    run(capsys, "gen", "--family", "complete", "--n", "5", "-o", str(k5))
    run(capsys, "gen", "--family", "cycle", "--n", "5", "-o", str(c5))
    cases = [
        (("compute", "beta-hat", "--t", "1", str(k5)), "1"),
        (("compute", "grad", "--t", "0", str(k5)), "2/1"),
        (("compute", "beta-hat", "--t", "0", str(c5)), "2"),
        (("compute", "beta", str(c5)), "3"),
        (("compute", "beta-tilde", str(c5)), "2"),
        (("compute", "alpha", str(c5)), "2"),
        (("compute", "degeneracy", str(c5)), "2"),
        (("compute", "grad-hat", "--t", "0", str(c5)), "2"),
        (("compute", "clique-minor", "--t", "1", str(c5)), "3"),
        (("compute", "star-minor", "--t", "0", str(c5)), "2"),
    ]
    for argv, expected in cases:
        code, stdout, _ = run(capsys, *argv)
        assert code == 0 and stdout.splitlines()[0] == expected, argv


def test_compute_witness_flag(tmp_path, capsys):
    c5 = tmp_path / "c5.json"
    run(capsys, "gen", "--family", "cycle", "--n", "5", "-o", str(c5))
    code, stdout, _ = run(capsys, "compute", "beta-tilde", str(c5), "--witness")
    lines = stdout.splitlines()
    assert code == 0 and lines[0] == "2"
    witness = json.loads(lines[1].removeprefix("witness: "))
    assert witness["vertex"] == 0
    assert witness["cover"] == [[0, 1], [4]]


def test_compute_on_poset_file_uses_incomparability_graph(tmp_path, capsys):
    p = tmp_path / "poset.json"
    run(capsys, "gen", "--family", "poset", "--n", "5", "--seed", "3",
        "--edge-prob", "0.0", "-o", str(p))
    code, stdout, _ = run(capsys, "compute", "beta", str(p))
    assert code == 0 and stdout.splitlines()[0] == "1"  # antichain -> K5


def test_verify_exit_codes(tmp_path, capsys):
    code, stdout, _ = run(capsys, "verify", "thm2", "--trials", "4", "--n", "6",
                          "--t", "0", "--seed", "7")
    assert code == 0
    assert "0 fail" in stdout
    # the empty graph is an honest counterexample to the density lower bound
    code, stdout, _ = run(capsys, "verify", "thm2", "--family", "empty",
                          "--n", "4", "--t", "0")
    assert code == 1
    assert "1 fail" in stdout
    # bad arguments give exit 2 via argparse
    with pytest.raises(SystemExit) as exc:
        main(["verify", "unknown-check"])
    assert exc.value.code == 2


def test_verify_thm3_cycle_row(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    code, stdout, _ = run(capsys, "verify", "thm3", "--family", "cycle",
                          "--n", "5", "--t", "0", "-o", str(out))
    assert code == 0
    text = out.read_text()
    assert "3/2" in text
    assert text.startswith("check,family,n,params,seed,t,")


def test_verify_stronger_form_warns_but_passes(capsys):
    # chains only satisfy the implied bound; exit stays 0 with a warning
    code, stdout, err = run(capsys, "verify", "thm1-incomp", "--trials", "3",
                            "--n", "5", "--t", "0", "--seed", "2",
                            "--edge-prob", "1.0")
    assert code == 0
    assert "stronger-form-fail" in stdout
    assert "warning" in err


def test_verify_deterministic_output_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ("verify", "thm2", "--trials", "5", "--n", "6", "--t", "1",
            "--seed", "13", "--format", "csv")
    assert run(capsys, *args, "-o", str(a))[0] == 0
    assert run(capsys, *args, "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_jobs_flag_matches_serial(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ("verify", "thm3", "--trials", "4", "--n", "5", "--t", "0",
            "--seed", "9")
    assert run(capsys, *base, "-o", str(a))[0] == 0
    assert run(capsys, *base, "--jobs", "2", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_compute_warns_when_caps_raised(tmp_path, capsys):
    c5 = tmp_path / "c5.json"
    run(capsys, "gen", "--family", "cycle", "--n", "5", "-o", str(c5))
    code, stdout, err = run(capsys, "compute", "beta-hat", "--t", "0",
                            "--cap-n", "9", str(c5))
    assert code == 0 and stdout.splitlines()[0] == "2"
    assert "warning" in err


def test_verify_jsonl_output(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    code, _, _ = run(capsys, "verify", "thm1-chordal", "--trials", "3",
                     "--n", "6", "--t", "0", "--seed", "5",
                     "--format", "jsonl", "-o", str(out))
    assert code == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(rows) == 3 and all(r["verdict"] == "pass" for r in rows)


def test_nbcc_seed_env_override(tmp_path, capsys, monkeypatch):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    monkeypatch.setenv("NBCC_SEED", "42")
    run(capsys, "gen", "--family", "er", "--n", "8", "--p", "0.5", "-o", str(a))
    monkeypatch.delenv("NBCC_SEED")
    run(capsys, "gen", "--family", "er", "--n", "8", "--p", "0.5",
        "--seed", "42", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
    # explicit flag wins over the environment
    monkeypatch.setenv("NBCC_SEED", "1")
    run(capsys, "gen", "--family", "er", "--n", "8", "--p", "0.5",
        "--seed", "42", "-o", str(c))
    assert c.read_bytes() == b.read_bytes()


def test_geom_pipeline(tmp_path, capsys):
    scene = tmp_path / "scene.json"
    graph = tmp_path / "graph.json"
    code, _, _ = run(capsys, "geom", "gen", "--shape", "ball", "--n", "40",
                     "--d", "2", "--size-min", "1", "--size-max", "1",
                     "--area", "12", "--seed", "4", "-o", str(scene))
    assert code == 0
    code, _, err = run(capsys, "geom", "graph", str(scene), "-o", str(graph))
    assert code == 0 and "n=40 m=15" in err
    g = loads_graph(graph.read_text())
    assert (g.n, g.m) == (40, 15)


def test_geom_fatness_and_log(tmp_path, capsys):
    scene = tmp_path / "scene.json"
    log = tmp_path / "samples.jsonl"
    run(capsys, "geom", "gen", "--shape", "ball", "--n", "50", "--d", "2",
        "--size-min", "1", "--size-max", "1", "--area", "10", "--seed", "9",
        "-o", str(scene))
    code, stdout, _ = run(capsys, "geom", "fatness", str(scene), "--samples",
                          "200", "--seed", "9", "--log", str(log))
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0] == "4" and lines[1] == "exact: true"
    assert len(log.read_text().splitlines()) == 200


def test_geom_cluster(tmp_path, capsys):
    scene = tmp_path / "scene.json"
    out = tmp_path / "clustered.json"
    run(capsys, "geom", "gen", "--shape", "ball", "--n", "6", "--d", "2",
        "--size-min", "2", "--size-max", "2", "--area", "5", "--seed", "8",
        "-o", str(scene))
    code, _, err = run(capsys, "geom", "cluster", str(scene), "--subsets",
                       "[[0],[1],[2],[3],[4],[5]]", "--t", "0", "-o", str(out))
    assert code == 0 and "6 groups" in err
    data = json.loads(out.read_text())
    assert all(o["kind"] == "group" for o in data["objects"])


def test_sep_find_and_report(tmp_path, capsys):
    batch = tmp_path / "batch"
    batch.mkdir()
    run(capsys, "gen", "--family", "grid", "--rows", "4", "--cols", "4",
        "-o", str(batch / "grid.json"))
    run(capsys, "gen", "--family", "er", "--n", "10", "--p", "0.3",
        "--seed", "3", "-o", str(batch / "er.json"))
    code, stdout, _ = run(capsys, "sep", "find", str(batch / "grid.json"),
                          "--strategy", "degree-peel")
    assert code == 0
    result = json.loads(stdout)
    assert result["qualified"] is True
    out = tmp_path / "report.csv"
    code, _, _ = run(capsys, "sep", "report", "--in", str(batch),
                     "-o", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CONJECTURE_COLUMNS)
    assert len(lines) == 5  # two instances x two strategies


def test_sep_geometric_cut(tmp_path, capsys):
    scene = tmp_path / "scene.json"
    run(capsys, "geom", "gen", "--shape", "ball", "--n", "12", "--d", "2",
        "--size-min", "1", "--size-max", "1", "--area", "14", "--seed", "2",
        "-o", str(scene))
    code, stdout, _ = run(capsys, "sep", "find", str(scene),
                          "--strategy", "geometric-cut")
    assert code == 0
    result = json.loads(stdout)
    assert set(result) == {"S", "alpha_G", "alpha_S", "component_alphas",
                           "strategy", "exponent", "qualified"}


def test_error_paths_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "compute", "beta", str(tmp_path / "missing.json"))
    assert code == 2 and "error" in err
    big = tmp_path / "big.json"
    run(capsys, "gen", "--family", "empty", "--n", "25", "-o", str(big))
    code, _, err = run(capsys, "compute", "beta", str(big))
    assert code == 2 and "greedy" in err
    code, _, err = run(capsys, "gen", "--family", "cycle", "--n", "2",
                       "-o", str(tmp_path / "x.json"))
    assert code == 2
    code, _, err = run(capsys, "geom", "cluster", str(big), "--subsets", "[[0]]",
                       "--t", "0", "-o", "-")
    assert code == 2  # not a scene file
