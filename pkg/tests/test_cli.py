"""Command-line interface and catalog persistence."""

import json

import pytest

from isopairs.acceptance import canonical_json
from isopairs.cli import build_from_spec, main
from isopairs.pairs import PairStructure


def run(argv):
    return main(argv)


def test_make_and_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "gl11.json"
    assert run(["make", "gl:1,1", "-o", str(out)]) == 0
    entry = json.loads(out.read_text())
    assert entry["pair_sha256"] == entry["report_pair_sha256"]
    assert entry["verify_report"]["passed"]
    # canonical file: parse -> serialize is byte-identical
    assert canonical_json(entry) == out.read_text()
    assert run(["verify", str(out)]) == 0
    captured = capsys.readouterr()
    assert "verdict: pass" in captured.out


def test_make_gl10_trivial(tmp_path):
    out = tmp_path / "gl10.json"
    assert run(["make", "gl:1,0", "-o", str(out)]) == 0
    pair = PairStructure.from_json(json.loads(out.read_text())["pair"])
    assert pair.v1.dim == 1 and pair.m1 == {}


def test_make_osq_notes_dimensions(tmp_path):
    out = tmp_path / "osq2.json"
    assert run(["make", "osq:2", "-o", str(out)]) == 0
    entry = json.loads(out.read_text())
    assert entry["notes"]["convention"] == "supertranspose"
    assert entry["notes"]["dimensions"]["v1"] == "3|0"


def test_verify_detects_corruption(tmp_path, capsys):
    out = tmp_path / "gl11.json"
    run(["make", "gl:1,1", "-o", str(out)])
    entry = json.loads(out.read_text())
    # corrupt one structure constant
    entry["pair"]["m1"][0]["out"][0]["c"] = "7"
    bad = tmp_path / "bad_pair.json"
    bad.write_text(canonical_json(entry))
    assert run(["verify", str(bad)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_malformed_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text('{"v1": [1, 2')
    assert run(["verify", str(bad)]) == 2
    assert "line" in capsys.readouterr().err


def test_unknown_spec_exit_2(tmp_path, capsys):
    assert run(["make", "zzz:9", "-o", str(tmp_path / "x.json")]) == 2
    assert "unknown builder spec" in capsys.readouterr().err


def test_verify_jobs_flag(tmp_path, capsys):
    out = tmp_path / "q1.json"
    run(["make", "q:1", "-o", str(out)])
    capsys.readouterr()  # drop the make line
    assert run(["verify", str(out), "--jobs", "2"]) == 0
    text1 = capsys.readouterr().out
    assert run(["verify", str(out), "--jobs", "1"]) == 0
    assert capsys.readouterr().out == text1  # deterministic across job counts


def test_tkk_and_lts_commands(tmp_path, capsys):
    pair_file = tmp_path / "gl11.json"
    run(["make", "gl:1,1", "-o", str(pair_file)])
    alg_file = tmp_path / "alg.json"
    assert run(["tkk", str(pair_file), "-o", str(alg_file)]) == 0
    dumped = json.loads(alg_file.read_text())
    assert dumped["grading"].count("0") == dumped["labels"].index("E0,0+")
    flip_file = tmp_path / "flip.json"
    assert run(["make", "flip:gl:1,1", "-o", str(flip_file)]) == 0
    assert run(["lts", str(flip_file)]) == 0
    assert "axioms pass" in capsys.readouterr().out


def test_lts_on_isotopic_pair_fails_precondition(tmp_path, capsys):
    pair_file = tmp_path / "gl11.json"
    run(["make", "gl:1,1", "-o", str(pair_file)])
    assert run(["lts", str(pair_file)]) == 1
    assert "precondition" in capsys.readouterr().err


def test_rep_hw_fundamental(capsys):
    code = run(["rep", "hw", "--pair", "gl:2,0", "--weights", "1/2,1/2", "--cap", "6"])
    out = capsys.readouterr().out
    assert code == 0
    assert "total dim 4" in out and "pass" in out


def test_rep_check_command(tmp_path, capsys):
    from isopairs.reps import isoquaternion_fundamental

    res = isoquaternion_fundamental()
    payload = res.rep.to_json()
    payload["split"] = res.split.to_json()
    f = tmp_path / "rep.json"
    f.write_text(canonical_json(payload))
    assert run(["rep", "check", str(f)]) == 0
    assert "verdict: pass" in capsys.readouterr().out


def test_rep_graph_check_command(tmp_path, capsys):
    from isopairs.reps import graph_from_rep, isoquaternion_fundamental

    gr = graph_from_rep(isoquaternion_fundamental().rep)
    f = tmp_path / "graph.json"
    f.write_text(canonical_json(gr.to_json()))
    assert run(["rep", "graph-check", str(f)]) == 0


def test_poly_check_command(capsys):
    assert run(["poly-check", "--n", "1", "--m", "1", "--trials", "5"]) == 0
    assert "verdict: pass" in capsys.readouterr().out


def test_poly_bracket_evaluation(capsys):
    # [f, g]_X with f = x1, g = 1, X = d/dx1 evaluates to -1
    assert run(
        ["poly-check", "--n", "1", "--m", "1",
         "--bracket-functions", "x1", "1", "dx1"]
    ) == 0
    assert capsys.readouterr().out.strip() == "-1"
    assert run(
        ["poly-check", "--n", "1", "--m", "0",
         "--bracket-fields", "dx1", "x1*dx1", "1"]
    ) == 0
    assert "dx1" in capsys.readouterr().out
    # parse errors exit with code 2
    assert run(
        ["poly-check", "--n", "1", "--m", "0", "--bracket-functions", "x7", "1", "dx1"]
    ) == 2


def test_wo_make(tmp_path):
    out = tmp_path / "wo.json"
    assert run(["make", "wo:1,1", "-o", str(out), "--trials", "5"]) == 0
    entry = json.loads(out.read_text())
    assert entry["wo"] == {"n": 1, "m": 1}
    assert entry["sampled_report"]["passed"]


def test_build_from_spec_known_set():
    for spec in ("gl:2,1", "osp+:2,2", "q:2", "osq:2", "magnetic:sl2", "sym2:so3", "isoq"):
        pair, _ = build_from_spec(spec)
        assert pair is not None
