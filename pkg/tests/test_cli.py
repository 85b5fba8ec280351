import json

import pytest

from mvpa_pdl import io
from mvpa_pdl.cli import main
from mvpa_pdl.languages import LanguageId, build_automaton

SINGLE = {"tiles": ["t0"], "h": [["t0", "t0"]], "v": [["t0", "t0"]], "t0": "t0"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


@pytest.fixture
def files(tmp_path):
    io.write_json(tmp_path / "single.tiling", SINGLE)
    return tmp_path


def test_member(capsys):
    assert run(capsys, "member", "-a", "L0", "-w", "d c")[1] == {"member": True}
    assert run(capsys, "member", "-a", "L0", "-w", "d a2 b1 c")[1] == {"member": False}


def test_phases(capsys):
    assert run(capsys, "phases", "-w", "b1 b2 b1")[1] == {"phases": 3}
    assert run(capsys, "phases", "-w", "")[1] == {"phases": 0}


def test_run(capsys):
    code, out, _ = run(capsys, "run", "-a", "L0_h", "-w", "d a2 b1")
    assert code == 0 and out["accepted"] and out["phases"] == 1
    assert [c["state"] for c in out["run"]] == ["q0", "q2", "q3", "p"]
    assert out["run"][2]["stacks"] == [["_bot"], ["x", "_bot"]]


def test_deterministic(capsys):
    assert run(capsys, "deterministic", "-a", "L1_v")[1] == {"deterministic": True}


def test_languages(capsys, tmp_path):
    code, out, _ = run(capsys, "languages", "-i", "L0_h", "enumerate", "1")
    assert out == {"language": "L0_h", "words": ["d a2 b1", "a1 b2 d a2 b1 a2 b1"]}
    code, out, _ = run(capsys, "languages", "-i", "L0_v", "emit")
    assert io.mvpa_from_dict(out) == build_automaton(LanguageId.L0_v)
    io.write_json(tmp_path / "m.json", out)
    assert run(capsys, "member", "-a", str(tmp_path / "m.json"),
               "-w", "d a2 b1 a2 b1")[1] == {"member": True}


def test_compile_build_check(capsys, files):
    code, out, _ = run(capsys, "compile", "-t", str(files / "single.tiling"),
                       "-o", str(files / "phi.txt"))
    assert code == 0 and out["conjuncts"] == 4
    assert set(out["parts"]) == {"snake", "recur", "tile", "hv"}
    code, out, _ = run(capsys, "tile", "-t", str(files / "single.tiling"), "-R", "4")
    assert out["violations"] == 0 and out["t0_in_column_zero"] == 5
    io.write_json(files / "grid.json", out["solution"])
    code, out, _ = run(capsys, "build-model", "-t", str(files / "single.tiling"),
                       "-g", str(files / "grid.json"))
    assert out["root"] == "x"
    io.write_json(files / "model.json", out)
    code, out, _ = run(capsys, "check", "-m", str(files / "model.json"),
                       "-f", str(files / "phi.txt"), "-b", "20", "-x", "x",
                       "--interior", "2", "-R", "4")
    assert out["verdict"] == "BoundedHolds" and out["bound"] == 20


def test_check_witness_and_env_bound(capsys, files, monkeypatch):
    io.write_json(files / "grid.json", {"R": 2, "cells": [
        {"n": n, "m": m, "tile": "t0"} for n in range(3) for m in range(3 - n)]})
    main(["build-model", "-t", str(files / "single.tiling"), "-g", str(files / "grid.json")])
    (files / "model.json").write_text(capsys.readouterr()[0])
    monkeypatch.setenv("MVPA_PDL_BOUND", "6")
    code, out, _ = run(capsys, "check", "-m", str(files / "model.json"),
                       "-f", "(dia (mvpa L0_h) true)", "-x", "x_0_0")
    assert out["verdict"] == "BoundedHolds" and out["bound"] == 6
    assert [s["token"] for s in out["witness"]] == ["d", "a2", "b1"]
    code, out, _ = run(capsys, "check", "-m", str(files / "model.json"),
                       "-f", '(dia (re "c a1 b2") true)', "-x", "x")
    assert out["verdict"] == "Holds" and out["bound"] == 6
    assert out["witness"][-1]["world"] == "x_0_0"


def test_domain_errors_exit_1(capsys, files):
    code, out, err = run(capsys, "member", "-a", "L0", "-w", "d z")
    assert code == 1 and out is None and "z" in json.loads(err)["error"]
    io.write_json(files / "bad.tiling", {"tiles": ["t0"], "h": [], "v": []})
    code, _, err = run(capsys, "compile", "-t", str(files / "bad.tiling"))
    assert code == 1 and "t0" in json.loads(err)["error"]
    code, _, _ = run(capsys, "member", "-a", str(files / "nope.json"), "-w", "d")
    assert code == 1


def test_check_without_bound(capsys, files, monkeypatch):
    monkeypatch.delenv("MVPA_PDL_BOUND", raising=False)
    io.write_json(files / "k.json", {"worlds": [{"id": "x"}], "letters": list("abcd"),
                                     "edges": []})
    code, _, err = run(capsys, "check", "-m", str(files / "k.json"),
                       "-f", "(dia (mvpa L0) true)")
    assert code == 1 and "bound" in err


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["member", "-a", "L0"], ["tile", "-t", "x", "-R", "-1"],
    ["check", "-m", "m", "-f", "true", "--interior", "2"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_dot(capsys, files):
    code, out, _ = run(capsys, "dot", "-i", "L0_h")
    assert out["dot"].count("->") == 6
    code, out, _ = run(capsys, "dot", "-i", "L0_h", "-o", str(files / "g.dot"))
    assert (files / "g.dot").read_text().count("->") == 6
