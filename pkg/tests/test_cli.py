import json

import pytest

from braidgamma.cli import main
from braidgamma.geom2d import (
    choreography_to_json,
    generator_choreography,
)
from braidgamma.geom3d import Choreo3, Move3, choreo3_to_json, pt3


@pytest.fixture()
def choreo_path(tmp_path):
    path = tmp_path / "b12.json"
    path.write_text(json.dumps(choreography_to_json(generator_choreography(4, 1, 2))))
    return str(path)


@pytest.fixture()
def choreo3_path(tmp_path):
    A, B, C = pt3(0, 0, 0), pt3(10, 1, 0), pt3(3, 9, 0)
    ch = Choreo3(
        6,
        (A, B, C, pt3(2, 3, 7), pt3(6, 2, 5), pt3(11, 9, -4)),
        (Move3(6, pt3(11, 9, 6)), Move3(6, pt3(11, 9, -4))),
        loop=True,
    )
    path = tmp_path / "space.json"
    path.write_text(json.dumps(choreo3_to_json(ch)))
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_map_text_and_json(capsys):
    assert main(["map", "-n", "3", "--target", "g", "b(1,2)"]) == 0
    assert "reduced:" in capsys.readouterr().out
    code, data = run_json(capsys, ["map", "-n", "5", "--format", "json", "b(1,3)"])
    assert code == 0
    assert data["target"] == "gamma" and data["word"]
    assert data["invariant"]["zero"] is False
    code, data2 = run_json(
        capsys,
        ["map", "-n", "5", "--target", "gammar", "--r", "1", "--format", "json", "b(1,3)"],
    )
    assert code == 0
    # slot erasure at r=1: same letters with [0] tags
    assert data2["word"].replace("[0]", "") == data["word"]


def test_map_parse_error_has_position(capsys):
    assert main(["map", "-n", "4", "b(1,3) nope"]) == 3
    err = capsys.readouterr().err
    assert "position 7" in err


def test_map_respects_max_n(capsys, monkeypatch):
    monkeypatch.setenv("BRAIDGAMMA_MAX_N", "6")
    assert main(["map", "-n", "7", "b(1,2)"]) == 3
    assert "cap" in capsys.readouterr().err
    monkeypatch.setenv("BRAIDGAMMA_MAX_N", "12")
    assert main(["map", "-n", "7", "b(1,2)"]) == 0
    capsys.readouterr()


def test_trace_2d(capsys, choreo_path):
    code, data = run_json(capsys, ["trace", "--format", "json", choreo_path])
    assert code == 0
    assert data["dim"] == 2 and data["loop"] is True
    assert len(data["events"]) == 2
    for e in data["events"]:
        assert "exact" in e["time"] or "poly" in e["time"]
    assert data["word"] == "d(1,2,4,3) d(1,2,3,4)"


def test_trace_3d(capsys, choreo3_path):
    code, data = run_json(capsys, ["trace", "--format", "json", choreo3_path])
    assert code == 0
    assert data["dim"] == 3
    assert data["reduced"] == ""
    assert all("special" in e for e in data["events"])
    assert main(["trace", "--target", "gammar", "--r", "2", choreo3_path]) == 3
    # the order-free target letters every coplanarity moment, special or not
    code, forgetful = run_json(
        capsys, ["trace", "--target", "g", "--format", "json", choreo3_path]
    )
    assert code == 0
    assert len(forgetful["word"].split()) == len(forgetful["events"])


def test_check_passes(capsys):
    code, data = run_json(capsys, ["check", "-n", "4", "--format", "json"])
    assert code == 0
    assert data["failed"] == 0
    assert data["passed"] == len(data["instances"]) > 0
    # inverted commutation variant as well
    code, data = run_json(
        capsys, ["check", "-n", "4", "--relation3", "both", "--format", "json"]
    )
    assert code == 0
    families = {r["family"] for r in data["instances"]}
    assert "3" in families and "3inv" in families


def test_check_compare_modes(capsys):
    code, data = run_json(
        capsys,
        ["check", "-n", "4", "--target", "g", "--compare-modes", "--format", "json"],
    )
    assert code == 0
    rows = data["compare_modes"]
    assert len(rows) > 6
    for row in rows:
        assert row["invariant_equal"] in (True, False)


def test_invariant_and_canon(capsys):
    code, data = run_json(
        capsys,
        ["invariant", "-n", "5", "--format", "json",
         "d(1,2,3,4) d(1,2,3,5) d(1,2,4,5) d(1,3,4,5) d(2,3,4,5)"],
    )
    assert code == 0
    assert data["invariant"]["zero"] is True
    assert main(["canon", "d(2,3,4,1)"]) == 0
    assert capsys.readouterr().out.strip() == "d(1,2,3,4)"
    assert main(["canon", "a{4,3,2,1}"]) == 0
    assert capsys.readouterr().out.strip() == "a{1,2,3,4}"


def test_render_deterministic(tmp_path, choreo_path):
    out1 = tmp_path / "f1.svg"
    out2 = tmp_path / "f2.svg"
    argv = ["render", choreo_path, "--t", "1/2", "--circle", "2,3,4"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2
    assert b1.startswith(b"<svg") and b"circle" in b1
    # base configuration frame at t=0: five dots on the parabola
    assert main(["render", choreo_path, "--t", "0/1", "--out", str(out1)]) == 0
    assert out1.read_bytes().count(b"<circle") == 4


def test_invariant_slot_words(capsys):
    code, data = run_json(
        capsys,
        ["invariant", "-n", "5", "--target", "gammar", "--r", "2", "--format", "json",
         "[0]d(1,2,3,4) [0]d(2,3,4,1)"],
    )
    assert code == 0
    assert data["invariant"]["zero"] is True and data["r"] == 2
    # slot out of range for the declared r
    assert main(["invariant", "-n", "5", "--target", "gammar", "--r", "2",
                 "[3]d(1,2,3,4)"]) == 3


def test_map_traced_mode(capsys):
    code, data = run_json(
        capsys, ["map", "-n", "4", "--mode", "traced", "--format", "json", "b(1,2)"]
    )
    assert code == 0
    assert data["mode"] == "traced"
    assert data["word"] == "d(1,2,4,3) d(1,2,3,4)"


def test_render_rejects_spatial_input(tmp_path, choreo3_path):
    out = tmp_path / "frame.svg"
    assert main(["render", choreo3_path, "--t", "1/2", "--out", str(out)]) == 3


def test_map_from_file(tmp_path, capsys):
    path = tmp_path / "word.txt"
    path.write_text("b(1,2) b(2,3)^-1\n")
    code, data = run_json(
        capsys, ["map", "-n", "4", "--in", str(path), "--format", "json"]
    )
    assert code == 0
    assert data["input"] == "b(1,2) b(2,3)^-1"


def test_out_flag_writes_file(tmp_path, choreo_path):
    out = tmp_path / "report.json"
    assert main(["check", "-n", "3", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["failed"] == 0
