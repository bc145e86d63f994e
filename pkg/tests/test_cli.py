import json
import subprocess
import sys

import pytest

from cupcap.chains import in_convex_position
from cupcap.cli import SCHEMA_VERSION, main
from cupcap.gen import random_set
from cupcap.geometry import Point, format_points, parse_points


@pytest.fixture
def set33(tmp_path):
    path = tmp_path / "s33.txt"
    path.write_text(format_points(random_set(33, seed=42)))
    return path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_json_hexagon(set33, capsys):
    code, out, _ = run(["analyze", "--input", set33, "--format", "json", "--certificates"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["schema_version"] == SCHEMA_VERSION and rep["size"] == 33
    hexagon = [Point(x, y) for x, y in (map(int, xy) for xy in rep["ngon"]["points"])]
    assert len(hexagon) == 6 and in_convex_position(hexagon)
    assert rep["bounds"]["es_upper"] == 33 and rep["bounds"]["meets_es_upper"]
    assert rep["largest_convex"]["size"] >= 6


def test_analyze_text_and_small_inputs(tmp_path, capsys):
    two = tmp_path / "two.txt"
    two.write_text("0 0\n3 -1\n")
    code, out, _ = run(["analyze", "--input", two], capsys)
    assert code == 0
    assert "partition: upper 1, lower 1" in out and "not guaranteed" in out


def test_analyze_free_check(tmp_path, capsys):
    path = tmp_path / "free.txt"
    assert run(["generate", "--kind", "free", "--m", "5", "--l", "5", "--output", path], capsys)[0] == 0
    code, out, _ = run(["analyze", "--input", path, "--m", "5", "--l", "5", "--format", "json", "--certificates"], capsys)
    fc = json.loads(out)["free_check"]
    assert fc["free"] and fc["g"] == 14 and "certificate" in fc


def test_parse_and_validation_errors(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n1 x\n")
    code, _, err = run(["analyze", "--input", bad], capsys)
    assert code == 2 and "error" in err
    col = tmp_path / "col.txt"
    col.write_text("0 0\n1 1\n2 2\n")
    assert run(["analyze", "--input", col], capsys)[0] == 2
    assert run(["analyze", "--input", tmp_path / "missing.txt"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_generate_roundtrip(tmp_path, capsys):
    path = tmp_path / "r.txt"
    run(["generate", "--count", "20", "--seed", "3", "--coord-bound", "1000", "--output", path], capsys)
    pts = parse_points(path.read_text())
    assert pts == list(random_set(20, 1000, 3))
    code, out, _ = run(["generate", "--kind", "no-ngon", "--n", "5"], capsys)
    assert code == 0 and len(parse_points(out)) == 8
    assert run(["generate", "--kind", "no-ngon", "--n", "9"], capsys)[0] == 2


def test_check_is_deterministic(capsys):
    argv = ["check", "--trials", "3", "--seed", "7", "--suite", "oracle", "--suite", "bounds"]
    code1, out1, _ = run(argv, capsys)
    code2, out2, _ = run(argv, capsys)
    assert code1 == code2 == 0 and out1 == out2
    assert out1.splitlines()[0] == "seed=7 trials=3"
    code, _, err = run(["check", "--trials", "0", "--suite", "bounds"], capsys)
    assert code == 0 and "vacuous" in err


def test_bounds_command(capsys):
    code, out, _ = run(["bounds", "--n-max", "7", "--format", "json"], capsys)
    rows = json.loads(out)["rows"]
    assert code == 0 and rows[0]["es_upper_new"] == 33 and rows[1]["es_upper_new"] == 113
    code, out, _ = run(["bounds", "--n-max", "6"], capsys)
    assert out.splitlines()[1].startswith("6\t")


def test_transform_command(tmp_path, capsys):
    tri = tmp_path / "tri.txt"
    tri.write_text("0 0\n2 0\n1 2\n")
    code, out, _ = run(["transform", "--input", tri, "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["s"] == ["0", "0"] and rep["image"][0] == ["0", "0"]
    code, out, _ = run(["transform", "--input", tri], capsys)
    assert len(parse_points(out)) == 3


def test_plot_is_deterministic(set33, tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for path in (a, b):
        assert run(["plot", "--input", set33, "--overlay", "ngon", "--output", path], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith("<svg") and "<polygon" in text and text.count("<circle") == 33
    assert run(["plot", "--input", set33, "--overlay", "spiral"], capsys)[0] == 2
    code, out, _ = run(["plot", "--input", set33, "--overlay", "longest-cup"], capsys)
    assert "<polyline" in out


def test_module_entry_point(set33):
    proc = subprocess.run([sys.executable, "-m", "cupcap", "bounds", "--n-max", "6"], capture_output=True, text=True)
    assert proc.returncode == 0 and "33" in proc.stdout
