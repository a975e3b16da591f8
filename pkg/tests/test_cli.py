import csv
import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import jsonschema
import pytest

from interaction_tda.cli import main
from interaction_tda.schemas import BARCODE, BENCHMARK_COLUMNS, SPECTRA, WU


def run_cli(*args):
    return main([str(a) for a in args])


@pytest.fixture
def example_csv(data_dir):
    return data_dir / "example33.csv"


def test_barcode_mode(tmp_path, example_csv):
    assert run_cli("--input", example_csv, "--groups", "R,K;K,B", "--mode", "barcode", "--out", tmp_path) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == [f"barcode_p{p}.{ext}" for p in (0, 1) for ext in ("csv", "json", "svg")]
    data = json.loads((tmp_path / "barcode_p1.json").read_text())
    jsonschema.validate(data, BARCODE)
    assert data[0]["bars"] == [{"birth": 1.0, "death": math.sqrt(2)}]
    rows = list(csv.reader((tmp_path / "barcode_p0.csv").open()))
    assert rows == [["degree", "birth", "death"], ["0", "0.0", "1.0"], ["0", "0.0", "1.0"]]
    for p in (0, 1):
        root = ET.parse(tmp_path / f"barcode_p{p}.svg").getroot()
        assert root.tag.endswith("svg")


def test_spectra_mode_with_explicit_grid(tmp_path, example_csv):
    code = run_cli("--input", example_csv, "--groups", "R,K;K,B", "--mode", "spectra",
                   "--grid", "0,0.5,1,1.2,1.5", "--out", tmp_path)
    assert code == 0
    data = json.loads((tmp_path / "spectra_p1.json").read_text())
    jsonschema.validate(data, SPECTRA)
    assert [e["t"] for e in data] == [0, 0.5, 1, 1.2, 1.5]
    assert [round(e["gap"], 9) for e in data] == [0, 0, round(3 - math.sqrt(3), 9), round(3 - math.sqrt(3), 9), 2]
    ET.parse(tmp_path / "spectra_p0.svg")


def test_spectra_range_grid_and_config(tmp_path, example_csv):
    cfg = tmp_path / "run.toml"
    cfg.write_text(f'input = "{example_csv}"\ngroups = [["R", "K"], ["K", "B"]]\nmode = "spectra"\n'
                   f'grid = "0:2:0.5"\nmax-degree = 0\n')
    out = tmp_path / "out"
    assert run_cli("--config", cfg, "--out", out) == 0
    assert sorted(p.name for p in out.iterdir()) == ["spectra_p0.csv", "spectra_p0.json", "spectra_p0.svg"]
    gaps = [e["gap"] for e in json.loads((out / "spectra_p0.json").read_text())]
    assert gaps == pytest.approx([0, 0, 3, 4, 4])
    # flags override the config file
    out2 = tmp_path / "out2"
    assert run_cli("--config", cfg, "--max-degree", "1", "--out", out2) == 0
    assert (out2 / "spectra_p1.json").exists()


def test_classic_mode(tmp_path, example_csv):
    code = run_cli("--input", example_csv, "--groups", "R,K;K,B", "--mode", "classic",
                   "--grid", "0.5,1.2,2,2.5", "--out", tmp_path)
    assert code == 0
    gaps = [e["gap"] for e in json.loads((tmp_path / "spectra_p1.json").read_text())]
    assert gaps == pytest.approx([0, 2 - math.sqrt(2), 2, 4], abs=1e-9)


def test_wu_mode_complex_file(tmp_path, data_dir):
    assert run_cli("--input", data_dir / "boundary_triangle.txt", "--format", "complex",
                   "--mode", "wu", "--out", tmp_path) == 0
    report = json.loads((tmp_path / "wu.json").read_text())
    jsonschema.validate(report, WU)
    assert report == {"omega": 0, "pair_counts": [3, 12, 9], "betti": [0, 1, 1],
                      "betti_alternating_sum": 0, "consistent": True}
    assert run_cli("--input", data_dir / "triangle.txt", "--format", "complex",
                   "--mode", "wu", "--out", tmp_path) == 0
    assert json.loads((tmp_path / "wu.json").read_text())["omega"] == 1


def test_wu_mode_point_cloud(tmp_path, example_csv):
    assert run_cli("--input", example_csv, "--groups", "K;K", "--mode", "wu", "--out", tmp_path) == 0
    report = json.loads((tmp_path / "wu.json").read_text())
    # two points at distance 1: a single edge, whose self-interaction has omega = 2 - 4 + 1
    assert report["omega"] == -1 and report["consistent"]


def test_benchmark_mode(tmp_path, example_csv):
    assert run_cli("--input", example_csv, "--groups", "R,K;K,B", "--mode", "benchmark", "--out", tmp_path) == 0
    rows = list(csv.DictReader((tmp_path / "benchmark.csv").open()))
    assert list(rows[0]) == BENCHMARK_COLUMNS
    assert [(r["pipeline"], r["degree"]) for r in rows] == [
        ("classic", "0"), ("classic", "1"), ("interaction", "0"), ("interaction", "1")]
    assert all(float(r["seconds"]) > 0 for r in rows)
    first = [r["gap_sum"] for r in rows]
    assert run_cli("--input", example_csv, "--groups", "R,K;K,B", "--mode", "benchmark", "--out", tmp_path) == 0
    assert [r["gap_sum"] for r in csv.DictReader((tmp_path / "benchmark.csv").open())] == first


def test_disjoint_groups_give_empty_barcodes(tmp_path, example_csv):
    assert run_cli("--input", example_csv, "--groups", "R;B", "--mode", "barcode", "--out", tmp_path) == 0
    for p in (0, 1):
        data = json.loads((tmp_path / f"barcode_p{p}.json").read_text())
        jsonschema.validate(data, BARCODE)
        assert data[0]["bars"] == []


@pytest.mark.parametrize("args", [
    ["--input", "missing.xyz", "--groups", "C;H", "--mode", "barcode"],
    ["--input", "{csv}", "--groups", "R,K", "--mode", "barcode"],
    ["--input", "{csv}", "--groups", "R;Zn", "--mode", "barcode"],
    ["--input", "{csv}", "--groups", "R;K", "--mode", "wu"],
    ["--input", "{csv}", "--groups", "R;K", "--mode", "barcode", "--format", "complex"],
    ["--input", "{csv}", "--groups", "R;K", "--mode", "spectra", "--grid", "2:1:0.5"],
    ["--input", "{csv}", "--groups", "R;K", "--mode", "spectra", "--tol", "0"],
    ["--input", "{bad}", "--groups", "R;K", "--mode", "barcode", "--format", "xyz"],
    ["--groups", "R;K", "--mode", "barcode"],
])
def test_usage_and_input_errors(tmp_path, example_csv, args, capsys):
    bad = tmp_path / "bad.xyz"
    bad.write_text("2\ncomment\nC 0 0 0\n")
    out = tmp_path / "out"
    args = [a.format(csv=example_csv, bad=bad) for a in args]
    assert run_cli(*args, "--out", out) == 2
    assert not out.exists()
    assert "error" in capsys.readouterr().err


def test_argparse_rejects_unknown_mode():
    with pytest.raises(SystemExit) as info:
        run_cli("--mode", "nope")
    assert info.value.code == 2


def test_module_entry_point(tmp_path, example_csv):
    proc = subprocess.run([sys.executable, "-m", "interaction_tda", "--input", str(example_csv),
                           "--groups", "R,K;K,B", "--mode", "barcode", "--max-degree", "0",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.split() == [str(tmp_path / f"barcode_p0.{e}") for e in ("json", "csv", "svg")]
