"""End-to-end CLI checks: output formats, schemas, determinism, exit codes,
file and figure emission. Everything runs through a real subprocess."""

import json
import subprocess
import sys

BASE = [sys.executable, "-m", "hpmaps"]


def run(*args, **kw):
    return subprocess.run(BASE + list(args), capture_output=True, text=True,
                          **kw)


def test_table1_csv_shape():
    out = subprocess.run(BASE + ["table1", "--p", "3", "--t-max", "6",
                                 "--format", "csv"], capture_output=True)
    assert out.returncode == 0
    raw = out.stdout.decode()
    assert "\r\n" in raw  # RFC 4180 line endings
    lines = raw.replace("\r\n", "\n").strip().split("\n")
    header = lines[0].split(",")
    assert header[0] == "t"
    assert len(lines) == 8  # header + t = 0..6
    row1 = dict(zip(header, lines[2].split(",")))
    assert row1["t"] == "1"
    assert row1["chi_p_B"] == "-1"


def test_json_schema_and_columns():
    out = run("table1", "--p", "3", "--t-max", "3", "--format", "json")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["schema"] == "hpmaps/table1/1"
    assert set(doc) == {"schema", "columns", "rows"}
    assert len(doc["rows"]) == 4
    assert list(doc["rows"][0]) == doc["columns"]


def test_pretty_format():
    out = run("sweep", "--p", "3", "--t-max", "15", "--format", "pretty")
    assert out.returncode == 0
    assert "omega" in out.stdout.splitlines()[0]


def test_reruns_byte_identical():
    args = ("fp", "--k", "1", "--n", "2", "--method", "montecarlo",
            "--samples", "2000", "--seed", "7", "--format", "json")
    a, b = run(*args), run(*args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_exit_2_on_bad_usage():
    assert run("table1", "--no-such-flag").returncode == 2
    assert run("nonexistent-subcommand").returncode == 2
    # invalid domain input: 1/5 is not a 3-power denominator
    assert run("phi", "--t", "1/5", "--p", "3").returncode == 2


def test_exit_1_on_failed_verification():
    out = run("quadcheck", "--tol", "1e-30")
    assert out.returncode == 1


def test_verify_all_passes():
    out = run("verify-all")
    assert out.returncode == 0
    lines = [ln for ln in out.stdout.splitlines() if ln.strip()]
    assert sum("PASS" in ln for ln in lines) == 10
    assert not any("FAIL" in ln for ln in lines)


def test_output_file(tmp_path):
    target = tmp_path / "sweep.csv"
    out = run("sweep", "--p", "3", "--t-max", "15", "--format", "csv",
              "--output", str(target))
    assert out.returncode == 0
    data = target.read_bytes()
    assert b"\r\n" in data
    assert data.startswith(b"t,omega,word,verified")


def test_plot_renders_figure(tmp_path):
    target = tmp_path / "summatory.csv"
    out = run("summatory", "--kind", "ones", "--p", "3", "--n-max", "64",
              "--plot", "--output", str(target))
    assert out.returncode == 0
    assert target.exists()
    png = target.with_suffix(".png")
    assert png.exists()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
