"""End-to-end tests of the command line tool.

Most tests run the installed console script in a subprocess and check the
exit code contract (0 = verdicts hold, 2 = a verdict failed, 1 = error),
the report JSON on stdout / --out, and the PASS/FAIL lines on stderr.
Server mode is exercised in-process by routing httpx through the ASGI app.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

C4 = {
    "kind": "raag",
    "graph": {
        "vertices": ["a", "b", "c", "d"],
        "edges": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]],
    },
}
F2 = {"kind": "raag", "graph": {"vertices": ["a", "b"], "edges": []}}


def run_cli(*args: str, timeout: int = 600) -> subprocess.CompletedProcess:
    exe = shutil.which("mqm")
    cmd = [exe] if exe else [sys.executable, "-c", "from mqm.cli import main; main()"]
    return subprocess.run([*cmd, *args], capture_output=True, text=True, timeout=timeout)


def strip_runtime(obj):
    if isinstance(obj, dict):
        return {k: strip_runtime(v) for k, v in obj.items() if k != "runtime_ms"}
    if isinstance(obj, list):
        return [strip_runtime(v) for v in obj]
    return obj


@pytest.fixture(scope="module")
def c4_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("models") / "c4.json"
    p.write_text(json.dumps(C4))
    return str(p)


def test_brooks_passes_and_prints_report():
    r = run_cli("brooks", "--model", json.dumps(F2), "--segment", "a,b", "--radius", "2")
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["command"] == "brooks"
    assert [v["name"] for v in rep["verdicts"]] == ["defect_big", "defect_small"]
    assert "PASS brooks:defect_big" in r.stderr
    assert "PASS brooks:defect_small" in r.stderr
    assert "FAIL" not in r.stderr


def test_out_file_instead_of_stdout(c4_file, tmp_path):
    out = tmp_path / "report.json"
    r = run_cli("staircase", "--model", c4_file, "--radius", "2", "--out", str(out))
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip() == ""
    rep = json.loads(out.read_text())
    assert rep["command"] == "staircase"
    assert "PASS staircase:sigma_consistent" in r.stderr


def test_inline_model_json():
    r = run_cli("staircase", "--model", json.dumps(C4), "--radius", "1")
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["sigma"]["value"] == 1


def test_witness_gamma_mode(c4_file):
    r = run_cli(
        "witness", "--model", c4_file, "--segment", "a", "--gamma", "a,c", "--powers", "4"
    )
    assert r.returncode == 0, r.stderr
    rep = json.loads(r.stdout)
    assert rep["results"]["mode"] == "gamma_nested"
    assert "PASS witness:nested_growth" in r.stderr


def test_declared_sigma_refuted_exits_2(tmp_path):
    """A spec may declare sigma; the staircase search can refute it."""
    p = tmp_path / "c4_sigma0.json"
    p.write_text(json.dumps({**C4, "sigma": 0}))
    r = run_cli("staircase", "--model", str(p), "--radius", "2")
    assert r.returncode == 2
    assert "FAIL staircase:sigma_consistent" in r.stderr
    rep = json.loads(r.stdout)
    bad = [v for v in rep["verdicts"] if not v["ok"]]
    assert [v["name"] for v in bad] == ["sigma_consistent"]
    assert rep["results"]["sigma_lower_bound"] > 0


def test_non_rigid_segment_is_an_error(c4_file):
    # a and b commute in C4, so "a,b" is not rigid and defect refuses it
    r = run_cli("defect", "--model", c4_file, "--segment", "a,b")
    assert r.returncode == 1
    assert "error:" in r.stderr
    assert r.stdout.strip() == ""


def test_missing_model_file():
    r = run_cli("brooks", "--model", "/no/such/model.json", "--segment", "a")
    assert r.returncode == 1
    assert "error:" in r.stderr


def test_broken_inline_json():
    r = run_cli("staircase", "--model", '{"kind": ')
    assert r.returncode == 1
    assert "error:" in r.stderr


def test_missing_required_option_is_usage_error(c4_file):
    r = run_cli("brooks", "--model", c4_file)
    assert r.returncode == 1
    assert "--segment" in r.stderr


def test_reports_are_deterministic():
    """Same command twice gives identical reports up to timing."""
    args = ("brooks", "--model", json.dumps(F2), "--segment", "a,b^-1", "--radius", "2")
    a, b = run_cli(*args), run_cli(*args)
    assert a.returncode == b.returncode == 0
    ra, rb = json.loads(a.stdout), json.loads(b.stdout)
    assert strip_runtime(ra) == strip_runtime(rb)
    assert ra["config_hash"] == rb["config_hash"]


def test_server_mode_round_trip(monkeypatch, tmp_path):
    """--server posts the payload to the service and prints its report."""
    import httpx
    from click.testing import CliRunner
    from fastapi.testclient import TestClient

    from mqm.cli import cli
    from mqm.service import create_app

    client = TestClient(create_app())

    def fake_post(url, json=None, timeout=None):
        path = url.split("http://unit.test", 1)[1]
        return client.post(path, json=json)

    monkeypatch.setattr(httpx, "post", fake_post)
    out = tmp_path / "remote.json"
    res = CliRunner().invoke(
        cli,
        [
            "brooks",
            "--model",
            json.dumps(F2),
            "--segment",
            "a,b",
            "--radius",
            "2",
            "--server",
            "http://unit.test",
            "--out",
            str(out),
        ],
    )
    assert res.exit_code == 0, res.output
    rep = json.loads(out.read_text())
    assert rep["command"] == "brooks"
    assert all(v["ok"] for v in rep["verdicts"])
    # same run computed locally agrees modulo timing
    local = run_cli("brooks", "--model", json.dumps(F2), "--segment", "a,b", "--radius", "2")
    assert strip_runtime(json.loads(local.stdout)) == strip_runtime(rep)
