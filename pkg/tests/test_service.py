"""HTTP surface: every endpoint, happy paths and input rejection."""

import pytest
from fastapi.testclient import TestClient

from mqm import __version__
from mqm.service import create_app

C4 = {"kind": "raag", "graph": {"vertices": ["a", "b", "c", "d"],
                                "edges": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]]}}
F2 = {"kind": "raag", "graph": {"vertices": ["a", "b"], "edges": []}}
P4 = {"kind": "raag", "graph": {"vertices": ["a", "b", "c", "d"],
                                "edges": [["a", "b"], ["b", "c"], ["c", "d"]]}}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def envelope_ok(body, command):
    assert body["command"] == command
    assert body["package"]["version"] == __version__
    assert isinstance(body["config_hash"], str) and len(body["config_hash"]) == 16
    assert isinstance(body["verdicts"], list)
    for v in body["verdicts"]:
        assert set(v) == {"name", "ok", "detail"}
    assert "results" in body


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": __version__}


def test_brooks_endpoint(client):
    r = client.post("/v1/brooks", json={"model": F2, "segment": "a,b", "radius": 2})
    assert r.status_code == 200
    body = r.json()
    envelope_ok(body, "brooks")
    res = body["results"]
    assert res["big"]["bound"] == 3 * (2 - 1)
    assert res["big"]["respected"]
    assert res["small"]["bound"] == 2
    assert res["small"]["respected"]
    assert res["triples"] == 17 ** 3  # |B_2(F_2)| cubed
    assert all(v["ok"] for v in body["verdicts"])


def test_brooks_rejects_non_free_models(client):
    r = client.post("/v1/brooks", json={"model": C4, "segment": "a,c"})
    assert r.status_code == 422
    assert "free" in r.json()["detail"]


def test_defect_endpoint(client):
    r = client.post("/v1/defect", json={"model": C4, "segment": "a,c", "radius": 2})
    assert r.status_code == 200
    body = r.json()
    envelope_ok(body, "defect")
    assert body["sigma"]["value"] == 1
    assert body["results"]["bound"] == 3 * 1 * 1 * 4
    assert body["results"]["bound_respected"]


def test_defect_rejects_non_rigid_segments(client):
    r = client.post("/v1/defect", json={"model": C4, "segment": "a,b"})
    assert r.status_code == 422
    assert "rigid" in r.json()["detail"]


def test_cup_endpoint(client):
    r = client.post("/v1/cup", json={"model": C4, "segment": "a,a",
                                     "segment2": "c,c", "radius": 1})
    assert r.status_code == 200
    body = r.json()
    envelope_ok(body, "cup")
    assert body["results"]["exactness"]["failures"] == 0
    names = {v["name"]: v["ok"] for v in body["verdicts"]}
    assert names["label_hypothesis"]
    assert names["exactness"]
    assert names["beta_bounded"]
    assert names["nontransverse"]


def test_witness_endpoint_separation(client):
    r = client.post("/v1/witness", json={"model": P4, "segment": "a,c",
                                         "f_names": "a,c", "powers": 3})
    assert r.status_code == 200
    body = r.json()
    envelope_ok(body, "witness")
    assert body["results"]["mode"] == "separation"
    assert all(v["ok"] for v in body["verdicts"])


def test_witness_endpoint_distance(client):
    r = client.post("/v1/witness", json={"model": F2, "segment": "a,b",
                                         "segment2": "b,a", "powers": 3})
    assert r.status_code == 200
    body = r.json()
    assert body["results"]["mode"] == "distance"
    assert all(v["ok"] for v in body["verdicts"])


def test_witness_endpoint_gamma_nested(client):
    r = client.post("/v1/witness", json={"model": C4, "gamma": "a,c", "powers": 4})
    assert r.status_code == 200
    body = r.json()
    assert body["results"]["mode"] == "gamma_nested"
    assert body["results"]["segment_found"] == "a,c"
    assert all(v["ok"] for v in body["verdicts"])


def test_witness_needs_segment_or_gamma(client):
    r = client.post("/v1/witness", json={"model": C4})
    assert r.status_code == 422


def test_staircase_endpoint(client):
    r = client.post("/v1/staircase", json={"model": {"kind": "staircase"}, "radius": 3})
    assert r.status_code == 200
    body = r.json()
    envelope_ok(body, "staircase")
    assert body["results"]["sigma_lower_bound"] == 2
    r2 = client.post("/v1/staircase", json={"model": C4, "radius": 2})
    assert r2.json()["results"]["sigma_lower_bound"] == 1


def test_validation_errors(client):
    # pydantic rejects out-of-range radius before any computation
    r = client.post("/v1/defect", json={"model": C4, "segment": "a,c", "radius": 99})
    assert r.status_code == 422
    r = client.post("/v1/brooks", json={"model": {"kind": "nope"}, "segment": "a"})
    assert r.status_code == 422
    r = client.post("/v1/cup", json={"model": C4, "segment": "a,a"})  # no segment2
    assert r.status_code == 422


def test_witness_separation_direct_factor_rejected(client):
    # segment alone implies separation mode with F = its support; on C4 the
    # support {a, c} generates a direct factor, which the construction forbids
    r = client.post("/v1/witness", json={"model": C4, "segment": "a,c"})
    assert r.status_code == 422
    assert "direct factor" in r.json()["detail"]
