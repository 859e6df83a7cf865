import pytest
from fastapi.testclient import TestClient

from skewclean.service.app import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok" and body["name"] == "skewclean"


def test_analyze_endpoint(client):
    resp = client.post("/analyze", json={"ring": "zmod:4"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["order"] == 4
    assert body["units"] == [1, 3]
    assert body["radical"] == [0, 2]
    assert body["idempotents"] == [0, 1]
    assert body["is_local"] is True
    assert body["one_is_sum_of_two_units"] is False
    assert body["is_bleached"] is True
    assert body["elements"] == ["0", "1", "2", "3"]


def test_analyze_nonlocal_has_null_bleached(client):
    body = client.post("/analyze", json={"ring": "zmod:6"}).json()
    assert body["is_local"] is False
    assert body["is_bleached"] is None


def test_analyze_bad_spec_is_400(client):
    resp = client.post("/analyze", json={"ring": "nope:1"})
    assert resp.status_code == 400
    detail = resp.json()["detail"]
    assert detail["error"] == "SpecParseError"


def test_decompose_endpoint_t3_example(client):
    resp = client.post("/decompose", json={
        "ring": "zmod:4", "sigma": "id", "matrix": "[3,1,0;0,1;2]",
    })
    assert resp.status_code == 200
    body = resp.json()
    assert body["found"] is True
    assert body["case"] == "2"
    assert body["e"] == [[0, 1, 1], [0, 1, 0], [0, 0, 1]]
    assert body["u"] == [[3, 0, 3], [0, 3, 1], [0, 0, 1]]
    assert body["checks"] == {
        "idempotent": True, "commutes": True, "sum": True, "unit": True,
    }


def test_decompose_very_clean_method(client):
    resp = client.post("/decompose", json={
        "ring": "zmod:5", "matrix": "[0,1;1]", "method": "very-clean",
    })
    body = resp.json()
    assert body["found"] is True and body["kind"] == "very-clean-plus"


def test_decompose_n4_constructive_rejected(client):
    resp = client.post("/decompose", json={
        "ring": "zmod:2", "matrix": "[1,0,0,0;0,0,0;1,0;1]",
    })
    assert resp.status_code == 400
    assert "no constructive decomposer" in resp.json()["detail"]["message"]
    # the brute-force oracle handles it
    resp = client.post("/decompose", json={
        "ring": "zmod:2", "matrix": "[1,0,0,0;0,0,0;1,0;1]", "method": "brute",
    })
    assert resp.status_code == 200 and resp.json()["found"] is True


def test_decompose_nonlocal_is_400(client):
    resp = client.post("/decompose", json={"ring": "zmod:6", "matrix": "[1,0;1]"})
    assert resp.status_code == 400
    assert resp.json()["detail"]["error"] == "NotLocalError"


def test_decompose_bad_literal_is_400(client):
    resp = client.post("/decompose", json={"ring": "zmod:4", "matrix": "[9,0;1]"})
    assert resp.status_code == 400
    assert resp.json()["detail"]["error"] == "MatrixError"


def test_verify_endpoint(client):
    resp = client.post("/verify", json={"ring": "zmod:4", "suite": "2.1"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["tool"]["name"] == "skewclean"
    assert body["failed"] is False
    ids = [r["claim_id"] for r in body["reports"]]
    assert ids == ["thm2.1-backward", "thm2.1-forward"]
    assert all(r["status"] == "holds" for r in body["reports"])
    assert all(r["elapsed_ms"] is None for r in body["reports"])
    assert body["config"]["suite"] == "2.1"


def test_verify_with_timings(client):
    resp = client.post("/verify", json={
        "ring": "zmod:2", "suite": "2.1", "timings": True,
    })
    assert all(r["elapsed_ms"] is not None for r in resp.json()["reports"])


def test_verify_rejects_unknown_suite(client):
    resp = client.post("/verify", json={"ring": "zmod:4", "suite": "9.9"})
    assert resp.status_code == 422  # schema-level validation


def test_sweep_endpoint(client):
    resp = client.post("/sweep", json={"ring": "zmod:4", "n": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["all_clean"] is True
    assert body["checked"] == 64
    assert body["mode"] == "exhaustive"
    assert body["failures"] == []


def test_sweep_budget_exceeded_is_400(client):
    resp = client.post("/sweep", json={
        "ring": "zmod:4", "n": 3, "method": "brute", "budget": 100,
    })
    assert resp.status_code == 400
    detail = resp.json()["detail"]
    assert detail["error"] == "BudgetExceededError"
    assert "4096" in detail["message"]
