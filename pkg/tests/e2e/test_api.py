"""
End-to-end tests for the HTTP surface.

Runs the FastAPI app in-process through TestClient and checks:

  1. Read-only endpoints return the same numbers as the library
  2. Out-of-range and malformed queries are rejected with 422
  3. The verification job lifecycle (create, poll, fetch report) and its
     404 / 409 responses

Run:
    pip install -r requirements-dev.txt
    pytest tests/e2e/test_api.py -v
"""

import pytest
from fastapi.testclient import TestClient

from app.api import routes
from app.config import Settings
from app.core import jobs
from app.main import app

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

PREFIX = [1, 1, 1, 2, 1, 2, 2, 1, 3, 2, 2, 3, 1, 3]

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


# ---------------------------------------------------------------------------
# 1. Sequence, orbit and staircase
# ---------------------------------------------------------------------------


class TestReadEndpoints:
    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok"}

    def test_r(self, client):
        data = client.get("/api/r/6").json()
        assert data == {"n": 6, "word": "1001", "blocks": [2, 0], "r": 2, "r_prev": 2}

    def test_r_of_zero(self, client):
        data = client.get("/api/r/0").json()
        assert data["r"] == 1 and data["r_prev"] is None and data["word"] == ""

    def test_zeckendorf_alias(self, client):
        assert client.get("/api/zeckendorf/12").json()["blocks"] == [1, 1, 0]

    def test_seq(self, client):
        rows = client.get("/api/seq", params={"start": 0, "stop": 13}).json()
        assert [row["R"] for row in rows] == PREFIX
        assert [row["n"] for row in rows] == list(range(14))

    def test_orbit(self, client):
        rows = client.get("/api/orbit", params={"stop": 8, "precision": 6}).json()
        assert len(rows) == 9
        assert rows[1]["y_decimal"] == "0.381966"
        assert (rows[7]["h_num"], rows[7]["h_den"]) == (3, 1)

    def test_staircase(self, client):
        rows = client.get("/api/staircase", params={"depth": 0}).json()
        assert len(rows) == 2
        assert all((row["value_num"], row["value_den"]) == (1, 1) for row in rows)

    def test_window(self, client):
        rows = client.get("/api/window", params={"pattern": "1"}).json()
        assert [(row["lo"]["p"], row["lo"]["q"]) for row in rows] == [(-5, 3), (2, -1)]

    def test_patch_with_density(self, client):
        data = client.get("/api/patch", params={"pattern": "1", "limit": 13, "density": True}).json()
        assert data["hits"] == [0, 1, 5, 9, 13]
        assert (data["density"]["p"], data["density"]["q"]) == (-3, 2)

    def test_patch_without_density(self, client):
        data = client.get("/api/patch", params={"pattern": "1,1", "limit": 2}).json()
        assert 0 in data["hits"]
        assert data["density"] is None


# ---------------------------------------------------------------------------
# 2. Growth and the CDF
# ---------------------------------------------------------------------------


class TestGrowthEndpoints:
    def test_growth(self, client):
        rows = client.get("/api/growth", params={"start": 60, "stop": 100}).json()
        assert [row["H"] for row in rows] == list(range(60, 101))

    def test_extremes(self, client):
        data = client.get("/api/growth/extremes", params={"start": 60, "stop": 6765}).json()
        assert data["min_ratio"] < data["max_ratio"]

    def test_cdf(self, client):
        data = client.get("/api/cdf", params={"x": "0", "depth": 12}).json()
        assert (data["lower_num"], data["upper_num"], data["denominator"]) == (0, 1, 4096)

    def test_profile(self, client):
        rows = client.get("/api/profile", params={"samples": 3, "depth": 12}).json()
        assert len(rows) == 3
        assert rows[0]["gamma"] == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# 3. Rejected requests
# ---------------------------------------------------------------------------


class TestValidation:
    @pytest.mark.parametrize(
        "path, params",
        [
            ("/api/seq", {"start": 0, "stop": 10**7}),
            ("/api/seq", {"start": 5, "stop": 2}),
            ("/api/r/-1", {}),
            ("/api/staircase", {"depth": 15}),
            ("/api/window", {"pattern": "0"}),
            ("/api/window", {"pattern": "a"}),
            ("/api/growth", {"start": 0, "stop": 10}),
            ("/api/cdf", {"x": "2", "depth": 12}),
            ("/api/cdf", {"x": "1", "depth": 1}),
            ("/api/profile", {"samples": 1}),
        ],
    )
    def test_unprocessable(self, client, path, params):
        resp = client.get(path, params=params)
        assert resp.status_code == 422, f"{path} {params} returned {resp.status_code}"

    def test_verify_request_bounds(self, client):
        assert client.post("/api/verify", json={"max_n": 5}).status_code == 422
        assert client.post("/api/verify", json={"max_n": 100, "jobs": 0}).status_code == 422


# ---------------------------------------------------------------------------
# 4. Verification jobs
# ---------------------------------------------------------------------------


class TestVerifyJobs:
    def test_lifecycle(self, client, monkeypatch, tmp_path):
        monkeypatch.setattr(routes, "get_settings", lambda: Settings(REPORTS_DIR=tmp_path))
        resp = client.post("/api/verify", json={"max_n": 200})
        assert resp.status_code == 200
        job_id = resp.json()["job_id"]

        # TestClient runs background tasks before returning
        status = client.get(f"/api/verify/{job_id}/status").json()
        assert status["status"] == "done", status
        assert status["passed"] is True

        report = client.get(f"/api/verify/{job_id}/report")
        assert report.status_code == 200
        assert "<table>" in report.text
        assert (tmp_path / f"{job_id}.md").exists()

    def test_unknown_job(self, client):
        assert client.get("/api/verify/nope/status").status_code == 404
        assert client.get("/api/verify/nope/report").status_code == 404

    def test_report_before_completion(self, client):
        job = jobs.create_job(200)
        resp = client.get(f"/api/verify/{job.job_id}/report")
        assert resp.status_code == 409
