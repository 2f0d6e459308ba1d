"""
HTTP front end: /health and /score over a shared stream state.
"""
import pytest
from fastapi.testclient import TestClient

from src.core.serving import StreamState
from src.web.app import create_app
from tests.factories import make_account


@pytest.fixture
def client(bundle):
    return TestClient(create_app(StreamState(bundle, threshold=0.0)))


def payload(record) -> dict:
    return record.model_dump(mode="json")


class TestHealth:
    def test_fresh_state(self, client, bundle):
        body = client.get("/health").json()
        assert body["status"] == "ok"
        assert body["window_length"] == bundle.config.T
        assert body["threshold"] == 0.0
        assert body["accounts"] == 0
        assert body["counters"]["received"] == 0


class TestScore:
    def test_warmup_then_alert(self, client, bundle):
        records = make_account("acct-1", bundle.config.T)
        bodies = [client.post("/score", json=payload(r)).json() for r in records]
        assert all(b["status"] == "warmup" for b in bodies[:-1])
        assert bodies[-1]["status"] == "scored"
        assert bodies[-1]["alert"] is True
        assert 0.0 <= bodies[-1]["probability"] <= 1.0

        health = client.get("/health").json()
        assert health["accounts"] == 1
        assert health["counters"]["scored"] == 1
        assert health["counters"]["alerts"] == 1

    def test_out_of_order_is_conflict(self, client):
        first, second = make_account("acct-1", 2)
        assert client.post("/score", json=payload(second)).status_code == 200
        response = client.post("/score", json=payload(first))
        assert response.status_code == 409
        assert "acct-1" in response.json()["detail"]

    def test_invalid_record_is_unprocessable(self, client):
        body = payload(make_account("acct-1", 1)[0])
        body["amount"] = -5
        assert client.post("/score", json=body).status_code == 422
        del body["amount"]
        assert client.post("/score", json=body).status_code == 422
