import json
from pathlib import Path

import jsonschema
import pytest
from fastapi.testclient import TestClient

from podium.corpus import save_corpus
from podium.server import create_app
from podium.workspace import Workspace

SCHEMAS = Path(__file__).parent / "schemas"


def check(instance, schema_name):
    schema = json.loads((SCHEMAS / f"{schema_name}.json").read_text())
    jsonschema.validate(instance, schema)


@pytest.fixture(scope="module")
def client(seed7_corpus, tmp_path_factory):
    corpus_dir = tmp_path_factory.mktemp("corpus")
    save_corpus(seed7_corpus, corpus_dir)
    ws = Workspace(corpus_dir, tmp_path_factory.mktemp("out"))
    return TestClient(create_app(ws))


class TestSpeeches:
    def test_list_matches_schema_and_corpus_size(self, client):
        r = client.get("/api/speeches")
        assert r.status_code == 200
        body = r.json()
        check(body, "speeches")
        assert len(body) == 40

    def test_country_filter(self, client):
        r = client.get("/api/speeches?country=us")
        body = r.json()
        assert all(s["country"] == "US" for s in body)
        assert 0 < len(body) < 40

    def test_level_filter(self, client):
        r = client.get("/api/speeches?level=5")
        body = r.json()
        assert len(body) == 8
        assert all(s["level"] == 5 for s in body)

    def test_bad_level_rejected(self, client):
        r = client.get("/api/speeches?level=9")
        assert r.status_code == 422
        check(r.json(), "error")

    def test_detail_matches_schema(self, client):
        r = client.get("/api/speeches/s000")
        assert r.status_code == 200
        check(r.json(), "speech_detail")

    def test_unknown_speech_404(self, client):
        r = client.get("/api/speeches/nope")
        assert r.status_code == 404
        check(r.json(), "error")


class TestFactors:
    def test_json_default(self, client):
        r = client.get("/api/factors")
        assert r.status_code == 200
        check(r.json(), "factors")

    def test_csv_via_accept(self, client):
        r = client.get("/api/factors", headers={"Accept": "text/csv"})
        assert r.status_code == 200
        assert r.headers["content-type"].startswith("text/csv")
        assert r.text.startswith("speech_id,")
        assert len(r.text.splitlines()) == 41


class TestAnalysis:
    def test_matches_schema_sorted(self, client):
        r = client.get("/api/analysis")
        body = r.json()
        check(body, "analysis")
        ps = [e["p_value"] for e in body if e["p_value"] is not None]
        assert ps == sorted(ps)

    def test_distribution(self, client):
        r = client.get("/api/analysis/facial_arousal_average/distribution")
        assert r.status_code == 200
        check(r.json(), "layout_distribution")

    def test_distribution_unknown_factor(self, client):
        r = client.get("/api/analysis/not_a_factor/distribution")
        assert r.status_code == 404
        check(r.json(), "error")


class TestEmbeddingEndpoints:
    def test_embedding_schema(self, client):
        r = client.get("/api/embedding")
        body = r.json()
        check(body, "embedding")
        assert len(body["points"]) == 40

    def test_radar_schema(self, client):
        r = client.get("/api/radar/s000")
        assert r.status_code == 200
        check(r.json(), "radar")

    def test_radar_unknown_404(self, client):
        r = client.get("/api/radar/ghost")
        assert r.status_code == 404
        check(r.json(), "error")


class TestLayouts:
    @pytest.mark.parametrize("kind,schema", [
        ("spiral", "layout_spiral"),
        ("script", "layout_script"),
        ("type", "layout_type"),
    ])
    def test_layout_schemas(self, client, kind, schema):
        r = client.get(f"/api/layout/{kind}/s001")
        assert r.status_code == 200
        check(r.json(), schema)

    def test_strip_schema(self, client):
        r = client.get("/api/layout/factor-strip/vocabulary")
        assert r.status_code == 200
        check(r.json(), "layout_strip")

    def test_unknown_speech_404(self, client):
        r = client.get("/api/layout/spiral/unknown-id")
        assert r.status_code == 404
        check(r.json(), "error")

    def test_unknown_kind_404(self, client):
        r = client.get("/api/layout/mosaic/s001")
        assert r.status_code == 404
        check(r.json(), "error")

    def test_unknown_strip_factor_404(self, client):
        r = client.get("/api/layout/factor-strip/ghost_factor")
        assert r.status_code == 404
        check(r.json(), "error")


class TestDeterminism:
    @pytest.mark.parametrize("path", [
        "/api/speeches",
        "/api/factors",
        "/api/analysis",
        "/api/embedding",
        "/api/layout/spiral/s002",
        "/api/radar/s010",
    ])
    def test_repeated_gets_byte_identical(self, client, path):
        a = client.get(path)
        b = client.get(path)
        assert a.content == b.content

    def test_every_endpoint_is_json_with_error_body(self, client):
        for path in ["/api/speeches/zzz", "/api/radar/zzz", "/api/layout/spiral/zzz"]:
            r = client.get(path)
            assert r.headers["content-type"].startswith("application/json")
            assert set(r.json().keys()) == {"error"}
