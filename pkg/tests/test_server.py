import json
import shutil
import threading

import pytest

from conftest import FIXTURES, GOLDEN


@pytest.fixture(scope="module")
def golden_client(tmp_path_factory):
    """Client over the committed fixture bundle (what the goldens pin)."""
    from fastapi.testclient import TestClient

    from ck.server import create_app

    served = tmp_path_factory.mktemp("served")
    shutil.copy(FIXTURES / "bundle.json", served / "bundle.json")
    with TestClient(create_app(served)) as client:
        yield client


def manifest():
    return json.loads((GOLDEN / "manifest.json").read_text("utf-8"))


def test_committed_bundle_matches_current_pipeline(corpus):
    """The committed fixture bundle must be regenerated (scripts/regen_golden.py)
    whenever pipeline output changes."""
    from ck.bundle import bundle_to_dict, canonical_dumps
    from ck.config import load_config
    from ck.pipeline import run_pipeline

    rebuilt = canonical_dumps(bundle_to_dict(run_pipeline(corpus, load_config()))).encode() + b"\n"
    committed = (FIXTURES / "bundle.json").read_bytes()
    assert rebuilt == committed, "fixture bundle out of date: run scripts/regen_golden.py"


@pytest.mark.parametrize("name", sorted(manifest()))
def test_golden_endpoint(golden_client, name):
    path = manifest()[name]
    response = golden_client.get(path)
    assert response.status_code == 200
    assert response.content == (GOLDEN / f"{name}.json").read_bytes()


class TestErrors:
    def test_unknown_video_404(self, golden_client):
        assert golden_client.get("/api/videos/nope").status_code == 404

    def test_bad_category_400(self, golden_client):
        r = golden_client.get("/api/videos/synthetic-001/danmaku?categories=bogus")
        assert r.status_code == 400
        assert "bogus" in r.json()["error"]

    def test_bad_range_400(self, golden_client):
        assert golden_client.get("/api/videos/synthetic-001/wordstream?from=50&to=10").status_code == 400

    def test_non_numeric_param_400(self, golden_client):
        assert golden_client.get("/api/videos/synthetic-001/transcript?from=abc").status_code == 400

    def test_graph_requires_t(self, golden_client):
        assert golden_client.get("/api/videos/synthetic-001/graph").status_code == 400

    def test_graph_t_out_of_range(self, golden_client):
        assert golden_client.get("/api/videos/synthetic-001/graph?t=-1").status_code == 400
        assert golden_client.get("/api/videos/synthetic-001/graph?t=99999").status_code == 400

    def test_related_unknown_comment_404(self, golden_client):
        assert golden_client.get("/api/videos/synthetic-001/danmaku/zzz/related").status_code == 404

    def test_explanation_unknown_comment_404(self, golden_client):
        assert golden_client.get("/api/videos/synthetic-001/danmaku/zzz/explanation").status_code == 404


class TestSemantics:
    def test_graph_window_arithmetic(self, golden_client):
        payload = golden_client.get("/api/videos/synthetic-001/graph?t=37").json()
        assert payload["window"]["index"] == 1  # floor(37 / 20)
        assert payload["window"]["start"] == 20.0

    def test_danmaku_filter_only_requested_categories(self, golden_client):
        payload = golden_client.get("/api/videos/synthetic-001/danmaku?categories=inquiry").json()
        assert payload
        assert {row["category"] for row in payload} == {"inquiry"}

    def test_danmaku_range_uses_window_midpoint(self, golden_client):
        payload = golden_client.get("/api/videos/synthetic-001/danmaku?from=10&to=40").json()
        for row in payload:
            mid = row["window_id"] * 20.0 + 10.0
            assert 10.0 <= mid < 40.0

    def test_scroll_spec_served(self, golden_client):
        payload = golden_client.get("/api/videos/synthetic-001/danmaku").json()
        sizes = {row["size"] for row in payload}
        assert any(s >= 2 for s in sizes)
        for row in payload:
            assert 4.0 <= row["scroll"]["duration_s"] <= 12.0
            assert 1.0 <= row["scroll"]["font_scale"] <= 1.6
            assert (row["scroll"]["badge"] is not None) == (row["size"] >= 2)

    def test_wordstream_filter_drops_bands(self, golden_client):
        payload = golden_client.get("/api/videos/synthetic-001/wordstream?categories=inquiry").json()
        assert [b["category"] for b in payload["layout"]["bands"]] == ["inquiry"]

    def test_transcript_range(self, golden_client):
        payload = golden_client.get("/api/videos/synthetic-001/transcript?from=0&to=60").json()
        assert payload
        assert all(ln["start"] < 60.0 and ln["end"] > 0.0 for ln in payload)

    def test_videos_listing(self, golden_client):
        payload = golden_client.get("/api/videos").json()
        assert payload == [{"duration": 660.0, "title": payload[0]["title"], "video_id": "synthetic-001"}]


def test_concurrent_reads_identical_bytes(golden_client):
    """32 parallel clients hammering every endpoint see identical bytes."""
    paths = list(manifest().values())
    expected = {p: golden_client.get(p).content for p in paths}
    failures = []

    def worker():
        for p in paths:
            r = golden_client.get(p)
            if r.status_code != 200 or r.content != expected[p]:
                failures.append(p)

    threads = [threading.Thread(target=worker) for _ in range(32)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not failures
