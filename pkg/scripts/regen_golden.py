#!/usr/bin/env python3
"""Rebuild the committed fixture bundle and the API golden files.

Run after any change that alters pipeline output, then commit the results:
    python3 scripts/make_synthetic_fixture.py   # only if the corpus changed
    python3 scripts/regen_golden.py
"""

from __future__ import annotations

import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from fastapi.testclient import TestClient

from ck.bundle import save_bundle
from ck.config import load_config
from ck.ingest import load_corpus
from ck.pipeline import run_pipeline
from ck.server import create_app

FIXTURES = ROOT / "fixtures" / "synthetic"
GOLDEN = ROOT / "tests" / "golden"


def main() -> None:
    corpus = load_corpus(FIXTURES / "danmaku.xml", FIXTURES / "transcript.srt", FIXTURES / "meta.json")
    bundle = run_pipeline(corpus, load_config())
    save_bundle(bundle, FIXTURES / "bundle.json")
    video_id = bundle.meta.video_id

    # A stable, interesting comment: representative of the biggest cluster.
    biggest = max(bundle.clusters, key=lambda c: (c.size, -c.cluster_id))
    target = biggest.representative_id

    requests = {
        "videos": "/api/videos",
        "video": f"/api/videos/{video_id}",
        "sections": f"/api/videos/{video_id}/sections",
        "transcript": f"/api/videos/{video_id}/transcript?from=0&to=60",
        "wordstream": f"/api/videos/{video_id}/wordstream?from=0&to=120",
        "wordstream_filtered": f"/api/videos/{video_id}/wordstream?categories=inquiry,concept-noting",
        "danmaku": f"/api/videos/{video_id}/danmaku?from=10&to=40&categories=inquiry",
        "danmaku_all": f"/api/videos/{video_id}/danmaku",
        "graph": f"/api/videos/{video_id}/graph?t=37",
        "related": f"/api/videos/{video_id}/danmaku/{target}/related",
        "explanation": f"/api/videos/{video_id}/danmaku/{target}/explanation",
    }

    GOLDEN.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as served:
        shutil.copy(FIXTURES / "bundle.json", Path(served) / "bundle.json")
        with TestClient(create_app(served)) as client:
            for name, path in requests.items():
                response = client.get(path)
                response.raise_for_status()
                (GOLDEN / f"{name}.json").write_bytes(response.content)
                print(f"{name}: {len(response.content)} bytes")

    (GOLDEN / "manifest.json").write_text(json.dumps(requests, indent=2) + "\n", "utf-8")
    print(f"bundle + {len(requests)} goldens written")


if __name__ == "__main__":
    main()
