#!/usr/bin/env python3
"""Run the whole pipeline, persist the bundle, and query the HTTP API
in-process: the same calls the interactive viewer makes.
"""

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

corpus = load_corpus(FIXTURES / "danmaku.xml", FIXTURES / "transcript.srt", FIXTURES / "meta.json")
bundle = run_pipeline(corpus, load_config())

with tempfile.TemporaryDirectory() as bundles:
    data = save_bundle(bundle, Path(bundles) / "video.json")
    print(f"bundle: {len(data)} bytes, content hash {bundle.provenance['content_hash'][:12]}…")

    client = TestClient(create_app(bundles))
    vid = bundle.meta.video_id

    print("\nGET /api/videos")
    print(" ", client.get("/api/videos").json())

    print(f"\nGET /api/videos/{vid}/danmaku?from=0&to=120&categories=inquiry")
    for row in client.get(f"/api/videos/{vid}/danmaku?from=0&to=120&categories=inquiry").json()[:4]:
        rep = row["representative"]
        print(f"  size {row['size']}, scroll {row['scroll']['duration_s']:.1f}s: {rep['text']}")

    print(f"\nGET /api/videos/{vid}/graph?t=37 -> window", end=" ")
    graph = client.get(f"/api/videos/{vid}/graph?t=37").json()
    print(graph["window"], f"({len(graph['entities'])} entities, {len(graph['danmaku_nodes'])} danmaku nodes)")

    # follow one comment into its related list and explanation
    danmaku = client.get(f"/api/videos/{vid}/danmaku").json()
    busiest = max(danmaku, key=lambda row: row["size"])
    target = busiest["representative"]["id"]
    print(f"\nGET .../danmaku/{target}/related")
    for rel in client.get(f"/api/videos/{vid}/danmaku/{target}/related").json()["related"][:3]:
        print(f"  cos={rel['cosine']:.2f} t={rel['t']:.1f}: {rel['text']}")
    explanation = client.get(f"/api/videos/{vid}/danmaku/{target}/explanation").json()
    print(f"\nGET .../danmaku/{target}/explanation (offline-stub={explanation['offline-stub']})")
    print(f"  {explanation['text']}")
