#!/usr/bin/env python3
"""Lay out the Wordstream (stacked bands + keyword boxes), apply a category
filter and a zoom, and write both renderings to SVG files.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ck.bundle import load_bundle
from ck.presentation import bucketize, layout_wordstream, simplify_stream
from ck.render import wordstream_svg

FIXTURES = ROOT / "fixtures" / "synthetic"
OUT = Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

bundle = load_bundle(FIXTURES / "bundle.json")

full = bundle.layout
print(f"default layout: {len(full.bands)} bands, {len(full.boxes)} keyword boxes")
(OUT / "wordstream.svg").write_text(wordstream_svg(full, bundle.meta.title), "utf-8")

# zoom into the second topic block and keep only two categories
buckets = bucketize(bundle.clusters, bundle.windows, bundle.keywords, t_from=165.0, t_to=330.0)
zoomed = layout_wordstream(buckets, 960.0, 240.0, ["inquiry", "concept-noting"])
(OUT / "wordstream_zoomed.svg").write_text(wordstream_svg(zoomed, "zoom: 165-330 s"), "utf-8")
print(f"zoomed layout:  {len(zoomed.bands)} bands, {len(zoomed.boxes)} keyword boxes")

# the focused-mode strip: same shapes, compressed, no keywords
strip = simplify_stream(full, 60.0)
(OUT / "wordstream_strip.svg").write_text(wordstream_svg(strip, "simplified strip"), "utf-8")
print(f"simplified strip: height {strip.height:g}, {len(strip.boxes)} keyword boxes")
print(f"\nwrote {OUT}/wordstream*.svg")
