#!/usr/bin/env python3
"""Build the progress-bar directory sections and one 20-second knowledge
graph, printing the graph as an indented node/edge listing.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ck.config import load_config
from ck.ingest import load_corpus
from ck.pipeline import run_pipeline

FIXTURES = ROOT / "fixtures" / "synthetic"

corpus = load_corpus(FIXTURES / "danmaku.xml", FIXTURES / "transcript.srt", FIXTURES / "meta.json")
bundle = run_pipeline(corpus, load_config())

print("directory sections:")
for s in bundle.sections:
    print(f"  [{s.start:6.1f} - {s.end:6.1f}]  {s.summary}")

# pick the window with the most attached danmaku nodes
graph = max(bundle.graphs, key=lambda g: len(g.danmaku_nodes))
window = bundle.windows[graph.window_id]
print(f"\nknowledge graph for window {graph.window_id} [{window.start:.0f}, {window.end:.0f}):")
print("  entities:")
for e in graph.entities:
    kind = "hub" if e.hub else f"salience {e.salience:g}"
    print(f"    ({e.id}) {e.label}  [{kind}]")
print("  relations:")
label = {e.id: e.label for e in graph.entities}
for r in graph.relations:
    print(f"    {label[r.source]} --{r.predicate}--> {label[r.target]}")
print("  danmaku nodes:")
texts = {c.id: c.text for c in bundle.comments}
rep_of = {cl.cluster_id: cl.representative_id for cl in bundle.clusters}
for d in graph.danmaku_nodes:
    attachment = next(a for a in graph.attachments if a.danmaku == d.id)
    print(f"    [{d.category}] -> {label[attachment.entity]} (score {attachment.score:.2f}): {texts[rep_of[d.cluster_id]]}")
