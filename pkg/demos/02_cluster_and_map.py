#!/usr/bin/env python3
"""Consolidate near-duplicate knowledge comments and map delayed ones back
to the segment they talk about.

Demonstrates the hashed n-gram embedding, DBSCAN over cosine distance with
singleton fallback, medoid representatives, and the similarity-minus-delay
window assignment.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ck.classify import classify_corpus
from ck.ingest import load_corpus
from ck.semantics import cluster_danmaku, cosine, embed, map_to_window
from ck.structure import make_windows

FIXTURES = ROOT / "fixtures" / "synthetic"

corpus = load_corpus(FIXTURES / "danmaku.xml", FIXTURES / "transcript.srt", FIXTURES / "meta.json")
knowledge = [
    (comment, label.display_category)
    for comment, label in classify_corpus(corpus.comments, corpus.lines).knowledge()
]

print("embedding sanity: cosine of paraphrases vs. unrelated text")
a, b, c = "原来是根瘤菌在固氮", "原来是根瘤菌固氮啊", "中子星的密度很大"
print(f"  cos({a!r}, {b!r}) = {cosine(embed(a), embed(b)):+.3f}")
print(f"  cos({a!r}, {c!r}) = {cosine(embed(a), embed(c)):+.3f}")

windows = make_windows(corpus.meta.duration, corpus.lines)
window_vecs = [embed(w.text) for w in windows]
assignments = {}
delayed = []
for comment, _category in knowledge:
    assignment = map_to_window(comment, windows, window_vecs)
    assignments[comment.id] = assignment.window_id
    if assignment.delay > 0:
        delayed.append((comment, assignment))

print(f"\n{len(delayed)} delayed comments pulled back to an earlier window:")
for comment, assignment in delayed[:6]:
    w = windows[assignment.window_id]
    print(f"  t={comment.t:7.2f} -> window {assignment.window_id} [{w.start:.0f},{w.end:.0f})  delay={assignment.delay:4.1f}s  {comment.text}")

clusters = cluster_danmaku(knowledge, assignments)
multi = sorted((c for c in clusters if c.size > 1), key=lambda c: -c.size)
texts = {c.id: c.text for c in corpus.comments}
print(f"\n{len(clusters)} clusters ({len(multi)} with more than one member):")
for cluster in multi:
    print(f"  window {cluster.window_id}, {cluster.category}, size {cluster.size}")
    for member in cluster.member_ids:
        marker = "*" if member == cluster.representative_id else " "
        print(f"   {marker} {texts[member]}")
