#!/usr/bin/env python3
"""Parse the bundled synthetic corpus and classify every comment.

Shows the raw XML/SRT ingestion, the junk filter at work, and the
per-category distribution table.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ck.classify import classify_corpus, distribution_report
from ck.ingest import load_corpus

FIXTURES = ROOT / "fixtures" / "synthetic"

corpus = load_corpus(FIXTURES / "danmaku.xml", FIXTURES / "transcript.srt", FIXTURES / "meta.json")
print(f"video: {corpus.meta.title!r} ({corpus.meta.duration:.0f} s)")
print(f"transcript lines: {len(corpus.lines)}, comments: {len(corpus.comments)}")
for w in corpus.warnings:
    print(f"  warning: {w}")

result = classify_corpus(corpus.comments, corpus.lines)
knowledge = result.knowledge()
print(f"\nknowledge comments: {len(knowledge)} of {len(corpus.comments)}")

print("\nfirst few classifications:")
for comment, label in result.pairs[:12]:
    tag = label.display_category or "(filtered)"
    print(f"  t={comment.t:7.2f}  {tag:<26}  {comment.text}")

print("\ndistribution over knowledge comments:")
print(distribution_report([lbl for _, lbl in result.pairs]).format_text())
