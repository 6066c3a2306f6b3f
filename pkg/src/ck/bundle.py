"""The persisted output of the pipeline for one video.

Serialization is canonical: keys sorted, floats fixed to 6 significant
digits, no extra whitespace. Two runs over the same inputs with the same
configuration produce byte-identical files, which is what the determinism
tests pin down. Loading validates every cross-reference and refuses
corrupt bundles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .classify import DISPLAY_CATEGORIES, KnowledgeLabel
from .errors import ParseError, ValidationError
from .ingest import DanmakuComment, TranscriptLine, VideoMeta
from .presentation import Band, KeywordBox, StreamBucket, WordstreamLayout
from .semantics import DanmakuCluster, SegmentAssignment
from .structure import Attachment, DanmakuNode, Entity, KgWindow, KnowledgeGraph, Relation, VideoSection

SCHEMA_VERSION = 1
PIPELINE_VERSION = "0.1.0"


def _quantize(value: Any) -> Any:
    """Round every float to 6 significant digits, recursively."""
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError("non-finite float in bundle")
        return float(format(value, ".6g"))
    if isinstance(value, dict):
        return {k: _quantize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_quantize(v) for v in value]
    return value


def canonical_dumps(obj: Any) -> str:
    return json.dumps(_quantize(obj), sort_keys=True, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


@dataclass
class KnowledgeBundle:
    meta: VideoMeta
    transcript: list[TranscriptLine]
    sections: list[VideoSection]
    windows: list[KgWindow]
    comments: list[DanmakuComment]
    labels: dict[str, KnowledgeLabel]  # comment id -> label
    keywords: dict[str, str]  # knowledge comment id -> keyword
    assignments: list[SegmentAssignment]
    clusters: list[DanmakuCluster]
    graphs: list[KnowledgeGraph]
    buckets: list[StreamBucket]
    layout: WordstreamLayout
    provenance: dict = field(default_factory=dict)

    def category_of(self, comment_id: str) -> str | None:
        label = self.labels.get(comment_id)
        return label.display_category if label else None

    def cluster_of(self, comment_id: str) -> DanmakuCluster | None:
        for cluster in self.clusters:
            if comment_id in cluster.member_ids:
                return cluster
        return None

    def graph_for_window(self, window_id: int) -> KnowledgeGraph:
        return self.graphs[window_id]

    def comment_by_id(self, comment_id: str) -> DanmakuComment | None:
        return next((c for c in self.comments if c.id == comment_id), None)


def bundle_to_dict(bundle: KnowledgeBundle) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "video": {
            "video_id": bundle.meta.video_id,
            "title": bundle.meta.title,
            "duration": bundle.meta.duration,
            "domain_tag": bundle.meta.domain_tag,
        },
        "transcript": [
            {"index": ln.index, "start": ln.start, "end": ln.end, "text": ln.text} for ln in bundle.transcript
        ],
        "sections": [
            {
                "index": s.index,
                "start": s.start,
                "end": s.end,
                "summary": s.summary,
                "first_line": s.first_line,
                "last_line": s.last_line,
            }
            for s in bundle.sections
        ],
        "windows": [{"index": w.index, "start": w.start, "end": w.end, "text": w.text} for w in bundle.windows],
        "comments": [
            {
                "id": c.id,
                "t": c.t,
                "posted_at": c.posted_at,
                "text": c.text,
                "display_mode": c.display_mode,
                "color": c.color,
                "user_hash": c.user_hash,
                "category": bundle.category_of(c.id),
                "keyword": bundle.keywords.get(c.id),
            }
            for c in bundle.comments
        ],
        "assignments": [
            {"comment_id": a.comment_id, "window_id": a.window_id, "score": a.score, "delay": a.delay}
            for a in bundle.assignments
        ],
        "clusters": [
            {
                "cluster_id": cl.cluster_id,
                "category": cl.category,
                "member_ids": list(cl.member_ids),
                "representative_id": cl.representative_id,
                "window_id": cl.window_id,
                "size": cl.size,
            }
            for cl in bundle.clusters
        ],
        "graphs": [
            {
                "window_id": g.window_id,
                "entities": [
                    {"id": e.id, "label": e.label, "salience": e.salience, "hub": e.hub} for e in g.entities
                ],
                "relations": [{"source": r.source, "predicate": r.predicate, "target": r.target} for r in g.relations],
                "danmaku_nodes": [
                    {"id": d.id, "cluster_id": d.cluster_id, "category": d.category} for d in g.danmaku_nodes
                ],
                "attachments": [{"danmaku": a.danmaku, "entity": a.entity, "score": a.score} for a in g.attachments],
            }
            for g in bundle.graphs
        ],
        "wordstream": {
            "buckets": [
                {
                    "t_start": b.t_start,
                    "width": b.width,
                    "counts": dict(b.counts),
                    "keywords": {cat: [[t, w] for t, w in pairs] for cat, pairs in b.keywords.items()},
                }
                for b in bundle.buckets
            ],
            "layout": layout_to_dict(bundle.layout),
        },
        "provenance": bundle.provenance,
    }


def layout_to_dict(layout: WordstreamLayout) -> dict:
    return {
        "width": layout.width,
        "height": layout.height,
        "t_from": layout.t_from,
        "t_to": layout.t_to,
        "bands": [
            {"category": b.category, "xs": list(b.xs), "bottoms": list(b.bottoms), "tops": list(b.tops)}
            for b in layout.bands
        ],
        "boxes": [
            {"token": kb.token, "x": kb.x, "y": kb.y, "font": kb.font, "category": kb.category}
            for kb in layout.boxes
        ],
    }


def _layout_from_dict(data: Mapping) -> WordstreamLayout:
    return WordstreamLayout(
        data["width"],
        data["height"],
        data["t_from"],
        data["t_to"],
        tuple(
            Band(b["category"], tuple(b["xs"]), tuple(b["bottoms"]), tuple(b["tops"])) for b in data["bands"]
        ),
        tuple(KeywordBox(kb["token"], kb["x"], kb["y"], kb["font"], kb["category"]) for kb in data["boxes"]),
    )


def bundle_from_dict(data: Mapping) -> KnowledgeBundle:
    try:
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValidationError(f"unsupported schema_version {data.get('schema_version')!r}")
        video = data["video"]
        meta = VideoMeta(video["video_id"], video["title"], float(video["duration"]), video.get("domain_tag", ""))
        transcript = [
            TranscriptLine(ln["index"], float(ln["start"]), float(ln["end"]), ln["text"]) for ln in data["transcript"]
        ]
        sections = [
            VideoSection(s["index"], float(s["start"]), float(s["end"]), s["summary"], s["first_line"], s["last_line"])
            for s in data["sections"]
        ]
        windows = [KgWindow(w["index"], float(w["start"]), float(w["end"]), w["text"]) for w in data["windows"]]
        comments, labels, keywords = [], {}, {}
        for c in data["comments"]:
            comments.append(
                DanmakuComment(
                    c["id"], meta.video_id, float(c["t"]), c["text"], c["posted_at"],
                    c["display_mode"], c["color"], c["user_hash"],
                )
            )
            slug = c.get("category")
            labels[c["id"]] = KnowledgeLabel.from_display_category(slug) if slug else KnowledgeLabel(False)
            if c.get("keyword"):
                keywords[c["id"]] = c["keyword"]
        assignments = [
            SegmentAssignment(a["comment_id"], a["window_id"], float(a["score"]), float(a["delay"]))
            for a in data["assignments"]
        ]
        clusters = [
            DanmakuCluster(
                cl["cluster_id"], cl["category"], tuple(cl["member_ids"]), cl["representative_id"], cl["window_id"]
            )
            for cl in data["clusters"]
        ]
        graphs = [
            KnowledgeGraph(
                g["window_id"],
                tuple(Entity(e["id"], e["label"], float(e["salience"]), bool(e.get("hub"))) for e in g["entities"]),
                tuple(Relation(r["source"], r["predicate"], r["target"]) for r in g["relations"]),
                tuple(DanmakuNode(d["id"], d["cluster_id"], d["category"]) for d in g["danmaku_nodes"]),
                tuple(Attachment(a["danmaku"], a["entity"], float(a["score"])) for a in g["attachments"]),
            )
            for g in data["graphs"]
        ]
        ws = data["wordstream"]
        buckets = [
            StreamBucket(
                float(b["t_start"]),
                float(b["width"]),
                {k: int(v) for k, v in b["counts"].items()},
                {cat: tuple((t, int(w)) for t, w in pairs) for cat, pairs in b["keywords"].items()},
            )
            for b in ws["buckets"]
        ]
        layout = _layout_from_dict(ws["layout"])
        provenance = dict(data["provenance"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed bundle: {exc!r}") from exc

    bundle = KnowledgeBundle(
        meta, transcript, sections, windows, comments, labels, keywords,
        assignments, clusters, graphs, buckets, layout, provenance,
    )
    validate_bundle(bundle)
    return bundle


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def validate_bundle(bundle: KnowledgeBundle) -> None:
    """Check every invariant the viewer relies on; raise naming the first
    failing reference."""
    duration = bundle.meta.duration
    _check(duration > 0, "duration must be positive")

    ids = [c.id for c in bundle.comments]
    _check(len(set(ids)) == len(ids), "duplicate comment ids")
    id_set = set(ids)

    # Sections and windows tile [0, duration].
    for name, spans in (("sections", bundle.sections), ("windows", bundle.windows)):
        _check(bool(spans), f"{name} must be non-empty")
        _check(abs(spans[0].start) < 1e-9, f"{name} must start at 0")
        for prev, cur in zip(spans, spans[1:]):
            _check(abs(prev.end - cur.start) < 1e-9, f"{name} gap/overlap at index {cur.index}")
        _check(abs(spans[-1].end - duration) < 1e-6, f"{name} must end at duration")

    knowledge_ids = {cid for cid, lbl in bundle.labels.items() if lbl.is_knowledge}
    _check(knowledge_ids <= id_set, "label for unknown comment")

    assigned = {a.comment_id for a in bundle.assignments}
    _check(assigned == knowledge_ids, "assignments must cover exactly the knowledge comments")
    window_ids = {w.index for w in bundle.windows}
    for a in bundle.assignments:
        _check(a.window_id in window_ids, f"assignment {a.comment_id} -> unknown window {a.window_id}")

    seen_members: set[str] = set()
    cluster_ids = set()
    for cl in bundle.clusters:
        _check(cl.cluster_id not in cluster_ids, f"duplicate cluster id {cl.cluster_id}")
        cluster_ids.add(cl.cluster_id)
        _check(cl.window_id in window_ids, f"cluster {cl.cluster_id} -> unknown window {cl.window_id}")
        for member in cl.member_ids:
            _check(member in knowledge_ids, f"cluster {cl.cluster_id} member {member} is not a knowledge comment")
            _check(member not in seen_members, f"comment {member} appears in more than one cluster")
            seen_members.add(member)
            _check(
                bundle.category_of(member) == cl.category,
                f"cluster {cl.cluster_id} category mismatch for comment {member}",
            )
    _check(seen_members == knowledge_ids, "every knowledge comment must appear in exactly one cluster")

    _check(
        [g.window_id for g in bundle.graphs] == [w.index for w in bundle.windows],
        "graphs must be one per window, in window order",
    )
    clusters_by_window: dict[int, set[int]] = {}
    for cl in bundle.clusters:
        clusters_by_window.setdefault(cl.window_id, set()).add(cl.cluster_id)
    for g in bundle.graphs:
        node_clusters = {d.cluster_id for d in g.danmaku_nodes}
        expected = clusters_by_window.get(g.window_id, set())
        _check(
            node_clusters == expected,
            f"graph {g.window_id} danmaku nodes {sorted(node_clusters)} != window clusters {sorted(expected)}",
        )

    for b in bundle.buckets:
        for cat, count in b.counts.items():
            _check(cat in DISPLAY_CATEGORIES, f"bucket with unknown category {cat!r}")
            _check(count >= 0, "bucket counts must be >= 0")


def save_bundle(bundle: KnowledgeBundle, path: str | Path) -> bytes:
    validate_bundle(bundle)
    data = canonical_dumps(bundle_to_dict(bundle)).encode("utf-8") + b"\n"
    Path(path).write_bytes(data)
    return data


def load_bundle(path: str | Path) -> KnowledgeBundle:
    raw = Path(path).read_bytes()
    try:
        payload = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"bundle is not valid JSON: {exc}") from exc
    return bundle_from_dict(payload)
