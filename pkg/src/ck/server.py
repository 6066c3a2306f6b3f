"""Read-only JSON API over a directory of precomputed bundles.

Bundles are loaded and validated once at startup and never mutate, so any
number of concurrent readers see identical bytes for identical requests.
Endpoints render through the canonical serializer to keep responses
byte-stable.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .backends import OfflineExplainer, explainer_for
from .bundle import KnowledgeBundle, canonical_dumps, load_bundle
from .classify import DISPLAY_CATEGORIES
from .config import PipelineConfig
from .errors import BackendError, CkError, UnknownIdError
from .presentation import bucketize, layout_wordstream, scroll_spec
from .semantics import related_danmaku


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message
        super().__init__(message)


class BundleStore:
    def __init__(self, bundles: dict[str, KnowledgeBundle]):
        self.bundles = bundles

    @staticmethod
    def from_dir(bundle_dir: str | Path) -> "BundleStore":
        bundle_dir = Path(bundle_dir)
        if not bundle_dir.is_dir():
            raise CkError(f"bundle directory not found: {bundle_dir}")
        bundles = {}
        for path in sorted(bundle_dir.glob("*.json")):
            bundle = load_bundle(path)
            bundles[bundle.meta.video_id] = bundle
        if not bundles:
            raise CkError(f"no bundles in {bundle_dir}")
        return BundleStore(bundles)

    def get(self, video_id: str) -> KnowledgeBundle:
        if video_id not in self.bundles:
            raise ApiError(404, f"unknown video {video_id!r}")
        return self.bundles[video_id]


def _float_param(request: Request, name: str, default: float | None) -> float | None:
    raw = request.query_params.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ApiError(400, f"query parameter {name!r} must be a number, got {raw!r}")


def _categories_param(request: Request) -> list[str]:
    raw = request.query_params.get("categories")
    if raw is None or raw == "":
        return list(DISPLAY_CATEGORIES)
    slugs = [s.strip() for s in raw.split(",") if s.strip()]
    for slug in slugs:
        if slug not in DISPLAY_CATEGORIES:
            raise ApiError(400, f"unknown category {slug!r}; valid: {', '.join(DISPLAY_CATEGORIES)}")
    return slugs


def _range_params(request: Request, duration: float) -> tuple[float, float]:
    t_from = _float_param(request, "from", 0.0)
    t_to = _float_param(request, "to", duration)
    if t_to <= t_from:
        raise ApiError(400, f"empty range: from={t_from:g} to={t_to:g}")
    return t_from, t_to


def _canonical(payload) -> Response:
    return Response(canonical_dumps(payload) + "\n", media_type="application/json")


def _tunable(bundle: KnowledgeBundle, key: str, default):
    return bundle.provenance.get("tunables", {}).get(key, default)


def _cluster_rows(bundle: KnowledgeBundle, t_from: float, t_to: float, categories: list[str]) -> list[dict]:
    window_mid = {w.index: (w.start + w.end) / 2 for w in bundle.windows}
    wanted = set(categories)
    rows = []
    for cl in bundle.clusters:
        mid = window_mid[cl.window_id]
        if cl.category not in wanted or not t_from <= mid < t_to:
            continue
        rep = bundle.comment_by_id(cl.representative_id)
        spec = scroll_spec(max(1, len(rep.text)), cl.size)
        rows.append(
            {
                "cluster_id": cl.cluster_id,
                "category": cl.category,
                "size": cl.size,
                "window_id": cl.window_id,
                "representative": {"id": rep.id, "t": rep.t, "text": rep.text},
                "scroll": {"duration_s": spec.duration_s, "font_scale": spec.font_scale, "badge": spec.badge},
            }
        )
    return rows


def _attached_entities(bundle: KnowledgeBundle) -> dict[str, str | None]:
    """comment id -> attached entity label (None when on the hub)."""
    out: dict[str, str | None] = {}
    for g in bundle.graphs:
        labels = {e.id: (None if e.hub else e.label) for e in g.entities}
        node_cluster = {d.id: d.cluster_id for d in g.danmaku_nodes}
        cluster_by_id = {cl.cluster_id: cl for cl in bundle.clusters}
        for a in g.attachments:
            cluster = cluster_by_id[node_cluster[a.danmaku]]
            for member in cluster.member_ids:
                out[member] = labels[a.entity]
    return out


def create_app(bundle_dir: str | Path, config: PipelineConfig | None = None, static_dir: str | Path | None = None) -> FastAPI:
    store = BundleStore.from_dir(bundle_dir)
    explainer = explainer_for(config) if config is not None else OfflineExplainer()
    app = FastAPI(title="ck bundle API", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def _api_error(_request, exc: ApiError):
        return JSONResponse({"error": exc.message}, status_code=exc.status)

    @app.get("/api/videos")
    def list_videos():
        return _canonical(
            [
                {"video_id": b.meta.video_id, "title": b.meta.title, "duration": b.meta.duration}
                for b in sorted(store.bundles.values(), key=lambda b: b.meta.video_id)
            ]
        )

    @app.get("/api/videos/{video_id}")
    def video_detail(video_id: str):
        b = store.get(video_id)
        return _canonical(
            {
                "video_id": b.meta.video_id,
                "title": b.meta.title,
                "duration": b.meta.duration,
                "domain_tag": b.meta.domain_tag,
                "counts": {
                    "comments": len(b.comments),
                    "knowledge_comments": sum(1 for lbl in b.labels.values() if lbl.is_knowledge),
                    "clusters": len(b.clusters),
                    "sections": len(b.sections),
                    "windows": len(b.windows),
                },
                "provenance": b.provenance,
            }
        )

    @app.get("/api/videos/{video_id}/sections")
    def sections(video_id: str):
        b = store.get(video_id)
        return _canonical(
            [
                {
                    "index": s.index,
                    "start": s.start,
                    "end": s.end,
                    "summary": s.summary,
                    "first_line": s.first_line,
                    "last_line": s.last_line,
                }
                for s in b.sections
            ]
        )

    @app.get("/api/videos/{video_id}/transcript")
    def transcript(video_id: str, request: Request):
        b = store.get(video_id)
        t_from, t_to = _range_params(request, b.meta.duration)
        return _canonical(
            [
                {"index": ln.index, "start": ln.start, "end": ln.end, "text": ln.text}
                for ln in b.transcript
                if ln.start < t_to and ln.end > t_from
            ]
        )

    @app.get("/api/videos/{video_id}/wordstream")
    def wordstream(video_id: str, request: Request):
        b = store.get(video_id)
        t_from, t_to = _range_params(request, b.meta.duration)
        categories = _categories_param(request)
        buckets = bucketize(
            b.clusters, b.windows, b.keywords,
            _tunable(b, "wordstream.bucket_width", 15.0),
            t_from, t_to,
        )
        layout = layout_wordstream(
            buckets,
            _tunable(b, "wordstream.width", 960.0),
            _tunable(b, "wordstream.height", 240.0),
            categories,
            int(_tunable(b, "wordstream.keywords_per_bucket", 3)),
        )
        from .bundle import layout_to_dict  # local import avoids a cycle

        return _canonical(
            {
                "buckets": [
                    {
                        "t_start": bk.t_start,
                        "width": bk.width,
                        "counts": {c: n for c, n in bk.counts.items() if c in categories},
                        "keywords": {c: [[t, w] for t, w in pairs] for c, pairs in bk.keywords.items() if c in categories},
                    }
                    for bk in buckets
                ],
                "layout": layout_to_dict(layout),
            }
        )

    @app.get("/api/videos/{video_id}/danmaku")
    def danmaku(video_id: str, request: Request):
        b = store.get(video_id)
        t_from, t_to = _range_params(request, b.meta.duration)
        categories = _categories_param(request)
        return _canonical(_cluster_rows(b, t_from, t_to, categories))

    @app.get("/api/videos/{video_id}/graph")
    def graph(video_id: str, request: Request):
        b = store.get(video_id)
        t = _float_param(request, "t", None)
        if t is None:
            raise ApiError(400, "query parameter 't' (seconds) is required")
        if not 0 <= t < b.meta.duration + 1e-9:
            raise ApiError(400, f"t={t:g} outside [0, {b.meta.duration:g})")
        width = _tunable(b, "pipeline.window_width", 20.0)
        index = min(len(b.windows) - 1, int(t // width))
        g = b.graphs[index]
        window = b.windows[index]
        return _canonical(
            {
                "window": {"index": window.index, "start": window.start, "end": window.end},
                "entities": [{"id": e.id, "label": e.label, "salience": e.salience, "hub": e.hub} for e in g.entities],
                "relations": [{"source": r.source, "predicate": r.predicate, "target": r.target} for r in g.relations],
                "danmaku_nodes": [{"id": d.id, "cluster_id": d.cluster_id, "category": d.category} for d in g.danmaku_nodes],
                "attachments": [{"danmaku": a.danmaku, "entity": a.entity, "score": a.score} for a in g.attachments],
            }
        )

    @app.get("/api/videos/{video_id}/danmaku/{comment_id}/related")
    def related(video_id: str, comment_id: str, request: Request):
        b = store.get(video_id)
        knowledge = [c for c in b.comments if b.labels[c.id].is_knowledge]
        radius = _tunable(b, "related.radius", 15.0)
        min_cos = _tunable(b, "related.min_cosine", 0.35)
        try:
            hits = related_danmaku(comment_id, knowledge, _attached_entities(b), radius, min_cos)
        except UnknownIdError as exc:
            raise ApiError(404, str(exc))
        by_id = {c.id: c for c in knowledge}
        return _canonical(
            {
                "comment_id": comment_id,
                "related": [
                    {
                        "id": cid,
                        "t": by_id[cid].t,
                        "text": by_id[cid].text,
                        "cosine": sim,
                        "category": b.category_of(cid),
                    }
                    for cid, sim in hits
                ],
            }
        )

    @app.get("/api/videos/{video_id}/danmaku/{comment_id}/explanation")
    def explanation(video_id: str, comment_id: str):
        b = store.get(video_id)
        comment = b.comment_by_id(comment_id)
        cluster = b.cluster_of(comment_id)
        if comment is None or cluster is None:
            raise ApiError(404, f"unknown knowledge comment {comment_id!r}")
        g = b.graphs[cluster.window_id]
        window = b.windows[cluster.window_id]
        node_id = f"d{cluster.cluster_id}"
        attachment = next(a for a in g.attachments if a.danmaku == node_id)
        entity = next(e for e in g.entities if e.id == attachment.entity)
        entity_label = None if entity.hub else entity.label
        label_of = {e.id: e.label for e in g.entities}
        relations = [
            f"{label_of[r.source]} {r.predicate} {label_of[r.target]}"
            for r in g.relations
            if attachment.entity in (r.source, r.target)
        ]
        try:
            text = explainer.explain(comment.text, window.text, entity_label, relations)
        except BackendError as exc:
            raise ApiError(502, str(exc))
        return _canonical(
            {
                "comment_id": comment_id,
                "entity": entity_label,
                "text": text,
                "offline-stub": bool(getattr(explainer, "offline_stub", True)),
            }
        )

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="viewer")

    return app


def serve(bundle_dir: str | Path, host: str, port: int, config: PipelineConfig | None = None, static_dir: str | Path | None = None) -> None:
    import uvicorn

    app = create_app(bundle_dir, config, static_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")
