"""End-to-end orchestration: corpus in, knowledge bundle out.

Stages run in a fixed order (classify -> structure -> map -> cluster ->
graphs -> wordstream); any stage failure propagates wrapped with the stage
name. With the offline baselines the whole run is deterministic, so the
resulting bundle is byte-identical across repeated runs.
"""

from __future__ import annotations

import hashlib

from . import backends
from .bundle import PIPELINE_VERSION, KnowledgeBundle, canonical_dumps, validate_bundle
from .classify import classify_corpus
from .config import PipelineConfig
from .errors import PipelineError
from .ingest import Corpus
from .presentation import bucketize, layout_wordstream
from .semantics import CorpusStats, DanmakuCluster, cluster_danmaku, embed, extract_keyword, map_to_window
from .structure import build_graph, make_windows, segment_video


def _stage(name: str):
    class _StageContext:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and not isinstance(exc, PipelineError):
                raise PipelineError(name, exc) from exc
            return False

    return _StageContext()


def run_pipeline(corpus: Corpus, config: PipelineConfig | None = None) -> KnowledgeBundle:
    config = (config or PipelineConfig()).validate()
    meta, lines, comments = corpus.meta, corpus.lines, corpus.comments
    lexicon = backends.lexicon_for(config)

    with _stage("classify"):
        classifier = backends.classifier_for(config)
        classification = classify_corpus(
            comments,
            lines,
            classifier,
            parallelism=config.pipeline.parallelism,
            batch_size=config.pipeline.batch_size,
            context_half_width=config.classify.context_half_width,
        )
        labels = {c.id: lbl for c, lbl in classification.pairs}
        knowledge = [(c, lbl.display_category) for c, lbl in classification.pairs if lbl.is_knowledge]

    with _stage("structure"):
        windows = make_windows(meta.duration, lines, config.pipeline.window_width)
        sections = segment_video(lines, meta.duration, config.sections.max_sections, config.sections.min_length)

    with _stage("map"):
        window_vectors = [embed(w.text) for w in windows]
        assignments = [
            map_to_window(
                c, windows, window_vectors,
                config.mapping.semantic_weight, config.mapping.delay_penalty,
            )
            for c, _ in knowledge
        ]
        window_of = {a.comment_id: a.window_id for a in assignments}

    with _stage("cluster"):
        clusters = cluster_danmaku(knowledge, window_of, config.cluster.eps, config.cluster.min_pts)

    with _stage("keywords"):
        stats = CorpusStats.from_texts([c.text for c, _ in knowledge], lexicon.stopwords)
        keywords = {c.id: extract_keyword(c.text, stats, lexicon.stopwords) for c, _ in knowledge}

    with _stage("graphs"):
        extractor = backends.extractor_for(config)
        texts = {c.id: c.text for c in comments}
        rep_texts = {cl.cluster_id: texts[cl.representative_id] for cl in clusters}
        by_window: dict[int, list[DanmakuCluster]] = {}
        for cl in clusters:
            by_window.setdefault(cl.window_id, []).append(cl)
        graphs = [
            build_graph(w, by_window.get(w.index, []), extractor, rep_texts, config.graph.attach_threshold)
            for w in windows
        ]

    with _stage("wordstream"):
        buckets = bucketize(clusters, windows, keywords, config.wordstream.bucket_width, 0.0, meta.duration)
        layout = layout_wordstream(
            buckets, config.wordstream.width, config.wordstream.height,
            keywords_per_bucket=config.wordstream.keywords_per_bucket,
        )

    with _stage("assemble"):
        content_hash = corpus.content_hash or hashlib.sha256(
            canonical_dumps(
                {
                    "meta": [meta.video_id, meta.title, meta.duration, meta.domain_tag],
                    "lines": [[ln.start, ln.end, ln.text] for ln in lines],
                    "comments": [[c.id, c.t, c.text] for c in comments],
                }
            ).encode("utf-8")
        ).hexdigest()
        explainer = backends.explainer_for(config)
        provenance = {
            "pipeline_version": PIPELINE_VERSION,
            "content_hash": content_hash,
            "backends": {
                "classifier": classifier.descriptor,
                "extractor": extractor.descriptor,
                "explainer": explainer.descriptor,
            },
            "tunables": config.tunables(),
            "warnings": list(corpus.warnings),
            "classifier_fallbacks": classification.fallback_count,
        }
        bundle = KnowledgeBundle(
            meta=meta,
            transcript=list(lines),
            sections=sections,
            windows=windows,
            comments=list(comments),
            labels=labels,
            keywords=keywords,
            assignments=assignments,
            clusters=clusters,
            graphs=graphs,
            buckets=buckets,
            layout=layout,
            provenance=provenance,
        )
        validate_bundle(bundle)
    return bundle
