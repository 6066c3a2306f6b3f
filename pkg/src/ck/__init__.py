"""Collective-knowledge engine for danmaku science videos.

Turns a video's transcript plus its raw time-synced comment stream into a
structured, immutable bundle: filtered and classified comments, consolidated
clusters, directory sections, per-window knowledge graphs, and Wordstream
geometry, ready to serve over HTTP.
"""

from .analysis import CoverageCorpus, CoveragePair, WilcoxonResult, coverage_study, entity_coverage, wilcoxon_signed_rank
from .bundle import KnowledgeBundle, load_bundle, save_bundle
from .classify import (
    DISPLAY_CATEGORIES,
    ConfusionMatrix,
    KnowledgeLabel,
    Stance,
    Theme,
    classify_corpus,
    cohens_kappa,
    distribution_report,
    f1_report,
    lexicon_classify,
    lexicon_stance,
)
from .config import PipelineConfig, load_config
from .ingest import Corpus, DanmakuComment, TranscriptLine, VideoMeta, load_corpus, parse_danmaku_xml, parse_transcript
from .pipeline import run_pipeline
from .presentation import ScrollSpec, StreamBucket, WordstreamLayout, bucketize, layout_wordstream, scroll_spec, simplify_stream
from .semantics import (
    DanmakuCluster,
    SegmentAssignment,
    cluster_danmaku,
    dbscan,
    embed,
    extract_keyword,
    map_to_window,
    related_danmaku,
)
from .structure import KgWindow, KnowledgeGraph, VideoSection, baseline_extract, build_graph, make_windows, segment_video, summarize_section

__version__ = "0.1.0"

__all__ = [
    "CoverageCorpus",
    "CoveragePair",
    "WilcoxonResult",
    "coverage_study",
    "entity_coverage",
    "wilcoxon_signed_rank",
    "KnowledgeBundle",
    "load_bundle",
    "save_bundle",
    "DISPLAY_CATEGORIES",
    "ConfusionMatrix",
    "KnowledgeLabel",
    "Stance",
    "Theme",
    "classify_corpus",
    "cohens_kappa",
    "distribution_report",
    "f1_report",
    "lexicon_classify",
    "lexicon_stance",
    "PipelineConfig",
    "load_config",
    "Corpus",
    "DanmakuComment",
    "TranscriptLine",
    "VideoMeta",
    "load_corpus",
    "parse_danmaku_xml",
    "parse_transcript",
    "run_pipeline",
    "ScrollSpec",
    "StreamBucket",
    "WordstreamLayout",
    "bucketize",
    "layout_wordstream",
    "scroll_spec",
    "simplify_stream",
    "DanmakuCluster",
    "SegmentAssignment",
    "cluster_danmaku",
    "dbscan",
    "embed",
    "extract_keyword",
    "map_to_window",
    "related_danmaku",
    "KgWindow",
    "KnowledgeGraph",
    "VideoSection",
    "baseline_extract",
    "build_graph",
    "make_windows",
    "segment_video",
    "summarize_section",
    "__version__",
]
