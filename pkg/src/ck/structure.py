"""Video structure: directory sections, fixed 20-second windows, and
per-window knowledge graphs with attached danmaku nodes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .errors import EmptyInputError, ValidationError
from .ingest import TranscriptLine
from .semantics import DanmakuCluster, cosine, embed
from .textutil import extract_terms, fold, stop_edges_of

SUMMARY_MAX_CHARS = 120
WINDOW_WIDTH_S = 20.0
MIN_SECTION_S = 30.0
MAX_SECTIONS = 12
ENTITY_CAP = 8
ATTACH_THRESHOLD = 0.15
HUB_ID = "hub"


@dataclass(frozen=True)
class VideoSection:
    index: int
    start: float
    end: float
    summary: str
    first_line: int
    last_line: int


@dataclass(frozen=True)
class KgWindow:
    index: int
    start: float
    end: float
    text: str  # newline-joined transcript lines overlapping the window


@dataclass(frozen=True)
class Entity:
    id: str
    label: str
    salience: float
    hub: bool = False


@dataclass(frozen=True)
class Relation:
    source: str  # entity id
    predicate: str
    target: str  # entity id


@dataclass(frozen=True)
class DanmakuNode:
    id: str
    cluster_id: int
    category: str


@dataclass(frozen=True)
class Attachment:
    danmaku: str  # danmaku node id
    entity: str  # entity node id (possibly the hub)
    score: float


@dataclass(frozen=True)
class KnowledgeGraph:
    window_id: int
    entities: tuple[Entity, ...]
    relations: tuple[Relation, ...]
    danmaku_nodes: tuple[DanmakuNode, ...]
    attachments: tuple[Attachment, ...]

    def __post_init__(self):
        ids = [e.id for e in self.entities]
        labels = [e.label for e in self.entities if not e.hub]
        if len(set(ids)) != len(ids) or len(set(labels)) != len(labels):
            raise ValidationError("entity ids and labels must be unique per graph")
        id_set = set(ids)
        for r in self.relations:
            if r.source not in id_set or r.target not in id_set:
                raise ValidationError(f"relation references unknown entity: {r}")
        dn_ids = {d.id for d in self.danmaku_nodes}
        if len(dn_ids) != len(self.danmaku_nodes):
            raise ValidationError("danmaku node ids must be unique")
        attached = [a.danmaku for a in self.attachments]
        if sorted(attached) != sorted(dn_ids):
            raise ValidationError("each danmaku node needs exactly one attachment")
        for a in self.attachments:
            if a.entity not in id_set:
                raise ValidationError(f"attachment targets unknown entity {a.entity!r}")


class ExtractorBackend(Protocol):
    descriptor: str

    def extract(self, text: str) -> tuple[list[tuple[str, float]], list[tuple[str, str, str]]]:
        """Return (entities as (label, salience), relations as (subject
        label, predicate, object label))."""
        ...


def make_windows(duration: float, lines: Sequence[TranscriptLine] = (), width: float = WINDOW_WIDTH_S) -> list[KgWindow]:
    """ceil(duration/width) windows tiling [0, duration]; the last one may
    be short. Each carries the transcript lines it overlaps."""
    if duration <= 0:
        raise ValidationError("duration must be > 0")
    if width <= 0:
        raise ValidationError("window width must be > 0")
    windows = []
    count = int(np.ceil(duration / width))
    for i in range(count):
        start = i * width
        end = min(duration, (i + 1) * width)
        text = "\n".join(ln.text.strip() for ln in lines if ln.start < end and ln.end > start)
        windows.append(KgWindow(i, start, end, text))
    return windows


def _gap_similarities(line_vectors: list[np.ndarray], span: int = 3) -> list[float]:
    sims = []
    for g in range(len(line_vectors) - 1):
        left = range(max(0, g - span + 1), g + 1)
        right = range(g + 1, min(len(line_vectors), g + 1 + span))
        lvec = np.sum([line_vectors[i] for i in left], axis=0)
        rvec = np.sum([line_vectors[i] for i in right], axis=0)
        ln, rn = np.linalg.norm(lvec), np.linalg.norm(rvec)
        sims.append(float(lvec @ rvec / (ln * rn)) if ln > 0 and rn > 0 else 0.0)
    return sims


def _depth_scores(sims: list[float]) -> list[float]:
    depths = []
    for g, s in enumerate(sims):
        peak_l = s
        for i in range(g - 1, -1, -1):
            if sims[i] >= peak_l:
                peak_l = sims[i]
            else:
                break
        peak_r = s
        for i in range(g + 1, len(sims)):
            if sims[i] >= peak_r:
                peak_r = sims[i]
            else:
                break
        depths.append((peak_l - s) + (peak_r - s))
    return depths


def segment_video(
    lines: Sequence[TranscriptLine],
    duration: float,
    max_sections: int = MAX_SECTIONS,
    min_len_s: float = MIN_SECTION_S,
) -> list[VideoSection]:
    """Split the transcript into topically coherent directory sections.

    Adjacent 3-line windows are compared by embedding similarity; local
    maxima of the depth score become boundary candidates, taken greedily in
    descending depth as long as every section keeps min_len_s (the final
    section may be shorter) and the section count stays within
    max_sections. Summaries are filled in by summarize_section.
    """
    if not lines:
        raise EmptyInputError("cannot segment an empty transcript")
    stripped = [TranscriptLine(ln.index, ln.start, ln.end, ln.text.strip()) for ln in lines]

    boundaries: list[int] = []  # gap index g: boundary before line g+1
    if len(stripped) > 1:
        vectors = [embed(ln.text) for ln in stripped]
        sims = _gap_similarities(vectors)
        depths = _depth_scores(sims)
        eps = 1e-9
        candidates = [
            g
            for g in range(len(depths))
            if depths[g] > eps
            and (g == 0 or depths[g] >= depths[g - 1])
            and (g == len(depths) - 1 or depths[g] >= depths[g + 1])
        ]
        candidates.sort(key=lambda g: (-depths[g], g))

        chosen_times: list[float] = []
        for g in candidates:
            if len(boundaries) >= max_sections - 1:
                break
            bt = stripped[g + 1].start
            if bt <= 0 or bt >= duration:
                continue
            # Every section must keep min_len_s on both sides of the cut;
            # only a too-short *whole video* yields a short (single) section.
            left = max([0.0] + [t for t in chosen_times if t < bt])
            right = min([duration] + [t for t in chosen_times if t > bt])
            if bt - left < min_len_s or right - bt < min_len_s:
                continue
            boundaries.append(g)
            chosen_times.append(bt)

    boundaries.sort()
    sections: list[VideoSection] = []
    first = 0
    start_t = 0.0
    cuts = [(g, stripped[g + 1].start) for g in boundaries]
    for i, (g, bt) in enumerate(cuts):
        sections.append(_make_section(i, start_t, bt, stripped, first, g))
        first, start_t = g + 1, bt
    sections.append(_make_section(len(cuts), start_t, duration, stripped, first, len(stripped) - 1))
    return sections


def _make_section(index: int, start: float, end: float, lines: Sequence[TranscriptLine], first: int, last: int) -> VideoSection:
    summary = summarize_section([lines[i] for i in range(first, last + 1)])
    return VideoSection(index, start, end, summary, first, last)


def summarize_section(lines: Sequence[TranscriptLine]) -> str:
    """Extractive one-liner: the line most similar on average to the whole
    section, truncated to 120 chars with an ellipsis."""
    if not lines:
        raise EmptyInputError("section has no lines")
    texts = [ln.text.strip() for ln in lines]
    if len(texts) == 1:
        best = texts[0]
    else:
        vectors = np.array([embed(t) for t in texts])
        sims = vectors @ vectors.T
        means = sims.mean(axis=1)
        best = texts[int(np.argmax(means))]  # argmax takes the earliest on ties
    if len(best) > SUMMARY_MAX_CHARS:
        best = best[: SUMMARY_MAX_CHARS - 1] + "…"
    return best


def baseline_extract(
    text: str,
    stopwords: frozenset[str] = frozenset(),
    entity_cap: int = ENTITY_CAP,
) -> tuple[list[tuple[str, float]], list[tuple[str, str, str]]]:
    """Frequency-based entity and relation extraction.

    Entities are non-stopword terms of length >= 2 seen at least twice in
    the text (salience = count), capped by descending count then earliest
    position. Relations connect entities co-mentioned in one line, with the
    inter-mention span (<= 12 chars) as predicate, or "related".
    """
    terms = extract_terms(text, stop_edges_of(stopwords))
    qualifying = [t for t in terms if len(t.text) >= 2 and t.text not in stopwords and t.count >= 2]
    qualifying.sort(key=lambda t: (-t.count, t.first_pos))
    kept = qualifying[:entity_cap]
    surface = {t.text: text[t.first_pos : t.first_pos + len(t.text)] for t in kept}
    entities = [(surface[t.text], float(t.count)) for t in kept]

    relations: list[tuple[str, str, str]] = []
    seen_pairs: set[tuple[str, str]] = set()
    for line in text.split("\n"):
        lowered = line.lower()
        mentions = []
        for t in kept:
            pos = lowered.find(t.text)
            if pos >= 0:
                mentions.append((pos, t.text))
        mentions.sort()
        for a in range(len(mentions)):
            for b in range(a + 1, len(mentions)):
                pos_a, term_a = mentions[a]
                pos_b, term_b = mentions[b]
                if (term_a, term_b) in seen_pairs or pos_b < pos_a + len(term_a):
                    continue  # skip already-seen pairs and overlapping mentions
                seen_pairs.add((term_a, term_b))
                span = line[pos_a + len(term_a) : pos_b].strip(" ,;:。，；：、")
                predicate = span[:12].strip() or "related"
                relations.append((surface[term_a], predicate, surface[term_b]))
    return entities, relations


class BaselineExtractor:
    """Offline extractor backend wrapping baseline_extract."""

    def __init__(self, stopwords: frozenset[str] = frozenset(), entity_cap: int = ENTITY_CAP):
        self.stopwords = stopwords
        self.entity_cap = entity_cap
        self.descriptor = "count-extract/1"

    def extract(self, text: str):
        return baseline_extract(text, self.stopwords, self.entity_cap)


def build_graph(
    window: KgWindow,
    clusters: Sequence[DanmakuCluster],
    extractor: ExtractorBackend,
    representative_texts: dict[int, str],
    attach_threshold: float = ATTACH_THRESHOLD,
) -> KnowledgeGraph:
    """Build the window's knowledge graph and attach each cluster's node to
    its most relevant entity (or to the always-present segment hub when the
    best similarity falls below attach_threshold)."""
    raw_entities, raw_relations = extractor.extract(window.text)

    entities = [Entity(HUB_ID, "segment", 0.0, hub=True)]
    id_by_label: dict[str, str] = {}
    entity_context: dict[str, str] = {}
    window_lines = window.text.split("\n")
    for i, (label, salience) in enumerate(raw_entities):
        if label in id_by_label:
            continue
        eid = f"e{i}"
        entities.append(Entity(eid, label, float(salience)))
        id_by_label[label] = eid
        source_line = next((ln for ln in window_lines if fold(label) in fold(ln)), "")
        entity_context[eid] = f"{label} {source_line}".strip()

    relations = tuple(
        Relation(id_by_label[s], p, id_by_label[o])
        for s, p, o in raw_relations
        if s in id_by_label and o in id_by_label and s != o
    )

    context_vecs = {eid: embed(ctx) for eid, ctx in entity_context.items()}
    danmaku_nodes = []
    attachments = []
    for cluster in clusters:
        if cluster.window_id != window.index:
            raise ValidationError(f"cluster {cluster.cluster_id} belongs to window {cluster.window_id}, not {window.index}")
        node = DanmakuNode(f"d{cluster.cluster_id}", cluster.cluster_id, cluster.category)
        danmaku_nodes.append(node)
        rep_vec = embed(representative_texts[cluster.cluster_id])
        best_eid, best_score = HUB_ID, 0.0
        for e in entities:
            if e.hub:
                continue
            score = cosine(rep_vec, context_vecs[e.id])
            if score > best_score + 1e-12:
                best_eid, best_score = e.id, score
        if best_score < attach_threshold:
            attachments.append(Attachment(node.id, HUB_ID, best_score))
        else:
            attachments.append(Attachment(node.id, best_eid, best_score))

    return KnowledgeGraph(window.index, tuple(entities), relations, tuple(danmaku_nodes), tuple(attachments))
