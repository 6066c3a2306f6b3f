"""Deterministic text embeddings, density clustering, and segment mapping.

The embedding is a 256-dim hashed character n-gram vector: cheap, fully
specified, and identical across platforms, which is what the byte-identical
bundle contract needs. Anything that compares texts (clustering, mapping,
related-comment lookup) goes through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DataError, UnknownIdError, ValidationError
from .ingest import DanmakuComment
from .classify import DISPLAY_CATEGORIES
from .textutil import extract_terms, normalize_ws, stop_edges_of

EMBED_DIM = 256
NOISE = -1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = 0xFFFFFFFFFFFFFFFF


def _fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _U64
    return h


def embed(text: str) -> np.ndarray:
    """256-dim L2-normalized hashed character 2+3-gram frequency vector.

    Each n-gram's FNV-1a 64-bit hash picks a bucket (low 8 bits) and a sign
    (bit 8), so colliding unrelated n-grams cancel in expectation instead of
    inflating similarity. Whitespace runs are collapsed before n-gramming;
    empty or whitespace-only text maps to the zero vector. A single-character
    text contributes that character as its only term so every non-empty text
    has unit norm.
    """
    s = normalize_ws(text)
    v = np.zeros(EMBED_DIM, dtype=np.float64)
    if not s:
        return v

    def add(term: str) -> None:
        h = _fnv1a64(term.encode("utf-8"))
        v[h % EMBED_DIM] += 1.0 if (h >> 8) & 1 == 0 else -1.0

    if len(s) == 1:
        add(s)
    else:
        for size in (2, 3):
            for i in range(len(s) - size + 1):
                add(s[i : i + size])
    norm = np.linalg.norm(v)
    if norm == 0.0:  # all contributions cancelled; keep a deterministic unit vector
        v[_fnv1a64(s.encode("utf-8")) % EMBED_DIM] = 1.0
        return v
    return v / norm


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Dot product of pre-normalized vectors (zero vectors give 0)."""
    return float(np.dot(u, v))


def dbscan(points: Sequence[np.ndarray] | np.ndarray, eps: float, min_pts: int) -> list[int]:
    """Classic DBSCAN over cosine distance (1 - dot of unit vectors).

    A point is core when its eps-neighborhood (itself included) holds at
    least min_pts points; clusters are the maximal density-connected sets
    of core points plus their border points. Cluster ids are numbered by
    the smallest core index they contain, and a border point reachable
    from several clusters joins the lowest id. Noise stays -1.
    """
    if eps <= 0:
        raise ValidationError("eps must be > 0")
    if min_pts < 1:
        raise ValidationError("min_pts must be >= 1")
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    if n == 0:
        return []
    dist = 1.0 - pts @ pts.T
    neighbors = [np.flatnonzero(dist[i] <= eps) for i in range(n)]
    core = np.array([len(nb) >= min_pts for nb in neighbors])

    labels = [NOISE] * n
    cid = 0
    for start in range(n):
        if not core[start] or labels[start] != NOISE:
            continue
        # BFS over density-connected core points.
        labels[start] = cid
        queue = [start]
        while queue:
            i = queue.pop()
            for j in neighbors[i]:
                if core[j] and labels[j] == NOISE:
                    labels[j] = cid
                    queue.append(j)
        cid += 1

    for i in range(n):
        if labels[i] != NOISE or core[i]:
            continue
        candidates = [labels[j] for j in neighbors[i] if core[j]]
        if candidates:
            labels[i] = min(candidates)
    return labels


@dataclass(frozen=True)
class DanmakuCluster:
    """Semantically similar same-category comments in one window."""

    cluster_id: int
    category: str  # display-category slug
    member_ids: tuple[str, ...]
    representative_id: str
    window_id: int

    def __post_init__(self):
        if not self.member_ids:
            raise ValidationError("cluster must have members")
        if self.representative_id not in self.member_ids:
            raise ValidationError("representative must be a member")
        if self.category not in DISPLAY_CATEGORIES:
            raise ValidationError(f"unknown display category {self.category!r}")

    @property
    def size(self) -> int:
        return len(self.member_ids)


@dataclass(frozen=True)
class SegmentAssignment:
    comment_id: str
    window_id: int
    score: float
    delay: float  # seconds the comment trails the window end, >= 0


def _medoid(indices: list[int], sims: np.ndarray, comments: list[DanmakuComment]) -> int:
    """Member index maximizing mean similarity to the other members; ties
    resolve to the earliest t, then the lowest id."""
    if len(indices) == 1:
        return indices[0]
    best = None
    for i in indices:
        mean_sim = sum(sims[i][j] for j in indices if j != i) / (len(indices) - 1)
        key = (-mean_sim, comments[i].t, comments[i].id)
        if best is None or key < best[0]:
            best = (key, i)
    return best[1]


def cluster_danmaku(
    classified: Sequence[tuple[DanmakuComment, str]],
    assignments: Mapping[str, int],
    eps: float = 0.35,
    min_pts: int = 2,
) -> list[DanmakuCluster]:
    """Cluster knowledge comments per (window, category) bucket.

    ``classified`` pairs each knowledge comment with its display category;
    ``assignments`` maps comment id to window id. DBSCAN noise becomes
    singleton clusters so every comment lands in exactly one cluster; the
    representative is the medoid.
    """
    buckets: dict[tuple[int, str], list[DanmakuComment]] = {}
    for comment, category in classified:
        buckets.setdefault((assignments[comment.id], category), []).append(comment)

    clusters: list[DanmakuCluster] = []
    next_id = 0
    cat_order = {slug: i for i, slug in enumerate(DISPLAY_CATEGORIES)}
    for (window_id, category) in sorted(buckets, key=lambda k: (k[0], cat_order[k[1]])):
        members = sorted(buckets[(window_id, category)], key=lambda c: (c.t, c.id))
        vectors = np.array([embed(c.text) for c in members])
        sims = vectors @ vectors.T
        labels = dbscan(vectors, eps, min_pts)

        groups: dict[int, list[int]] = {}
        order: list[int] = []
        for idx, lbl in enumerate(labels):
            key = lbl if lbl != NOISE else -(idx + 2)  # noise: unique singleton key
            if key not in groups:
                order.append(key)
                groups[key] = []
            groups[key].append(idx)

        for key in sorted(order, key=lambda k: min(groups[k])):
            indices = groups[key]
            rep = _medoid(indices, sims, members)
            clusters.append(
                DanmakuCluster(
                    cluster_id=next_id,
                    category=category,
                    member_ids=tuple(members[i].id for i in indices),
                    representative_id=members[rep].id,
                    window_id=window_id,
                )
            )
            next_id += 1
    return clusters


MAP_FORWARD_SLACK_S = 2.0
MAP_MAX_DELAY_S = 30.0


def map_to_window(
    comment: DanmakuComment,
    windows: Sequence,
    window_vectors: Sequence[np.ndarray],
    semantic_weight: float = 1.0,
    delay_penalty: float = 0.5,
    comment_vector: np.ndarray | None = None,
) -> SegmentAssignment:
    """Assign a comment to the window it most plausibly addresses.

    Candidates start no more than 2 s after the comment and end no more
    than 30 s before it. Score is semantic similarity minus a linear delay
    penalty; ties prefer the window containing t, then the temporally
    nearest one.
    """
    t = comment.t
    vec = embed(comment.text) if comment_vector is None else comment_vector
    best = None
    for w, wvec in zip(windows, window_vectors):
        if w.start > t + MAP_FORWARD_SLACK_S or t - w.end > MAP_MAX_DELAY_S:
            continue
        delay = max(0.0, t - w.end)
        score = semantic_weight * cosine(vec, wvec) - delay_penalty * delay / MAP_MAX_DELAY_S
        contains = w.start <= t < w.end
        temporal_dist = 0.0 if contains else min(abs(t - w.start), abs(t - w.end))
        key = (-score, not contains, temporal_dist, w.index)
        if best is None or key < best[0]:
            best = (key, w, score, delay)
    if best is None:
        raise DataError(f"no candidate window for comment at t={t:.3f}; windows must cover [0, duration]")
    _, w, score, delay = best
    return SegmentAssignment(comment.id, w.index, score, delay)


@dataclass(frozen=True)
class CorpusStats:
    """Document frequencies over a video's knowledge comments."""

    n_docs: int
    df: Mapping[str, int]

    @staticmethod
    def from_texts(texts: Sequence[str], stopwords: frozenset[str] = frozenset()) -> "CorpusStats":
        edges = stop_edges_of(stopwords)
        df: dict[str, int] = {}
        for text in texts:
            for term in {t.text for t in extract_terms(text, edges)}:
                df[term] = df.get(term, 0) + 1
        return CorpusStats(len(texts), df)


def extract_keyword(text: str, stats: CorpusStats, stopwords: frozenset[str] = frozenset()) -> str:
    """The comment's highest TF-IDF term (IDF = ln((N+1)/(df+1)) + 1).

    Stopwords are excluded; ties go to the earliest term; a comment with
    only stopwords falls back to its longest term.
    """
    terms = extract_terms(text, stop_edges_of(stopwords))
    if not terms:
        return ""
    candidates = [t for t in terms if t.text not in stopwords]
    if not candidates:
        return max(terms, key=lambda t: (len(t.text), -t.first_pos)).text
    n = stats.n_docs

    def score(term) -> float:
        idf = np.log((n + 1) / (stats.df.get(term.text, 0) + 1)) + 1.0
        return term.count * idf

    return min(candidates, key=lambda t: (-score(t), t.first_pos)).text


def related_danmaku(
    comment_id: str,
    comments: Sequence[DanmakuComment],
    attached_entity: Mapping[str, str | None],
    radius_s: float = 15.0,
    min_cosine: float = 0.35,
) -> list[tuple[str, float]]:
    """Comments near in time and logically linked to the target.

    Linked means: attached to the same knowledge-graph entity, or cosine
    similarity >= min_cosine. Returns (comment_id, cosine) sorted by
    descending cosine, then smaller |dt|, excluding the target itself.
    """
    by_id = {c.id: c for c in comments}
    if comment_id not in by_id:
        raise UnknownIdError(f"unknown comment id {comment_id!r}")
    target = by_id[comment_id]
    target_vec = embed(target.text)
    target_entity = attached_entity.get(comment_id)

    scored = []
    for c in comments:
        if c.id == comment_id or abs(c.t - target.t) > radius_s:
            continue
        sim = cosine(target_vec, embed(c.text))
        same_entity = target_entity is not None and attached_entity.get(c.id) == target_entity
        if same_entity or sim >= min_cosine:
            scored.append((c.id, sim, abs(c.t - target.t)))
    scored.sort(key=lambda item: (-item[1], item[2], item[0]))
    return [(cid, sim) for cid, sim, _ in scored]
