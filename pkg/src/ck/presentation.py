"""Render-ready artifacts: stream buckets, Wordstream layout geometry, and
the Focused-mode scroll dynamics.

The layout is plain geometry (polylines, boxes, an affine time axis) so the
interactive viewer and the static SVG emitter consume the same structure.
Text boxes use a fixed width-per-character model: 0.6 em per Latin char,
1.0 em per CJK char.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .classify import DISPLAY_CATEGORIES
from .errors import ValidationError
from .ingest import DanmakuComment
from .semantics import DanmakuCluster
from .structure import KgWindow
from .textutil import is_cjk

BUCKET_WIDTH_S = 15.0
FONT_MIN = 10.0
FONT_MAX = 26.0

SCROLL_BASE_S = 6.0
SCROLL_MIN_S = 4.0
SCROLL_MAX_S = 12.0
FONT_SCALE_MIN = 1.0
FONT_SCALE_MAX = 1.6


@dataclass(frozen=True)
class StreamBucket:
    t_start: float
    width: float
    counts: Mapping[str, int]
    keywords: Mapping[str, tuple[tuple[str, int], ...]]  # category -> (token, weight)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class KeywordBox:
    token: str
    x: float  # box center
    y: float  # box center
    font: float
    category: str

    @property
    def width(self) -> float:
        return self.font * sum(1.0 if is_cjk(c) else 0.6 for c in self.token)

    @property
    def height(self) -> float:
        return self.font

    def overlaps(self, other: "KeywordBox") -> bool:
        return (
            abs(self.x - other.x) * 2 < self.width + other.width
            and abs(self.y - other.y) * 2 < self.height + other.height
        )


@dataclass(frozen=True)
class Band:
    category: str
    # y of the band's bottom and top edge at each bucket center, stacked
    # upward from y = H (viewport bottom).
    xs: tuple[float, ...]
    bottoms: tuple[float, ...]
    tops: tuple[float, ...]


@dataclass(frozen=True)
class WordstreamLayout:
    width: float
    height: float
    t_from: float
    t_to: float
    bands: tuple[Band, ...]
    boxes: tuple[KeywordBox, ...]

    def x_of(self, t: float) -> float:
        return (t - self.t_from) / (self.t_to - self.t_from) * self.width


def bucketize(
    clusters: Sequence[DanmakuCluster],
    windows: Sequence[KgWindow],
    keyword_of: Mapping[str, str],
    bucket_width: float = BUCKET_WIDTH_S,
    t_from: float = 0.0,
    t_to: float | None = None,
) -> list[StreamBucket]:
    """Aggregate clusters into fixed-width time buckets over a zoom range.

    A cluster lands in exactly one bucket, decided by its window midpoint,
    and contributes its full size to that bucket's category count. Keyword
    weights count the member comments whose extracted keyword is the token.
    """
    if t_to is None:
        t_to = max((w.end for w in windows), default=0.0)
    if t_to <= t_from:
        raise ValidationError("empty zoom range")
    window_mid = {w.index: (w.start + w.end) / 2.0 for w in windows}
    n_buckets = max(1, math.ceil((t_to - t_from) / bucket_width))

    counts: list[dict[str, int]] = [dict.fromkeys(DISPLAY_CATEGORIES, 0) for _ in range(n_buckets)]
    weights: list[dict[str, dict[str, int]]] = [
        {cat: {} for cat in DISPLAY_CATEGORIES} for _ in range(n_buckets)
    ]
    for cluster in clusters:
        mid = window_mid[cluster.window_id]
        if not t_from <= mid < t_to:
            continue
        b = min(n_buckets - 1, int((mid - t_from) / bucket_width))
        counts[b][cluster.category] += cluster.size
        for member in cluster.member_ids:
            token = keyword_of.get(member, "")
            if token:
                bucket_weights = weights[b][cluster.category]
                bucket_weights[token] = bucket_weights.get(token, 0) + 1

    buckets = []
    for b in range(n_buckets):
        start = t_from + b * bucket_width
        width = min(bucket_width, t_to - start)
        kw = {
            cat: tuple(sorted(tokens.items(), key=lambda kv: (-kv[1], kv[0])))
            for cat, tokens in weights[b].items()
            if tokens
        }
        buckets.append(StreamBucket(start, width, counts[b], kw))
    return buckets


def layout_wordstream(
    buckets: Sequence[StreamBucket],
    width: float,
    height: float,
    categories: Sequence[str] = DISPLAY_CATEGORIES,
    keywords_per_bucket: int = 3,
) -> WordstreamLayout:
    """Stacked-from-zero band layout with greedily placed keyword boxes.

    Band thickness at each bucket center is count * height / max_total,
    where max_total is the largest filtered bucket total (at least 1), and
    bands stack in legend order from the bottom of the viewport. Up to
    keywords_per_bucket keywords per bucket and category are placed center
    outward; a box that would overlap a placed box, leave its band, or
    leave the viewport is dropped.
    """
    if width <= 0 or height <= 0:
        raise ValidationError("viewport must be positive")
    active = [c for c in DISPLAY_CATEGORIES if c in set(categories)]
    if not buckets:
        return WordstreamLayout(width, height, 0.0, 0.0, (), ())
    t_from = buckets[0].t_start
    t_to = buckets[-1].t_start + buckets[-1].width
    max_total = max(max((sum(b.counts.get(c, 0) for c in active) for b in buckets), default=0), 1)
    scale = height / max_total

    xs = tuple((b.t_start + b.width / 2.0 - t_from) / (t_to - t_from) * width for b in buckets)
    base = [height] * len(buckets)
    bands = []
    band_span: dict[str, list[tuple[float, float]]] = {}
    for cat in active:
        bottoms = tuple(base)
        tops = tuple(base[i] - buckets[i].counts.get(cat, 0) * scale for i in range(len(buckets)))
        bands.append(Band(cat, xs, bottoms, tops))
        band_span[cat] = [(tops[i], bottoms[i]) for i in range(len(buckets))]
        base = list(tops)

    max_weight = max(
        (w for b in buckets for c in active for _, w in b.keywords.get(c, ())),
        default=1,
    )

    boxes: list[KeywordBox] = []
    for i, bucket in enumerate(buckets):
        for cat in active:
            ranked = sorted(bucket.keywords.get(cat, ()), key=lambda kv: (-kv[1], kv[0]))
            top, bottom = band_span[cat][i]
            mid = (top + bottom) / 2.0
            placed_here = 0
            for token, weight in ranked:
                if placed_here >= keywords_per_bucket:
                    break
                font = min(FONT_MAX, max(FONT_MIN, FONT_MIN + (weight / max_weight) * (FONT_MAX - FONT_MIN)))
                for y in _center_out_offsets(mid, font):
                    box = KeywordBox(token, xs[i], y, font, cat)
                    if box.y - box.height / 2 < top or box.y + box.height / 2 > bottom:
                        continue
                    if box.x - box.width / 2 < 0 or box.x + box.width / 2 > width:
                        continue
                    if any(box.overlaps(other) for other in boxes):
                        continue
                    boxes.append(box)
                    placed_here += 1
                    break
    return WordstreamLayout(width, height, t_from, t_to, tuple(bands), tuple(boxes))


def _center_out_offsets(mid: float, font: float) -> list[float]:
    step = font * 1.1
    return [mid, mid - step, mid + step]


def simplify_stream(layout: WordstreamLayout, new_height: float) -> WordstreamLayout:
    """Focused-mode strip: same band shapes rescaled to a shorter viewport,
    keyword boxes removed."""
    if new_height <= 0 or new_height >= layout.height:
        raise ValidationError("simplified height must be in (0, height)")
    k = new_height / layout.height
    bands = tuple(
        Band(
            b.category,
            b.xs,
            tuple(v * k for v in b.bottoms),
            tuple(v * k for v in b.tops),
        )
        for b in layout.bands
    )
    return WordstreamLayout(layout.width, new_height, layout.t_from, layout.t_to, bands, ())


@dataclass(frozen=True)
class ScrollSpec:
    """Focused-mode dynamics for one consolidated comment."""

    duration_s: float  # time to cross the viewport
    font_scale: float
    badge: int | None  # cluster size, shown only for real clusters

    def __post_init__(self):
        if not SCROLL_MIN_S <= self.duration_s <= SCROLL_MAX_S:
            raise ValidationError("crossing duration out of range")
        if not FONT_SCALE_MIN <= self.font_scale <= FONT_SCALE_MAX:
            raise ValidationError("font scale out of range")


def scroll_spec(text_length: int, cluster_size: int) -> ScrollSpec:
    """Longer comments scroll more slowly; bigger clusters render larger,
    scroll more slowly, and carry a size badge."""
    if text_length < 1 or cluster_size < 1:
        raise ValidationError("text length and cluster size must be >= 1")
    length_factor = 1.0 + 0.5 * max(0, text_length - 12) / 12.0
    size_factor = 1.0 + 0.15 * math.log2(cluster_size)
    duration = min(SCROLL_MAX_S, max(SCROLL_MIN_S, SCROLL_BASE_S * length_factor * size_factor))
    scale = min(FONT_SCALE_MAX, max(FONT_SCALE_MIN, 1.0 + 0.2 * math.log2(cluster_size)))
    return ScrollSpec(duration, scale, cluster_size if cluster_size >= 2 else None)


def scroll_spec_for(cluster: DanmakuCluster, representative: DanmakuComment) -> ScrollSpec:
    return scroll_spec(max(1, len(representative.text)), cluster.size)
