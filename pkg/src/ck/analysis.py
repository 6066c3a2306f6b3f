"""Entity-coverage comparison of danmaku vs. traditional comments, backed
by a Wilcoxon signed-rank test.

The test computes the exact two-sided p by full sign-assignment enumeration
for small samples (n <= 12) and falls back to a tie-corrected,
continuity-corrected normal approximation above that. Both values are kept
in the result because the approximation is what older statistics packages
report while the enumeration is the ground truth at this scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import DataError, DegenerateInputError
from .textutil import fold

EXACT_CUTOFF = 12


@dataclass(frozen=True)
class WilcoxonResult:
    n_effective: int
    w_plus: float
    w_minus: float
    w: float  # min(w_plus, w_minus)
    z: float  # signed like (w_plus - w_minus)
    p_two_sided: float
    method: str  # "exact" | "normal-approx"
    effect_size: float  # rank-biserial (exact) or |z|/sqrt(n) (approx)
    p_exact: float | None = None
    p_normal: float | None = None


def _ranks_with_ties(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j + 2) / 2.0  # ranks are 1-based
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def _exact_p(ranks: Sequence[float], w_observed: float) -> float:
    """P[min(W+, W-) <= observed] under random signs, by convolution over
    the doubled (integer) ranks."""
    ranks2 = [int(round(2 * r)) for r in ranks]
    total2 = sum(ranks2)
    pmf = [1.0]  # pmf over 2*W+ values, scaled by 2^n at the end
    for r2 in ranks2:
        nxt = [0.0] * (len(pmf) + r2)
        for v, c in enumerate(pmf):
            if c:
                nxt[v] += c
                nxt[v + r2] += c
        pmf = nxt
    w2 = int(round(2 * w_observed))
    hits = sum(c for v, c in enumerate(pmf) if min(v, total2 - v) <= w2)
    return hits / 2 ** len(ranks2)


def _normal_z(ranks: Sequence[float], w: float) -> float:
    """|z| for the min rank sum with tie correction and 0.5 continuity
    correction toward the mean."""
    n = len(ranks)
    mean = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0
    seen: dict[float, int] = {}
    for r in ranks:
        seen[r] = seen.get(r, 0) + 1
    for count in seen.values():
        if count > 1:
            var -= (count**3 - count) / 48.0
    sigma = math.sqrt(var)
    return max(0.0, (mean - w - 0.5)) / sigma


def _normal_p(z_abs: float) -> float:
    return math.erfc(z_abs / math.sqrt(2.0))


def wilcoxon_signed_rank(pairs: Sequence[tuple[float, float]]) -> WilcoxonResult:
    """Two-sided Wilcoxon signed-rank test on paired samples.

    Zero differences are dropped (standard practice); ties in |d| get
    average ranks. Raises when every difference is zero.
    """
    if not pairs:
        raise DataError("wilcoxon needs at least one pair")
    diffs = [a - b for a, b in pairs if a != b]
    n = len(diffs)
    if n == 0:
        raise DegenerateInputError("all differences are zero; test undefined")

    ranks = _ranks_with_ties([abs(d) for d in diffs])
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)
    w_minus = sum(r for r, d in zip(ranks, diffs) if d < 0)
    w = min(w_plus, w_minus)

    z_abs = _normal_z(ranks, w)
    z = math.copysign(z_abs, w_plus - w_minus) if w_plus != w_minus else 0.0
    p_normal = _normal_p(z_abs)

    if n <= EXACT_CUTOFF:
        p_exact = _exact_p(ranks, w)
        total = n * (n + 1) / 2.0
        return WilcoxonResult(
            n, w_plus, w_minus, w, z, p_exact, "exact",
            effect_size=(w_plus - w_minus) / total,
            p_exact=p_exact, p_normal=p_normal,
        )
    return WilcoxonResult(
        n, w_plus, w_minus, w, z, p_normal, "normal-approx",
        effect_size=abs(z) / math.sqrt(n),
        p_exact=None, p_normal=p_normal,
    )


def entity_coverage(
    entities: Sequence[str],
    texts: Sequence[str],
    alias_map: Mapping[str, Sequence[str]] | None = None,
) -> int:
    """How many entities appear (directly or via an alias) in the texts.

    Matching is case-folded, whitespace-normalized substring containment,
    which also works for CJK text without token boundaries.
    """
    if not entities:
        raise DataError("entity list must be non-empty")
    alias_map = alias_map or {}
    folded_texts = [fold(t) for t in texts]
    covered = 0
    for entity in entities:
        surfaces = [fold(entity)] + [fold(a) for a in alias_map.get(entity, ())]
        if any(s and s in text for s in surfaces for text in folded_texts):
            covered += 1
    return covered


@dataclass(frozen=True)
class CoveragePair:
    video_id: str
    entity_count: int
    covered_by_danmaku: int
    covered_by_comments: int

    @property
    def danmaku_rate(self) -> float:
        return self.covered_by_danmaku / self.entity_count

    @property
    def comment_rate(self) -> float:
        return self.covered_by_comments / self.entity_count


@dataclass(frozen=True)
class CoverageCorpus:
    video_id: str
    entities: tuple[str, ...]
    danmaku_texts: tuple[str, ...]
    comment_texts: tuple[str, ...]
    alias_map: Mapping[str, Sequence[str]] = field(default_factory=dict)


@dataclass
class CoverageStudy:
    pairs: list[CoveragePair]
    result: WilcoxonResult | None
    notes: list[str]

    def format_text(self) -> str:
        width = max([len(p.video_id) for p in self.pairs] + [len("video")])
        out = [f"{'video':<{width}}  entities  danmaku        comments"]
        for p in self.pairs:
            out.append(
                f"{p.video_id:<{width}}  {p.entity_count:8d}  "
                f"{p.covered_by_danmaku:4d} ({p.danmaku_rate:5.1%})  "
                f"{p.covered_by_comments:4d} ({p.comment_rate:5.1%})"
            )
        if self.result is not None:
            r = self.result
            direction = "danmaku higher" if r.w_plus > r.w_minus else ("comments higher" if r.w_minus > r.w_plus else "no direction")
            out.append(
                f"wilcoxon signed-rank: n={r.n_effective} W={r.w:g} Z={r.z:.2f} "
                f"p={r.p_two_sided:.3f} ({r.method}) effect={r.effect_size:.3f} [{direction}]"
            )
            if r.p_exact is not None and r.p_normal is not None:
                out.append(f"  exact p={r.p_exact:.6f}; normal-approx p={r.p_normal:.6f}")
        out.extend(f"note: {n}" for n in self.notes)
        return "\n".join(out)

    def to_dict(self) -> dict:
        return {
            "pairs": [
                {
                    "video_id": p.video_id,
                    "entity_count": p.entity_count,
                    "covered_by_danmaku": p.covered_by_danmaku,
                    "covered_by_comments": p.covered_by_comments,
                    "danmaku_rate": p.danmaku_rate,
                    "comment_rate": p.comment_rate,
                }
                for p in self.pairs
            ],
            "test": None
            if self.result is None
            else {
                "n_effective": self.result.n_effective,
                "w_plus": self.result.w_plus,
                "w_minus": self.result.w_minus,
                "w": self.result.w,
                "z": self.result.z,
                "p_two_sided": self.result.p_two_sided,
                "method": self.result.method,
                "effect_size": self.result.effect_size,
                "p_exact": self.result.p_exact,
                "p_normal": self.result.p_normal,
            },
            "notes": list(self.notes),
        }


def coverage_study(corpora: Sequence[CoverageCorpus]) -> CoverageStudy:
    """Per-video coverage rates plus the paired signed-rank comparison.

    Refuses with fewer than two corpora (the test is undefined); warns below
    five. A degenerate comparison (identical rates everywhere) is surfaced
    as a note instead of a test result.
    """
    if len(corpora) < 2:
        raise DataError("coverage study needs at least 2 corpora")
    notes = []
    if len(corpora) < 5:
        notes.append(f"only {len(corpora)} corpora; the signed-rank test has little power below 5")

    pairs = []
    for c in corpora:
        pairs.append(
            CoveragePair(
                c.video_id,
                len(c.entities),
                entity_coverage(c.entities, c.danmaku_texts, c.alias_map),
                entity_coverage(c.entities, c.comment_texts, c.alias_map),
            )
        )

    result: WilcoxonResult | None = None
    try:
        result = wilcoxon_signed_rank([(p.danmaku_rate, p.comment_rate) for p in pairs])
        notes.append("zero-difference videos are excluded from the ranks (standard Wilcoxon practice)")
    except DegenerateInputError as exc:
        notes.append(f"test degenerate: {exc}")
    return CoverageStudy(pairs, result, notes)
