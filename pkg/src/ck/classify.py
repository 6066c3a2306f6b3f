"""Knowledge-comment classification and its evaluation metrics.

A comment is either not knowledge or carries one of five themes; comments
themed Interpretation additionally carry a stance, which is how the five
themes fan out into the seven user-facing display categories.

The shipped classifier is a deterministic ordered-rule baseline over
editable cue lexicons. Anything smarter (a fine-tuned model behind an HTTP
endpoint) plugs in through the same ClassifierBackend interface with
per-comment fallback to the baseline.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol, Sequence

from .errors import DataError, DegenerateInputError, ValidationError
from .ingest import DanmakuComment, TranscriptLine
from .lexicon import Lexicon, default_lexicon
from .textutil import count_occurrences, fold, is_cjk, word_split


class Theme(enum.Enum):
    INTERPRETATION = "interpretation"
    INQUIRY = "inquiry"
    EXPERIENCE_SHARING = "experience-sharing"
    CONCEPT_NOTING = "concept-noting"
    SUPPLEMENTARY_KNOWLEDGE = "supplementary-knowledge"


class Stance(enum.Enum):
    POSITIVE = "positive"
    NEUTRAL = "neutral"
    NEGATIVE = "negative"


# Display categories in legend order; interpretation is split by stance.
DISPLAY_CATEGORIES = (
    "interpretation-positive",
    "interpretation-neutral",
    "interpretation-negative",
    "inquiry",
    "experience-sharing",
    "concept-noting",
    "supplementary-knowledge",
)


@dataclass(frozen=True)
class KnowledgeLabel:
    """One of 8 internal states: non-knowledge, 4 plain themes, or
    interpretation x 3 stances."""

    is_knowledge: bool
    theme: Theme | None = None
    stance: Stance | None = None

    def __post_init__(self):
        if self.is_knowledge != (self.theme is not None):
            raise ValidationError("theme must be present iff is_knowledge")
        if (self.theme is Theme.INTERPRETATION) != (self.stance is not None):
            raise ValidationError("stance must be present iff theme is interpretation")

    @property
    def display_category(self) -> str | None:
        """The 7-way display slug; None for non-knowledge comments."""
        if not self.is_knowledge:
            return None
        if self.theme is Theme.INTERPRETATION:
            return f"interpretation-{self.stance.value}"
        return self.theme.value

    @staticmethod
    def from_display_category(slug: str) -> "KnowledgeLabel":
        if slug.startswith("interpretation-"):
            return KnowledgeLabel(True, Theme.INTERPRETATION, Stance(slug.split("-", 1)[1]))
        return KnowledgeLabel(True, Theme(slug))


NOT_KNOWLEDGE = KnowledgeLabel(False)


class ClassifierBackend(Protocol):
    descriptor: str

    def classify_batch(self, items: Sequence[tuple[str, str, str]]) -> list[KnowledgeLabel]:
        """Label a batch of (comment_id, text, transcript_context) preserving order."""
        ...


def _has_word_char(text: str) -> bool:
    return any(c.isalnum() or is_cjk(c) for c in text)


def _hits(text_folded: str, cues: Sequence[str]) -> int:
    return sum(count_occurrences(cue, text_folded) for cue in cues)


def _any_cue(text_folded: str, cues: Sequence[str]) -> bool:
    return any(count_occurrences(cue, text_folded) for cue in cues)


def lexicon_stance(text: str, lexicon: Lexicon | None = None) -> Stance:
    """Stance of an interpretation comment: sign of positive minus negative
    cue occurrences."""
    lexicon = lexicon or default_lexicon()
    folded = fold(text)
    balance = _hits(folded, lexicon.get("positive")) - _hits(folded, lexicon.get("negative"))
    if balance > 0:
        return Stance.POSITIVE
    if balance < 0:
        return Stance.NEGATIVE
    return Stance.NEUTRAL


def lexicon_classify(comment: DanmakuComment | str, context: str = "", lexicon: Lexicon | None = None) -> KnowledgeLabel:
    """Deterministic ordered-rule baseline classification.

    Rules fire first-match-wins:
      1. shorter than 2 chars, repeated-character token, or no word
         characters at all -> not knowledge
      2. question mark or interrogative cue -> inquiry
      3. first-person pronoun plus an experience cue -> experience sharing
      4. at most 6 words, no verb cue, and a dictionary term or a
         capitalized term-like token -> concept noting
      5. supplement cue, or a named term absent from the transcript
         context -> supplementary knowledge
      6. opinion cue -> interpretation, with lexicon stance
      7. otherwise -> not knowledge
    """
    lexicon = lexicon or default_lexicon()
    text = comment.text if isinstance(comment, DanmakuComment) else comment
    stripped = "".join(text.split())
    folded = fold(text)
    words = word_split(text)

    # 1: junk filter
    if len(stripped) < 2 or not _has_word_char(stripped):
        return NOT_KNOWLEDGE
    if len(stripped) >= 3 and len(set(stripped)) <= 2:
        return NOT_KNOWLEDGE

    # 2: inquiry
    if "?" in text or "？" in text or _any_cue(folded, lexicon.get("inquiry")):
        return KnowledgeLabel(True, Theme.INQUIRY)

    # 3: experience sharing
    folded_words = {w.casefold() for w in words}
    first_person = any(
        (cue in folded if any(is_cjk(c) for c in cue) else cue in folded_words)
        for cue in lexicon.get("firstperson")
    )
    if first_person and _any_cue(folded, lexicon.get("experience")):
        return KnowledgeLabel(True, Theme.EXPERIENCE_SHARING)

    # 4: concept noting
    capitalized = [w for w in words if w[:1].isupper() and len(w) >= 2]
    if len(words) <= 6 and not _any_cue(folded, lexicon.get("verb")):
        if capitalized or _any_cue(folded, lexicon.get("term")):
            return KnowledgeLabel(True, Theme.CONCEPT_NOTING)

    # 5: supplementary knowledge
    context_folded = fold(context)
    named_absent = any(w.casefold() not in context_folded for w in capitalized)
    if _any_cue(folded, lexicon.get("supplement")) or named_absent:
        return KnowledgeLabel(True, Theme.SUPPLEMENTARY_KNOWLEDGE)

    # 6: interpretation
    if _any_cue(folded, lexicon.get("opinion")):
        return KnowledgeLabel(True, Theme.INTERPRETATION, lexicon_stance(text, lexicon))

    return NOT_KNOWLEDGE


class LexiconClassifier:
    """Offline baseline backend wrapping lexicon_classify."""

    def __init__(self, lexicon: Lexicon | None = None):
        self.lexicon = lexicon or default_lexicon()
        self.descriptor = "lexicon-rules/1"

    def classify_batch(self, items: Sequence[tuple[str, str, str]]) -> list[KnowledgeLabel]:
        return [lexicon_classify(text, context, self.lexicon) for _, text, context in items]


def transcript_context(lines: Sequence[TranscriptLine], t: float, half_width: float = 10.0) -> str:
    """Transcript text overlapping [t - half_width, t + half_width]."""
    lo, hi = t - half_width, t + half_width
    return " ".join(ln.text for ln in lines if ln.start < hi and ln.end > lo)


@dataclass
class CorpusClassification:
    pairs: list[tuple[DanmakuComment, KnowledgeLabel]]
    fallback_count: int = 0

    def knowledge(self) -> list[tuple[DanmakuComment, KnowledgeLabel]]:
        return [(c, l) for c, l in self.pairs if l.is_knowledge]


def classify_corpus(
    comments: Sequence[DanmakuComment],
    lines: Sequence[TranscriptLine],
    backend: ClassifierBackend | None = None,
    parallelism: int = 1,
    batch_size: int = 64,
    context_half_width: float = 10.0,
    allow_fallback: bool = True,
) -> CorpusClassification:
    """Classify every comment with its local transcript context.

    Output order equals input order regardless of parallelism. When the
    backend raises or returns a malformed batch, the affected comments are
    relabeled per-comment by the lexicon baseline and counted; with
    allow_fallback=False the error propagates instead.
    """
    if parallelism < 1:
        raise ValidationError("parallelism must be >= 1")
    backend = backend or LexiconClassifier()
    fallback: ClassifierBackend | None = None
    if allow_fallback and not isinstance(backend, LexiconClassifier):
        fallback = LexiconClassifier()

    items = [
        (c.id, c.text, transcript_context(lines, c.t, context_half_width))
        for c in comments
    ]
    batches = [items[i : i + batch_size] for i in range(0, len(items), batch_size)]

    fallback_count = 0

    def run_batch(batch):
        try:
            labels = backend.classify_batch(batch)
            if len(labels) != len(batch) or not all(isinstance(l, KnowledgeLabel) for l in labels):
                raise DataError("backend returned a malformed batch")
            return labels, 0
        except Exception:
            if fallback is None:
                raise
            return fallback.classify_batch(batch), len(batch)

    if parallelism == 1 or len(batches) <= 1:
        results = [run_batch(b) for b in batches]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(run_batch, batches))

    labels: list[KnowledgeLabel] = []
    for batch_labels, fb in results:
        labels.extend(batch_labels)
        fallback_count += fb
    return CorpusClassification(list(zip(comments, labels)), fallback_count)


def cohens_kappa(labels_a: Sequence, labels_b: Sequence) -> float:
    """Cohen's kappa over two equal-length label vectors.

    kappa = (p_o - p_e) / (1 - p_e), with chance agreement p_e from the
    raters' marginals. Undefined (error) when both raters are constant and
    identical, i.e. p_e = 1.
    """
    if len(labels_a) != len(labels_b):
        raise ValidationError("label vectors must have equal length")
    n = len(labels_a)
    if n == 0:
        raise ValidationError("label vectors must be non-empty")
    alphabet = sorted(set(labels_a) | set(labels_b), key=repr)
    p_o = sum(a == b for a, b in zip(labels_a, labels_b)) / n
    p_e = sum(
        (sum(a == lbl for a in labels_a) / n) * (sum(b == lbl for b in labels_b) / n)
        for lbl in alphabet
    )
    if p_e >= 1.0:
        raise DegenerateInputError("kappa undefined: both raters constant and equal (p_e = 1)")
    return (p_o - p_e) / (1.0 - p_e)


@dataclass(frozen=True)
class ConfusionMatrix:
    counts: tuple[tuple[int, ...], ...]  # rows = true class, cols = predicted
    class_names: tuple[str, ...]

    def __post_init__(self):
        k = len(self.class_names)
        if k < 2:
            raise ValidationError("confusion matrix needs at least 2 classes")
        if len(self.counts) != k or any(len(row) != k for row in self.counts):
            raise ValidationError("confusion matrix must be k x k")
        if any(v < 0 for row in self.counts for v in row):
            raise ValidationError("confusion matrix counts must be >= 0")

    @staticmethod
    def from_lists(counts: Sequence[Sequence[int]], class_names: Sequence[str]) -> "ConfusionMatrix":
        return ConfusionMatrix(tuple(tuple(int(v) for v in row) for row in counts), tuple(class_names))


@dataclass
class ClassScore:
    name: str
    precision: float
    recall: float
    f1: float
    support: int
    zero_support: bool = False


@dataclass
class F1Report:
    per_class: list[ClassScore]
    macro_f1: float

    def format_text(self) -> str:
        width = max(len(s.name) for s in self.per_class)
        rows = [f"{'class':<{width}}  precision  recall  f1      support"]
        for s in self.per_class:
            flag = "  (no support)" if s.zero_support else ""
            rows.append(f"{s.name:<{width}}  {s.precision:9.4f}  {s.recall:6.4f}  {s.f1:6.4f}  {s.support:7d}{flag}")
        rows.append(f"macro-F1: {self.macro_f1:.4f}")
        return "\n".join(rows)


def f1_report(matrix: ConfusionMatrix) -> F1Report:
    """Per-class precision/recall/F1 plus the macro average.

    Classes with zero true and zero predicted samples score F1 = 0 and are
    flagged rather than silently excluded.
    """
    k = len(matrix.class_names)
    total = sum(sum(row) for row in matrix.counts)
    if total == 0:
        raise DataError("all-zero confusion matrix")
    scores = []
    for i in range(k):
        tp = matrix.counts[i][i]
        true_sum = sum(matrix.counts[i])
        pred_sum = sum(matrix.counts[r][i] for r in range(k))
        zero = true_sum == 0 and pred_sum == 0
        precision = tp / pred_sum if pred_sum else 0.0
        recall = tp / true_sum if true_sum else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        scores.append(ClassScore(matrix.class_names[i], precision, recall, f1, true_sum, zero))
    macro = sum(s.f1 for s in scores) / k
    return F1Report(scores, macro)


@dataclass
class DistributionReport:
    rows: list[tuple[str, int, float]]  # (display category, count, percentage)
    total_knowledge: int
    note: str = ""

    def format_text(self) -> str:
        if not self.rows:
            return self.note or "no knowledge comments"
        width = max(len(slug) for slug, _, _ in self.rows)
        lines = [f"{'category':<{width}}  count  share"]
        for slug, count, pct in self.rows:
            lines.append(f"{slug:<{width}}  {count:5d}  {pct:5.1f}%")
        lines.append(f"{'total':<{width}}  {self.total_knowledge:5d}  100.0%")
        return "\n".join(lines)


def distribution_report(labels: Sequence[KnowledgeLabel]) -> DistributionReport:
    """Counts and percentages per display category over knowledge comments,
    interpretation broken out by stance."""
    knowledge = [l for l in labels if l.is_knowledge]
    if not knowledge:
        return DistributionReport([], 0, "no knowledge comments in input")
    counts = {slug: 0 for slug in DISPLAY_CATEGORIES}
    for label in knowledge:
        counts[label.display_category] += 1
    total = len(knowledge)
    rows = [(slug, n, 100.0 * n / total) for slug, n in counts.items()]
    return DistributionReport(rows, total)
