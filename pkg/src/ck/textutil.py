"""Tokenization and text normalization helpers.

Danmaku text is a mix of CJK and Latin script with no reliable whitespace,
so the shared term extractor emits lowercased Latin/digit runs plus short
character n-grams from each contiguous CJK run, reduced to their maximal
surface forms. That keeps every downstream consumer (keywords, entities,
stopword filtering) deterministic without a segmentation model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_LATIN_RUN = re.compile(r"[A-Za-z0-9_']+")
_WS_RUN = re.compile(r"\s+")

# CJK unified ideographs plus extension A and compatibility block.
_CJK_RANGES = ((0x3400, 0x4DBF), (0x4E00, 0x9FFF), (0xF900, 0xFAFF))


def is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def normalize_ws(text: str) -> str:
    """Trim and collapse every internal whitespace run to a single space."""
    return _WS_RUN.sub(" ", text.strip())


def fold(text: str) -> str:
    """Case-fold and whitespace-normalize for robust substring matching."""
    return normalize_ws(text).casefold()


@dataclass(frozen=True)
class Term:
    text: str
    first_pos: int
    count: int


def _cjk_runs(text: str) -> list[tuple[str, int]]:
    runs = []
    i, n = 0, len(text)
    while i < n:
        if is_cjk(text[i]):
            j = i
            while j < n and is_cjk(text[j]):
                j += 1
            runs.append((text[i:j], i))
            i = j
        else:
            i += 1
    return runs


def extract_terms(text: str, stop_edges: frozenset[str] = frozenset()) -> list[Term]:
    """Index terms with first positions and counts, ordered by appearance.

    Latin/digit runs become lowercased word tokens. CJK runs, which carry no
    word boundaries, contribute overlapping 2..5-grams (the lone character
    for a length-1 run); grams starting or ending with a single-character
    function word in ``stop_edges`` are dropped, and a gram contained in a
    longer gram with the same count is folded into it so the maximal surface
    form survives ("根瘤菌" rather than "根瘤" plus "瘤菌").
    """
    counts: dict[str, int] = {}
    first_pos: dict[str, int] = {}

    def add(term: str, pos: int) -> None:
        counts[term] = counts.get(term, 0) + 1
        if term not in first_pos:
            first_pos[term] = pos

    for m in _LATIN_RUN.finditer(text):
        add(m.group(0).lower(), m.start())

    cjk_terms: set[str] = set()
    for run, base in _cjk_runs(text):
        if len(run) == 1:
            add(run, base)
            cjk_terms.add(run)
            continue
        for size in (2, 3, 4, 5):
            for k in range(len(run) - size + 1):
                gram = run[k : k + size]
                if gram[0] in stop_edges or gram[-1] in stop_edges:
                    continue
                add(gram, base + k)
                cjk_terms.add(gram)

    # Maximal-substring reduction over the CJK grams.
    by_len = sorted(cjk_terms, key=len, reverse=True)
    dropped: set[str] = set()
    for i, longer in enumerate(by_len):
        if longer in dropped:
            continue
        for shorter in by_len[i + 1 :]:
            if shorter in dropped or len(shorter) >= len(longer):
                continue
            if shorter in longer and counts[shorter] == counts[longer]:
                dropped.add(shorter)

    terms = [Term(t, first_pos[t], c) for t, c in counts.items() if t not in dropped]
    terms.sort(key=lambda term: (term.first_pos, -len(term.text)))
    return terms


def word_split(text: str) -> list[str]:
    """Whitespace/punctuation split that preserves case.

    Used by the classification rules, which care about token counts and
    capitalization rather than index terms. A contiguous CJK run counts
    as one word.
    """
    words: list[str] = []
    for chunk in text.split():
        # Strip surrounding punctuation but keep internal apostrophes etc.
        chunk = chunk.strip("。，！？；：“”‘’（）().,!?;:\"'[]{}<>«»…~-")
        if not chunk:
            continue
        # Separate CJK runs from embedded Latin fragments.
        buf = ""
        cjk_buf = ""
        for ch in chunk:
            if is_cjk(ch):
                if buf:
                    words.append(buf)
                    buf = ""
                cjk_buf += ch
            else:
                if cjk_buf:
                    words.append(cjk_buf)
                    cjk_buf = ""
                buf += ch
        if buf:
            words.append(buf)
        if cjk_buf:
            words.append(cjk_buf)
    return words


def stop_edges_of(stopwords: frozenset[str]) -> frozenset[str]:
    """Single-character function words, used to trim CJK gram edges."""
    return frozenset(w for w in stopwords if len(w) == 1)


def count_occurrences(needle: str, haystack: str) -> int:
    """Non-overlapping occurrence count; Latin needles match on word
    boundaries, CJK needles as plain substrings."""
    if not needle:
        return 0
    if any(is_cjk(c) for c in needle):
        return haystack.count(needle)
    pattern = re.compile(r"(?<![A-Za-z0-9_])" + re.escape(needle) + r"(?![A-Za-z0-9_])", re.IGNORECASE)
    return len(pattern.findall(haystack))
