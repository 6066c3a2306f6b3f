"""Cue-lexicon loading.

Lexicon files are UTF-8, one cue per line, grouped under bracketed section
headers (``[inquiry]``, ``[positive]``, ...). The packaged default ships at
``ck/data/lexicon.txt`` and is meant to be edited or replaced per
deployment; the classifier only cares about section names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ParseError

SECTIONS = (
    "inquiry",
    "firstperson",
    "experience",
    "supplement",
    "opinion",
    "verb",
    "term",
    "positive",
    "negative",
    "stopword",
)


@dataclass(frozen=True)
class Lexicon:
    sections: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def get(self, name: str) -> tuple[str, ...]:
        return self.sections.get(name, ())

    @property
    def stopwords(self) -> frozenset[str]:
        return frozenset(self.get("stopword"))


def parse_lexicon(text: str) -> Lexicon:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ParseError("cue before any [section] header", line=lineno)
        entry = line.lower()
        if entry not in sections[current]:
            sections[current].append(entry)
    return Lexicon({name: tuple(entries) for name, entries in sections.items()})


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    """Load a cue lexicon; with no path, the packaged default."""
    if path is None:
        text = resources.files("ck.data").joinpath("lexicon.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return parse_lexicon(text)


_default: Lexicon | None = None


def default_lexicon() -> Lexicon:
    global _default
    if _default is None:
        _default = load_lexicon()
    return _default
