"""Remote HTTP backends plus the offline explanation stub.

Wire contracts:
  classifier: POST {"items": [{"id", "text", "context"}]}
              -> {"labels": [{"id", "label": {"is_knowledge", "theme", "stance"}}]}
  extractor:  POST {"text": ...}
              -> {"entities": [{"label", "salience"}], "relations": [{"s", "p", "o"}]}
  explainer:  POST {"comment", "transcript", "entity", "relations"} -> {"text": ...}

Remote classifier failures are handled upstream (per-comment fallback to the
lexicon baseline); the explainer falls back to a deterministic template.
"""

from __future__ import annotations

from typing import Sequence

import requests

from .classify import ClassifierBackend, KnowledgeLabel, LexiconClassifier, Stance, Theme
from .config import PipelineConfig
from .errors import BackendError
from .lexicon import Lexicon, default_lexicon, load_lexicon
from .structure import BaselineExtractor, ExtractorBackend


class RemoteClassifier:
    def __init__(self, url: str, timeout: float = 10.0):
        self.url = url
        self.timeout = timeout
        self.descriptor = f"remote-classifier@{url}"

    def classify_batch(self, items: Sequence[tuple[str, str, str]]) -> list[KnowledgeLabel]:
        payload = {"items": [{"id": i, "text": t, "context": c} for i, t, c in items]}
        try:
            resp = requests.post(self.url, json=payload, timeout=self.timeout)
            resp.raise_for_status()
            body = resp.json()
        except requests.RequestException as exc:
            raise BackendError(f"remote classifier unavailable: {exc}") from exc
        by_id = {entry["id"]: entry["label"] for entry in body["labels"]}
        labels = []
        for comment_id, _, _ in items:
            raw = by_id[comment_id]
            theme = Theme(raw["theme"]) if raw.get("theme") else None
            stance = Stance(raw["stance"]) if raw.get("stance") else None
            labels.append(KnowledgeLabel(bool(raw["is_knowledge"]), theme, stance))
        return labels


class RemoteExtractor:
    def __init__(self, url: str, timeout: float = 10.0, fallback: ExtractorBackend | None = None):
        self.url = url
        self.timeout = timeout
        self.fallback = fallback
        self.descriptor = f"remote-extractor@{url}"

    def extract(self, text: str):
        try:
            resp = requests.post(self.url, json={"text": text}, timeout=self.timeout)
            resp.raise_for_status()
            body = resp.json()
            entities = [(str(e["label"]), float(e["salience"])) for e in body["entities"]]
            relations = [(str(r["s"]), str(r["p"]), str(r["o"])) for r in body["relations"]]
            return entities, relations
        except (requests.RequestException, KeyError, TypeError, ValueError) as exc:
            if self.fallback is not None:
                return self.fallback.extract(text)
            raise BackendError(f"remote extractor failed: {exc}") from exc


class OfflineExplainer:
    """Deterministic explanation template used when no LLM is configured."""

    descriptor = "offline-stub/1"
    offline_stub = True

    def explain(self, comment_text: str, transcript: str, entity: str | None, relations: Sequence[str]) -> str:
        parts = []
        if entity:
            parts.append(f'This comment responds to "{entity}" in the current segment.')
        else:
            parts.append("This comment responds to the current segment as a whole.")
        if relations:
            parts.append("The segment states: " + "; ".join(relations) + ".")
        parts.append(f'Comment: "{comment_text}"')
        return " ".join(parts)


class RemoteExplainer:
    offline_stub = False

    def __init__(self, url: str, timeout: float = 10.0):
        self.url = url
        self.timeout = timeout
        self.descriptor = f"remote-explainer@{url}"
        self._fallback = OfflineExplainer()

    def explain(self, comment_text: str, transcript: str, entity: str | None, relations: Sequence[str]) -> str:
        payload = {
            "comment": comment_text,
            "transcript": transcript,
            "entity": entity,
            "relations": list(relations),
            "instruction": "explain the relationship between this comment and this transcript excerpt",
        }
        try:
            resp = requests.post(self.url, json=payload, timeout=self.timeout)
            resp.raise_for_status()
            return str(resp.json()["text"])
        except (requests.RequestException, KeyError, TypeError, ValueError) as exc:
            raise BackendError(f"remote explainer failed: {exc}") from exc


def lexicon_for(config: PipelineConfig) -> Lexicon:
    if config.classify.lexicon_path:
        return load_lexicon(config.classify.lexicon_path)
    return default_lexicon()


def classifier_for(config: PipelineConfig) -> ClassifierBackend:
    if config.classify.backend == "remote":
        return RemoteClassifier(config.classify.remote_url, config.classify.timeout)
    return LexiconClassifier(lexicon_for(config))


def extractor_for(config: PipelineConfig) -> ExtractorBackend:
    baseline = BaselineExtractor(lexicon_for(config).stopwords, config.graph.entity_cap)
    if config.graph.extractor == "remote":
        return RemoteExtractor(config.graph.remote_url, config.graph.timeout, fallback=baseline)
    return baseline


def explainer_for(config: PipelineConfig):
    if config.explain.backend == "remote":
        return RemoteExplainer(config.explain.remote_url, config.explain.timeout)
    return OfflineExplainer()
