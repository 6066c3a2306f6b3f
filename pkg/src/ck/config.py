"""Pipeline configuration: every tunable in one validated structure.

The file format is TOML with sections mirroring the dataclass fields;
unknown sections or keys are rejected so typos cannot silently fall back
to defaults. Every value ends up in bundle provenance.
"""

from __future__ import annotations

import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError


@dataclass
class PipelineSettings:
    parallelism: int = 4
    batch_size: int = 64
    window_width: float = 20.0
    forward_slack: float = 5.0


@dataclass
class ClassifySettings:
    backend: str = "lexicon"  # lexicon | remote
    context_half_width: float = 10.0
    lexicon_path: str = ""  # empty: packaged default
    remote_url: str = ""
    timeout: float = 10.0


@dataclass
class ClusterSettings:
    eps: float = 0.35
    min_pts: int = 2


@dataclass
class MappingSettings:
    semantic_weight: float = 1.0
    delay_penalty: float = 0.5


@dataclass
class RelatedSettings:
    radius: float = 15.0
    min_cosine: float = 0.35


@dataclass
class GraphSettings:
    extractor: str = "baseline"  # baseline | remote
    attach_threshold: float = 0.15
    entity_cap: int = 8
    remote_url: str = ""
    timeout: float = 10.0


@dataclass
class SectionSettings:
    max_sections: int = 12
    min_length: float = 30.0


@dataclass
class WordstreamSettings:
    bucket_width: float = 15.0
    width: float = 960.0
    height: float = 240.0
    keywords_per_bucket: int = 3


@dataclass
class ExplainSettings:
    backend: str = "offline"  # offline | remote
    remote_url: str = ""
    timeout: float = 10.0


@dataclass
class PipelineConfig:
    pipeline: PipelineSettings = field(default_factory=PipelineSettings)
    classify: ClassifySettings = field(default_factory=ClassifySettings)
    cluster: ClusterSettings = field(default_factory=ClusterSettings)
    mapping: MappingSettings = field(default_factory=MappingSettings)
    related: RelatedSettings = field(default_factory=RelatedSettings)
    graph: GraphSettings = field(default_factory=GraphSettings)
    sections: SectionSettings = field(default_factory=SectionSettings)
    wordstream: WordstreamSettings = field(default_factory=WordstreamSettings)
    explain: ExplainSettings = field(default_factory=ExplainSettings)

    def validate(self) -> "PipelineConfig":
        checks = [
            (self.pipeline.parallelism >= 1, "pipeline.parallelism must be >= 1"),
            (self.pipeline.batch_size >= 1, "pipeline.batch_size must be >= 1"),
            (self.pipeline.window_width > 0, "pipeline.window_width must be > 0"),
            (self.pipeline.forward_slack >= 0, "pipeline.forward_slack must be >= 0"),
            (self.classify.backend in ("lexicon", "remote"), "classify.backend must be lexicon or remote"),
            (self.classify.context_half_width >= 0, "classify.context_half_width must be >= 0"),
            (self.cluster.eps > 0, "cluster.eps must be > 0"),
            (self.cluster.min_pts >= 1, "cluster.min_pts must be >= 1"),
            (self.related.radius > 0, "related.radius must be > 0"),
            (-1 <= self.related.min_cosine <= 1, "related.min_cosine must be in [-1, 1]"),
            (self.graph.extractor in ("baseline", "remote"), "graph.extractor must be baseline or remote"),
            (self.graph.entity_cap >= 1, "graph.entity_cap must be >= 1"),
            (self.sections.max_sections >= 1, "sections.max_sections must be >= 1"),
            (self.sections.min_length > 0, "sections.min_length must be > 0"),
            (self.wordstream.bucket_width > 0, "wordstream.bucket_width must be > 0"),
            (self.wordstream.width > 0 and self.wordstream.height > 0, "wordstream viewport must be positive"),
            (self.wordstream.keywords_per_bucket >= 0, "wordstream.keywords_per_bucket must be >= 0"),
            (self.explain.backend in ("offline", "remote"), "explain.backend must be offline or remote"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        for name, settings in (("classify", self.classify), ("graph", self.graph), ("explain", self.explain)):
            if getattr(settings, "backend", getattr(settings, "extractor", "")) == "remote" and not settings.remote_url:
                raise ConfigError(f"{name}: remote backend selected but remote_url is empty")
        return self

    def tunables(self) -> dict:
        """Flat provenance view of every setting."""
        out = {}
        for section_name, section in asdict(self).items():
            for key, value in section.items():
                out[f"{section_name}.{key}"] = value
        return out


def _apply_section(target, section_name: str, values: dict) -> None:
    known = {f.name: f.type for f in fields(target)}
    for key, value in values.items():
        if key not in known:
            raise ConfigError(f"unknown key {section_name}.{key}")
        current = getattr(target, key)
        if isinstance(current, bool) != isinstance(value, bool) and isinstance(current, (int, float)):
            pass
        if isinstance(current, float) and isinstance(value, int):
            value = float(value)
        if type(value) is not type(current):
            raise ConfigError(f"{section_name}.{key} must be {type(current).__name__}, got {type(value).__name__}")
        setattr(target, key, value)


def load_config(path: str | Path | None = None) -> PipelineConfig:
    """Defaults, overridden by the TOML file when given."""
    config = PipelineConfig()
    if path is None:
        return config.validate()
    try:
        payload = tomllib.loads(Path(path).read_text("utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config is not valid TOML: {exc}")
    sections = {f.name: getattr(config, f.name) for f in fields(config)}
    for section_name, values in payload.items():
        if section_name not in sections:
            raise ConfigError(f"unknown config section [{section_name}]")
        if not isinstance(values, dict):
            raise ConfigError(f"top-level key {section_name!r} must be a section")
        _apply_section(sections[section_name], section_name, values)
    return config.validate()
