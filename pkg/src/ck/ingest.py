"""Parsing of raw danmaku XML, transcripts, and video metadata.

All parse functions are total: they either return a value (with malformed
element/overlap diagnostics attached) or raise a structured error. They
never return a silently truncated result.
"""

from __future__ import annotations

import hashlib
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError, EmptyInputError, ParseError, ValidationError

# Comments may trail the end of the video by this much (player-tail posts).
FORWARD_SLACK_S = 5.0


@dataclass(frozen=True)
class DanmakuComment:
    """One raw time-synced comment."""

    id: str
    video_id: str
    t: float  # video time, seconds
    text: str
    posted_at: int | None = None
    display_mode: int = 1
    color: int = 0xFFFFFF  # 24-bit RGB
    user_hash: str = ""


@dataclass(frozen=True)
class TranscriptLine:
    index: int
    start: float
    end: float
    text: str


@dataclass(frozen=True)
class VideoMeta:
    video_id: str
    title: str
    duration: float
    domain_tag: str = ""


@dataclass
class DanmakuParseResult:
    comments: list[DanmakuComment]
    skipped: int
    video_id: str = ""


@dataclass
class TranscriptParseResult:
    lines: list[TranscriptLine]
    warnings: list[str] = field(default_factory=list)


@dataclass
class Corpus:
    meta: VideoMeta
    lines: list[TranscriptLine]
    comments: list[DanmakuComment]
    warnings: list[str] = field(default_factory=list)
    content_hash: str = ""


def _byte_offset(data: bytes, line: int, column: int) -> int:
    """Convert an (line, column) position from ElementTree into a byte offset."""
    rows = data.split(b"\n")
    return sum(len(r) + 1 for r in rows[: line - 1]) + column


def parse_danmaku_xml(data: bytes, video_id: str = "") -> DanmakuParseResult:
    """Parse a danmaku XML export into validated comments.

    Each ``<d>`` element carries a ``p`` attribute with eight comma-separated
    fields: video time (s), display mode, font size, color (decimal RGB int),
    posted-at unix time, pool, user hash, and row id. Extra fields are
    ignored; elements that do not fit the layout are skipped and counted.
    The result is sorted by video time, preserving source order on ties.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, col = exc.position
        raise ParseError(f"not valid XML: {exc.msg.split(':')[0]}", offset=_byte_offset(data, line, col), line=line) from exc

    xml_video_id = video_id
    for tag in ("chatid", "oid"):
        node = root.find(tag)
        if node is not None and node.text and node.text.strip():
            xml_video_id = node.text.strip()
            break

    comments: list[DanmakuComment] = []
    seen_ids: set[str] = set()
    skipped = 0
    for el in root.iter("d"):
        parsed = _parse_d_element(el, xml_video_id)
        if parsed is None or parsed.id in seen_ids:
            skipped += 1
            continue
        seen_ids.add(parsed.id)
        comments.append(parsed)

    if not comments:
        raise EmptyInputError(f"no valid <d> elements in danmaku XML ({skipped} skipped)")

    comments.sort(key=lambda c: c.t)  # stable: equal-t keeps source order
    return DanmakuParseResult(comments, skipped, xml_video_id)


def _parse_d_element(el: ET.Element, video_id: str) -> DanmakuComment | None:
    p = el.get("p")
    text = (el.text or "").strip()
    if p is None or not text:
        return None
    fields = p.split(",")
    if len(fields) < 8:
        return None
    try:
        t = float(fields[0])
        mode = int(fields[1])
        color = int(fields[3])
        posted = int(fields[4])
    except ValueError:
        return None
    if t < 0 or not 0 <= color <= 0xFFFFFF:
        return None
    return DanmakuComment(
        id=fields[7],
        video_id=video_id,
        t=t,
        text=text,
        posted_at=posted,
        display_mode=mode,
        color=color,
        user_hash=fields[6],
    )


_SRT_TIME = re.compile(r"^(\d{2,}):(\d{2}):(\d{2}),(\d{3})$")


def _srt_seconds(stamp: str, lineno: int) -> float:
    m = _SRT_TIME.match(stamp.strip())
    if not m:
        raise ParseError(f"bad SRT timestamp {stamp.strip()!r}", line=lineno)
    h, mi, s, ms = (int(g) for g in m.groups())
    return h * 3600 + mi * 60 + s + ms / 1000.0


def parse_transcript(data: bytes, fmt: str) -> TranscriptParseResult:
    """Parse a transcript from SRT or the bundle's line-array JSON.

    Lines come back sorted by start time and re-indexed 0..n-1. Overlapping
    lines are allowed but reported in the warning list; an empty transcript
    or a line with end <= start is an error.
    """
    if fmt == "srt":
        lines = _parse_srt(data)
    elif fmt == "lines-json":
        lines = _parse_lines_json(data)
    else:
        raise DataError(f"unknown transcript format {fmt!r} (expected 'srt' or 'lines-json')")

    if not lines:
        raise EmptyInputError("transcript contains no lines")

    lines.sort(key=lambda ln: ln.start)
    lines = [TranscriptLine(i, ln.start, ln.end, ln.text) for i, ln in enumerate(lines)]
    warnings = [
        f"line {cur.index} overlaps line {prev.index} ({cur.start:.3f} < {prev.end:.3f})"
        for prev, cur in zip(lines, lines[1:])
        if cur.start < prev.end
    ]
    return TranscriptParseResult(lines, warnings)


def _parse_srt(data: bytes) -> list[TranscriptLine]:
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError("transcript is not UTF-8", offset=exc.start) from exc

    lines: list[TranscriptLine] = []
    lineno = 0
    block: list[tuple[int, str]] = []

    def flush(block: list[tuple[int, str]]) -> None:
        if not block:
            return
        if len(block) < 2:
            raise ParseError("SRT block missing timing line", line=block[0][0])
        idx_no, idx_raw = block[0]
        try:
            src_index = int(idx_raw.strip())
        except ValueError:
            raise ParseError(f"bad SRT block index {idx_raw.strip()!r}", line=idx_no)
        timing_no, timing = block[1]
        if "-->" not in timing:
            raise ParseError("SRT block missing '-->' timing", line=timing_no)
        start_s, _, end_s = timing.partition("-->")
        start = _srt_seconds(start_s, timing_no)
        end = _srt_seconds(end_s, timing_no)
        if end <= start:
            raise ValidationError(f"SRT block {src_index}: end <= start")
        body = " ".join(t.strip() for _, t in block[2:]).strip()
        if not body:
            raise ValidationError(f"SRT block {src_index}: empty text")
        lines.append(TranscriptLine(src_index, start, end, body))

    for raw in text.splitlines():
        lineno += 1
        if raw.strip():
            block.append((lineno, raw))
        else:
            flush(block)
            block = []
    flush(block)
    return lines


def _parse_lines_json(data: bytes) -> list[TranscriptLine]:
    try:
        payload = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        pos = getattr(exc, "pos", None) if isinstance(exc, json.JSONDecodeError) else exc.start
        raise ParseError("transcript is not valid JSON", offset=pos) from exc
    if not isinstance(payload, list):
        raise ValidationError("lines-json transcript must be a JSON array")
    lines = []
    for i, item in enumerate(payload):
        if not isinstance(item, dict) or not {"start", "end", "text"} <= set(item):
            raise ValidationError(f"transcript entry {i} missing start/end/text")
        start, end, text = float(item["start"]), float(item["end"]), str(item["text"]).strip()
        if end <= start:
            raise ValidationError(f"transcript entry {i}: end <= start")
        if not text:
            raise ValidationError(f"transcript entry {i}: empty text")
        lines.append(TranscriptLine(i, start, end, text))
    return lines


def parse_meta(data: bytes) -> VideoMeta:
    try:
        payload = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError("metadata is not valid JSON") from exc
    try:
        meta = VideoMeta(
            video_id=str(payload["video_id"]),
            title=str(payload["title"]),
            duration=float(payload["duration"]),
            domain_tag=str(payload.get("domain_tag", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"metadata missing or malformed field: {exc}") from exc
    if meta.duration <= 0:
        raise ValidationError("metadata duration must be > 0")
    return meta


def _transcript_format(path: Path) -> str:
    return "srt" if path.suffix.lower() == ".srt" else "lines-json"


def load_corpus(danmaku_path: str | Path, transcript_path: str | Path, meta_path: str | Path) -> Corpus:
    """Load and cross-validate the three input files for one video.

    Comments beyond duration + slack are dropped with a warning; a video_id
    declared in the danmaku XML must match the metadata.
    """
    danmaku_path, transcript_path, meta_path = Path(danmaku_path), Path(transcript_path), Path(meta_path)
    for p in (danmaku_path, transcript_path, meta_path):
        if not p.is_file():
            raise DataError(f"missing input file: {p}")

    raw_danmaku = danmaku_path.read_bytes()
    raw_transcript = transcript_path.read_bytes()
    raw_meta = meta_path.read_bytes()

    meta = parse_meta(raw_meta)
    parsed = parse_danmaku_xml(raw_danmaku)
    if parsed.video_id and parsed.video_id != meta.video_id:
        raise ValidationError(f"video_id mismatch: danmaku {parsed.video_id!r} vs metadata {meta.video_id!r}")
    transcript = parse_transcript(raw_transcript, _transcript_format(transcript_path))

    warnings = list(transcript.warnings)
    if parsed.skipped:
        warnings.append(f"skipped {parsed.skipped} malformed danmaku element(s)")

    limit = meta.duration + FORWARD_SLACK_S
    kept = []
    for c in parsed.comments:
        if c.t > limit:
            warnings.append(f"dropped comment {c.id}: t={c.t:.3f} beyond duration+{FORWARD_SLACK_S:.0f}s")
        else:
            kept.append(DanmakuComment(c.id, meta.video_id, c.t, c.text, c.posted_at, c.display_mode, c.color, c.user_hash))

    digest = hashlib.sha256()
    for blob in (raw_meta, raw_transcript, raw_danmaku):
        digest.update(hashlib.sha256(blob).digest())
    return Corpus(meta, transcript.lines, kept, warnings, digest.hexdigest())
