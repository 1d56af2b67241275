"""Reading dialogue transcripts from JSON Lines.

One JSON object per line with keys dialogue_id, utterance_id, speaker,
and text. Blank lines are allowed and skipped.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("dialogue_id", "utterance_id", "speaker", "text")


class TranscriptError(ValueError):
    """A transcript line is malformed or duplicated."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True, slots=True)
class TranscriptLine:
    dialogue_id: str
    utterance_id: int
    speaker: str
    text: str

    def __post_init__(self):
        if not self.text.strip():
            raise TranscriptError("text must be non-empty")
        if not self.dialogue_id:
            raise TranscriptError("dialogue_id must be non-empty")
        if not self.speaker:
            raise TranscriptError("speaker must be non-empty")


def _line_from_obj(obj, line_no: int) -> TranscriptLine:
    if not isinstance(obj, dict):
        raise TranscriptError("expected a JSON object", line_no)
    missing = [k for k in REQUIRED_KEYS if k not in obj]
    if missing:
        raise TranscriptError(f"missing keys: {', '.join(missing)}", line_no)
    uid = obj["utterance_id"]
    # bool is an int subclass; reject it explicitly
    if isinstance(uid, bool) or not isinstance(uid, int):
        raise TranscriptError(f"utterance_id must be an integer, got {uid!r}",
                              line_no)
    try:
        return TranscriptLine(dialogue_id=str(obj["dialogue_id"]),
                              utterance_id=uid,
                              speaker=str(obj["speaker"]),
                              text=str(obj["text"]))
    except TranscriptError as exc:
        raise TranscriptError(str(exc), line_no) from None


def read_transcript(text: str, lenient: bool = False) -> list[TranscriptLine]:
    """Parse a JSONL transcript.

    Strict mode raises TranscriptError on the first malformed line or
    duplicated (dialogue_id, utterance_id); lenient mode drops the
    offending line with a warning and keeps going.
    """
    lines: list[TranscriptLine] = []
    seen: set[tuple[str, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            if lenient:
                logger.warning("skipping line %d: not valid JSON (%s)",
                               line_no, exc.msg)
                continue
            raise TranscriptError(f"not valid JSON: {exc.msg}", line_no) from None
        try:
            entry = _line_from_obj(obj, line_no)
        except TranscriptError as exc:
            if lenient:
                logger.warning("skipping %s", exc)
                continue
            raise
        key = (entry.dialogue_id, entry.utterance_id)
        if key in seen:
            message = f"duplicate utterance {key[1]} in dialogue {key[0]!r}"
            if lenient:
                logger.warning("skipping line %d: %s", line_no, message)
                continue
            raise TranscriptError(message, line_no)
        seen.add(key)
        lines.append(entry)
    return lines
