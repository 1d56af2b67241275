"""Dialogue transcripts (JSONL) to CoNLL-U with dialogue metadata."""

from .annotate import UnprocessableUtteranceError, annotate
from .backends import (BACKENDS, ChainBackend, ParserSetupError,
                       StanzaBackend, make_backend)
from .transcript import TranscriptError, TranscriptLine, read_transcript

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "ChainBackend",
    "ParserSetupError",
    "StanzaBackend",
    "TranscriptError",
    "TranscriptLine",
    "UnprocessableUtteranceError",
    "annotate",
    "make_backend",
    "read_transcript",
    "__version__",
]
