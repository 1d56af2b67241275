"""Command-line front end: JSONL transcript in, CoNLL-U out."""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from pathlib import Path

from .annotate import UnprocessableUtteranceError, annotate
from .backends import BACKENDS, ParserSetupError, make_backend
from .transcript import TranscriptError, read_transcript

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_SETUP = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udadapter",
        description="Annotate a JSONL dialogue transcript as CoNLL-U with "
                    "dialogue metadata comments.")
    parser.add_argument("input", type=Path,
                        help="transcript file, one JSON object per line with "
                             "keys dialogue_id, utterance_id, speaker, text")
    parser.add_argument("--language", default="de",
                        help="parser language code (default: de)")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true",
                      default=True,
                      help="abort on malformed or unparseable lines (default)")
    mode.add_argument("--lenient", dest="strict", action="store_false",
                      help="skip malformed or unparseable lines with a warning")
    parser.add_argument("--split-sentences", action="store_true",
                        help="emit one block per sentence with dotted "
                             "utterance sub-ids instead of merging")
    parser.add_argument("--backend", choices=sorted(BACKENDS),
                        default="stanza",
                        help="parser implementation (default: stanza; 'chain' "
                             "is an offline skeleton for format-level work)")
    parser.add_argument("--out", type=Path, default=None,
                        help="output file, written atomically (default: stdout)")
    return parser


def _write_atomic(target: Path, text: str) -> None:
    fd, tmp_name = tempfile.mkstemp(dir=target.parent or Path("."),
                                    prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="udadapter: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        backend = make_backend(args.backend, args.language)
        lines = read_transcript(args.input.read_text(encoding="utf-8"),
                                lenient=not args.strict)
        document = annotate(lines, backend,
                            split_sentences=args.split_sentences,
                            strict=args.strict)
    except ParserSetupError as exc:
        print(f"udadapter: error: setup: {exc}", file=sys.stderr)
        return EXIT_SETUP
    except (TranscriptError, UnprocessableUtteranceError, ValueError) as exc:
        print(f"udadapter: error: data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"udadapter: error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.out is None:
        sys.stdout.write(document)
    else:
        try:
            _write_atomic(args.out, document)
        except OSError as exc:
            print(f"udadapter: error: io: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
