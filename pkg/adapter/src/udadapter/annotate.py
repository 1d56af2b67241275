"""Transcript lines to a CoNLL-U document.

Each utterance becomes one sentence block carrying `# dialogue_id`,
`# speaker`, and `# utterance_id` comments so downstream corpus tools
can reassemble the dialogue. The parser version goes into a document
header comment, because scores computed from parses are only
reproducible if the model that produced them is on record.
"""

from __future__ import annotations

import logging

from .backends import Word

logger = logging.getLogger(__name__)


class UnprocessableUtteranceError(ValueError):
    """The parser produced nothing usable for an utterance (strict mode)."""


def _clean(text: str) -> str:
    # comments and forms must stay on one line and keep the column count
    return " ".join(text.split()) or "_"


def _block(meta: list[tuple[str, str]], words: list[Word]) -> str:
    out = [f"# {key} = {_clean(value)}" for key, value in meta]
    for i, (form, upos, head, deprel) in enumerate(words, start=1):
        out.append("\t".join((str(i), _clean(form), "_", upos, "_", "_",
                              str(head), deprel, "_", "_")))
    return "\n".join(out) + "\n"


def _merge(sentences: list[list[Word]]) -> list[Word]:
    """Concatenate parsed sentences into one tree.

    The first sentence's root stays the root; every later sentence's
    root is re-attached to it as parataxis, which keeps the block a
    single valid tree.
    """
    merged: list[Word] = []
    first_root = 0
    offset = 0
    for sent in sentences:
        for form, upos, head, deprel in sent:
            if head == 0:
                if first_root == 0:
                    first_root = offset + 1
                    merged.append((form, upos, 0, deprel))
                else:
                    merged.append((form, upos, first_root, "parataxis"))
            else:
                merged.append((form, upos, head + offset, deprel))
        offset = len(merged)
    return merged


def annotate(lines, backend, split_sentences: bool = False,
             strict: bool = True) -> str:
    """Parse every transcript line and render the CoNLL-U document.

    Multi-sentence utterances are merged into one block, or emitted as
    separate blocks with dotted utterance sub-ids when `split_sentences`.
    Utterances the parser cannot process abort the run in strict mode
    and are skipped with a warning otherwise.
    """
    blocks: list[str] = []
    header = f"# parser = {backend.version()}\n"
    for line in lines:
        sentences = [s for s in backend.parse(line.text) if s]
        if not sentences:
            message = (f"parser produced no tokens for dialogue "
                       f"{line.dialogue_id!r} utterance {line.utterance_id}")
            if strict:
                raise UnprocessableUtteranceError(message)
            logger.warning("%s; skipping", message)
            continue
        base_meta = [("dialogue_id", line.dialogue_id),
                     ("speaker", line.speaker)]
        if split_sentences and len(sentences) > 1:
            for k, sent in enumerate(sentences, start=1):
                meta = base_meta + [("utterance_id",
                                     f"{line.utterance_id}.{k}"),
                                    ("text", line.text)]
                blocks.append(_block(meta, sent))
        else:
            meta = base_meta + [("utterance_id", str(line.utterance_id)),
                                ("text", line.text)]
            blocks.append(_block(meta, _merge(sentences)))
    if not blocks:
        return ""
    return header + "\n".join(blocks)
