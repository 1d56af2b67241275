"""Parser backends.

A backend turns raw utterance text into one or more parsed sentences,
each a list of (form, upos, head, deprel) tuples with sentence-local
heads (0 means the sentence root). The real work happens in an external
Universal Dependencies parser; the chain backend is a deterministic
offline stand-in that produces valid but linguistically empty trees,
which is enough for format-level pipelines and tests.
"""

from __future__ import annotations

import re
import unicodedata

Word = tuple[str, str, int, str]  # form, upos, head, deprel


class ParserSetupError(RuntimeError):
    """The requested parser is not installed or has no model."""


class StanzaBackend:
    """German UD parsing through the stanza neural pipeline."""

    def __init__(self, language: str = "de"):
        try:
            import stanza
        except ModuleNotFoundError:
            raise ParserSetupError(
                "the stanza parser is not installed; run `pip install stanza` "
                f"and `python -c \"import stanza; stanza.download('{language}')\"`"
            ) from None
        self._stanza = stanza
        self.language = language
        try:
            self._pipe = stanza.Pipeline(
                lang=language, processors="tokenize,mwt,pos,lemma,depparse",
                verbose=False, download_method=None)
        except Exception as exc:
            raise ParserSetupError(
                f"no stanza model for language {language!r}; run "
                f"`python -c \"import stanza; stanza.download('{language}')\"` "
                f"({exc})") from None

    def version(self) -> str:
        return f"stanza-{self._stanza.__version__}/{self.language}"

    def parse(self, text: str) -> list[list[Word]]:
        doc = self._pipe(text)
        sentences = []
        for sent in doc.sentences:
            words = [(w.text, w.upos or "X", int(w.head), w.deprel or "dep")
                     for w in sent.words]
            sentences.append(words)
        return sentences


_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")


def _is_punct_form(form: str) -> bool:
    return all(unicodedata.category(ch).startswith("P") for ch in form)


class ChainBackend:
    """Offline fallback: whitespace tokens strung into a chain tree.

    The first token of each sentence is the root and every later token
    attaches to the token before it. No POS tagging beyond marking
    all-punctuation and all-digit tokens.
    """

    def __init__(self, language: str = "de"):
        self.language = language

    def version(self) -> str:
        return f"chain-skeleton/{self.language}"

    def parse(self, text: str) -> list[list[Word]]:
        sentences = []
        for segment in _SENTENCE_SPLIT.split(text):
            forms = segment.split()
            if not forms:
                continue
            words: list[Word] = []
            for i, form in enumerate(forms, start=1):
                if _is_punct_form(form):
                    upos = "PUNCT"
                elif form.isdigit():
                    upos = "NUM"
                else:
                    upos = "X"
                head = i - 1
                deprel = "root" if head == 0 else "dep"
                words.append((form, upos, head, deprel))
            sentences.append(words)
        return sentences


BACKENDS = {"stanza": StanzaBackend, "chain": ChainBackend}


def make_backend(name: str, language: str):
    try:
        factory = BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; choose from "
                         f"{', '.join(sorted(BACKENDS))}") from None
    return factory(language)
