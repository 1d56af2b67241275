"""Shared tree builders and fixture paths."""

from __future__ import annotations

from pathlib import Path

from synconv import DepTree, Token

FIXTURES = Path(__file__).parent / "fixtures"

UPOS_POOL = ("NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "AUX",
             "SCONJ", "PROPN", "NUM", "PART")


def make_tree(heads, upos=None, feats=None, forms=None, meta=None) -> DepTree:
    """Tree from a head list; heads[i] governs token i+1 (0 = virtual root)."""
    n = len(heads)
    upos = upos if upos is not None else ["X"] * n
    feats = feats if feats is not None else [{}] * n
    forms = forms if forms is not None else [f"w{i}" for i in range(1, n + 1)]
    tokens = tuple(
        Token(id=i, form=forms[i - 1], lemma=None, upos=upos[i - 1],
              feats=dict(feats[i - 1]), head=heads[i - 1],
              deprel="root" if heads[i - 1] == 0 else "dep")
        for i in range(1, n + 1))
    return DepTree(tokens=tokens, meta=dict(meta or {}))


def random_heads(rng, n: int) -> list[int]:
    """Valid random single-root head assignment over n tokens."""
    order = [int(v) + 1 for v in rng.permutation(n)]
    heads = {order[0]: 0}
    for i in range(1, n):
        heads[order[i]] = order[int(rng.integers(0, i))]
    return [heads[i] for i in range(1, n + 1)]


def random_tree(rng, n: int, punct: bool = False) -> DepTree:
    pool = UPOS_POOL + (("PUNCT",) * 3 if punct else ())
    upos = [pool[int(rng.integers(0, len(pool)))] for _ in range(n)]
    return make_tree(random_heads(rng, n), upos=upos)
