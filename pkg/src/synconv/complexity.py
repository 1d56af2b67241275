"""Complexity scores over dependency-tree measurements.

Two scores are provided. The structural score blends mean words per head
(length over head count) with tree depth through a mixing weight. The
inventory score counts complexity-bearing word classes: subordinators,
wh-words, nonfinite verbs, and nominals, with configurable weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .deptree import DepTree
from .treemetrics import TreeMetrics, tree_metrics

DEFAULT_MIX = 0.5

# Inventory weights: (subordinator, wh_word, nonfinite_verb, nominal).
UNIFORM_WEIGHTS = (1.0, 1.0, 1.0, 1.0)
CLASSIC_WEIGHTS = (2.0, 2.0, 1.0, 1.0)
WEIGHT_PRESETS = {"uniform": UNIFORM_WEIGHTS, "classic": CLASSIC_WEIGHTS}

_WH_PRONTYPES = {"Int", "Rel"}
_NOMINAL_UPOS = {"NOUN", "PROPN", "PRON"}


@dataclass(frozen=True, slots=True)
class ComplexityConfig:
    """Scoring knobs shared by both complexity measures.

    `mix` weights the words-per-head term of the structural score; the
    remaining 1 - mix goes to depth. `isc_weights` order is subordinators,
    wh-words, nonfinite verbs, nominals.
    """

    mix: float = DEFAULT_MIX
    isc_weights: tuple[float, float, float, float] = UNIFORM_WEIGHTS

    def __post_init__(self) -> None:
        if not 0.0 <= self.mix <= 1.0:
            raise ValueError(f"mix must be in [0, 1], got {self.mix}")
        if len(self.isc_weights) != 4:
            raise ValueError("isc_weights must have exactly 4 entries")
        if any(w < 0 for w in self.isc_weights):
            raise ValueError("isc_weights must be non-negative")


DEFAULT_CONFIG = ComplexityConfig()


@dataclass(frozen=True, slots=True)
class ComplexityRecord:
    """One utterance's complexity measurement inside a dialogue.

    `position` is the 1-based index within the speaker's own utterance
    subsequence; `position_norm` is position over that speaker's utterance
    count, in (0, 1]. `components` is None for records that did not come
    from a parsed tree (synthetic data re-read from CSV).
    """

    dialogue_id: str
    speaker: str
    role: str
    position: int
    sc: float
    components: TreeMetrics | None = None
    position_norm: float = field(default=0.0)

    def __post_init__(self) -> None:
        if self.role not in ("initiator", "follower"):
            raise ValueError(f"unknown role {self.role!r}")
        if self.position < 1:
            raise ValueError(f"position must be >= 1, got {self.position}")
        if self.sc < 0:
            raise ValueError(f"sc must be non-negative, got {self.sc}")


def syntactic_complexity(metrics: TreeMetrics,
                         config: ComplexityConfig = DEFAULT_CONFIG) -> float:
    """Blend of words-per-head and depth.

    mix * (length / head_count) + (1 - mix) * depth. For an empty utterance
    (head_count 0) the ratio term drops out and the score is
    (1 - mix) * depth.

    >>> syntactic_complexity(TreeMetrics(4, 3, 3, 1.5, 4))
    2.1666666666666665
    >>> syntactic_complexity(TreeMetrics(8, 4, 4, 2.3333333333333335, 8))
    3.0
    """
    if metrics.head_count == 0:
        return (1.0 - config.mix) * metrics.depth
    ratio = metrics.length / metrics.head_count
    return config.mix * ratio + (1.0 - config.mix) * metrics.depth


def score_tree(tree: DepTree, config: ComplexityConfig = DEFAULT_CONFIG,
               exclude_punct: bool = True,
               exclude_punct_structure: bool = False) -> float:
    """Structural score straight from a tree."""
    metrics = tree_metrics(tree, exclude_punct=exclude_punct,
                           exclude_punct_structure=exclude_punct_structure)
    return syntactic_complexity(metrics, config)


@dataclass(frozen=True, slots=True)
class InventoryCounts:
    """Raw counts behind the inventory score."""

    subordinators: int
    wh_words: int
    nonfinite_verbs: int
    nominals: int

    def weighted(self, weights: tuple[float, float, float, float]) -> float:
        return (weights[0] * self.subordinators
                + weights[1] * self.wh_words
                + weights[2] * self.nonfinite_verbs
                + weights[3] * self.nominals)


def inventory_counts(tree: DepTree) -> InventoryCounts:
    """Count the four complexity-bearing word classes in a tree.

    Subordinators are SCONJ tokens; wh-words carry PronType Int or Rel
    under any UPOS; nonfinite verbs are VERB/AUX whose VerbForm is present
    and not Fin; nominals are NOUN, PROPN, or PRON. Classes may overlap: a
    relative pronoun is both a wh-word and a nominal and counts in each.
    Missing features simply contribute nothing.
    """
    sconj = 0
    wh = 0
    nonfin = 0
    nom = 0
    for tok in tree.tokens:
        if tok.upos == "SCONJ":
            sconj += 1
        if tok.feats.get("PronType") in _WH_PRONTYPES:
            wh += 1
        if tok.upos in ("VERB", "AUX"):
            verbform = tok.feats.get("VerbForm")
            if verbform is not None and verbform != "Fin":
                nonfin += 1
        if tok.upos in _NOMINAL_UPOS:
            nom += 1
    return InventoryCounts(sconj, wh, nonfin, nom)


def isc_score(tree: DepTree, config: ComplexityConfig = DEFAULT_CONFIG) -> float:
    """Weighted sum of the inventory counts."""
    return inventory_counts(tree).weighted(config.isc_weights)
