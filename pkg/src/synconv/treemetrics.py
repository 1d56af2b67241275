"""Structural quantities of a dependency tree.

Four measures feed the complexity scores: sentence length (word count),
head count (tokens that govern at least one dependent, plus the virtual
root), maximum tree depth (arcs from the virtual root down to the deepest
token, so a one-word utterance has depth 1), and branching factor (mean
number of dependents over tokens that have any, virtual root excluded).
"""

from __future__ import annotations

from dataclasses import dataclass

from .deptree import DepTree


@dataclass(frozen=True, slots=True)
class TreeMetrics:
    """Per-utterance structural measurements."""

    length: int
    head_count: int
    depth: int
    branching_factor: float
    node_count: int


def sentence_length(tree: DepTree, exclude_punct: bool = True) -> int:
    """Number of words in the utterance.

    Punctuation tokens (UPOS ``PUNCT``) are excluded by default: spoken
    transcripts differ wildly in punctuation conventions, and punctuation is
    not a word. Pass ``exclude_punct=False`` to count every token.
    """
    if exclude_punct:
        return sum(1 for t in tree.tokens if t.upos != "PUNCT")
    return len(tree.tokens)


def head_count(tree: DepTree) -> int:
    """Number of governing nodes, the virtual root included.

    A token counts as a head when at least one other token depends on it.
    The virtual root governs the sentence root, so any non-empty tree has
    head count >= 1. An empty tree has 0.
    """
    if not tree.tokens:
        return 0
    governors = {t.head for t in tree.tokens if t.head != 0}
    return 1 + len(governors)


def tree_depth(tree: DepTree) -> int:
    """Longest path, in arcs, from the virtual root to any token (0 if empty)."""
    return _depth_of(tree.children(), _token_ids(tree))


def branching_factor(tree: DepTree) -> float:
    """Mean number of dependents over tokens that have at least one.

    The virtual root is excluded from both the dependent total and the
    non-leaf count, so a single-token tree has branching factor 0.
    """
    if not tree.tokens:
        raise ValueError("branching factor undefined for an empty tree")
    return _branching_of(tree.children())


def tree_metrics(tree: DepTree, exclude_punct: bool = True,
                 exclude_punct_structure: bool = False) -> TreeMetrics:
    """Bundle all structural measures for one tree.

    `exclude_punct` only affects `length`. With `exclude_punct_structure`,
    punctuation tokens are additionally stripped (leaves first) before depth
    and branching factor are computed; by default structure is measured over
    the parse as produced.
    """
    if not tree.tokens:
        return TreeMetrics(0, 0, 0, 0.0, 0)
    children = tree.children()
    ids = _token_ids(tree)
    if exclude_punct_structure:
        children, ids = _strip_punct(tree, children, ids)
    return TreeMetrics(
        length=sentence_length(tree, exclude_punct=exclude_punct),
        head_count=head_count(tree),
        depth=_depth_of(children, ids),
        branching_factor=_branching_of(children),
        node_count=len(tree.tokens),
    )


def _token_ids(tree: DepTree) -> set[int]:
    return {t.id for t in tree.tokens}


def _depth_of(children: dict[int, list[int]], ids: set[int]) -> int:
    # Iterative DFS from the virtual root; trees can be arbitrarily deep chains.
    best = 0
    stack = [(0, 0)]
    while stack:
        node, level = stack.pop()
        best = max(best, level)
        for child in children.get(node, ()):
            if child in ids:
                stack.append((child, level + 1))
    return best


def _branching_of(children: dict[int, list[int]]) -> float:
    dependents = 0
    non_leaves = 0
    for node, kids in children.items():
        if node == 0 or not kids:
            continue
        dependents += len(kids)
        non_leaves += 1
    if non_leaves == 0:
        return 0.0
    return dependents / non_leaves


def _strip_punct(tree: DepTree, children: dict[int, list[int]],
                 ids: set[int]) -> tuple[dict[int, list[int]], set[int]]:
    """Iteratively remove PUNCT tokens that have no remaining dependents."""
    punct = {t.id for t in tree.tokens if t.upos == "PUNCT"}
    ids = set(ids)
    children = {node: list(kids) for node, kids in children.items()}
    head_of = {t.id: t.head for t in tree.tokens}
    removable = [p for p in punct if not children.get(p)]
    while removable:
        node = removable.pop()
        if node not in ids:
            continue
        ids.discard(node)
        parent = head_of[node]
        kids = children.get(parent)
        if kids and node in kids:
            kids.remove(node)
        if parent in punct and not children.get(parent):
            removable.append(parent)
    return children, ids
