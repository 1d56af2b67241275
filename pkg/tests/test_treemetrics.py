"""Structural measurements against brute-force oracles."""

import numpy as np
import pytest

from conftest import FIXTURES, make_tree, random_tree
from synconv import (branching_factor, head_count, parse_conllu,
                     sentence_length, tree_depth, tree_metrics)


def oracle_depth(tree):
    """Walk up from every token and take the longest root path."""
    head_of = {t.id: t.head for t in tree.tokens}
    best = 0
    for t in tree.tokens:
        steps, node = 0, t.id
        while node != 0:
            node = head_of[node]
            steps += 1
        best = max(best, steps)
    return best


def oracle_head_count(tree):
    if not tree.tokens:
        return 0
    governors = set()
    for t in tree.tokens:
        for other in tree.tokens:
            if other.head == t.id:
                governors.add(t.id)
                break
    return 1 + len(governors)


def oracle_branching(tree):
    kid_counts = []
    for t in tree.tokens:
        kids = sum(1 for other in tree.tokens if other.head == t.id)
        if kids:
            kid_counts.append(kids)
    if not kid_counts:
        return 0.0
    return sum(kid_counts) / len(kid_counts)


def test_four_token_profile():
    tree = make_tree([2, 0, 4, 2])
    m = tree_metrics(tree)
    assert (m.length, m.head_count, m.depth) == (4, 3, 3)
    assert m.branching_factor == 1.5
    assert m.node_count == 4


def test_eight_token_profile():
    tree = make_tree([2, 0, 8, 8, 7, 7, 8, 2])
    m = tree_metrics(tree)
    assert (m.length, m.head_count, m.depth) == (8, 4, 4)
    assert m.branching_factor == pytest.approx(7 / 3)


def test_single_token():
    m = tree_metrics(make_tree([0]))
    assert (m.length, m.head_count, m.depth, m.branching_factor) == (1, 1, 1, 0.0)


def test_chain_tree():
    n = 7
    m = tree_metrics(make_tree([0] + list(range(1, n))))
    assert m.depth == n
    assert m.head_count == n  # every token but the last governs one
    assert m.branching_factor == 1.0


def test_star_tree():
    n = 6
    m = tree_metrics(make_tree([0] + [1] * (n - 1)))
    assert m.depth == 2
    assert m.head_count == 2
    assert m.branching_factor == float(n - 1)


def test_punct_excluded_from_length_by_default():
    tree = parse_conllu((FIXTURES / "punct.conllu").read_text(encoding="utf-8"))[0]
    assert sentence_length(tree) == 2
    assert sentence_length(tree, exclude_punct=False) == 3
    m = tree_metrics(tree)
    assert m.length == 2
    assert m.node_count == 3
    # structure keeps the punctuation token unless asked otherwise
    assert m.depth == 2


def test_punct_structure_stripping():
    # punctuation leaf hangs deepest; stripping it shortens the tree
    tree = make_tree([0, 1, 2], upos=["VERB", "NOUN", "PUNCT"])
    assert tree_metrics(tree).depth == 3
    stripped = tree_metrics(tree, exclude_punct_structure=True)
    assert stripped.depth == 2
    # a punct token with a non-punct dependent must stay
    tree2 = make_tree([0, 1, 2], upos=["VERB", "PUNCT", "NOUN"])
    assert tree_metrics(tree2, exclude_punct_structure=True).depth == 3


def test_punct_chain_strips_iteratively():
    tree = make_tree([0, 1, 2], upos=["VERB", "PUNCT", "PUNCT"])
    assert tree_metrics(tree, exclude_punct_structure=True).depth == 1


def test_empty_tree_metrics():
    from synconv import DepTree
    m = tree_metrics(DepTree(tokens=(), meta={}))
    assert (m.length, m.head_count, m.depth, m.branching_factor, m.node_count) == (0, 0, 0, 0.0, 0)


def test_branching_factor_empty_tree_raises():
    from synconv import DepTree
    with pytest.raises(ValueError):
        branching_factor(DepTree(tokens=(), meta={}))


def test_oracle_equivalence_random_trees():
    rng = np.random.default_rng(37)
    for _ in range(300):
        tree = random_tree(rng, int(rng.integers(1, 13)), punct=True)
        assert tree_depth(tree) == oracle_depth(tree)
        assert head_count(tree) == oracle_head_count(tree)
        assert branching_factor(tree) == oracle_branching(tree)


def test_depth_at_most_node_count_and_heads_at_most_nodes_plus_one():
    rng = np.random.default_rng(41)
    for _ in range(200):
        tree = random_tree(rng, int(rng.integers(1, 13)))
        m = tree_metrics(tree)
        assert m.depth <= m.node_count
        assert m.head_count <= m.node_count + 1
        assert 0.0 <= m.branching_factor <= m.node_count
