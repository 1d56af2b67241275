"""Complexity score formulas and the inventory counts."""

import pytest
from hypothesis import given, strategies as st

from conftest import FIXTURES, make_tree
from synconv import (CLASSIC_WEIGHTS, ComplexityConfig, ComplexityRecord,
                     TreeMetrics, inventory_counts, isc_score, parse_conllu,
                     score_tree, syntactic_complexity)


def metrics(length, heads, depth):
    return TreeMetrics(length, heads, depth, 0.0, length)


def test_worked_values():
    assert syntactic_complexity(metrics(4, 3, 3)) == pytest.approx(2.1667, abs=1e-4)
    assert syntactic_complexity(metrics(8, 4, 4)) == 3.0


def test_single_token_is_one():
    assert syntactic_complexity(metrics(1, 1, 1)) == 1.0


def test_empty_utterance_is_zero():
    for mix in (0.0, 0.3, 1.0):
        assert syntactic_complexity(metrics(0, 0, 0), ComplexityConfig(mix=mix)) == 0.0


def test_mix_one_gives_length_over_heads():
    cfg = ComplexityConfig(mix=1.0)
    assert syntactic_complexity(metrics(9, 3, 5), cfg) == 3.0


def test_mix_zero_gives_depth():
    cfg = ComplexityConfig(mix=0.0)
    assert syntactic_complexity(metrics(9, 3, 5), cfg) == 5.0


@given(length=st.integers(1, 60), heads=st.integers(1, 30),
       depth=st.integers(1, 30), mix=st.floats(0.01, 0.99))
def test_monotonic_in_depth_and_length(length, heads, depth, mix):
    cfg = ComplexityConfig(mix=mix)
    base = syntactic_complexity(metrics(length, heads, depth), cfg)
    assert syntactic_complexity(metrics(length, heads, depth + 1), cfg) > base
    assert syntactic_complexity(metrics(length + 1, heads, depth), cfg) > base


@given(mix=st.floats(0.0, 1.0), length=st.integers(0, 40),
       heads=st.integers(0, 20), depth=st.integers(0, 20))
def test_score_is_non_negative(mix, length, heads, depth):
    assert syntactic_complexity(metrics(length, heads, depth), ComplexityConfig(mix=mix)) >= 0.0


def test_score_tree_on_fixture():
    trees = parse_conllu((FIXTURES / "dialogue_pair.conllu").read_text(encoding="utf-8"))
    assert score_tree(trees[0]) == pytest.approx(2.1667, abs=1e-4)
    assert score_tree(trees[1]) == 3.0


def test_config_validation():
    with pytest.raises(ValueError):
        ComplexityConfig(mix=1.5)
    with pytest.raises(ValueError):
        ComplexityConfig(mix=-0.1)
    with pytest.raises(ValueError):
        ComplexityConfig(isc_weights=(1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        ComplexityConfig(isc_weights=(1.0, 1.0, 1.0, -1.0))


def test_record_validation():
    with pytest.raises(ValueError):
        ComplexityRecord("d", "A", "leader", 1, 1.0)
    with pytest.raises(ValueError):
        ComplexityRecord("d", "A", "initiator", 0, 1.0)
    with pytest.raises(ValueError):
        ComplexityRecord("d", "A", "initiator", 1, -0.5)


def test_inventory_counts_on_fixture():
    tree = parse_conllu((FIXTURES / "isc_sample.conllu").read_text(encoding="utf-8"))[0]
    counts = inventory_counts(tree)
    assert counts.subordinators == 1
    assert counts.wh_words == 0
    assert counts.nonfinite_verbs == 1
    assert counts.nominals == 2
    assert isc_score(tree) == 4.0
    assert isc_score(tree, ComplexityConfig(isc_weights=CLASSIC_WEIGHTS)) == 5.0


def test_inventory_empty_classes():
    tree = make_tree([0, 1], upos=["ADV", "ADJ"])
    assert isc_score(tree) == 0.0


def test_relative_pronoun_counts_twice():
    # wh-word and nominal at once
    tree = make_tree([0, 1], upos=["VERB", "PRON"],
                     feats=[{"VerbForm": "Fin"}, {"PronType": "Rel"}])
    counts = inventory_counts(tree)
    assert counts.wh_words == 1
    assert counts.nominals == 1
    assert isc_score(tree) == 2.0


def test_interrogative_under_any_upos_counts_as_wh():
    tree = make_tree([0, 1], upos=["VERB", "ADV"],
                     feats=[{"VerbForm": "Fin"}, {"PronType": "Int"}])
    assert inventory_counts(tree).wh_words == 1


def test_finite_verbs_and_featless_verbs_not_nonfinite():
    tree = make_tree([0, 1, 1], upos=["VERB", "AUX", "VERB"],
                     feats=[{"VerbForm": "Fin"}, {"VerbForm": "Fin"}, {}])
    assert inventory_counts(tree).nonfinite_verbs == 0


def test_nonfinite_needs_verbal_upos():
    tree = make_tree([0, 1], upos=["NOUN", "ADJ"],
                     feats=[{"VerbForm": "Inf"}, {"VerbForm": "Part"}])
    assert inventory_counts(tree).nonfinite_verbs == 0


def test_isc_additive_over_token_order():
    upos = ["SCONJ", "NOUN", "VERB", "PRON", "AUX"]
    feats = [{}, {}, {"VerbForm": "Inf"}, {"PronType": "Int"}, {"VerbForm": "Fin"}]
    a = make_tree([0, 1, 1, 3, 3], upos=upos, feats=feats)
    b = make_tree([0, 1, 1, 3, 3], upos=list(reversed(upos)), feats=list(reversed(feats)))
    assert isc_score(a) == isc_score(b)
