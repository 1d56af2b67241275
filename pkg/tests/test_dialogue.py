"""Corpus assembly, role assignment, and the record series."""

import logging

import pytest

from conftest import FIXTURES, make_tree
from synconv import (ComplexityConfig, CorpusError, assign_roles,
                     complexity_series, load_corpus, parse_conllu,
                     parse_manifest, records_from_csv, records_to_csv,
                     syntactic_complexity)


def utterance(did, uid, speaker, heads=(0,)):
    return make_tree(list(heads), meta={"dialogue_id": did, "speaker": speaker,
                                        "utterance_id": str(uid)})


def test_load_two_speaker_dialogue():
    corpus = load_corpus([utterance("d1", 1, "A"), utterance("d1", 2, "B")])
    assert len(corpus) == 1
    dialogue = corpus.dialogues[0]
    assert dialogue.initiator == "A"
    assert dialogue.speakers == ("A", "B")


def test_initiator_is_first_speaker_even_when_talking_twice():
    trees = [utterance("d1", i, s) for i, s in enumerate(["B", "B", "A"], start=1)]
    roles = assign_roles(load_corpus(trees).dialogues[0])
    assert roles == {"B": "initiator", "A": "follower"}


def test_roles_for_alternating_speakers():
    trees = [utterance("d1", i, s) for i, s in enumerate(["A", "B", "A", "B"], start=1)]
    roles = assign_roles(load_corpus(trees).dialogues[0])
    assert roles == {"A": "initiator", "B": "follower"}


def test_single_speaker_rejected_strict():
    with pytest.raises(CorpusError, match="1 speaker"):
        load_corpus([utterance("d1", 1, "A"), utterance("d1", 2, "A")])


def test_single_speaker_allowed_when_not_required():
    corpus = load_corpus([utterance("d1", 1, "A")], require_two_speakers=False)
    assert assign_roles(corpus.dialogues[0]) == {"A": "initiator"}


def test_three_speakers_rejected_strict_dropped_lenient(caplog):
    trees = [utterance("d1", i, s) for i, s in enumerate(["A", "B", "C"], start=1)]
    with pytest.raises(CorpusError, match="3 speaker"):
        load_corpus(trees)
    with caplog.at_level(logging.WARNING):
        corpus = load_corpus(trees, lenient=True)
    assert len(corpus) == 0
    assert any("dropping" in r.message for r in caplog.records)


def test_manifest_overrides_comment_speaker():
    trees = [utterance("d1", 1, "A"), utterance("d1", 2, "B")]
    manifest = parse_manifest("dialogue_id,utterance_id,speaker\nd1,2,A\n")
    with pytest.raises(CorpusError, match="1 speaker"):
        load_corpus(trees, manifest=manifest)


def test_manifest_supplies_metadata_for_bare_sentences():
    text = (FIXTURES / "nocomments.conllu").read_text(encoding="utf-8")
    manifest = parse_manifest((FIXTURES / "manifest.csv").read_text(encoding="utf-8"))
    corpus = load_corpus(parse_conllu(text), manifest=manifest)
    assert [d.id for d in corpus.dialogues] == ["g1", "g2"]
    assert corpus.dialogues[0].initiator == "Anna"
    assert corpus.dialogues[1].speakers == ("Cara", "Dave")


def test_bare_sentence_without_manifest_row_is_an_error():
    trees = parse_conllu("1\tHallo\t_\tINTJ\t_\t_\t0\troot\t_\t_\n")
    with pytest.raises(CorpusError, match="sentence 1"):
        load_corpus(trees)


def test_duplicate_utterance_id_is_an_error():
    with pytest.raises(CorpusError, match="duplicate utterance id"):
        load_corpus([utterance("d1", 1, "A"), utterance("d1", 1, "B")])


def test_duplicate_dialogue_plus_utterance_across_files_caught():
    trees = [utterance("d1", 1, "A"), utterance("d2", 1, "A"),
             utterance("d2", 2, "B"), utterance("d1", 1, "B")]
    with pytest.raises(CorpusError, match="duplicate"):
        load_corpus(trees)


def test_utterances_ordered_by_numeric_id():
    trees = [utterance("d1", 2, "B"), utterance("d1", 10, "B"),
             utterance("d1", 1, "A")]
    dialogue = load_corpus(trees).dialogues[0]
    assert [s for s, _ in dialogue.utterances] == ["A", "B", "B"]
    assert dialogue.initiator == "A"


def test_dotted_sub_ids_order_between_integers():
    trees = [utterance("d1", "2", "B"), utterance("d1", "2.1", "B"),
             utterance("d1", "1", "A"), utterance("d1", "3", "A")]
    dialogue = load_corpus(trees).dialogues[0]
    ids = [t.meta["utterance_id"] for _, t in dialogue.utterances]
    assert ids == ["1", "2", "2.1", "3"]


def test_non_numeric_ids_fall_back_to_document_order():
    trees = [utterance("d1", "b", "A"), utterance("d1", "a", "B")]
    dialogue = load_corpus(trees).dialogues[0]
    assert dialogue.initiator == "A"


def test_series_positions_per_role():
    trees = [utterance("d1", i, s) for i, s in enumerate(["A", "B", "A"], start=1)]
    records = complexity_series(load_corpus(trees))
    assert [(r.speaker, r.role, r.position, r.sc) for r in records] == [
        ("A", "initiator", 1, 1.0),
        ("A", "initiator", 2, 1.0),
        ("B", "follower", 1, 1.0),
    ]
    by_key = {(r.role, r.position): r for r in records}
    assert by_key[("initiator", 1)].position_norm == 0.5
    assert by_key[("initiator", 2)].position_norm == 1.0
    assert by_key[("follower", 1)].position_norm == 1.0


def test_series_sorted_by_dialogue_role_position():
    trees = [utterance("d2", 1, "X"), utterance("d2", 2, "Y"),
             utterance("d1", 1, "A"), utterance("d1", 2, "B"),
             utterance("d1", 3, "A")]
    records = complexity_series(load_corpus(trees))
    keys = [(r.dialogue_id, r.role, r.position) for r in records]
    assert keys == [("d1", "initiator", 1), ("d1", "initiator", 2),
                    ("d1", "follower", 1), ("d2", "initiator", 1),
                    ("d2", "follower", 1)]


def test_positions_gapless_per_role():
    speakers = ["A", "B", "B", "A", "B", "A", "A"]
    trees = [utterance("d1", i, s) for i, s in enumerate(speakers, start=1)]
    records = complexity_series(load_corpus(trees))
    for role, expected in (("initiator", [1, 2, 3, 4]), ("follower", [1, 2, 3])):
        assert [r.position for r in records if r.role == role] == expected


def test_record_count_matches_corpus_size():
    speakers = ["A", "B"] * 5
    trees = [utterance("d1", i, s) for i, s in enumerate(speakers, start=1)]
    assert len(complexity_series(load_corpus(trees))) == len(speakers)


def test_series_sc_values_from_fixture():
    text = (FIXTURES / "dialogue_pair.conllu").read_text(encoding="utf-8")
    records = complexity_series(load_corpus(parse_conllu(text)))
    assert records[0].sc == pytest.approx(2.1667, abs=1e-4)
    assert records[1].sc == 3.0


def test_series_recompute_invariant():
    text = (FIXTURES / "dialogue_pair.conllu").read_text(encoding="utf-8")
    cfg = ComplexityConfig(mix=0.7)
    for record in complexity_series(load_corpus(parse_conllu(text)), cfg):
        assert syntactic_complexity(record.components, cfg) == record.sc


def test_isc_metric_series():
    text = (FIXTURES / "isc_sample.conllu").read_text(encoding="utf-8")
    corpus = load_corpus(parse_conllu(text), require_two_speakers=False)
    records = complexity_series(corpus, metric="isc")
    assert records[0].sc == 4.0


def test_records_csv_round_trip():
    trees = [utterance("d1", 1, "A", heads=(2, 0, 4, 2)),
             utterance("d1", 2, "B", heads=(0,))]
    records = complexity_series(load_corpus(trees))
    text = records_to_csv(records)
    assert text.splitlines()[0] == "dialogue_id,speaker,role,position,sc,length,heads,depth,branching"
    back = records_from_csv(text)
    assert len(back) == len(records)
    for a, b in zip(back, records):
        assert (a.dialogue_id, a.speaker, a.role, a.position) == \
            (b.dialogue_id, b.speaker, b.role, b.position)
        assert a.sc == b.sc
        assert a.position_norm == b.position_norm
        assert a.components.length == b.components.length
        assert a.components.depth == b.components.depth


def test_records_csv_empty_components_round_trip():
    from synconv import generate_records
    records = generate_records(3, 4, -0.1, 0.1, seed=5)
    back = records_from_csv(records_to_csv(records))
    assert all(r.components is None for r in back)
    assert [r.sc for r in back] == [r.sc for r in records]
    assert [r.position_norm for r in back] == [r.position_norm for r in records]


def test_records_csv_header_checked():
    with pytest.raises(CorpusError, match="header"):
        records_from_csv("dialogue,speaker\nx,y\n")


def test_manifest_header_checked():
    with pytest.raises(CorpusError, match="header"):
        parse_manifest("a,b,c\n1,2,3\n")


def test_empty_corpus_yields_empty_series():
    from synconv import Corpus
    assert complexity_series(Corpus(name="empty", dialogues=())) == ()
