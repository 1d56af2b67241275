"""Two-party dialogue corpora and per-role complexity series.

A dialogue is an ordered sequence of (speaker, tree) utterances with
exactly two distinct speakers. The speaker of the first utterance is the
initiator, the other one the follower, and the roles never shift within a
dialogue. Each utterance gets a per-role 1-based position (the initiator's
third utterance has position 3 no matter how turns interleave), which is
what the regression stage runs on.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass

from .complexity import (ComplexityConfig, ComplexityRecord, DEFAULT_CONFIG,
                         isc_score, syntactic_complexity)
from .deptree import DepTree
from .treemetrics import TreeMetrics, tree_metrics

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ("dialogue_id", "speaker", "role", "position", "sc",
                  "length", "heads", "depth", "branching")

_ROLE_RANK = {"initiator": 0, "follower": 1}


class CorpusError(Exception):
    """Corpus assembly failed: missing metadata, duplicate ids, bad speakers."""


@dataclass(frozen=True, slots=True)
class Dialogue:
    id: str
    utterances: tuple[tuple[str, DepTree], ...]

    @property
    def initiator(self) -> str:
        """Speaker of the first utterance."""
        if not self.utterances:
            raise ValueError(f"dialogue {self.id!r} has no utterances")
        return self.utterances[0][0]

    @property
    def speakers(self) -> tuple[str, ...]:
        """Distinct speakers in order of first appearance."""
        seen: dict[str, None] = {}
        for speaker, _ in self.utterances:
            seen.setdefault(speaker)
        return tuple(seen)


@dataclass(frozen=True, slots=True)
class Corpus:
    name: str
    dialogues: tuple[Dialogue, ...]

    def __len__(self) -> int:
        return len(self.dialogues)


@dataclass(frozen=True, slots=True)
class ManifestRow:
    dialogue_id: str
    utterance_id: str
    speaker: str


def parse_manifest(text: str) -> list[ManifestRow]:
    """Read a speaker manifest CSV (`dialogue_id,utterance_id,speaker`)."""
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        return []
    header = tuple(c.strip() for c in rows[0])
    if header != ("dialogue_id", "utterance_id", "speaker"):
        raise CorpusError(f"manifest header must be dialogue_id,utterance_id,speaker, got {','.join(header)}")
    out = []
    for i, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 3:
            raise CorpusError(f"manifest line {i}: expected 3 fields, got {len(row)}")
        out.append(ManifestRow(row[0].strip(), row[1].strip(), row[2].strip()))
    return out


def _utterance_sort_key(utterance_id: str) -> tuple[int, ...] | None:
    """Numeric key for ids like '7' or '2.1'; None when not sortable."""
    parts = utterance_id.split(".")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        return None


def load_corpus(trees: list[DepTree], manifest: list[ManifestRow] | None = None,
                name: str = "corpus", lenient: bool = False,
                require_two_speakers: bool = True) -> Corpus:
    """Assemble dialogues from metadata-carrying trees.

    Each tree must name its dialogue and speaker, either in CoNLL-U
    comments (`# dialogue_id`, `# speaker`, `# utterance_id`) or through
    the manifest. Keyed manifest rows override comment speakers; trees
    without any comment metadata consume manifest rows in file order.
    Within a dialogue, utterances are ordered by utterance_id when every
    id is numeric (dotted sub-ids like 2.1 sort between 2 and 3),
    otherwise by document order.

    Dialogues whose speaker count is not 2 are an error, or are dropped
    with a warning when `lenient`. `require_two_speakers=False` admits
    single-speaker dialogues (the lone speaker acts as initiator), which
    per-utterance scoring needs; analysis keeps the strict default.
    """
    manifest = manifest or []
    keyed = {(r.dialogue_id, r.utterance_id): r.speaker for r in manifest}
    positional = iter(manifest)

    # dialogue id -> list of (sort_key or None, doc_index, speaker, tree)
    pending: dict[str, list[tuple[tuple[int, ...] | None, int, str, DepTree]]] = {}
    seen_ids: set[tuple[str, str]] = set()
    order: list[str] = []

    for idx, tree in enumerate(trees, start=1):
        did = tree.meta.get("dialogue_id")
        spk = tree.meta.get("speaker")
        uid = tree.meta.get("utterance_id")
        if did is None and spk is None:
            row = next(positional, None)
            if row is None:
                raise CorpusError(f"sentence {idx} carries no dialogue metadata and no manifest row is left")
            did, uid, spk = row.dialogue_id, row.utterance_id, row.speaker
        else:
            if did is None:
                raise CorpusError(f"sentence {idx} has a speaker comment but no dialogue_id")
            if uid is not None and (did, uid) in keyed:
                spk = keyed[(did, uid)]
            if spk is None:
                raise CorpusError(f"sentence {idx} (dialogue {did!r}) names no speaker in comments or manifest")
        if uid is not None:
            if (did, uid) in seen_ids:
                raise CorpusError(f"duplicate utterance id {uid!r} in dialogue {did!r}")
            seen_ids.add((did, uid))
        if did not in pending:
            order.append(did)
        key = _utterance_sort_key(uid) if uid is not None else None
        pending.setdefault(did, []).append((key, idx, spk, tree))

    dialogues = []
    for did in order:
        entries = pending[did]
        if all(e[0] is not None for e in entries):
            entries.sort(key=lambda e: (e[0], e[1]))
        utterances = tuple((spk, tree) for _, _, spk, tree in entries)
        n_speakers = len({spk for spk, _ in utterances})
        ok = n_speakers == 2 or (not require_two_speakers and n_speakers == 1)
        if not ok:
            msg = f"dialogue {did!r} has {n_speakers} speaker(s), need 2"
            if lenient:
                logger.warning("dropping %s", msg)
                continue
            raise CorpusError(msg)
        dialogues.append(Dialogue(id=did, utterances=utterances))
    return Corpus(name=name, dialogues=tuple(dialogues))


def assign_roles(dialogue: Dialogue) -> dict[str, str]:
    """Map each speaker to initiator/follower by who talks first."""
    speakers = dialogue.speakers
    if not 1 <= len(speakers) <= 2:
        raise CorpusError(f"dialogue {dialogue.id!r} has {len(speakers)} speakers, cannot assign roles")
    roles = {speakers[0]: "initiator"}
    if len(speakers) == 2:
        roles[speakers[1]] = "follower"
    return roles


def complexity_series(corpus: Corpus, config: ComplexityConfig = DEFAULT_CONFIG,
                      exclude_punct: bool = True,
                      exclude_punct_structure: bool = False,
                      metric: str = "sc") -> tuple[ComplexityRecord, ...]:
    """One ComplexityRecord per utterance, sorted by (dialogue, role, position).

    With the default metric the record's sc field is exactly
    syntactic_complexity(record.components, config); metric="isc" puts the
    inventory score there instead (components still describe the tree).
    """
    if metric not in ("sc", "isc"):
        raise ValueError(f"metric must be 'sc' or 'isc', got {metric!r}")
    records: list[ComplexityRecord] = []
    for dialogue in corpus.dialogues:
        roles = assign_roles(dialogue)
        counts: dict[str, int] = {}
        partial: list[tuple[str, str, int, float, TreeMetrics]] = []
        for speaker, tree in dialogue.utterances:
            position = counts.get(speaker, 0) + 1
            counts[speaker] = position
            metrics = tree_metrics(tree, exclude_punct=exclude_punct,
                                   exclude_punct_structure=exclude_punct_structure)
            if metric == "sc":
                value = syntactic_complexity(metrics, config)
            else:
                value = isc_score(tree, config)
            partial.append((dialogue.id, speaker, position, value, metrics))
        for did, speaker, position, value, metrics in partial:
            records.append(ComplexityRecord(
                dialogue_id=did, speaker=speaker, role=roles[speaker],
                position=position, sc=value, components=metrics,
                position_norm=position / counts[speaker]))
    records.sort(key=lambda r: (r.dialogue_id, _ROLE_RANK[r.role], r.position))
    return tuple(records)


def records_to_csv(records: list[ComplexityRecord] | tuple[ComplexityRecord, ...]) -> str:
    """Render records as CSV under the fixed column order.

    Component columns are left empty for records without tree metrics.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    for r in records:
        if r.components is None:
            comp = ("", "", "", "")
        else:
            c = r.components
            comp = (c.length, c.head_count, c.depth, repr(c.branching_factor))
        writer.writerow((r.dialogue_id, r.speaker, r.role, r.position,
                         repr(r.sc), *comp))
    return out.getvalue()


def records_from_csv(text: str) -> tuple[ComplexityRecord, ...]:
    """Read records back from the fixed CSV layout.

    Lossy on one point: the tree's full node count is not a CSV column, so
    reconstructed metrics reuse the punctuation-excluded length for it.
    Normalized positions are recomputed from each role's maximum position.
    """
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        return ()
    if tuple(rows[0]) != RECORD_COLUMNS:
        raise CorpusError(f"unexpected record CSV header: {','.join(rows[0])}")
    raw: list[tuple[str, str, str, int, float, TreeMetrics | None]] = []
    group_max: dict[tuple[str, str], int] = {}
    for i, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(RECORD_COLUMNS):
            raise CorpusError(f"record CSV line {i}: expected {len(RECORD_COLUMNS)} fields, got {len(row)}")
        did, speaker, role, pos_s, sc_s, len_s, heads_s, depth_s, br_s = row
        try:
            position = int(pos_s)
            sc = float(sc_s)
        except ValueError as exc:
            raise CorpusError(f"record CSV line {i}: {exc}") from None
        components: TreeMetrics | None = None
        if len_s != "" and heads_s != "" and depth_s != "" and br_s != "":
            try:
                length = int(len_s)
                components = TreeMetrics(length, int(heads_s), int(depth_s),
                                         float(br_s), length)
            except ValueError as exc:
                raise CorpusError(f"record CSV line {i}: {exc}") from None
        raw.append((did, speaker, role, position, sc, components))
        key = (did, role)
        group_max[key] = max(group_max.get(key, 0), position)
    records = []
    for did, speaker, role, position, sc, components in raw:
        records.append(ComplexityRecord(
            dialogue_id=did, speaker=speaker, role=role, position=position,
            sc=sc, components=components,
            position_norm=position / group_max[(did, role)]))
    return tuple(records)
