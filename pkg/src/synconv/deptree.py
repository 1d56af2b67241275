"""CoNLL-U reading, validation and writing.

Implements the 10-column CoNLL-U format
(https://universaldependencies.org/format.html): one token per line,
sentences separated by blank lines, `# key = value` comment lines carrying
sentence metadata. Multiword-token range lines (``3-4``) and empty nodes
(``5.1``) are skipped; the syntactic words are what the metrics operate on.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

_RANGE_ID = re.compile(r"^\d+-\d+$")
_EMPTY_ID = re.compile(r"^\d+\.\d+$")


class ConlluParseError(ValueError):
    """Malformed CoNLL-U input. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class InvalidTreeError(ValueError):
    """A dependency tree that violates well-formedness, with the full report."""

    def __init__(self, violations: list["Violation"], source: str = ""):
        where = f"{source}: " if source else ""
        super().__init__(where + "; ".join(v.message for v in violations))
        self.violations = violations


@dataclass(frozen=True, slots=True)
class Token:
    """One syntactic word.

    `head` is the 1-based id of the governing token, 0 for the virtual root.
    `feats` holds the FEATS column as a key -> value map (values may be
    comma-separated lists as in UD). `xpos`, `deps` and `misc` are kept as
    opaque strings so trees round-trip.
    """

    id: int
    form: str
    lemma: str | None
    upos: str
    feats: dict[str, str]
    head: int
    deprel: str
    xpos: str = "_"
    deps: str = "_"
    misc: str = "_"


@dataclass(frozen=True, slots=True)
class DepTree:
    """One utterance's dependency tree plus its comment metadata.

    Trees are immutable after construction and safe to share across workers.
    """

    tokens: tuple[Token, ...]
    meta: dict[str, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.tokens)

    def children(self) -> dict[int, list[int]]:
        """Map head id -> ids of its dependents, in token order. Key 0 is the virtual root."""
        out: dict[int, list[int]] = {0: []}
        for tok in self.tokens:
            out.setdefault(tok.id, [])
        for tok in self.tokens:
            out.setdefault(tok.head, []).append(tok.id)
        return out


@dataclass(frozen=True, slots=True)
class Violation:
    """One violated tree invariant, naming the offending tokens."""

    code: str  # no-root | multiple-roots | head-out-of-range | cycle
    token_ids: tuple[int, ...]
    message: str


def _parse_feats(raw: str) -> dict[str, str]:
    if raw == "_" or raw == "":
        return {}
    feats = {}
    for item in raw.split("|"):
        key, sep, value = item.partition("=")
        if sep:
            feats[key] = value
    return feats


def _format_feats(feats: dict[str, str]) -> str:
    if not feats:
        return "_"
    return "|".join(f"{k}={feats[k]}" for k in sorted(feats, key=str.lower))


def _parse_token_line(line: str, line_no: int) -> Token | None:
    """Parse one token line; None for range lines and empty nodes."""
    cols = line.split("\t")
    if len(cols) != 10:
        raise ConlluParseError(line_no, f"expected 10 tab-separated columns, got {len(cols)}")
    raw_id = cols[0]
    if _RANGE_ID.match(raw_id) or _EMPTY_ID.match(raw_id):
        return None
    try:
        tok_id = int(raw_id)
    except ValueError:
        raise ConlluParseError(line_no, f"non-integer token id {raw_id!r}") from None
    if tok_id < 1:
        raise ConlluParseError(line_no, f"token id must be >= 1, got {tok_id}")
    try:
        head = int(cols[6])
    except ValueError:
        raise ConlluParseError(line_no, f"non-integer head {cols[6]!r}") from None
    if head < 0:
        raise ConlluParseError(line_no, f"negative head {head}")
    if head == tok_id:
        raise ConlluParseError(line_no, f"token {tok_id} is its own head")
    if not cols[1]:
        raise ConlluParseError(line_no, "empty FORM column")
    if not cols[3]:
        raise ConlluParseError(line_no, "empty UPOS column")
    return Token(
        id=tok_id,
        form=cols[1],
        lemma=None if cols[2] == "_" else cols[2],
        upos=cols[3],
        xpos=cols[4],
        feats=_parse_feats(cols[5]),
        head=head,
        deprel=cols[7],
        deps=cols[8],
        misc=cols[9],
    )


def _build_tree(comment_lines: list[tuple[int, str]], token_lines: list[tuple[int, str]]) -> DepTree:
    meta: dict[str, str] = {}
    for _, line in comment_lines:
        key, sep, value = line.lstrip("#").partition("=")
        if sep:
            meta[key.strip()] = value.strip()
    tokens: list[Token] = []
    seen: set[int] = set()
    for line_no, line in token_lines:
        tok = _parse_token_line(line, line_no)
        if tok is None:
            continue
        if tok.id in seen:
            raise ConlluParseError(line_no, f"duplicate token id {tok.id}")
        seen.add(tok.id)
        tokens.append(tok)
    if not tokens:
        first = comment_lines[0][0] if comment_lines else 0
        raise ConlluParseError(first, "sentence block contains no token lines")
    return DepTree(tokens=tuple(tokens), meta=meta)


def parse_conllu(text: str, lenient: bool = False) -> list[DepTree]:
    """Parse CoNLL-U text into one DepTree per sentence, in document order.

    With `lenient`, sentences that fail to parse are dropped with a warning
    instead of aborting; automatically transcribed corpora contain fragments.
    Validation of tree shape is separate, see `tree_violations`.
    """
    trees: list[DepTree] = []
    comments: list[tuple[int, str]] = []
    toklines: list[tuple[int, str]] = []

    def flush() -> None:
        if not comments and not toklines:
            return
        try:
            trees.append(_build_tree(comments, toklines))
        except ConlluParseError:
            if not lenient:
                raise
            logger.warning("dropping unparseable sentence ending near line %d",
                           toklines[-1][0] if toklines else comments[-1][0])
        comments.clear()
        toklines.clear()

    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip():
            flush()
        elif line.startswith("#"):
            comments.append((line_no, line))
        else:
            toklines.append((line_no, line))
    flush()
    return trees


def serialize_conllu(trees: list[DepTree] | tuple[DepTree, ...]) -> str:
    """Write trees as canonical CoNLL-U; inverse of `parse_conllu` for the
    10 columns and the `# key = value` metadata."""
    blocks = []
    for tree in trees:
        lines = [f"# {k} = {v}" for k, v in tree.meta.items()]
        for t in tree.tokens:
            lines.append("\t".join((
                str(t.id),
                t.form,
                t.lemma if t.lemma is not None else "_",
                t.upos,
                t.xpos,
                _format_feats(t.feats),
                str(t.head),
                t.deprel,
                t.deps,
                t.misc,
            )))
        blocks.append("\n".join(lines) + "\n\n")
    return "".join(blocks)


def tree_violations(tree: DepTree) -> list[Violation]:
    """Check single-root, head-range and acyclicity invariants.

    Returns an empty list for a well-formed tree, otherwise one Violation
    per problem: zero roots, multiple roots, out-of-range heads, and cycles
    (a self-headed token is a cycle of length one).
    """
    violations: list[Violation] = []
    ids = {t.id for t in tree.tokens}
    roots = tuple(t.id for t in tree.tokens if t.head == 0)
    if len(roots) == 0 and tree.tokens:
        violations.append(Violation("no-root", (), "no token attaches to the virtual root"))
    elif len(roots) > 1:
        violations.append(Violation(
            "multiple-roots", roots,
            "multiple tokens attach to the virtual root: " + ", ".join(map(str, roots))))
    head_of: dict[int, int] = {}
    for t in tree.tokens:
        if t.head != 0 and t.head not in ids:
            violations.append(Violation(
                "head-out-of-range", (t.id,),
                f"token {t.id} points to nonexistent head {t.head}"))
        else:
            head_of[t.id] = t.head

    # Cycle sweep: walk head links; any node that cannot reach 0 sits on or
    # under a cycle. Report each distinct cycle once.
    reaches_root: dict[int, bool] = {0: True}

    def walk(start: int) -> None:
        path = []
        node = start
        while node not in reaches_root and node in head_of:
            if node in path:
                cycle = tuple(path[path.index(node):])
                violations.append(Violation(
                    "cycle", cycle,
                    "cycle through token(s) " + ", ".join(map(str, sorted(cycle)))))
                for n in path:
                    reaches_root[n] = False
                return
            path.append(node)
            node = head_of[node]
        ok = reaches_root.get(node, False)
        for n in path:
            reaches_root[n] = ok

    for t in tree.tokens:
        walk(t.id)
    return violations


def validate_tree(tree: DepTree, source: str = "") -> DepTree:
    """Return the tree unchanged if well-formed, else raise InvalidTreeError
    carrying the full violation report."""
    violations = tree_violations(tree)
    if violations:
        raise InvalidTreeError(violations, source)
    return tree
