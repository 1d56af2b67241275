"""Command-line entry point.

Subcommands: `validate` reports dependency-tree violations, `score` turns a
corpus into a per-utterance complexity CSV, `analyze` fits the per-role
regressions and labels the joint pattern, `plotdata` emits bootstrap bands
for external plotting, and `decode` turns a score-matrix JSON into a
CoNLL-U skeleton. A hidden `synth` subcommand generates synthetic corpora
with known slopes for testing. Runs are reproducible by default: every
random step is seeded with DEFAULT_SEED unless --seed overrides it.

Exit codes: 0 success, 1 bad input data, 2 usage error, 3 I/O error,
4 statistics impossible on the given data.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .complexity import ComplexityConfig, WEIGHT_PRESETS
from .deptree import (ConlluParseError, DepTree, InvalidTreeError,
                      parse_conllu, serialize_conllu, tree_violations)
from .dialogue import (Corpus, CorpusError, complexity_series, load_corpus,
                       parse_manifest, records_from_csv, records_to_csv)
from .mstdecode import ScoreMatrix, heads_to_tree, mst_decode
from .stats import (DegenerateDesignError, bands_csv, bootstrap_bands,
                    classify_convergence, fit_lmm, fit_ols, report_json)
from .synth import DEFAULT_SEED, generate_records

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4


class UsageError(Exception):
    """Bad flag combination or flag value, beyond what argparse catches."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synconv",
        description="Syntactic complexity and convergence analysis for two-party dialogue corpora.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="{validate,score,analyze,plotdata,decode}")

    p = sub.add_parser("validate", help="check CoNLL-U files for tree violations")
    p.add_argument("inputs", nargs="+", type=Path, help="CoNLL-U files")
    p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("score", help="per-utterance complexity CSV from a corpus")
    _add_corpus_args(p)
    _add_scoring_args(p)
    p.add_argument("--metric", choices=("sc", "isc"), default="sc",
                   help="which complexity value fills the sc column")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("analyze", help="fit per-role regressions and label the pattern")
    _add_corpus_args(p, optional_inputs=True)
    _add_scoring_args(p)
    p.add_argument("--records", type=Path, default=None,
                   help="read a score CSV instead of CoNLL-U inputs")
    p.add_argument("--alpha", type=float, default=0.05, help="significance threshold")
    p.add_argument("--normalized-position", action="store_true",
                   help="regress on position/role-count instead of the raw index")
    p.add_argument("--quadratic", action="store_true",
                   help="add a squared-position term to the least-squares fit")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("plotdata", help="bootstrap confidence bands as CSV")
    _add_corpus_args(p, optional_inputs=True)
    _add_scoring_args(p)
    p.add_argument("--records", type=Path, default=None,
                   help="read a score CSV instead of CoNLL-U inputs")
    p.add_argument("--bins", type=int, default=10, help="normalized-position bins")
    p.add_argument("--resamples", type=int, default=1000, help="bootstrap resamples")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_plotdata)

    p = sub.add_parser("decode", help="best dependency tree from a score-matrix JSON")
    p.add_argument("input", type=Path, help="JSON with keys n and scores")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("synth")  # intentionally absent from the usage line
    p.add_argument("--dialogues", type=int, required=True)
    p.add_argument("--utterances", type=int, required=True,
                   help="utterances per role per dialogue")
    p.add_argument("--initiator-slope", type=float, required=True)
    p.add_argument("--follower-slope", type=float, required=True)
    p.add_argument("--intercept", type=float, default=2.5)
    p.add_argument("--sigma-u", type=float, default=0.3,
                   help="between-dialogue standard deviation")
    p.add_argument("--sigma-e", type=float, default=0.5,
                   help="residual standard deviation")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_synth)

    return parser


def _add_corpus_args(p: argparse.ArgumentParser, optional_inputs: bool = False) -> None:
    p.add_argument("inputs", nargs="*" if optional_inputs else "+", type=Path,
                   help="CoNLL-U files (one per dialogue or concatenated)")
    p.add_argument("--manifest", type=Path, default=None,
                   help="speaker manifest CSV: dialogue_id,utterance_id,speaker")
    p.add_argument("--lenient", action="store_true",
                   help="drop unparseable sentences, invalid trees, and non-two-party dialogues instead of failing")


def _add_scoring_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="mix", type=float, default=0.5,
                   help="weight on the words-per-head term (the rest goes to depth)")
    p.add_argument("--isc-weights", default="uniform",
                   help="'uniform', 'classic', or four comma-separated weights")
    p.add_argument("--exclude-punct", action=argparse.BooleanOptionalAction,
                   default=True, help="drop PUNCT tokens from the length count")
    p.add_argument("--exclude-punct-structure", action="store_true",
                   help="also strip PUNCT leaves before depth/branching")


def _write(out: Path | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _config(args: argparse.Namespace) -> ComplexityConfig:
    raw = args.isc_weights.strip()
    if raw in WEIGHT_PRESETS:
        weights = WEIGHT_PRESETS[raw]
    else:
        parts = raw.split(",")
        if len(parts) != 4:
            raise UsageError(f"--isc-weights needs a preset name or 4 comma-separated numbers, got {raw!r}")
        try:
            weights = tuple(float(p) for p in parts)
        except ValueError:
            raise UsageError(f"--isc-weights: could not parse {raw!r}") from None
    try:
        return ComplexityConfig(mix=args.mix, isc_weights=weights)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_corpus(args: argparse.Namespace, require_two_speakers: bool) -> Corpus:
    trees: list[DepTree] = []
    for path in args.inputs:
        parsed = parse_conllu(path.read_text(encoding="utf-8"), lenient=args.lenient)
        for i, tree in enumerate(parsed, start=1):
            violations = tree_violations(tree)
            if not violations:
                trees.append(tree)
            elif args.lenient:
                logger.warning("dropping invalid sentence %d of %s: %s",
                               i, path, violations[0].message)
            else:
                raise InvalidTreeError(violations, source=f"{path}: sentence {i}")
    manifest = None
    if args.manifest is not None:
        manifest = parse_manifest(args.manifest.read_text(encoding="utf-8"))
    return load_corpus(trees, manifest=manifest, lenient=args.lenient,
                       require_two_speakers=require_two_speakers)


def _load_records(args: argparse.Namespace, require_two_speakers: bool = True):
    if args.records is not None and args.inputs:
        raise UsageError("give CoNLL-U inputs or --records, not both")
    if args.records is not None:
        return records_from_csv(args.records.read_text(encoding="utf-8"))
    if not args.inputs:
        raise UsageError("no input: give CoNLL-U files or --records")
    corpus = _load_corpus(args, require_two_speakers=require_two_speakers)
    return complexity_series(corpus, _config(args),
                             exclude_punct=args.exclude_punct,
                             exclude_punct_structure=args.exclude_punct_structure)


def _cmd_validate(args: argparse.Namespace) -> int:
    lines = []
    clean = True
    for path in args.inputs:
        text = path.read_text(encoding="utf-8")
        try:
            trees = parse_conllu(text)
        except ConlluParseError as exc:
            lines.append(f"{path}: parse error: {exc}")
            clean = False
            continue
        bad = 0
        for i, tree in enumerate(trees, start=1):
            label = tree.meta.get("utterance_id")
            where = f"sentence {i}" + (f" (utterance {label})" if label else "")
            violations = tree_violations(tree)
            for v in violations:
                lines.append(f"{path}: {where}: {v.code}: {v.message}")
            if violations:
                bad += 1
        if bad:
            lines.append(f"{path}: {bad} of {len(trees)} sentences invalid")
            clean = False
        else:
            lines.append(f"{path}: OK ({len(trees)} sentences)")
    _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if clean else EXIT_DATA


def _cmd_score(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args, require_two_speakers=False)
    records = complexity_series(corpus, _config(args),
                                exclude_punct=args.exclude_punct,
                                exclude_punct_structure=args.exclude_punct_structure,
                                metric=args.metric)
    _write(args.out, records_to_csv(records))
    return EXIT_OK


def _split_roles(records):
    initiator = tuple(r for r in records if r.role == "initiator")
    follower = tuple(r for r in records if r.role == "follower")
    if not initiator or not follower:
        missing = "initiator" if not initiator else "follower"
        raise DegenerateDesignError(f"no {missing} records in the input")
    return initiator, follower


def _cmd_analyze(args: argparse.Namespace) -> int:
    records = _load_records(args)
    initiator, follower = _split_roles(records)
    fits = {}
    for role, recs in (("initiator", initiator), ("follower", follower)):
        fits[role] = {
            "lmm": fit_lmm(recs, use_normalized=args.normalized_position),
            "ols": fit_ols(recs, use_normalized=args.normalized_position,
                           quadratic=args.quadratic),
        }
    pattern = classify_convergence(fits["initiator"]["lmm"],
                                   fits["follower"]["lmm"], alpha=args.alpha)
    _write(args.out, report_json(pattern, fits))
    return EXIT_OK


def _cmd_plotdata(args: argparse.Namespace) -> int:
    records = _load_records(args)
    initiator, follower = _split_roles(records)
    rows = []
    for role, recs in (("initiator", initiator), ("follower", follower)):
        for band in bootstrap_bands(recs, n_bins=args.bins,
                                    n_resamples=args.resamples, seed=args.seed):
            rows.append((role, band))
    _write(args.out, bands_csv(rows))
    return EXIT_OK


def _cmd_decode(args: argparse.Namespace) -> int:
    matrix = ScoreMatrix.from_json(args.input.read_text(encoding="utf-8"))
    heads = mst_decode(matrix)
    tree = heads_to_tree(heads)
    _write(args.out, serialize_conllu([tree]))
    return EXIT_OK


def _cmd_synth(args: argparse.Namespace) -> int:
    records = generate_records(
        n_dialogues=args.dialogues, n_utterances=args.utterances,
        initiator_slope=args.initiator_slope,
        follower_slope=args.follower_slope, intercept=args.intercept,
        sigma_u=args.sigma_u, sigma_e=args.sigma_e, seed=args.seed)
    _write(args.out, records_to_csv(records))
    return EXIT_OK


def _fail(category: str, exc: BaseException) -> None:
    message = " ".join(str(exc).split())
    print(f"synconv: error: {category}: {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="synconv: %(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _fail("usage", exc)
        return EXIT_USAGE
    except (ConlluParseError, InvalidTreeError, CorpusError) as exc:
        _fail("data", exc)
        return EXIT_DATA
    except DegenerateDesignError as exc:
        _fail("degenerate", exc)
        return EXIT_DEGENERATE
    except OSError as exc:
        _fail("io", exc)
        return EXIT_IO
    except ValueError as exc:
        _fail("data", exc)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
