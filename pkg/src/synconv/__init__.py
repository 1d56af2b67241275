"""Syntactic complexity metrics and convergence statistics for two-party dialogue corpora."""

from .complexity import (CLASSIC_WEIGHTS, ComplexityConfig, ComplexityRecord,
                         DEFAULT_CONFIG, DEFAULT_MIX, InventoryCounts,
                         UNIFORM_WEIGHTS, inventory_counts, isc_score,
                         score_tree, syntactic_complexity)
from .deptree import (ConlluParseError, DepTree, InvalidTreeError, Token,
                      Violation, parse_conllu, serialize_conllu,
                      tree_violations, validate_tree)
from .dialogue import (Corpus, CorpusError, Dialogue, ManifestRow,
                       assign_roles, complexity_series, load_corpus,
                       parse_manifest, records_from_csv, records_to_csv)
from .mstdecode import ScoreMatrix, head_probabilities, heads_to_tree, mst_decode
from .stats import (BootstrapBand, ConvergenceLabel, DegenerateDesignError,
                    RegressionResult, bands_csv, bootstrap_bands,
                    classify_convergence, fit_lmm, fit_ols, position_bin,
                    report_json, results_csv, significance_stars)
from .synth import DEFAULT_SEED, generate_records
from .treemetrics import (TreeMetrics, branching_factor, head_count,
                          sentence_length, tree_depth, tree_metrics)

__version__ = "0.1.0"

__all__ = [
    "BootstrapBand", "CLASSIC_WEIGHTS", "ComplexityConfig",
    "ComplexityRecord", "ConlluParseError", "ConvergenceLabel", "Corpus",
    "CorpusError", "DEFAULT_CONFIG", "DEFAULT_MIX", "DEFAULT_SEED",
    "DegenerateDesignError", "DepTree", "Dialogue", "InvalidTreeError",
    "InventoryCounts", "ManifestRow", "RegressionResult", "ScoreMatrix",
    "Token", "TreeMetrics", "UNIFORM_WEIGHTS", "Violation", "assign_roles",
    "bands_csv", "bootstrap_bands", "branching_factor",
    "classify_convergence", "complexity_series", "fit_lmm", "fit_ols",
    "generate_records", "head_count", "head_probabilities", "heads_to_tree",
    "inventory_counts", "isc_score", "load_corpus", "mst_decode",
    "parse_conllu", "parse_manifest", "position_bin", "records_from_csv",
    "records_to_csv", "report_json", "results_csv", "score_tree",
    "sentence_length", "serialize_conllu", "significance_stars",
    "syntactic_complexity", "tree_depth", "tree_metrics", "tree_violations",
    "validate_tree",
]
