"""Dependency-based AMR parsing for Indonesian.

The pipeline: read extended CoNLL-U annotations, extract and filter
dependency pairs, classify each surviving pair with one of six AMR edge
labels, and assemble the labeled pairs into a rooted AMR tree. Evaluation
covers SMATCH (hill-climbing plus an exact oracle for small graphs) and
pair-level precision/recall/F1.
"""

from idamr.construct import LabeledPair, build_graph, select_root
from idamr.errors import (ConfigError, FormatError, GraphError, IdamrError,
                          ModelFormatError, PenmanParseError)
from idamr.features import (CATEGORIES, FEATURE_COMBINATIONS, FeatureConfig,
                            FeatureEncoder, LabeledExample, PairFeatures,
                            combine_features, dump_features, fit_encoder,
                            match_pairs, unmatched_gold_edges)
from idamr.graph import (CORE_LABELS, AmrEdge, AmrGraph, AmrNode, TripleSet,
                         parse_penman, serialize_penman, to_triples)
from idamr.ingest import (AmrEntry, AnnotatedSentence, EmbeddingTable, Token,
                          load_embeddings, read_amr_corpus, read_conllu,
                          write_amr_corpus, write_conllu)
from idamr.metrics import (PairScore, SmatchScore, accuracy, confusion_matrix,
                           corpus_smatch, f1_macro, pair_f1, smatch,
                           smatch_oracle, smatch_per_sentence)
from idamr.models import (CvReport, Dataset, GbtModel, GbtParams, TreeModel,
                          TreeParams, cross_validate, impurity, load_model,
                          predict, save_model, train_gbt, train_tree)
from idamr.pairs import (RULE_COMBINATIONS, RULE_NAMES, DepPair, FilterRule,
                         FilterRuleSet, apply_filter, extract_pairs)

__version__ = "0.1.0"

__all__ = [
    "AmrEdge", "AmrEntry", "AmrGraph", "AmrNode", "AnnotatedSentence",
    "CATEGORIES", "CORE_LABELS", "ConfigError", "CvReport", "Dataset",
    "DepPair", "EmbeddingTable", "FEATURE_COMBINATIONS", "FeatureConfig",
    "FeatureEncoder", "FilterRule", "FilterRuleSet", "FormatError",
    "GbtModel", "GbtParams", "GraphError", "IdamrError", "LabeledExample",
    "LabeledPair", "ModelFormatError", "PairFeatures", "PairScore",
    "PenmanParseError", "RULE_COMBINATIONS", "RULE_NAMES", "SmatchScore",
    "Token", "TreeModel", "TreeParams", "TripleSet", "accuracy",
    "apply_filter", "build_graph", "combine_features", "confusion_matrix",
    "corpus_smatch", "cross_validate", "dump_features", "extract_pairs",
    "f1_macro", "fit_encoder", "impurity", "load_embeddings", "load_model",
    "match_pairs", "pair_f1", "parse_penman", "predict", "read_amr_corpus",
    "read_conllu", "save_model", "select_root", "serialize_penman", "smatch",
    "smatch_oracle", "smatch_per_sentence", "to_triples", "train_gbt",
    "train_tree", "unmatched_gold_edges", "write_amr_corpus", "write_conllu",
]
