import numpy as np
import pytest

from helpers import random_graph, rng_for
from idamr.errors import FormatError
from idamr.graph import parse_penman
from idamr.ingest import AmrEntry
from idamr.metrics import (accuracy, confusion_matrix, corpus_smatch, f1_macro,
                           pair_f1, smatch, smatch_oracle, smatch_per_sentence)
from test_graph import SEWING_GOLD, SEWING_SYSTEM


def entry(id, text):
    return AmrEntry(id=id, snt="", graph=parse_penman(text))


class TestSmatch:
    def test_identical_graphs_score_one(self):
        g = parse_penman(SEWING_GOLD)
        score = smatch(g, g)
        assert score.f1 == 1.0
        assert score.matched == score.predicted_total == score.gold_total == 8

    def test_isomorphic_graphs_score_one(self):
        a = parse_penman("(a / x :mod (b / y))")
        b = parse_penman("(p / x :mod (q / y))")
        assert smatch(a, b).f1 == 1.0

    def test_single_nodes_share_only_the_top_triple(self):
        a = parse_penman("(a / x)")
        b = parse_penman("(b / y)")
        score = smatch(a, b)
        # instance concepts differ; only TOP can match
        assert score.matched == 1
        assert score.f1 == 0.5

    def test_top_requires_matching_roots(self):
        a = parse_penman("(a / x :mod (b / y))")
        b = parse_penman("(q / y :mod (p / x))")
        score = smatch_oracle(a, b)
        # both instances can map but the roots then disagree and neither
        # relation direction lines up
        assert score.matched == 2

    def test_matches_oracle_on_reference_pair(self):
        pred = parse_penman(SEWING_SYSTEM)
        gold = parse_penman(SEWING_GOLD)
        exact = smatch_oracle(pred, gold)
        climbed = smatch(pred, gold)
        assert climbed == exact
        assert exact.matched == 6
        assert exact.precision == 0.6
        assert exact.recall == 0.75
        assert exact.f1 == pytest.approx(2 / 3)

    def test_climb_never_beats_oracle(self):
        rng = rng_for(11)
        for _ in range(30):
            pred = random_graph(rng, max_nodes=6)
            gold = random_graph(rng, max_nodes=6)
            assert smatch(pred, gold).matched <= smatch_oracle(pred, gold).matched

    def test_swap_is_symmetric_in_matched_count(self):
        rng = rng_for(12)
        for _ in range(10):
            pred = random_graph(rng, max_nodes=5)
            gold = random_graph(rng, max_nodes=5)
            assert (smatch_oracle(pred, gold).matched
                    == smatch_oracle(gold, pred).matched)

    def test_deterministic_for_fixed_seed(self):
        pred = parse_penman(SEWING_SYSTEM)
        gold = parse_penman(SEWING_GOLD)
        assert smatch(pred, gold, seed=5) == smatch(pred, gold, seed=5)

    def test_restarts_must_be_positive(self):
        g = parse_penman("(a / x)")
        with pytest.raises(ValueError):
            smatch(g, g, restarts=0)

    def test_oracle_guard(self):
        nodes = " ".join(f":mod (v{i} / c{i})" for i in range(9))
        big = parse_penman(f"(r / root {nodes})")
        with pytest.raises(ValueError, match="at most 8 variables"):
            smatch_oracle(big, big)

    def test_score_counts_are_consistent(self):
        pred = parse_penman(SEWING_SYSTEM)
        gold = parse_penman(SEWING_GOLD)
        score = smatch(pred, gold)
        assert 0 <= score.matched <= min(score.predicted_total, score.gold_total)
        assert score.predicted_total == 10  # 5 instances + 4 relations + top
        assert score.gold_total == 8


class TestCorpus:
    def test_micro_aggregation(self):
        # per-sentence matched/pred/gold counts (1,2,2) and (3,4,4) pool
        # to 4/6/6; the second sentence loses only its relation label
        preds = [entry("a", "(x / p)"), entry("b", "(x / q :mod (y / r))")]
        golds = [entry("a", "(x / z)"), entry("b", "(x / q :time (y / r))")]
        score = corpus_smatch(preds, golds)
        assert (score.matched, score.predicted_total, score.gold_total) == (4, 6, 6)
        assert score.f1 == pytest.approx(2 / 3)

    def test_per_sentence_scores(self):
        preds = [entry("a", "(x / p)"), entry("b", "(x / q)")]
        golds = [entry("a", "(x / p)"), entry("b", "(x / q)")]
        scores = smatch_per_sentence(preds, golds)
        assert [s.f1 for s in scores] == [1.0, 1.0]

    def test_length_mismatch(self):
        with pytest.raises(FormatError, match="differ in length"):
            smatch_per_sentence([entry("a", "(x / p)")], [])

    def test_id_mismatch(self):
        with pytest.raises(FormatError, match="entry 1"):
            smatch_per_sentence([entry("a", "(x / p)")],
                                [entry("b", "(x / p)")])


class TestPairF1:
    def test_identical_pair_sets(self):
        pairs = [("makan", "aku"), ("makan", "kue")]
        score = pair_f1(pairs, pairs)
        assert score.f1 == 1.0

    def test_extra_prediction_costs_precision(self):
        pred = [("makan", "aku"), ("makan", "kue"), ("teras", "di")]
        gold = [("makan", "aku"), ("makan", "kue")]
        score = pair_f1(pred, gold)
        assert score.precision == pytest.approx(2 / 3)
        assert score.recall == 1.0
        assert score.f1 == pytest.approx(0.8)

    def test_pairs_are_directional(self):
        assert pair_f1([("a", "b")], [("b", "a")]).matched == 0

    def test_multiset_semantics(self):
        pred = [("a", "b"), ("a", "b")]
        gold = [("a", "b")]
        assert pair_f1(pred, gold).matched == 1

    def test_empty_sides(self):
        score = pair_f1([], [("a", "b")])
        assert score.precision == 0.0
        assert score.recall == 0.0
        assert score.f1 == 0.0


class TestClassifierMetrics:
    def test_confusion_layout(self):
        cm = confusion_matrix([0, 0, 1, 2], [0, 1, 1, 2], n_classes=3)
        assert cm[0, 1] == 1  # gold 0 predicted as 1
        assert cm[1, 0] == 0
        assert cm.sum() == 4

    def test_accuracy(self):
        assert accuracy([1, 2, 3], [1, 2, 0]) == pytest.approx(2 / 3)
        assert accuracy([], []) == 0.0

    def test_f1_macro_perfect_diagonal(self):
        cm = np.diag([3, 5, 2])
        assert f1_macro(cm) == 1.0

    def test_f1_macro_known_value(self):
        # class 0: P=1, R=0.5, F1=2/3; class 1: P=2/3, R=1, F1=0.8
        cm = np.array([[5, 5], [0, 10]])
        assert f1_macro(cm) == pytest.approx((2 / 3 + 0.8) / 2)

    def test_f1_macro_empty_matrix(self):
        assert f1_macro(np.zeros((3, 3))) == 0.0

    def test_f1_macro_single_predicted_class(self):
        # balanced 6-class gold, everything predicted as class 0:
        # class 0 scores 2/7, the rest score 0
        cm = np.zeros((6, 6))
        cm[:, 0] = 10
        assert f1_macro(cm) == pytest.approx((2 / 7) / 6)
