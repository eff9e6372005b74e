import numpy as np
import pytest

from idamr.errors import ConfigError
from idamr.features import (FEATURE_COMBINATIONS, FeatureConfig,
                            FeatureEncoder, combination_label,
                            combine_features, dump_features, fit_encoder,
                            match_pairs, unmatched_gold_edges)
from idamr.graph import parse_penman
from idamr.ingest import EmbeddingTable, read_conllu
from idamr.pairs import extract_pairs

SNACK = """\
# sent_id = s1
1\tAku\taku\tPRON\t_\t_\t2\tnsubj\t_\t_
2\tmakan\tmakan\tVERB\t_\t_\t0\troot\t_\t_
3\tkue\tkue\tNOUN\t_\t_\t2\tobj\t_\t_
"""

SNACK_GOLD = "(m / makan :ARG0 (a / aku) :ARG1 (k / kue))"


def snack_rows():
    (s,) = read_conllu(SNACK)
    return combine_features(s, extract_pairs(s))


def toy_table(dim=4, tokens=("aku", "makan", "kue")):
    rng = np.random.default_rng(3)
    return EmbeddingTable(dim, {t: rng.normal(size=dim) for t in tokens})


class TestCombineFeatures:
    def test_row_fields(self):
        rows = snack_rows()
        assert len(rows) == 2
        first = rows[0]
        assert first.sentence_id == "s1"
        assert (first.parent_lemma, first.child_lemma) == ("makan", "aku")
        assert (first.parent_pos, first.child_pos) == ("VERB", "PRON")
        assert (first.parent_ner, first.child_ner) == ("O", "O")
        assert first.deprel == "nsubj"
        assert first.is_root
        assert (first.parent_position, first.child_position) == (2, 1)

    def test_dump_has_header_and_one_line_per_row(self):
        rows = snack_rows()
        dump = dump_features(rows)
        lines = dump.splitlines()
        assert lines[0].startswith("Sentence ID\tParent\tChild")
        assert len(lines) == 1 + len(rows)
        assert lines[1].split("\t")[:3] == ["s1", "makan", "aku"]


class TestMatchPairs:
    def test_labels_come_from_gold_edges(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        assert [(e.features.child_lemma, e.label) for e in examples] == [
            ("aku", "ARG0"), ("kue", "ARG1")]

    def test_unmatched_rows_are_dropped(self):
        gold = parse_penman("(m / makan :ARG0 (a / aku))")
        examples = match_pairs(snack_rows(), gold)
        assert [e.label for e in examples] == ["ARG0"]

    def test_each_gold_edge_consumed_once(self):
        rows = snack_rows()
        doubled = [rows[0], rows[0], rows[1]]
        examples = match_pairs(doubled, parse_penman(SNACK_GOLD))
        assert [e.label for e in examples] == ["ARG0", "ARG1"]

    def test_unmatched_gold_edges_reports_leftovers(self):
        gold = parse_penman(
            "(m / makan :ARG0 (a / aku) :ARG1 (k / kue) :time (p / pagi))")
        left = unmatched_gold_edges(snack_rows(), gold)
        assert [(e.label, e.target) for e in left] == [("time", "p")]

    def test_everything_matched_leaves_nothing(self):
        assert unmatched_gold_edges(snack_rows(), parse_penman(SNACK_GOLD)) == []


class TestFeatureConfig:
    def test_from_names_aliases(self):
        cfg = FeatureConfig.from_names("lex, SYN ,positional")
        assert cfg.sorted_names() == ("lexical", "syntactic", "positional")

    def test_from_names_unknown(self):
        with pytest.raises(ConfigError, match="unknown feature category"):
            FeatureConfig.from_names("lex,morph")

    def test_empty_config_rejected(self):
        with pytest.raises(ConfigError, match="at least one"):
            FeatureConfig(categories=frozenset())

    def test_combinations_table(self):
        assert FEATURE_COMBINATIONS[0] == ("lexical", "syntactic", "positional")
        assert ("syntactic",) in FEATURE_COMBINATIONS
        assert len(FEATURE_COMBINATIONS) == 5
        assert [combination_label(c) for c in FEATURE_COMBINATIONS] == [
            "lex+syn+pos", "syn+pos", "lex+syn", "lex+pos", "syn"]


class TestEncoder:
    def test_dimension_formula(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        table = toy_table(dim=4)
        enc = fit_encoder(examples, FeatureConfig.all(), embeddings=table)
        # 2 embeddings + one-hots over the fitted vocabularies + deprel
        # one-hot + (root flag, parent position, child position)
        syn = sum(len(enc.vocabularies[f]) for f in
                  ("parent_pos", "child_pos", "parent_ner", "child_ner"))
        assert enc.dimension == 2 * 4 + syn + len(enc.vocabularies["deprel"]) + 3
        assert enc.encode(examples[0].features).shape == (enc.dimension,)

    def test_vocabularies_are_sorted_distinct(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        enc = fit_encoder(examples, FeatureConfig.from_names("syn,pos"))
        assert enc.vocabularies["child_pos"] == ("NOUN", "PRON")
        assert enc.vocabularies["deprel"] == ("nsubj", "obj")

    def test_syntactic_one_hot_placement(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        enc = fit_encoder(examples, FeatureConfig.from_names("syn"))
        vec = enc.encode(examples[0].features)
        # parent_pos vocabulary is ("VERB",) and child_pos is ("NOUN", "PRON");
        # the first row is makan/aku so PRON lights up.
        assert vec[0] == 1.0
        assert list(vec[1:3]) == [0.0, 1.0]

    def test_unseen_value_encodes_as_zero_block(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        enc = fit_encoder(examples, FeatureConfig.from_names("syn"))
        changed = examples[0].features.__class__(
            **{**examples[0].features.__dict__, "child_pos": "ADV"})
        vec = enc.encode(changed)
        assert list(vec[1:3]) == [0.0, 0.0]

    def test_positional_tail(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        enc = fit_encoder(examples, FeatureConfig.from_names("pos"))
        vec = enc.encode(examples[1].features)
        assert list(vec[-3:]) == [1.0, 2.0, 3.0]

    def test_unknown_lemma_embeds_as_zeros(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        table = toy_table(dim=4, tokens=("makan",))
        enc = fit_encoder(examples, FeatureConfig.from_names("lex"),
                          embeddings=table)
        vec = enc.encode(examples[0].features)
        assert np.array_equal(vec[4:], np.zeros(4))
        assert not np.array_equal(vec[:4], np.zeros(4))

    def test_lexical_without_embeddings_rejected(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        with pytest.raises(ConfigError, match="no embeddings"):
            fit_encoder(examples, FeatureConfig.from_names("lex"))

    def test_zero_examples_rejected(self):
        with pytest.raises(ConfigError, match="zero examples"):
            fit_encoder([], FeatureConfig.all())

    def test_encode_without_bound_table_rejected(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        enc = fit_encoder(examples, FeatureConfig.from_names("lex"),
                          embeddings=toy_table())
        state = enc.to_state()
        rebuilt = FeatureEncoder.from_state(state)
        with pytest.raises(ConfigError, match="no embedding table"):
            rebuilt.encode(examples[0].features)

    def test_state_round_trip_encodes_identically(self):
        examples = match_pairs(snack_rows(), parse_penman(SNACK_GOLD))
        table = toy_table()
        enc = fit_encoder(examples, FeatureConfig.all(), embeddings=table)
        rebuilt = FeatureEncoder.from_state(enc.to_state(), embeddings=table)
        for ex in examples:
            assert np.array_equal(enc.encode(ex.features),
                                  rebuilt.encode(ex.features))
        assert rebuilt.dimension == enc.dimension
