import numpy as np
import pytest

from idamr.errors import FormatError
from idamr.graph import parse_penman
from idamr.ingest import (AmrEntry, AnnotatedSentence, EmbeddingTable, Token,
                          load_embeddings, read_amr_corpus, read_conllu,
                          write_amr_corpus, write_conllu)


def block(*rows, comments=()):
    return "\n".join(list(comments) + ["\t".join(r) for r in rows]) + "\n"


def row(idx, form, lemma, upos, head, deprel, misc="_"):
    return (str(idx), form, lemma, upos, "_", "_", str(head), deprel, "_", misc)


BASIC = block(
    row(1, "Aku", "aku", "PRON", 2, "nsubj"),
    row(2, "makan", "makan", "VERB", 0, "root"),
    row(3, "kue", "kue", "NOUN", 2, "obj", misc="NER=MISC"),
    row(4, ".", ".", "PUNCT", 2, "punct"),
    comments=("# sent_id = s1", "# text = Aku makan kue ."),
)


class TestReadConllu:
    def test_basic_sentence(self):
        (s,) = read_conllu(BASIC)
        assert s.id == "s1"
        assert s.text == "Aku makan kue ."
        assert [t.form for t in s.tokens] == ["Aku", "makan", "kue"]
        assert s.root.lemma == "makan"
        assert s.token(3).ner == "MISC"
        assert s.token(1).ner == "O"
        assert s.token(1).head == 2
        assert s.token(1).deprel == "nsubj"

    def test_defaults_without_comments(self):
        text = block(row(1, "Tidur", "tidur", "VERB", 0, "root"),
                     row(2, ".", ".", "PUNCT", 1, "punct"))
        (s,) = read_conllu(text)
        assert s.id == "1"
        # the default text is built from every surface form, punctuation included
        assert s.text == "Tidur ."

    def test_two_sentences_positional_ids(self):
        text = (block(row(1, "Tidur", "tidur", "VERB", 0, "root")) + "\n"
                + block(row(1, "Makan", "makan", "VERB", 0, "root")))
        first, second = read_conllu(text)
        assert (first.id, second.id) == ("1", "2")

    def test_punct_dropped_and_renumbered(self):
        text = block(
            row(1, "Aku", "aku", "PRON", 3, "nsubj"),
            row(2, ",", ",", "PUNCT", 3, "punct"),
            row(3, "makan", "makan", "VERB", 0, "root"),
            row(4, "kue", "kue", "NOUN", 3, "obj"),
        )
        (s,) = read_conllu(text)
        assert [t.form for t in s.tokens] == ["Aku", "makan", "kue"]
        assert [t.index for t in s.tokens] == [1, 2, 3]
        assert [t.head for t in s.tokens] == [2, 0, 2]

    def test_token_headed_by_punct_reattaches_to_ancestor(self):
        text = block(
            row(1, "sangat", "sangat", "ADV", 2, "advmod"),
            row(2, "-", "-", "PUNCT", 3, "punct"),
            row(3, "cepat", "cepat", "ADJ", 0, "root"),
        )
        (s,) = read_conllu(text)
        assert [t.form for t in s.tokens] == ["sangat", "cepat"]
        assert s.token(1).head == 2

    def test_multiword_and_empty_node_lines_skipped(self):
        text = ("1-2\tdimakan\t_\t_\t_\t_\t_\t_\t_\t_\n"
                + block(row(1, "di", "di", "ADP", 2, "case"),
                        row(2, "makan", "makan", "VERB", 0, "root"))
                + "2.1\telided\t_\t_\t_\t_\t_\t_\t_\t_\n")
        (s,) = read_conllu(text)
        assert len(s.tokens) == 2

    def test_lemma_underscore_falls_back_to_form(self):
        text = block(row(1, "Makan", "_", "VERB", 0, "root"))
        (s,) = read_conllu(text)
        assert s.token(1).lemma == "Makan"

    def test_empty_input(self):
        assert read_conllu("") == []

    def test_wrong_column_count(self):
        with pytest.raises(FormatError, match="line 1.*10 tab-separated"):
            read_conllu("1\tMakan\tmakan\tVERB\t0\troot\n")

    def test_non_integer_id(self):
        bad = block(row("x", "Makan", "makan", "VERB", 0, "root"))
        with pytest.raises(FormatError, match="non-integer token id"):
            read_conllu(bad)

    def test_ids_must_count_from_one(self):
        bad = block(row(2, "Makan", "makan", "VERB", 0, "root"))
        with pytest.raises(FormatError, match="must count 1..n"):
            read_conllu(bad)

    def test_non_integer_head(self):
        bad = block(row(1, "Makan", "makan", "VERB", "x", "root"))
        with pytest.raises(FormatError, match="non-integer head"):
            read_conllu(bad)

    def test_head_out_of_range(self):
        bad = block(row(1, "Makan", "makan", "VERB", 5, "root"))
        with pytest.raises(FormatError, match="head 5 out of range"):
            read_conllu(bad)

    def test_all_punct_sentence(self):
        bad = block(row(1, ".", ".", "PUNCT", 0, "root"))
        with pytest.raises(FormatError, match="no tokens left"):
            read_conllu(bad)

    def test_punct_head_cycle(self):
        bad = block(
            row(1, "a", "a", "NOUN", 2, "nsubj"),
            row(2, ".", ".", "PUNCT", 3, "punct"),
            row(3, ",", ",", "PUNCT", 2, "punct"),
            row(4, "b", "b", "VERB", 0, "root"),
        )
        with pytest.raises(FormatError, match="head cycle"):
            read_conllu(bad)

    def test_comment_only_block_rejected(self):
        with pytest.raises(FormatError, match="no token lines"):
            read_conllu("# sent_id = s1\n\n")


class TestAnnotatedSentence:
    def tok(self, index, head, lemma="x"):
        return Token(index=index, form=lemma, lemma=lemma, upos="NOUN",
                     ner="O", head=head, deprel="dep")

    def test_exactly_one_root_required(self):
        with pytest.raises(FormatError, match="exactly one root, found 0"):
            AnnotatedSentence(id="s", text="", tokens=[self.tok(1, 2), self.tok(2, 1)])
        with pytest.raises(FormatError, match="exactly one root, found 2"):
            AnnotatedSentence(id="s", text="", tokens=[self.tok(1, 0), self.tok(2, 0)])

    def test_head_cycle_detected(self):
        tokens = [self.tok(1, 2), self.tok(2, 1), self.tok(3, 0)]
        with pytest.raises(FormatError, match="head cycle"):
            AnnotatedSentence(id="s", text="", tokens=tokens)

    def test_own_head_rejected(self):
        with pytest.raises(FormatError, match="its own head"):
            AnnotatedSentence(id="s", text="",
                              tokens=[self.tok(1, 1), self.tok(2, 0)])


class TestWriteConllu:
    def test_round_trip(self):
        sentences = read_conllu(BASIC)
        assert read_conllu(write_conllu(sentences)) == sentences

    def test_ner_written_to_misc(self):
        (s,) = read_conllu(BASIC)
        assert "NER=MISC" in write_conllu([s])

    def test_empty(self):
        assert write_conllu([]) == ""


AMR_TWO = """# ::id s1
# ::snt Ibu menjahit baju
(j / jahit :ARG0 (i / ibu) :ARG1 (b / baju))

# ::id s2
# ::snt Aku tidur
(t / tidur
    :ARG0 (a / aku))
"""


class TestAmrCorpus:
    def test_read_two_entries(self):
        entries = read_amr_corpus(AMR_TWO)
        assert [e.id for e in entries] == ["s1", "s2"]
        assert entries[0].snt == "Ibu menjahit baju"
        assert entries[1].graph.concept("a") == "aku"

    def test_multiline_block_joined(self):
        entries = read_amr_corpus(AMR_TWO)
        assert len(entries[1].graph) == 2

    def test_positional_id_default(self):
        entries = read_amr_corpus("(a / x)\n\n(b / y)\n")
        assert [e.id for e in entries] == ["1", "2"]

    def test_duplicate_id(self):
        text = "# ::id s1\n(a / x)\n\n# ::id s1\n(b / y)\n"
        with pytest.raises(FormatError, match="duplicate corpus id"):
            read_amr_corpus(text)

    def test_parse_error_names_entry(self):
        with pytest.raises(FormatError, match="entry 'bad'"):
            read_amr_corpus("# ::id bad\n(a / x\n")

    def test_comment_only_entry_rejected(self):
        with pytest.raises(FormatError, match="missing PENMAN block"):
            read_amr_corpus("# ::id s1\n\n")

    def test_empty_input(self):
        assert read_amr_corpus("") == []

    def test_write_round_trip(self):
        entries = read_amr_corpus(AMR_TWO)
        text = write_amr_corpus(entries)
        again = read_amr_corpus(text)
        assert [e.id for e in again] == ["s1", "s2"]
        assert again[0].graph == entries[0].graph
        # canonical output is stable
        assert write_amr_corpus(again) == text

    def test_write_empty(self):
        assert write_amr_corpus([]) == ""

    def test_entry_without_snt(self):
        (entry,) = read_amr_corpus("# ::id s1\n(a / x)\n")
        assert entry.snt == ""
        assert "::snt" not in write_amr_corpus([entry])


EMB = """3 2
makan 0.5 -1.25
kue 1.0 2.0
tidur 0.0 3.5
"""


class TestEmbeddings:
    def test_header_skipped(self):
        table = load_embeddings(EMB)
        assert table.dimension == 2
        assert len(table) == 3
        assert np.array_equal(table.embed("makan"), [0.5, -1.25])

    def test_headerless_file(self):
        table = load_embeddings("makan 0.5 -1.25\nkue 1.0 2.0\n")
        assert table.dimension == 2
        assert len(table) == 2

    def test_lowercase_fallback(self):
        table = load_embeddings(EMB)
        assert np.array_equal(table.embed("Makan"), [0.5, -1.25])

    def test_unknown_token_is_zero(self):
        table = load_embeddings(EMB)
        assert np.array_equal(table.embed("xyzzy"), [0.0, 0.0])

    def test_duplicate_token_overwrites(self):
        table = load_embeddings("a 1.0\na 2.0\n")
        assert np.array_equal(table.embed("a"), [2.0])

    def test_length_mismatch(self):
        with pytest.raises(FormatError, match="line 2.*'kue'.*length 1"):
            load_embeddings("makan 0.5 1.5\nkue 1.0\n")

    def test_non_numeric_component(self):
        with pytest.raises(FormatError, match="non-numeric.*'kue'"):
            load_embeddings("kue 1.0 x\n")

    def test_empty_file(self):
        with pytest.raises(FormatError, match="no vectors"):
            load_embeddings("")

    def test_table_validates_vector_shape(self):
        with pytest.raises(FormatError, match="length 1, expected 2"):
            EmbeddingTable(2, {"a": np.zeros(1)})


def test_amr_entry_fields():
    entry = AmrEntry(id="s1", snt="Aku tidur", graph=parse_penman("(t / tidur)"))
    assert entry.id == "s1"
