#!/usr/bin/env python3
"""Generate the committed mini corpus under data/mini/.

The corpus is thirty hand-annotated Indonesian sentences with simple,
regular structure: every content-word dependency is labeled through a fixed
deprel-to-role map, and function words (adpositions, determiners, "yang",
"dengan") only ever appear as leaves, so the three filter rules each have
pairs to remove without ever disconnecting a gold subtree. Gold graphs and
embeddings are derived here, independently of the library, which keeps the
fixture usable as an end-to-end oracle.

Running the script rewrites data/mini/mini.conllu, data/mini/mini-gold.amr,
and data/mini/embeddings.vec in place; they are committed, so a rerun
should produce no diff.
"""

import argparse
from pathlib import Path

import numpy as np

LABEL_BY_DEPREL = {
    "nsubj": "ARG0",
    "obj": "ARG1",
    "obl": "location",
    "obl:tmp": "time",
    "flat:name": "name",
    "amod": "mod",
    "advmod": "mod",
    "acl": "mod",
}

# Dependents with these deprels are annotation scaffolding, not content; the
# all-rules filter is expected to remove exactly these.
FUNCTION_DEPRELS = {"case", "mark", "det", "punct"}

EMBEDDING_DIM = 16
EMBEDDING_SEED = 42

# One row per token: (form, lemma, upos, head, deprel[, ner]).
SENTENCES = [
    ("s1", "Budi Santoso makan nasi .", [
        ("Budi", "Budi", "PROPN", 3, "nsubj", "PERSON"),
        ("Santoso", "Santoso", "PROPN", 1, "flat:name", "PERSON"),
        ("makan", "makan", "VERB", 0, "root"),
        ("nasi", "nasi", "NOUN", 3, "obj"),
        (".", ".", "PUNCT", 3, "punct"),
    ]),
    ("s2", "Ibu memasak ikan di dapur", [
        ("Ibu", "ibu", "NOUN", 2, "nsubj"),
        ("memasak", "masak", "VERB", 0, "root"),
        ("ikan", "ikan", "NOUN", 2, "obj"),
        ("di", "di", "ADP", 5, "case"),
        ("dapur", "dapur", "NOUN", 2, "obl"),
    ]),
    ("s3", "Adik minum susu pagi ini .", [
        ("Adik", "adik", "NOUN", 2, "nsubj"),
        ("minum", "minum", "VERB", 0, "root"),
        ("susu", "susu", "NOUN", 2, "obj"),
        ("pagi", "pagi", "NOUN", 2, "obl:tmp"),
        ("ini", "ini", "DET", 4, "det"),
        (".", ".", "PUNCT", 2, "punct"),
    ]),
    ("s4", "Ayah bekerja di kantor kemarin", [
        ("Ayah", "ayah", "NOUN", 2, "nsubj"),
        ("bekerja", "kerja", "VERB", 0, "root"),
        ("di", "di", "ADP", 4, "case"),
        ("kantor", "kantor", "NOUN", 2, "obl"),
        ("kemarin", "kemarin", "NOUN", 2, "obl:tmp"),
    ]),
    ("s5", "Siti Aminah membaca buku baru .", [
        ("Siti", "Siti", "PROPN", 3, "nsubj", "PERSON"),
        ("Aminah", "Aminah", "PROPN", 1, "flat:name", "PERSON"),
        ("membaca", "baca", "VERB", 0, "root"),
        ("buku", "buku", "NOUN", 3, "obj"),
        ("baru", "baru", "ADJ", 4, "amod"),
        (".", ".", "PUNCT", 3, "punct"),
    ]),
    ("s6", "Guru mengajar siswa di sekolah", [
        ("Guru", "guru", "NOUN", 2, "nsubj"),
        ("mengajar", "ajar", "VERB", 0, "root"),
        ("siswa", "siswa", "NOUN", 2, "obj"),
        ("di", "di", "ADP", 5, "case"),
        ("sekolah", "sekolah", "NOUN", 2, "obl"),
    ]),
    ("s7", "Kakak menulis surat dengan rapi", [
        ("Kakak", "kakak", "NOUN", 2, "nsubj"),
        ("menulis", "tulis", "VERB", 0, "root"),
        ("surat", "surat", "NOUN", 2, "obj"),
        ("dengan", "dengan", "SCONJ", 5, "case"),
        ("rapi", "rapi", "ADJ", 2, "advmod"),
    ]),
    ("s8", "Andi Wijaya pergi ke pasar .", [
        ("Andi", "Andi", "PROPN", 3, "nsubj", "PERSON"),
        ("Wijaya", "Wijaya", "PROPN", 1, "flat:name", "PERSON"),
        ("pergi", "pergi", "VERB", 0, "root"),
        ("ke", "ke", "ADP", 5, "case"),
        ("pasar", "pasar", "NOUN", 3, "obl"),
        (".", ".", "PUNCT", 3, "punct"),
    ]),
    ("s9", "Petani datang dari desa kemarin", [
        ("Petani", "petani", "NOUN", 2, "nsubj"),
        ("datang", "datang", "VERB", 0, "root"),
        ("dari", "dari", "ADP", 4, "case"),
        ("desa", "desa", "NOUN", 2, "obl"),
        ("kemarin", "kemarin", "NOUN", 2, "obl:tmp"),
    ]),
    ("s10", "Dewi Lestari menonton film malam ini", [
        ("Dewi", "Dewi", "PROPN", 3, "nsubj", "PERSON"),
        ("Lestari", "Lestari", "PROPN", 1, "flat:name", "PERSON"),
        ("menonton", "tonton", "VERB", 0, "root"),
        ("film", "film", "NOUN", 3, "obj"),
        ("malam", "malam", "NOUN", 3, "obl:tmp"),
        ("ini", "ini", "DET", 5, "det"),
    ]),
    ("s11", "Anak bermain bola di taman .", [
        ("Anak", "anak", "NOUN", 2, "nsubj"),
        ("bermain", "main", "VERB", 0, "root"),
        ("bola", "bola", "NOUN", 2, "obj"),
        ("di", "di", "ADP", 5, "case"),
        ("taman", "taman", "NOUN", 2, "obl"),
        (".", ".", "PUNCT", 2, "punct"),
    ]),
    ("s12", "Ibu menjahit baju merah dengan rapi", [
        ("Ibu", "ibu", "NOUN", 2, "nsubj"),
        ("menjahit", "jahit", "VERB", 0, "root"),
        ("baju", "baju", "NOUN", 2, "obj"),
        ("merah", "merah", "ADJ", 3, "amod"),
        ("dengan", "dengan", "ADP", 6, "case"),
        ("rapi", "rapi", "ADJ", 2, "advmod"),
    ]),
    ("s13", "Dokter datang ke rumah sore ini .", [
        ("Dokter", "dokter", "NOUN", 2, "nsubj"),
        ("datang", "datang", "VERB", 0, "root"),
        ("ke", "ke", "ADP", 4, "case"),
        ("rumah", "rumah", "NOUN", 2, "obl"),
        ("sore", "sore", "NOUN", 2, "obl:tmp"),
        ("ini", "ini", "DET", 5, "det"),
        (".", ".", "PUNCT", 2, "punct"),
    ]),
    ("s14", "Rina Putri menyanyi dengan keras", [
        ("Rina", "Rina", "PROPN", 3, "nsubj", "PERSON"),
        ("Putri", "Putri", "PROPN", 1, "flat:name", "PERSON"),
        ("menyanyi", "nyanyi", "VERB", 0, "root"),
        ("dengan", "dengan", "SCONJ", 5, "case"),
        ("keras", "keras", "ADJ", 3, "advmod"),
    ]),
    ("s15", "Kakak membeli kue enak di pasar", [
        ("Kakak", "kakak", "NOUN", 2, "nsubj"),
        ("membeli", "beli", "VERB", 0, "root"),
        ("kue", "kue", "NOUN", 2, "obj"),
        ("enak", "enak", "ADJ", 3, "amod"),
        ("di", "di", "ADP", 6, "case"),
        ("pasar", "pasar", "NOUN", 2, "obl"),
    ]),
    ("s16", "Adik tidur di kamar siang", [
        ("Adik", "adik", "NOUN", 2, "nsubj"),
        ("tidur", "tidur", "VERB", 0, "root"),
        ("di", "di", "ADP", 4, "case"),
        ("kamar", "kamar", "NOUN", 2, "obl"),
        ("siang", "siang", "NOUN", 2, "obl:tmp"),
    ]),
    ("s17", "Agus Salim menjual sayur segar .", [
        ("Agus", "Agus", "PROPN", 3, "nsubj", "PERSON"),
        ("Salim", "Salim", "PROPN", 1, "flat:name", "PERSON"),
        ("menjual", "jual", "VERB", 0, "root"),
        ("sayur", "sayur", "NOUN", 3, "obj"),
        ("segar", "segar", "ADJ", 4, "amod"),
        (".", ".", "PUNCT", 3, "punct"),
    ]),
    ("s18", "Ayah minum kopi panas pagi", [
        ("Ayah", "ayah", "NOUN", 2, "nsubj"),
        ("minum", "minum", "VERB", 0, "root"),
        ("kopi", "kopi", "NOUN", 2, "obj"),
        ("panas", "panas", "ADJ", 3, "amod"),
        ("pagi", "pagi", "NOUN", 2, "obl:tmp"),
    ]),
    ("s19", "Siswa yang rajin membaca buku di kelas", [
        ("Siswa", "siswa", "NOUN", 4, "nsubj"),
        ("yang", "yang", "PRON", 3, "mark"),
        ("rajin", "rajin", "ADJ", 1, "acl"),
        ("membaca", "baca", "VERB", 0, "root"),
        ("buku", "buku", "NOUN", 4, "obj"),
        ("di", "di", "ADP", 7, "case"),
        ("kelas", "kelas", "NOUN", 4, "obl"),
    ]),
    ("s20", "Ibu membawa air ke dapur", [
        ("Ibu", "ibu", "NOUN", 2, "nsubj"),
        ("membawa", "bawa", "VERB", 0, "root"),
        ("air", "air", "NOUN", 2, "obj"),
        ("ke", "ke", "ADP", 5, "case"),
        ("dapur", "dapur", "NOUN", 2, "obl"),
    ]),
    ("s21", "Atlet berlari cepat kemarin .", [
        ("Atlet", "atlet", "NOUN", 2, "nsubj"),
        ("berlari", "lari", "VERB", 0, "root"),
        ("cepat", "cepat", "ADJ", 2, "advmod"),
        ("kemarin", "kemarin", "NOUN", 2, "obl:tmp"),
        (".", ".", "PUNCT", 2, "punct"),
    ]),
    ("s22", "Nenek mencuci baju itu di sungai", [
        ("Nenek", "nenek", "NOUN", 2, "nsubj"),
        ("mencuci", "cuci", "VERB", 0, "root"),
        ("baju", "baju", "NOUN", 2, "obj"),
        ("itu", "itu", "DET", 3, "det"),
        ("di", "di", "ADP", 6, "case"),
        ("sungai", "sungai", "NOUN", 2, "obl"),
    ]),
    ("s23", "Kakek membaca koran di teras pagi", [
        ("Kakek", "kakek", "NOUN", 2, "nsubj"),
        ("membaca", "baca", "VERB", 0, "root"),
        ("koran", "koran", "NOUN", 2, "obj"),
        ("di", "di", "ADP", 5, "case"),
        ("teras", "teras", "NOUN", 2, "obl"),
        ("pagi", "pagi", "NOUN", 2, "obl:tmp"),
    ]),
    ("s24", "Paman menanam padi di sawah .", [
        ("Paman", "paman", "NOUN", 2, "nsubj"),
        ("menanam", "tanam", "VERB", 0, "root"),
        ("padi", "padi", "NOUN", 2, "obj"),
        ("di", "di", "ADP", 5, "case"),
        ("sawah", "sawah", "NOUN", 2, "obl"),
        (".", ".", "PUNCT", 2, "punct"),
    ]),
    ("s25", "Bibi memotong roti di meja", [
        ("Bibi", "bibi", "NOUN", 2, "nsubj"),
        ("memotong", "potong", "VERB", 0, "root"),
        ("roti", "roti", "NOUN", 2, "obj"),
        ("di", "di", "ADP", 5, "case"),
        ("meja", "meja", "NOUN", 2, "obl"),
    ]),
    ("s26", "Mereka menonton wayang malam", [
        ("Mereka", "mereka", "PRON", 2, "nsubj"),
        ("menonton", "tonton", "VERB", 0, "root"),
        ("wayang", "wayang", "NOUN", 2, "obj"),
        ("malam", "malam", "NOUN", 2, "obl:tmp"),
    ]),
    ("s27", "Polisi berdiri di jalan .", [
        ("Polisi", "polisi", "NOUN", 2, "nsubj"),
        ("berdiri", "berdiri", "VERB", 0, "root"),
        ("di", "di", "ADP", 4, "case"),
        ("jalan", "jalan", "NOUN", 2, "obl"),
        (".", ".", "PUNCT", 2, "punct"),
    ]),
    ("s28", "Tukang memperbaiki sepeda tua dengan cepat", [
        ("Tukang", "tukang", "NOUN", 2, "nsubj"),
        ("memperbaiki", "perbaiki", "VERB", 0, "root"),
        ("sepeda", "sepeda", "NOUN", 2, "obj"),
        ("tua", "tua", "ADJ", 3, "amod"),
        ("dengan", "dengan", "SCONJ", 6, "case"),
        ("cepat", "cepat", "ADJ", 2, "advmod"),
    ]),
    ("s29", "Nelayan menangkap ikan besar dari laut", [
        ("Nelayan", "nelayan", "NOUN", 2, "nsubj"),
        ("menangkap", "tangkap", "VERB", 0, "root"),
        ("ikan", "ikan", "NOUN", 2, "obj"),
        ("besar", "besar", "ADJ", 3, "amod"),
        ("dari", "dari", "ADP", 6, "case"),
        ("laut", "laut", "NOUN", 2, "obl"),
    ]),
    ("s30", "Murid pulang dari sekolah sore .", [
        ("Murid", "murid", "NOUN", 2, "nsubj"),
        ("pulang", "pulang", "VERB", 0, "root"),
        ("dari", "dari", "ADP", 4, "case"),
        ("sekolah", "sekolah", "NOUN", 2, "obl"),
        ("sore", "sore", "NOUN", 2, "obl:tmp"),
        (".", ".", "PUNCT", 2, "punct"),
    ]),
]


def normalise(tokens):
    return [(t + ("O",))[:6] for t in tokens]


def check_sentence(sid, tokens):
    lemmas = [t[1] for t in tokens]
    assert len(set(lemmas)) == len(lemmas), f"{sid}: duplicate lemma"
    heads_of = {}
    for i, (_, _, _, head, deprel, _) in enumerate(tokens, start=1):
        assert 0 <= head <= len(tokens), f"{sid}: head out of range"
        assert (deprel == "root" or deprel in LABEL_BY_DEPREL
                or deprel in FUNCTION_DEPRELS), f"{sid}: unmapped deprel {deprel}"
        heads_of.setdefault(head, []).append(i)
    for i, (_, _, _, _, deprel, _) in enumerate(tokens, start=1):
        if deprel in FUNCTION_DEPRELS:
            assert i not in heads_of, f"{sid}: function token {i} has children"


def content_tokens(tokens):
    """Tokens that survive the all-rules filter, with original indices."""
    return [(i, t) for i, t in enumerate(tokens, start=1)
            if t[4] not in FUNCTION_DEPRELS]


def assign_variables(kept):
    variables = {}
    used = {}
    for index, (_, lemma, _, _, _, _) in kept:
        letter = lemma[0].lower()
        if not letter.isalpha():
            letter = "x"
        used[letter] = used.get(letter, 0) + 1
        variables[index] = letter if used[letter] == 1 else f"{letter}{used[letter]}"
    return variables


def render_gold(tokens):
    kept = content_tokens(tokens)
    variables = assign_variables(kept)
    children = {}
    root_index = None
    for index, (_, _, _, head, deprel, _) in kept:
        if head == 0:
            root_index = index
        else:
            children.setdefault(head, []).append((index, LABEL_BY_DEPREL[deprel]))
    assert root_index is not None
    lemma_of = {index: t[1] for index, t in kept}

    def render(index):
        parts = [f"({variables[index]} / {lemma_of[index]}"]
        for child, label in children.get(index, ()):
            parts.append(f" :{label} {render(child)}")
        return "".join(parts) + ")"

    return render(root_index)


def conllu_block(sid, text, tokens):
    lines = [f"# sent_id = {sid}", f"# text = {text}"]
    for i, (form, lemma, upos, head, deprel, ner) in enumerate(tokens, start=1):
        misc = f"NER={ner}" if ner != "O" else "_"
        lines.append("\t".join([str(i), form, lemma, upos, "_", "_",
                                str(head), deprel, "_", misc]))
    return "\n".join(lines)


def embedding_lines(sentences):
    lemmas = sorted({t[1].lower() for _, _, tokens in sentences
                     for t in tokens if t[2] != "PUNCT"})
    rng = np.random.default_rng(EMBEDDING_SEED)
    lines = [f"{len(lemmas)} {EMBEDDING_DIM}"]
    for lemma in lemmas:
        vec = rng.normal(size=EMBEDDING_DIM)
        lines.append(lemma + " " + " ".join(f"{x:.6f}" for x in vec))
    return lines


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="data/mini")
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    sentences = [(sid, text, normalise(tokens))
                 for sid, text, tokens in SENTENCES]
    label_counts = {}
    conllu = []
    amr = []
    for sid, text, tokens in sentences:
        check_sentence(sid, tokens)
        conllu.append(conllu_block(sid, text, tokens))
        amr.append(f"# ::id {sid}\n# ::snt {text}\n{render_gold(tokens)}")
        for _, t in content_tokens(tokens):
            if t[3] != 0:
                label = LABEL_BY_DEPREL[t[4]]
                label_counts[label] = label_counts.get(label, 0) + 1
    for label, count in sorted(label_counts.items()):
        assert count >= 5, f"label {label} has only {count} examples"

    (out / "mini.conllu").write_text("\n\n".join(conllu) + "\n", encoding="utf-8")
    (out / "mini-gold.amr").write_text("\n\n".join(amr) + "\n", encoding="utf-8")
    (out / "embeddings.vec").write_text("\n".join(embedding_lines(sentences)) + "\n",
                                        encoding="utf-8")
    total = sum(label_counts.values())
    print(f"wrote {len(sentences)} sentences, {total} labeled edges to {out}")
    for label, count in sorted(label_counts.items()):
        print(f"  {label}\t{count}")


if __name__ == "__main__":
    main()
