"""Build the bundled lexicon and pin it in models.lock.

Entries come from two places: a curated table of function words and
worked-example vocabulary (listed first, so a surface with two uses keeps
the curated analysis), and every token of the parser's bundled corpus at
data/mini/mini.conllu, read through the idamr reader. Conflicting corpus
analyses for one surface are an error; fix the corpus or curate the word.

Run from the repository root:

    python3 annotator/tools/make_lexicon.py
"""

import hashlib
import json
import sys
from pathlib import Path

from idamr import read_conllu

ROOT = Path(__file__).resolve().parents[2]
LEXICON = ROOT / "annotator/src/idannotate/data/lexicon.json"
MANIFEST = ROOT / "annotator/models.lock"
CORPUS = ROOT / "data/mini/mini.conllu"

# surface -> (lemma, upos, ner). Curated entries: words whose corpus usage
# varies ("dengan" is tagged both ADP and SCONJ there, a one-entry lexicon
# has to pick), common function words the corpus happens to lack, and the
# worked-example vocabulary. "tertawa" is deliberately absent: unknown
# ter- forms pass through as their own lemma, which mirrors the upstream
# behavior this adapter stands in for.
EXTRA = {
    "di": ("di", "ADP", "O"),
    "ke": ("ke", "ADP", "O"),
    "dari": ("dari", "ADP", "O"),
    "pada": ("pada", "ADP", "O"),
    "untuk": ("untuk", "ADP", "O"),
    "oleh": ("oleh", "ADP", "O"),
    "dengan": ("dengan", "ADP", "O"),
    "yang": ("yang", "PRON", "O"),
    "itu": ("itu", "DET", "O"),
    "ini": ("ini", "DET", "O"),
    "dan": ("dan", "CCONJ", "O"),
    "atau": ("atau", "CCONJ", "O"),
    "karena": ("karena", "SCONJ", "O"),
    "ketika": ("ketika", "SCONJ", "O"),
    "jika": ("jika", "SCONJ", "O"),
    "tidak": ("tidak", "ADV", "O"),
    "sangat": ("sangat", "ADV", "O"),
    "juga": ("juga", "ADV", "O"),
    "adalah": ("adalah", "AUX", "O"),
    "aku": ("aku", "PRON", "O"),
    "saya": ("saya", "PRON", "O"),
    "dia": ("dia", "PRON", "O"),
    "kami": ("kami", "PRON", "O"),
    "mereka": ("mereka", "PRON", "O"),
    "ibu": ("ibu", "NOUN", "O"),
    "menjahit": ("jahit", "VERB", "O"),
    "baju": ("baju", "NOUN", "O"),
    "rapi": ("rapi", "ADJ", "O"),
    "kue": ("kue", "NOUN", "O"),
    "teras": ("teras", "NOUN", "O"),
    "kirim": ("kirim", "VERB", "O"),
    "makan": ("makan", "VERB", "O"),
}


def main():
    entries = {}
    for surface, (lemma, upos, ner) in EXTRA.items():
        entries[surface] = {"lemma": lemma, "upos": upos, "ner": ner}

    for sentence in read_conllu(CORPUS.read_text(encoding="utf-8")):
        for token in sentence.tokens:
            surface = token.form.lower()
            entry = {"lemma": token.lemma, "upos": token.upos,
                     "ner": token.ner}
            if surface in EXTRA:
                continue
            if surface in entries and entries[surface] != entry:
                sys.exit(f"{sentence.id}: conflicting analyses for "
                         f"{surface!r}: {entries[surface]} vs {entry}")
            entries[surface] = entry

    LEXICON.parent.mkdir(parents=True, exist_ok=True)
    data = (json.dumps(dict(sorted(entries.items())), sort_keys=True,
                       indent=1, ensure_ascii=False) + "\n").encode("utf-8")
    LEXICON.write_bytes(data)
    digest = hashlib.sha256(data).hexdigest()

    manifest = {
        "backend": "lexicon",
        "models": {
            "lexicon": {
                "resource": "idannotate/data/lexicon.json",
                "version": "1",
                "sha256": digest,
            },
            "stanza": {
                "version": "1.8.2",
                "lang": "id",
                "processors": "tokenize,mwt,pos,lemma,depparse",
            },
        },
    }
    MANIFEST.write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n",
        encoding="utf-8")
    print(f"{len(entries)} lexicon entries, sha256 {digest}")


if __name__ == "__main__":
    main()
