"""Adapter contract: annotated raw text must feed the parser end to end."""

from pathlib import Path

from idamr import read_amr_corpus, read_conllu, write_amr_corpus
from idamr.cli import main as idamr_main
from idannotate.cli import main as annotate_main

ROOT = Path(__file__).resolve().parents[2]
MANIFEST = str(ROOT / "annotator" / "models.lock")
MINI = ROOT / "data" / "mini"


def test_annotated_file_feeds_the_parser(tmp_path):
    sentences = read_conllu(
        (MINI / "mini.conllu").read_text(encoding="utf-8"))[:10]
    raw = tmp_path / "raw.txt"
    raw.write_text("".join(f"{s.id}\t{s.text}\n" for s in sentences),
                   encoding="utf-8")

    out = tmp_path / "annotated.conllu"
    assert annotate_main(["--in", str(raw), "--out", str(out),
                          "--manifest", MANIFEST]) == 0

    text = out.read_text(encoding="utf-8")
    parsed = read_conllu(text)
    assert len(parsed) == 10
    for block in text.strip().split("\n\n"):
        rows = [line.split("\t") for line in block.splitlines()
                if not line.startswith("#")]
        assert [row[6] for row in rows].count("0") == 1
    for sentence in parsed:
        assert sentence.root.head == 0

    gold = tmp_path / "gold.amr"
    entries = read_amr_corpus(
        (MINI / "mini-gold.amr").read_text(encoding="utf-8"))[:10]
    gold.write_text(write_amr_corpus(entries), encoding="utf-8")

    emb = str(MINI / "embeddings.vec")
    model = tmp_path / "model.json"
    pred = tmp_path / "pred.amr"
    assert idamr_main(["train", "--conllu", str(out), "--amr", str(gold),
                       "--model", str(model), "--emb", emb]) == 0
    assert idamr_main(["predict", "--conllu", str(out), "--model",
                       str(model), "--emb", emb, "--out", str(pred)]) == 0
    assert idamr_main(["eval", "smatch", "--pred", str(pred),
                       "--amr", str(gold)]) == 0
    assert len(read_amr_corpus(pred.read_text(encoding="utf-8"))) == 10
