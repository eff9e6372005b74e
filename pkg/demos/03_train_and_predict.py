"""Train an edge-label classifier on the bundled mini corpus and rebuild
graphs for a few sentences.

This walks the full pipeline by hand instead of going through the CLI:
filter pairs, align them with gold edges, encode features, cross-validate,
train, then label each sentence's surviving pairs and assemble a tree.
"""

from pathlib import Path

from idamr import (RULE_NAMES, Dataset, FeatureConfig, FilterRuleSet,
                   LabeledPair, TreeParams, apply_filter, build_graph,
                   combine_features, cross_validate, extract_pairs,
                   fit_encoder, load_embeddings, match_pairs, predict,
                   read_amr_corpus, read_conllu, serialize_penman, smatch,
                   train_tree)
from idamr.pairs import combination_label

MINI = Path(__file__).resolve().parents[1] / "data" / "mini"


def main():
    sentences = read_conllu((MINI / "mini.conllu").read_text(encoding="utf-8"))
    gold = {e.id: e for e in read_amr_corpus(
        (MINI / "mini-gold.amr").read_text(encoding="utf-8"))}
    table = load_embeddings(
        (MINI / "embeddings.vec").read_text(encoding="utf-8"))
    print(f"{len(sentences)} sentences, embedding dim {table.dimension}")

    rules = FilterRuleSet.default()
    config = FeatureConfig.all()

    examples = []
    filtered = {}
    for sentence in sentences:
        pairs = apply_filter(extract_pairs(sentence), rules)
        filtered[sentence.id] = pairs
        rows = combine_features(sentence, pairs)
        examples.extend(match_pairs(rows, gold[sentence.id].graph))
    print(f"{len(examples)} labeled pairs after filtering "
          f"({combination_label(RULE_NAMES)})")

    encoder = fit_encoder(examples, config, embeddings=table)
    dataset = Dataset.from_examples(examples, encoder)
    print(f"feature dimension {dataset.dim}, classes: "
          f"{', '.join(dataset.classes)}")

    params = TreeParams(max_depth=12, criterion="gini")
    report = cross_validate(dataset, params, k=5, seed=0)
    print(f"5-fold accuracy {report.mean_accuracy:.6f}, "
          f"macro F1 {report.mean_f1_macro:.6f}")

    model = train_tree(dataset, params, seed=0)
    for sentence in sentences[:3]:
        labeled = []
        for pair in filtered[sentence.id]:
            (row,) = combine_features(sentence, [pair])
            idx, probs = predict(model, encoder.encode(row))
            labeled.append(LabeledPair(pair, dataset.classes[idx],
                                       float(probs[idx])))
        graph = build_graph(labeled, sentence)
        score = smatch(graph, gold[sentence.id].graph)
        print(f"\n{sentence.id} (smatch {score.f1:.6f}):")
        print(serialize_penman(graph))


if __name__ == "__main__":
    main()
