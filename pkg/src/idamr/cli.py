"""Command-line surface for the dependency-to-AMR pipeline.

Subcommands: train, predict, eval smatch|pairs, ablate-rules,
ablate-features, grid. Every report prints the seed it ran with, floats are
fixed to six decimals, and identical invocations produce byte-identical
files and stdout, so runs can be diffed directly.

Exit codes: 0 success, 1 input or format error, 2 configuration error.
"""

import argparse
import itertools
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from idamr.construct import LabeledPair, build_graph
from idamr.errors import ConfigError, FormatError, GraphError
from idamr.features import (FEATURE_COMBINATIONS, FeatureConfig,
                            combine_features, fit_encoder, match_pairs,
                            unmatched_gold_edges)
from idamr.features import combination_label as feature_label
from idamr.ingest import (AmrEntry, load_embeddings, read_amr_corpus,
                          read_conllu, write_amr_corpus)
from idamr.metrics import (DEFAULT_RESTARTS, PairScore, pair_f1,
                           smatch_per_sentence)
from idamr.metrics import SmatchScore
from idamr.models import (Dataset, GbtParams, TreeParams, cross_validate,
                          load_model, save_model, train_gbt, train_tree)
from idamr.pairs import (RULE_COMBINATIONS, FilterRuleSet, apply_filter,
                         extract_pairs)
from idamr.pairs import combination_label as rule_label


@dataclass
class RunConfig:
    """Resolved command configuration; one flat record for every subcommand."""
    command: str
    metric: str = None
    conllu: str = None
    amr: str = None
    pred: str = None
    emb: str = None
    model: str = None
    out: str = None
    rules: str = "det,prep,sconj"
    features: str = "lex,syn,pos"
    algo: str = "dt"
    max_depth: int = 8
    criterion: str = "gini"
    lr: float = 0.1
    rounds: int = 100
    k: int = None
    seed: int = 0
    restarts: int = DEFAULT_RESTARTS
    grid_file: str = None
    report_json: str = None

    @classmethod
    def from_args(cls, args):
        fields = {k: v for k, v in vars(args).items() if k != "func"}
        return cls(**fields)


def _fmt(x):
    return f"{x:.6f}"


def _read_text(path):
    return Path(path).read_text(encoding="utf-8")


def _write_text(path, text):
    Path(path).write_text(text, encoding="utf-8")


def _write_report(cfg, doc):
    if cfg.report_json:
        _write_text(cfg.report_json,
                    json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _load_aligned(cfg):
    """Sentences and gold entries, paired positionally with matching ids."""
    sentences = read_conllu(_read_text(cfg.conllu))
    entries = read_amr_corpus(_read_text(cfg.amr))
    if len(sentences) != len(entries):
        raise FormatError(
            f"{cfg.conllu} has {len(sentences)} sentences but {cfg.amr} "
            f"has {len(entries)} entries")
    for i, (s, e) in enumerate(zip(sentences, entries)):
        if s.id != e.id:
            raise FormatError(
                f"entry {i + 1}: sentence id {s.id!r} does not match "
                f"gold id {e.id!r}")
    return list(zip(sentences, entries))


def _harvest(aligned, ruleset):
    """Filtered pairs matched against gold edges, over the whole corpus."""
    examples = []
    unmatched = {}
    pairs_total = 0
    pairs_kept = 0
    for sentence, entry in aligned:
        all_pairs = extract_pairs(sentence)
        kept = apply_filter(all_pairs, ruleset)
        pairs_total += len(all_pairs)
        pairs_kept += len(kept)
        rows = combine_features(sentence, kept)
        examples.extend(match_pairs(rows, entry.graph))
        missing = unmatched_gold_edges(rows, entry.graph)
        if missing:
            unmatched[sentence.id] = len(missing)
    return examples, pairs_total, pairs_kept, unmatched


def _tree_params(cfg, overrides=None):
    kwargs = {"max_depth": cfg.max_depth, "criterion": cfg.criterion}
    kwargs.update(overrides or {})
    return TreeParams(**kwargs)


def _gbt_params(cfg, overrides=None):
    kwargs = {"learning_rate": cfg.lr, "max_depth": cfg.max_depth,
              "n_rounds": cfg.rounds}
    kwargs.update(overrides or {})
    return GbtParams(**kwargs)


def _score_doc(score):
    return asdict(score)


def _score_line(name, score):
    return "\t".join([
        name, _fmt(score.precision), _fmt(score.recall), _fmt(score.f1),
        str(score.matched), str(score.predicted_total), str(score.gold_total)])


def cmd_train(cfg):
    ruleset = FilterRuleSet.from_names(cfg.rules)
    fconfig = FeatureConfig.from_names(cfg.features)
    embeddings = load_embeddings(_read_text(cfg.emb)) if cfg.emb else None
    aligned = _load_aligned(cfg)
    examples, pairs_total, pairs_kept, unmatched = _harvest(aligned, ruleset)
    encoder = fit_encoder(examples, fconfig, embeddings)
    dataset = Dataset.from_examples(examples, encoder)
    if cfg.algo == "dt":
        params = _tree_params(cfg)
        model = train_tree(dataset, params, seed=cfg.seed)
        param_lines = [("max_depth", params.max_depth),
                       ("criterion", params.criterion)]
    else:
        params = _gbt_params(cfg)
        model = train_gbt(dataset, params, seed=cfg.seed)
        param_lines = [("learning_rate", params.learning_rate),
                       ("max_depth", params.max_depth),
                       ("n_rounds", params.n_rounds)]
    save_model(cfg.model, model, encoder, rules=ruleset)

    lines = [
        ("seed", cfg.seed),
        ("sentences", len(aligned)),
        ("pairs_total", pairs_total),
        ("pairs_kept", pairs_kept),
        ("examples", len(examples)),
        ("unmatched_gold_edges", sum(unmatched.values())),
        ("classes", ",".join(dataset.classes)),
        ("rules", rule_label(ruleset.enabled_names())),
        ("features", feature_label(fconfig.categories)),
        ("feature_dim", encoder.dimension),
        ("algorithm", cfg.algo),
    ] + param_lines + [("model_file", cfg.model)]
    report = None
    if cfg.k is not None:
        report = cross_validate(dataset, params, cfg.k, seed=cfg.seed)
        lines.append(("cv_k", report.k))
        lines.append(("cv_stratified", "true" if report.stratified else "false"))
        for i, (acc, f1) in enumerate(zip(report.fold_accuracy,
                                          report.fold_f1_macro)):
            lines.append((f"cv_fold_{i + 1}", f"{_fmt(acc)}\t{_fmt(f1)}"))
        lines.append(("cv_mean_accuracy", _fmt(report.mean_accuracy)))
        lines.append(("cv_mean_f1_macro", _fmt(report.mean_f1_macro)))
    for key, value in lines:
        print(f"{key}\t{value}")

    doc = {
        "seed": cfg.seed,
        "sentences": len(aligned),
        "pairs_total": pairs_total,
        "pairs_kept": pairs_kept,
        "examples": len(examples),
        "unmatched_gold_edges": unmatched,
        "classes": list(dataset.classes),
        "rules": rule_label(ruleset.enabled_names()),
        "features": feature_label(fconfig.categories),
        "feature_dim": encoder.dimension,
        "algorithm": cfg.algo,
        "params": dict(param_lines),
        "model_file": cfg.model,
        "cv": None if report is None else {
            "k": report.k,
            "stratified": report.stratified,
            "fold_accuracy": report.fold_accuracy,
            "fold_f1_macro": report.fold_f1_macro,
            "mean_accuracy": report.mean_accuracy,
            "mean_f1_macro": report.mean_f1_macro,
        },
    }
    _write_report(cfg, doc)
    return 0


def cmd_predict(cfg):
    embeddings = load_embeddings(_read_text(cfg.emb)) if cfg.emb else None
    model, encoder, rules_doc = load_model(cfg.model, embeddings=embeddings)
    if "lexical" in encoder.config and embeddings is None:
        raise ConfigError(
            "this model was trained with lexical features; pass --emb with "
            "the embedding file used at training time")
    ruleset = (FilterRuleSet.from_json(rules_doc)
               if rules_doc is not None else FilterRuleSet.none())
    sentences = read_conllu(_read_text(cfg.conllu))
    entries = []
    for sentence in sentences:
        kept = apply_filter(extract_pairs(sentence), ruleset)
        rows = combine_features(sentence, kept)
        labeled = []
        if rows:
            matrix = encoder.encode_all(rows)
            indices, probs = model.predict_batch(matrix)
            for j, pair in enumerate(kept):
                labeled.append(LabeledPair(
                    pair=pair,
                    label=model.classes[indices[j]],
                    confidence=float(probs[j, indices[j]])))
        graph = build_graph(labeled, sentence)
        entries.append(AmrEntry(id=sentence.id, snt=sentence.text, graph=graph))
    _write_text(cfg.out, write_amr_corpus(entries))
    return 0


def cmd_eval(cfg):
    if cfg.metric == "smatch":
        return _eval_smatch(cfg)
    return _eval_pairs(cfg)


def _eval_smatch(cfg):
    if not cfg.pred:
        raise ConfigError("eval smatch needs --pred (predictions file)")
    preds = read_amr_corpus(_read_text(cfg.pred))
    golds = read_amr_corpus(_read_text(cfg.amr))
    scores = smatch_per_sentence(preds, golds, restarts=cfg.restarts,
                                 seed=cfg.seed)
    corpus = SmatchScore.from_counts(
        sum(s.matched for s in scores),
        sum(s.predicted_total for s in scores),
        sum(s.gold_total for s in scores))
    print(f"# seed\t{cfg.seed}")
    print(f"# restarts\t{cfg.restarts}")
    for entry, score in zip(preds, scores):
        print(_score_line(entry.id, score))
    print(_score_line("corpus", corpus))
    _write_report(cfg, {
        "seed": cfg.seed,
        "restarts": cfg.restarts,
        "sentences": [dict(_score_doc(s), id=e.id)
                      for e, s in zip(preds, scores)],
        "corpus": _score_doc(corpus),
    })
    return 0


def _sentence_pair_sets(sentence, entry, ruleset):
    kept = apply_filter(extract_pairs(sentence), ruleset)
    pred = [(p.parent.lemma, p.child.lemma) for p in kept]
    gold = [(entry.graph.concept(e.source), entry.graph.concept(e.target))
            for e in entry.graph.edges]
    return pred, gold


def _eval_pairs(cfg):
    if not cfg.conllu:
        raise ConfigError("eval pairs needs --conllu (sentence file)")
    ruleset = FilterRuleSet.from_names(cfg.rules)
    aligned = _load_aligned(cfg)
    scores = []
    for sentence, entry in aligned:
        pred, gold = _sentence_pair_sets(sentence, entry, ruleset)
        scores.append((sentence.id, pair_f1(pred, gold)))
    corpus = PairScore.from_counts(
        sum(s.matched for _, s in scores),
        sum(s.predicted_total for _, s in scores),
        sum(s.gold_total for _, s in scores))
    print(f"# seed\t{cfg.seed}")
    print(f"# rules\t{rule_label(ruleset.enabled_names())}")
    for sid, score in scores:
        print(_score_line(sid, score))
    print(_score_line("corpus", corpus))
    _write_report(cfg, {
        "seed": cfg.seed,
        "rules": rule_label(ruleset.enabled_names()),
        "sentences": [dict(_score_doc(s), id=sid) for sid, s in scores],
        "corpus": _score_doc(corpus),
    })
    return 0


def cmd_ablate_rules(cfg):
    aligned = _load_aligned(cfg)
    rows = []
    for combo in RULE_COMBINATIONS:
        ruleset = FilterRuleSet.default(enabled=combo)
        matched = predicted = gold_total = 0
        for sentence, entry in aligned:
            pred, gold = _sentence_pair_sets(sentence, entry, ruleset)
            score = pair_f1(pred, gold)
            matched += score.matched
            predicted += score.predicted_total
            gold_total += score.gold_total
        rows.append((rule_label(combo),
                     PairScore.from_counts(matched, predicted, gold_total)))
    print(f"# seed\t{cfg.seed}")
    print("rules\tprecision\trecall\tf1\tmatched\tpredicted\tgold")
    for label, score in rows:
        print(_score_line(label, score))
    _write_report(cfg, {
        "seed": cfg.seed,
        "rows": [dict(_score_doc(s), rules=label) for label, s in rows],
    })
    return 0


def cmd_ablate_features(cfg):
    ruleset = FilterRuleSet.from_names(cfg.rules)
    embeddings = load_embeddings(_read_text(cfg.emb)) if cfg.emb else None
    aligned = _load_aligned(cfg)
    examples, _, _, _ = _harvest(aligned, ruleset)
    params = _tree_params(cfg)
    rows = []
    for combo in FEATURE_COMBINATIONS:
        fconfig = FeatureConfig(categories=frozenset(combo))
        encoder = fit_encoder(examples, fconfig, embeddings)
        dataset = Dataset.from_examples(examples, encoder)
        report = cross_validate(dataset, params, cfg.k, seed=cfg.seed)
        rows.append((feature_label(combo), report))
    print(f"# seed\t{cfg.seed}")
    print(f"# k\t{cfg.k}")
    print(f"# max_depth\t{params.max_depth}")
    print(f"# criterion\t{params.criterion}")
    print("features\taccuracy\tf1_macro")
    for label, report in rows:
        print(f"{label}\t{_fmt(report.mean_accuracy)}\t{_fmt(report.mean_f1_macro)}")
    _write_report(cfg, {
        "seed": cfg.seed,
        "k": cfg.k,
        "max_depth": params.max_depth,
        "criterion": params.criterion,
        "rows": [{
            "features": label,
            "accuracy": report.mean_accuracy,
            "f1_macro": report.mean_f1_macro,
            "fold_accuracy": report.fold_accuracy,
            "fold_f1_macro": report.fold_f1_macro,
            "stratified": report.stratified,
        } for label, report in rows],
    })
    return 0


_GRID_PARAMS = {
    "dt": ("max_depth", "criterion", "min_samples_split"),
    "gbt": ("learning_rate", "max_depth", "n_rounds", "l2_leaf_penalty"),
}


def _read_grid(cfg):
    try:
        doc = json.loads(_read_text(cfg.grid_file))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"grid file {cfg.grid_file}: {exc}") from exc
    if not isinstance(doc, dict) or not doc:
        raise ConfigError("grid file must be a non-empty JSON object "
                          "mapping parameter names to value lists")
    allowed = _GRID_PARAMS[cfg.algo]
    for key, values in doc.items():
        if key not in allowed:
            raise ConfigError(
                f"grid parameter {key!r} is not valid for --algo {cfg.algo} "
                f"(expected one of {', '.join(allowed)})")
        if not isinstance(values, list) or not values:
            raise ConfigError(f"grid parameter {key!r} needs a non-empty list")
        for v in values:
            if key == "criterion":
                if not isinstance(v, str):
                    raise ConfigError("criterion values must be strings")
            elif isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"values for {key!r} must be numbers")
    names = sorted(doc)
    return [dict(zip(names, cell))
            for cell in itertools.product(*(doc[n] for n in names))]


def cmd_grid(cfg):
    cells = _read_grid(cfg)
    ruleset = FilterRuleSet.from_names(cfg.rules)
    fconfig = FeatureConfig.from_names(cfg.features)
    embeddings = load_embeddings(_read_text(cfg.emb)) if cfg.emb else None
    aligned = _load_aligned(cfg)
    examples, _, _, _ = _harvest(aligned, ruleset)
    encoder = fit_encoder(examples, fconfig, embeddings)
    dataset = Dataset.from_examples(examples, encoder)
    rows = []
    for cell in cells:
        if cfg.algo == "dt":
            params = _tree_params(cfg, overrides=cell)
        else:
            params = _gbt_params(cfg, overrides=cell)
        report = cross_validate(dataset, params, cfg.k, seed=cfg.seed)
        rows.append((cell, report))
    ranked = sorted(rows, key=lambda row: -row[1].mean_f1_macro)
    print(f"# seed\t{cfg.seed}")
    print(f"# k\t{cfg.k}")
    print(f"# algo\t{cfg.algo}")
    print("rank\tparams\taccuracy\tf1_macro")
    for rank, (cell, report) in enumerate(ranked, start=1):
        spec = ",".join(f"{k}={v}" for k, v in sorted(cell.items()))
        print(f"{rank}\t{spec}\t{_fmt(report.mean_accuracy)}"
              f"\t{_fmt(report.mean_f1_macro)}")
    _write_report(cfg, {
        "seed": cfg.seed,
        "k": cfg.k,
        "algo": cfg.algo,
        "rows": [{
            "rank": rank,
            "params": cell,
            "accuracy": report.mean_accuracy,
            "f1_macro": report.mean_f1_macro,
        } for rank, (cell, report) in enumerate(ranked, start=1)],
    })
    return 0


def _add_io_flags(p, conllu=False, amr=False):
    if conllu:
        p.add_argument("--conllu", required=True,
                       help="extended CoNLL-U sentence file")
    if amr:
        p.add_argument("--amr", required=True, help="gold AMR corpus file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="idamr",
        description="Dependency-based AMR parsing for Indonesian: rule "
                    "filtering, supervised edge labeling, tree construction, "
                    "and SMATCH evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train an edge label classifier")
    _add_io_flags(p, conllu=True, amr=True)
    p.add_argument("--model", required=True, help="model file to write")
    p.add_argument("--emb", help="word embedding file (text format)")
    p.add_argument("--rules", default="det,prep,sconj",
                   help="filter rules: comma list of det,prep,sconj or 'none'")
    p.add_argument("--features", default="lex,syn,pos",
                   help="feature categories: comma list of lex,syn,pos")
    p.add_argument("--algo", choices=("dt", "gbt"), default="dt")
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--criterion", choices=("gini", "entropy"), default="gini")
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--k", type=int, default=None,
                   help="when given, also run k-fold cross validation")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-json", help="write a JSON report here")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="parse sentences into AMR graphs")
    _add_io_flags(p, conllu=True)
    p.add_argument("--model", required=True, help="trained model file")
    p.add_argument("--emb", help="embedding file (needed for lexical models)")
    p.add_argument("--out", required=True, help="AMR corpus file to write")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="score predictions or surviving pairs")
    p.add_argument("metric", choices=("smatch", "pairs"))
    p.add_argument("--pred", help="predictions AMR file (smatch)")
    p.add_argument("--amr", required=True, help="gold AMR corpus file")
    p.add_argument("--conllu", help="sentence file (pairs)")
    p.add_argument("--rules", default="det,prep,sconj")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ablate-rules",
                       help="pair scores for all 8 rule combinations")
    _add_io_flags(p, conllu=True, amr=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-json")
    p.set_defaults(func=cmd_ablate_rules)

    p = sub.add_parser("ablate-features",
                       help="cross-validated scores for the 5 feature "
                            "category combinations")
    _add_io_flags(p, conllu=True, amr=True)
    p.add_argument("--emb", help="word embedding file")
    p.add_argument("--rules", default="det,prep,sconj")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-depth", type=int, default=12)
    p.add_argument("--criterion", choices=("gini", "entropy"), default="gini")
    p.add_argument("--report-json")
    p.set_defaults(func=cmd_ablate_features)

    p = sub.add_parser("grid", help="hyperparameter sweep ranked by F1-macro")
    _add_io_flags(p, conllu=True, amr=True)
    p.add_argument("--grid-file", required=True,
                   help="JSON object: parameter name -> list of values")
    p.add_argument("--algo", choices=("dt", "gbt"), default="dt")
    p.add_argument("--emb", help="word embedding file")
    p.add_argument("--rules", default="det,prep,sconj")
    p.add_argument("--features", default="lex,syn,pos")
    p.add_argument("--max-depth", type=int, default=8)
    p.add_argument("--criterion", choices=("gini", "entropy"), default="gini")
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-json")
    p.set_defaults(func=cmd_grid)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig.from_args(args)
    func = args.func
    try:
        return func(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
