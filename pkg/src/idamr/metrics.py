"""Evaluation metrics: SMATCH over AMR graphs, dependency-pair F1, F1-macro.

SMATCH scores the triple overlap between two graphs under the best injective
mapping of predicted variables to gold variables. The practical scorer is a
seeded hill climber with restarts; smatch_oracle does exhaustive search over
all maximal injective mappings and exists to validate the climber on small
graphs (match count never decreases when a mapping is extended, so some
maximal mapping attains the optimum).
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np

from idamr.errors import FormatError
from idamr.graph import to_triples

DEFAULT_RESTARTS = 4
DEFAULT_SEED = 0

_ORACLE_VAR_LIMIT = 8


def _prf(matched, predicted_total, gold_total):
    precision = matched / predicted_total if predicted_total else 0.0
    recall = matched / gold_total if gold_total else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall else 0.0)
    return precision, recall, f1


@dataclass(frozen=True)
class SmatchScore:
    matched: int
    predicted_total: int
    gold_total: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, matched, predicted_total, gold_total):
        p, r, f = _prf(matched, predicted_total, gold_total)
        return cls(matched=matched, predicted_total=predicted_total,
                   gold_total=gold_total, precision=p, recall=r, f1=f)


@dataclass(frozen=True)
class PairScore:
    matched: int
    predicted_total: int
    gold_total: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, matched, predicted_total, gold_total):
        p, r, f = _prf(matched, predicted_total, gold_total)
        return cls(matched=matched, predicted_total=predicted_total,
                   gold_total=gold_total, precision=p, recall=r, f1=f)


class _Matcher:
    """Counts matched triples for candidate variable mappings of one pair."""

    def __init__(self, pred, gold):
        pt = to_triples(pred)
        gt = to_triples(gold)
        self.pred_vars = [v for v, _ in pt.instances]
        self.gold_vars = [v for v, _ in gt.instances]
        self.pred_concepts = dict(pt.instances)
        self.gold_concepts = dict(gt.instances)
        self.pred_relations = pt.relations
        self.gold_relations = set(gt.relations)
        self.pred_top = pt.top
        self.gold_top = gt.top
        self.predicted_total = len(pt)
        self.gold_total = len(gt)

    def count(self, mapping):
        matched = 0
        for v, concept in self.pred_concepts.items():
            g = mapping.get(v)
            if g is not None and self.gold_concepts[g] == concept:
                matched += 1
        for label, s, t in self.pred_relations:
            gs = mapping.get(s)
            gt_ = mapping.get(t)
            if gs is not None and gt_ is not None \
                    and (label, gs, gt_) in self.gold_relations:
                matched += 1
        if mapping.get(self.pred_top) == self.gold_top:
            matched += 1
        return matched

    def score(self, matched):
        return SmatchScore.from_counts(matched, self.predicted_total,
                                       self.gold_total)


# In randomized starts, the chance that a variable with equal-concept
# candidates is still paired greedily. Occasionally skipping the pairing lets
# later starts escape optima that require an equal-concept pair to be split.
_GREEDY_KEEP = 0.8


def _initial_mapping(matcher, rng, randomize=False):
    """Pair equal concepts greedily, then distribute the leftovers over the
    remaining gold variables in seeded random order.

    The first start processes variables in first-occurrence order and always
    takes the first matching candidate, so it is the same for every seed.
    Randomized starts (used by every restart after the first) shuffle the
    processing order, pick among equal-concept candidates uniformly, and
    defer a variable to the random pool with probability 1 - _GREEDY_KEEP;
    without that, graphs whose variables all have concept matches would get
    the identical start on every restart.
    """
    mapping = {}
    used = set()
    deferred = []
    variables = list(matcher.pred_vars)
    if randomize:
        variables = [variables[i] for i in rng.permutation(len(variables))]
    for v in variables:
        concept = matcher.pred_concepts[v]
        candidates = [g for g in matcher.gold_vars
                      if g not in used and matcher.gold_concepts[g] == concept]
        if candidates and (not randomize or rng.random() < _GREEDY_KEEP):
            g = (candidates[int(rng.integers(len(candidates)))]
                 if randomize else candidates[0])
            mapping[v] = g
            used.add(g)
        else:
            deferred.append(v)
    free = [g for g in matcher.gold_vars if g not in used]
    order = rng.permutation(len(free)) if free else []
    shuffled = [free[i] for i in order]
    for i, v in enumerate(deferred):
        mapping[v] = shuffled[i] if i < len(shuffled) else None
    return mapping


def _climb(matcher, mapping):
    """Steepest-ascent local search: single reassignments (including
    unmapping) and pairwise swaps, until no move improves the count."""
    current = matcher.count(mapping)
    variables = matcher.pred_vars
    while True:
        best = current
        best_mapping = None
        used = {g for g in mapping.values() if g is not None}
        for v in variables:
            old = mapping[v]
            candidates = [g for g in matcher.gold_vars
                          if g not in used or g == old]
            if old is not None:
                candidates.append(None)
            for g in candidates:
                if g == old:
                    continue
                mapping[v] = g
                c = matcher.count(mapping)
                if c > best:
                    best = c
                    best_mapping = dict(mapping)
                mapping[v] = old
        for i, v1 in enumerate(variables):
            for v2 in variables[i + 1:]:
                if mapping[v1] == mapping[v2]:
                    continue
                mapping[v1], mapping[v2] = mapping[v2], mapping[v1]
                c = matcher.count(mapping)
                if c > best:
                    best = c
                    best_mapping = dict(mapping)
                mapping[v1], mapping[v2] = mapping[v2], mapping[v1]
        if best_mapping is None:
            return current, mapping
        mapping = best_mapping
        current = best


def smatch(pred, gold, restarts=DEFAULT_RESTARTS, seed=DEFAULT_SEED):
    """Hill-climbing SMATCH score, deterministic for a given seed.

    The first restart climbs from the deterministic greedy start; every
    later restart climbs from a randomized variant of it. All randomness
    comes from one seeded stream, so increasing `restarts` extends (never
    reshuffles) the search. The best count over restarts wins; ties go to
    the earliest restart.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    matcher = _Matcher(pred, gold)
    rng = np.random.default_rng(seed)
    best = -1
    for attempt in range(restarts):
        mapping = _initial_mapping(matcher, rng, randomize=attempt > 0)
        count, _ = _climb(matcher, mapping)
        if count > best:
            best = count
    return matcher.score(best)


def _oracle_search(matcher, order, i, mapping, used):
    if i == len(order):
        return matcher.count(mapping)
    v = order[i]
    remaining_after = len(order) - i - 1
    free = [g for g in matcher.gold_vars if g not in used]
    best = -1
    for g in free:
        mapping[v] = g
        used.add(g)
        best = max(best, _oracle_search(matcher, order, i + 1, mapping, used))
        used.discard(g)
    # Leave v unmapped only when the rest can still absorb every free gold
    # variable; anything sparser is dominated by some maximal extension.
    if remaining_after >= len(free):
        mapping[v] = None
        best = max(best, _oracle_search(matcher, order, i + 1, mapping, used))
    del mapping[v]
    return best


def smatch_oracle(pred, gold):
    """Exact SMATCH by exhaustive mapping search; guarded to small graphs."""
    matcher = _Matcher(pred, gold)
    if min(len(matcher.pred_vars), len(matcher.gold_vars)) > _ORACLE_VAR_LIMIT:
        raise ValueError(
            f"exhaustive search is limited to graphs where either side has "
            f"at most {_ORACLE_VAR_LIMIT} variables")
    best = _oracle_search(matcher, matcher.pred_vars, 0, {}, set())
    return matcher.score(best)


def smatch_per_sentence(preds, golds, restarts=DEFAULT_RESTARTS,
                        seed=DEFAULT_SEED):
    """Score aligned prediction/gold corpora entry by entry.

    Both arguments are AmrEntry lists; they must have equal length and
    pairwise equal ids.
    """
    if len(preds) != len(golds):
        raise FormatError(
            f"corpora differ in length: {len(preds)} predictions "
            f"vs {len(golds)} gold entries")
    scores = []
    for i, (p, g) in enumerate(zip(preds, golds)):
        if p.id != g.id:
            raise FormatError(
                f"entry {i + 1}: prediction id {p.id!r} does not match "
                f"gold id {g.id!r}")
        scores.append(smatch(p.graph, g.graph, restarts=restarts, seed=seed))
    return scores


def corpus_smatch(preds, golds, restarts=DEFAULT_RESTARTS, seed=DEFAULT_SEED):
    """Micro-aggregated corpus SMATCH: triple counts are summed over all
    sentences before the precision/recall/F1 formulas are applied once."""
    scores = smatch_per_sentence(preds, golds, restarts=restarts, seed=seed)
    return SmatchScore.from_counts(
        sum(s.matched for s in scores),
        sum(s.predicted_total for s in scores),
        sum(s.gold_total for s in scores))


def pair_f1(pred_pairs, gold_pairs):
    """Multiset precision/recall/F1 over directional (parent, child) lemma
    pairs; each gold pair is consumed at most once."""
    pred_counts = Counter(pred_pairs)
    gold_counts = Counter(gold_pairs)
    matched = sum((pred_counts & gold_counts).values())
    return PairScore.from_counts(matched,
                                 sum(pred_counts.values()),
                                 sum(gold_counts.values()))


def confusion_matrix(true, pred, n_classes):
    """Count matrix with gold classes on rows and predictions on columns."""
    true = np.asarray(true, dtype=np.int64)
    pred = np.asarray(pred, dtype=np.int64)
    cm = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(cm, (true, pred), 1)
    return cm


def accuracy(true, pred):
    true = np.asarray(true)
    pred = np.asarray(pred)
    if len(true) == 0:
        return 0.0
    return float(np.mean(true == pred))


def f1_macro(confusion):
    """Unweighted mean of per-class F1. A class with neither support nor
    predictions contributes 0, matching the strict zero-division rule."""
    cm = np.asarray(confusion, dtype=np.float64)
    tp = np.diag(cm)
    pred_totals = cm.sum(axis=0)
    gold_totals = cm.sum(axis=1)
    f1s = []
    for k in range(cm.shape[0]):
        p = tp[k] / pred_totals[k] if pred_totals[k] else 0.0
        r = tp[k] / gold_totals[k] if gold_totals[k] else 0.0
        f1s.append(2 * p * r / (p + r) if p + r else 0.0)
    return float(np.mean(f1s)) if f1s else 0.0
