"""Edge label classifiers: a CART decision tree and softmax gradient boosting.

Both share one exact split search: candidate thresholds are midpoints
between consecutive distinct sorted feature values, and ties are broken by
the lowest feature index, then the lowest threshold, so training is fully
deterministic for a given dataset and parameters. Models serialize to a
versioned JSON file that also embeds the fitted feature encoder; floats go
through repr so a reloaded model predicts bit-identically.
"""

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from idamr.errors import ConfigError, ModelFormatError
from idamr.features import FeatureEncoder
from idamr.metrics import accuracy as _accuracy
from idamr.metrics import confusion_matrix, f1_macro

MODEL_FORMAT = "idamr-model"
MODEL_VERSION = 1


@dataclass(frozen=True)
class TreeParams:
    max_depth: int
    criterion: str = "gini"
    min_samples_split: int = 2

    def __post_init__(self):
        if self.max_depth < 1:
            raise ConfigError("max_depth must be a positive integer")
        if self.criterion not in ("gini", "entropy"):
            raise ConfigError(f"unknown criterion {self.criterion!r}")
        if self.min_samples_split < 2:
            raise ConfigError("min_samples_split must be at least 2")


@dataclass(frozen=True)
class GbtParams:
    learning_rate: float = 0.1
    max_depth: int = 8
    n_rounds: int = 100
    l2_leaf_penalty: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.learning_rate <= 1.0:
            raise ConfigError("learning_rate must be in (0, 1]")
        if self.max_depth < 1:
            raise ConfigError("max_depth must be a positive integer")
        if self.n_rounds < 1:
            raise ConfigError("n_rounds must be a positive integer")
        if self.l2_leaf_penalty < 0.0:
            raise ConfigError("l2_leaf_penalty must be non-negative")


class Dataset:
    """Encoded design matrix, integer labels, and the class-name table."""

    def __init__(self, X, y, classes):
        self.X = np.asarray(X, dtype=np.float64)
        self.y = np.asarray(y, dtype=np.int64)
        self.classes = tuple(classes)
        if self.X.ndim != 2:
            raise ConfigError("X must be a 2-d array")
        if self.y.shape != (self.X.shape[0],):
            raise ConfigError("X and y row counts differ")
        if len(self.y) and (self.y.min() < 0 or self.y.max() >= len(self.classes)):
            raise ConfigError("label index outside the class table")

    @classmethod
    def from_examples(cls, examples, encoder):
        if not examples:
            raise ConfigError("no training examples")
        classes = tuple(sorted({ex.label for ex in examples}))
        index = {label: i for i, label in enumerate(classes)}
        X = encoder.encode_all([ex.features for ex in examples])
        y = np.array([index[ex.label] for ex in examples], dtype=np.int64)
        return cls(X, y, classes)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def dim(self):
        return self.X.shape[1]


def impurity(counts, criterion):
    """Gini or entropy (bits) of a class count vector."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    if criterion == "gini":
        return float(1.0 - np.sum(p * p))
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz)))


@dataclass
class _Split:
    feature: int
    threshold: float
    left: object
    right: object


@dataclass
class _Leaf:
    value: object  # class counts for classification, scalar weight for regression


def _column_orders(X):
    return np.argsort(X, axis=0, kind="mergesort")


def _pick_best(score, values):
    """Flatten a (boundaries x features) score grid feature-major and argmin.

    Scanning feature-major means equal scores resolve to the lowest feature
    index first and the lowest threshold second.
    """
    flat = score.T.reshape(-1)
    best = int(np.argmin(flat))
    if not np.isfinite(flat[best]):
        return None
    n_bound = score.shape[0]
    feature, boundary = divmod(best, n_bound)
    threshold = (values[boundary, feature] + values[boundary + 1, feature]) / 2.0
    return feature, threshold


def _best_split_classification(X, y, n_classes, criterion):
    n = X.shape[0]
    order = _column_orders(X)
    values = np.take_along_axis(X, order, axis=0)
    y_sorted = y[order]
    onehot = (y_sorted[:, :, None] == np.arange(n_classes)[None, None, :])
    left = np.cumsum(onehot, axis=0, dtype=np.float64)[:-1]
    total = left[-1] + onehot[-1]
    right = total[None, :, :] - left
    n_left = np.arange(1, n, dtype=np.float64)[:, None]
    n_right = n - n_left
    if criterion == "gini":
        i_left = 1.0 - np.sum((left / n_left[:, :, None]) ** 2, axis=2)
        i_right = 1.0 - np.sum((right / n_right[:, :, None]) ** 2, axis=2)
    else:
        pl = left / n_left[:, :, None]
        pr = right / n_right[:, :, None]
        i_left = -np.sum(np.where(pl > 0, pl * np.log2(np.where(pl > 0, pl, 1.0)), 0.0), axis=2)
        i_right = -np.sum(np.where(pr > 0, pr * np.log2(np.where(pr > 0, pr, 1.0)), 0.0), axis=2)
    score = (n_left * i_left + n_right * i_right) / n
    score = np.where(values[:-1] < values[1:], score, np.inf)
    return _pick_best(score, values)


def _grow_classification(X, y, n_classes, depth, params):
    counts = np.bincount(y, minlength=n_classes).astype(np.float64)
    n = X.shape[0]
    pure = np.count_nonzero(counts) <= 1
    if depth >= params.max_depth or n < params.min_samples_split or pure:
        return _Leaf(value=counts)
    found = _best_split_classification(X, y, n_classes, params.criterion)
    if found is None:
        return _Leaf(value=counts)
    feature, threshold = found
    mask = X[:, feature] <= threshold
    return _Split(
        feature=feature,
        threshold=threshold,
        left=_grow_classification(X[mask], y[mask], n_classes, depth + 1, params),
        right=_grow_classification(X[~mask], y[~mask], n_classes, depth + 1, params),
    )


def _best_split_regression(X, g):
    n = X.shape[0]
    order = _column_orders(X)
    values = np.take_along_axis(X, order, axis=0)
    gs = g[order]
    c1 = np.cumsum(gs, axis=0)[:-1]
    c2 = np.cumsum(gs * gs, axis=0)[:-1]
    t1 = gs.sum(axis=0)
    t2 = (gs * gs).sum(axis=0)
    n_left = np.arange(1, n, dtype=np.float64)[:, None]
    n_right = n - n_left
    sse = (c2 - c1 * c1 / n_left) + ((t2 - c2) - (t1 - c1) ** 2 / n_right)
    sse = np.where(values[:-1] < values[1:], sse, np.inf)
    return _pick_best(sse, values)


def _leaf_weight(g, h, params):
    denom = h.sum() + params.l2_leaf_penalty
    if denom <= 1e-16:
        denom = 1e-16
    return params.learning_rate * float(g.sum()) / float(denom)


def _grow_regression(X, g, h, depth, params):
    n = X.shape[0]
    total_sse = float((g * g).sum() - g.sum() ** 2 / n)
    if depth >= params.max_depth or n < 2 or total_sse <= 1e-12:
        return _Leaf(value=_leaf_weight(g, h, params))
    found = _best_split_regression(X, g)
    if found is None:
        return _Leaf(value=_leaf_weight(g, h, params))
    feature, threshold = found
    mask = X[:, feature] <= threshold
    return _Split(
        feature=feature,
        threshold=threshold,
        left=_grow_regression(X[mask], g[mask], h[mask], depth + 1, params),
        right=_grow_regression(X[~mask], g[~mask], h[~mask], depth + 1, params),
    )


def _apply_tree(node, X, out):
    """Fill out[i] with the leaf value reached by row i."""
    idx = np.arange(X.shape[0])
    stack = [(node, idx)]
    while stack:
        node, rows = stack.pop()
        if not len(rows):
            continue
        if isinstance(node, _Leaf):
            out[rows] = node.value
            continue
        mask = X[rows, node.feature] <= node.threshold
        stack.append((node.left, rows[mask]))
        stack.append((node.right, rows[~mask]))


def _tree_depth(node):
    if isinstance(node, _Leaf):
        return 0
    return 1 + max(_tree_depth(node.left), _tree_depth(node.right))


def _walk_leaf(node, v):
    while isinstance(node, _Split):
        node = node.left if v[node.feature] <= node.threshold else node.right
    return node


class TreeModel:
    def __init__(self, root, classes, dimension, params):
        self.root = root
        self.classes = tuple(classes)
        self.dimension = dimension
        self.params = params

    def predict(self, v):
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dimension,):
            raise ValueError(
                f"feature vector has length {v.shape[0] if v.ndim else 0}, "
                f"expected {self.dimension}")
        counts = _walk_leaf(self.root, v).value
        probs = counts / counts.sum()
        return int(np.argmax(probs)), probs

    def predict_batch(self, X):
        X = np.asarray(X, dtype=np.float64)
        out = np.empty((X.shape[0], len(self.classes)))
        _apply_tree_counts(self.root, X, out)
        probs = out / out.sum(axis=1, keepdims=True)
        return np.argmax(probs, axis=1), probs

    def depth(self):
        return _tree_depth(self.root)


def _apply_tree_counts(node, X, out):
    idx = np.arange(X.shape[0])
    stack = [(node, idx)]
    while stack:
        node, rows = stack.pop()
        if not len(rows):
            continue
        if isinstance(node, _Leaf):
            out[rows] = node.value / node.value.sum()
            continue
        mask = X[rows, node.feature] <= node.threshold
        stack.append((node.left, rows[mask]))
        stack.append((node.right, rows[~mask]))


def _softmax(scores):
    shifted = scores - scores.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


class GbtModel:
    def __init__(self, rounds, classes, dimension, params, base_scores, training_loss):
        self.rounds = rounds  # list of per-class regression tree roots per round
        self.classes = tuple(classes)
        self.dimension = dimension
        self.params = params
        self.base_scores = np.asarray(base_scores, dtype=np.float64)
        self.training_loss = list(training_loss)

    def raw_scores(self, X):
        X = np.asarray(X, dtype=np.float64)
        scores = np.tile(self.base_scores, (X.shape[0], 1))
        col = np.empty(X.shape[0])
        for round_trees in self.rounds:
            for k, tree in enumerate(round_trees):
                _apply_tree(tree, X, col)
                scores[:, k] += col
        return scores

    def predict(self, v):
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dimension,):
            raise ValueError(
                f"feature vector has length {v.shape[0] if v.ndim else 0}, "
                f"expected {self.dimension}")
        probs = _softmax(self.raw_scores(v[None, :]))[0]
        return int(np.argmax(probs)), probs

    def predict_batch(self, X):
        probs = _softmax(self.raw_scores(X))
        return np.argmax(probs, axis=1), probs


def train_tree(dataset, params, seed=0):
    """Grow a CART classification tree. Training has no stochastic component;
    seed is accepted for interface symmetry with train_gbt."""
    if dataset.n == 0:
        raise ConfigError("empty dataset")
    root = _grow_classification(dataset.X, dataset.y, len(dataset.classes), 0, params)
    return TreeModel(root=root, classes=dataset.classes,
                     dimension=dataset.dim, params=params)


def train_gbt(dataset, params, seed=0):
    """Boost per-class regression trees on the softmax negative gradient.

    Each round fits one tree per class to the residual (one-hot minus
    probability) with the variance split criterion; leaf values are the
    Newton step sum(residual) / (sum(hessian) + l2), scaled by the learning
    rate. No subsampling is used, so training is deterministic.
    """
    if dataset.n == 0:
        raise ConfigError("empty dataset")
    n_classes = len(dataset.classes)
    if n_classes < 2:
        raise ConfigError("gradient boosting needs at least two classes")
    X, y = dataset.X, dataset.y
    onehot = np.zeros((dataset.n, n_classes))
    onehot[np.arange(dataset.n), y] = 1.0
    scores = np.zeros((dataset.n, n_classes))
    rounds = []
    losses = []
    col = np.empty(dataset.n)
    for _ in range(params.n_rounds):
        probs = _softmax(scores)
        round_trees = []
        for k in range(n_classes):
            residual = onehot[:, k] - probs[:, k]
            hessian = probs[:, k] * (1.0 - probs[:, k])
            tree = _grow_regression(X, residual, hessian, 0, params)
            round_trees.append(tree)
            _apply_tree(tree, X, col)
            scores[:, k] += col
        rounds.append(round_trees)
        probs = _softmax(scores)
        p_true = np.clip(probs[np.arange(dataset.n), y], 1e-300, None)
        losses.append(float(np.mean(-np.log(p_true))))
    return GbtModel(rounds=rounds, classes=dataset.classes, dimension=dataset.dim,
                    params=params, base_scores=np.zeros(n_classes),
                    training_loss=losses)


def predict(model, v):
    """(class index, probability vector) for one feature vector."""
    return model.predict(v)


@dataclass
class CvReport:
    k: int
    seed: int
    stratified: bool
    fold_accuracy: list = field(default_factory=list)
    fold_f1_macro: list = field(default_factory=list)
    mean_accuracy: float = 0.0
    mean_f1_macro: float = 0.0


def fold_assignment(y, k, seed, n_classes):
    """Fold index per row: a seeded shuffle dealt round-robin within each
    class, with the deal position carried across classes so fold sizes stay
    as even as possible. Falls back to an unstratified deal (with a warning)
    when some class has fewer than k members."""
    y = np.asarray(y)
    rng = np.random.default_rng(seed)
    folds = np.empty(len(y), dtype=np.int64)
    class_sizes = np.bincount(y, minlength=n_classes)
    stratified = bool((class_sizes[class_sizes > 0] >= k).all())
    if stratified:
        start = 0
        for c in range(n_classes):
            idx = np.flatnonzero(y == c)
            rng.shuffle(idx)
            for j, row in enumerate(idx):
                folds[row] = (start + j) % k
            start = (start + len(idx)) % k
    else:
        warnings.warn("a class has fewer members than folds; "
                      "using unstratified fold assignment")
        idx = np.arange(len(y))
        rng.shuffle(idx)
        for j, row in enumerate(idx):
            folds[row] = j % k
    return folds, stratified


def cross_validate(dataset, params, k, seed=0):
    """Stratified k-fold cross validation; reports accuracy and F1-macro."""
    if k < 2:
        raise ConfigError("k must be at least 2")
    if dataset.n < k:
        raise ConfigError(f"dataset has {dataset.n} rows, fewer than k={k}")
    folds, stratified = fold_assignment(dataset.y, k, seed, len(dataset.classes))
    train = train_tree if isinstance(params, TreeParams) else train_gbt
    report = CvReport(k=k, seed=seed, stratified=stratified)
    for fold in range(k):
        test_mask = folds == fold
        sub = Dataset(dataset.X[~test_mask], dataset.y[~test_mask], dataset.classes)
        model = train(sub, params, seed)
        pred, _ = model.predict_batch(dataset.X[test_mask])
        true = dataset.y[test_mask]
        confusion = confusion_matrix(true, pred, len(dataset.classes))
        report.fold_accuracy.append(_accuracy(true, pred))
        report.fold_f1_macro.append(f1_macro(confusion))
    report.mean_accuracy = float(np.mean(report.fold_accuracy))
    report.mean_f1_macro = float(np.mean(report.fold_f1_macro))
    return report


# ---------------------------------------------------------------------------
# Model files

def _node_to_doc(node, regression):
    if isinstance(node, _Leaf):
        if regression:
            return {"value": node.value}
        return {"counts": [float(c) for c in node.value]}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": _node_to_doc(node.left, regression),
        "right": _node_to_doc(node.right, regression),
    }


def _node_from_doc(doc, regression):
    if "feature" in doc:
        return _Split(feature=int(doc["feature"]), threshold=float(doc["threshold"]),
                      left=_node_from_doc(doc["left"], regression),
                      right=_node_from_doc(doc["right"], regression))
    if regression:
        return _Leaf(value=float(doc["value"]))
    return _Leaf(value=np.asarray(doc["counts"], dtype=np.float64))


def save_model(path, model, encoder, rules=None):
    """Write a versioned JSON model file embedding the feature encoder.

    Floats serialize through repr, so saving is lossless and byte-identical
    for identical models. The embedding table itself is not stored; it is
    re-attached from its own file when the model is loaded.
    """
    doc = {
        "format": MODEL_FORMAT,
        "format_version": MODEL_VERSION,
        "classes": list(model.classes),
        "dimension": model.dimension,
        "encoder": encoder.to_state(),
        "rules": rules.to_json() if rules is not None else None,
    }
    if isinstance(model, TreeModel):
        doc["algorithm"] = "decision_tree"
        doc["params"] = {
            "max_depth": model.params.max_depth,
            "criterion": model.params.criterion,
            "min_samples_split": model.params.min_samples_split,
        }
        doc["model"] = {"tree": _node_to_doc(model.root, regression=False)}
    else:
        doc["algorithm"] = "gradient_boosted_trees"
        doc["params"] = {
            "learning_rate": model.params.learning_rate,
            "max_depth": model.params.max_depth,
            "n_rounds": model.params.n_rounds,
            "l2_leaf_penalty": model.params.l2_leaf_penalty,
        }
        doc["model"] = {
            "base_scores": [float(s) for s in model.base_scores],
            "rounds": [[_node_to_doc(t, regression=True) for t in round_trees]
                       for round_trees in model.rounds],
            "training_loss": model.training_loss,
        }
    text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def load_model(path, embeddings=None):
    """Read a model file back; returns (model, encoder, rules-doc-or-None)."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"unreadable model file {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ModelFormatError(f"{path} is not a model file")
    if doc.get("format_version") != MODEL_VERSION:
        raise ModelFormatError(
            f"model format version {doc.get('format_version')!r} is not supported "
            f"(expected {MODEL_VERSION})")
    encoder = FeatureEncoder.from_state(doc["encoder"], embeddings=embeddings)
    if embeddings is not None and encoder.embedding_dim is not None \
            and embeddings.dimension != encoder.embedding_dim:
        raise ConfigError(
            f"embedding dimension {embeddings.dimension} does not match the "
            f"model's encoder ({encoder.embedding_dim})")
    classes = tuple(doc["classes"])
    dimension = int(doc["dimension"])
    if doc["algorithm"] == "decision_tree":
        params = TreeParams(**doc["params"])
        model = TreeModel(root=_node_from_doc(doc["model"]["tree"], regression=False),
                          classes=classes, dimension=dimension, params=params)
    elif doc["algorithm"] == "gradient_boosted_trees":
        params = GbtParams(**doc["params"])
        rounds = [[_node_from_doc(t, regression=True) for t in round_trees]
                  for round_trees in doc["model"]["rounds"]]
        model = GbtModel(rounds=rounds, classes=classes, dimension=dimension,
                         params=params,
                         base_scores=np.asarray(doc["model"]["base_scores"]),
                         training_loss=doc["model"]["training_loss"])
    else:
        raise ModelFormatError(f"unknown algorithm {doc['algorithm']!r}")
    return model, encoder, doc.get("rules")
