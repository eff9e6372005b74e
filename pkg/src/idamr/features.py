"""Feature rows for dependency pairs and their numeric encoding.

A pair contributes one row of lexical (lemma embeddings), syntactic
(POS/NER one-hots), and positional (dependency role one-hot, root flag, raw
positions) features. Gold labels are harvested at training time by aligning
pair lemmas with gold graph edges.
"""

from dataclasses import dataclass

import numpy as np

from idamr.errors import ConfigError

CATEGORIES = ("lexical", "syntactic", "positional")

_CATEGORY_ALIASES = {
    "lex": "lexical", "lexical": "lexical",
    "syn": "syntactic", "syntactic": "syntactic",
    "pos": "positional", "positional": "positional",
}

# Categorical fields in their fixed encoding order.
_SYNTACTIC_FIELDS = ("parent_pos", "child_pos", "parent_ner", "child_ner")

# The five category combinations of the feature-ablation experiment, in
# report row order.
FEATURE_COMBINATIONS = (
    ("lexical", "syntactic", "positional"),
    ("syntactic", "positional"),
    ("lexical", "syntactic"),
    ("lexical", "positional"),
    ("syntactic",),
)

_SHORT_NAMES = {"lexical": "lex", "syntactic": "syn", "positional": "pos"}


def combination_label(categories):
    """Stable short label for a category combination, e.g. "lex+syn"."""
    return "+".join(_SHORT_NAMES[c] for c in CATEGORIES if c in categories)


@dataclass(frozen=True)
class PairFeatures:
    sentence_id: str
    parent_lemma: str
    child_lemma: str
    parent_pos: str
    child_pos: str
    parent_ner: str
    child_ner: str
    deprel: str
    is_root: bool
    parent_position: int
    child_position: int


@dataclass(frozen=True)
class LabeledExample:
    features: PairFeatures
    label: str


@dataclass(frozen=True)
class FeatureConfig:
    categories: frozenset

    def __post_init__(self):
        bad = self.categories - set(CATEGORIES)
        if bad:
            raise ConfigError(f"unknown feature category {sorted(bad)[0]!r}")
        if not self.categories:
            raise ConfigError("at least one feature category must be enabled")

    @classmethod
    def all(cls):
        return cls(categories=frozenset(CATEGORIES))

    @classmethod
    def from_names(cls, spec):
        """Parse a CLI spec such as "lex,syn,pos"."""
        names = set()
        for part in spec.split(","):
            name = _CATEGORY_ALIASES.get(part.strip().lower())
            if name is None:
                raise ConfigError(
                    f"unknown feature category {part.strip()!r}; expected lex, syn, pos")
            names.add(name)
        return cls(categories=frozenset(names))

    def __contains__(self, name):
        return name in self.categories

    def sorted_names(self):
        return tuple(c for c in CATEGORIES if c in self.categories)


def combine_features(sentence, pairs):
    """Feature rows for the given pairs, in pair order."""
    rows = []
    for pair in pairs:
        rows.append(PairFeatures(
            sentence_id=sentence.id,
            parent_lemma=pair.parent.lemma,
            child_lemma=pair.child.lemma,
            parent_pos=pair.parent.upos,
            child_pos=pair.child.upos,
            parent_ner=pair.parent.ner,
            child_ner=pair.child.ner,
            deprel=pair.deprel,
            is_root=pair.is_root_pair,
            parent_position=pair.parent.index,
            child_position=pair.child.index,
        ))
    return rows


def match_pairs(rows, gold):
    """Align feature rows with gold graph edges to produce training examples.

    A row matches a gold edge when (parent_lemma, child_lemma) equals the
    edge's (source concept, target concept). Each gold edge is consumed at
    most once and rows are processed in order, so the earliest row wins a
    contested edge. Rows with no match produce nothing; there is no
    "no edge" class.
    """
    available = list(gold.edges)
    examples = []
    for row in rows:
        for i, edge in enumerate(available):
            if (row.parent_lemma, row.child_lemma) == (
                    gold.concept(edge.source), gold.concept(edge.target)):
                examples.append(LabeledExample(features=row, label=edge.label))
                del available[i]
                break
    return examples


def unmatched_gold_edges(rows, gold):
    """Gold edges no feature row accounts for; mirrors match_pairs exactly."""
    available = list(gold.edges)
    for row in rows:
        for i, edge in enumerate(available):
            if (row.parent_lemma, row.child_lemma) == (
                    gold.concept(edge.source), gold.concept(edge.target)):
                del available[i]
                break
    return available


class FeatureEncoder:
    """Maps feature rows to fixed-length float vectors.

    Vocabularies are the sorted distinct values seen in the training rows;
    unseen values at prediction time encode as an all-zero block. The
    sentence id is never encoded.
    """

    def __init__(self, config, vocabularies, embedding_dim=None, embeddings=None):
        self.config = config
        self.vocabularies = {field: tuple(values)
                             for field, values in vocabularies.items()}
        self.embedding_dim = embedding_dim
        self.embeddings = embeddings
        if "lexical" in config and embedding_dim is None:
            raise ConfigError("lexical features need an embedding dimension")
        self._index = {field: {v: i for i, v in enumerate(values)}
                       for field, values in self.vocabularies.items()}

    @property
    def dimension(self):
        d = 0
        if "lexical" in self.config:
            d += 2 * self.embedding_dim
        if "syntactic" in self.config:
            d += sum(len(self.vocabularies[f]) for f in _SYNTACTIC_FIELDS)
        if "positional" in self.config:
            d += len(self.vocabularies["deprel"]) + 3
        return d

    def _one_hot(self, field, value):
        block = np.zeros(len(self.vocabularies[field]))
        idx = self._index[field].get(value)
        if idx is not None:
            block[idx] = 1.0
        return block

    def encode(self, row):
        parts = []
        if "lexical" in self.config:
            if self.embeddings is None:
                raise ConfigError("encoder has lexical features but no embedding table")
            parts.append(self.embeddings.embed(row.parent_lemma))
            parts.append(self.embeddings.embed(row.child_lemma))
        if "syntactic" in self.config:
            for field in _SYNTACTIC_FIELDS:
                parts.append(self._one_hot(field, getattr(row, field)))
        if "positional" in self.config:
            parts.append(self._one_hot("deprel", row.deprel))
            parts.append(np.array([1.0 if row.is_root else 0.0,
                                   float(row.parent_position),
                                   float(row.child_position)]))
        return np.concatenate(parts)

    def encode_all(self, rows):
        return np.stack([self.encode(row) for row in rows])

    def to_state(self):
        return {
            "categories": sorted(self.config.categories),
            "embedding_dim": self.embedding_dim,
            "vocabularies": {field: list(values)
                             for field, values in sorted(self.vocabularies.items())},
        }

    @classmethod
    def from_state(cls, state, embeddings=None):
        config = FeatureConfig(categories=frozenset(state["categories"]))
        return cls(config=config,
                   vocabularies=state["vocabularies"],
                   embedding_dim=state["embedding_dim"],
                   embeddings=embeddings)


def fit_encoder(examples, config, embeddings=None):
    """Fit vocabularies over training examples and bind the embedding table."""
    if not examples:
        raise ConfigError("cannot fit an encoder on zero examples")
    if "lexical" in config and embeddings is None:
        raise ConfigError("lexical features are enabled but no embeddings were given")
    vocabularies = {}
    for field in _SYNTACTIC_FIELDS + ("deprel",):
        vocabularies[field] = tuple(sorted(
            {getattr(ex.features, field) for ex in examples}))
    return FeatureEncoder(
        config=config,
        vocabularies=vocabularies,
        embedding_dim=embeddings.dimension if embeddings is not None else None,
        embeddings=embeddings,
    )


def encode(encoder, row):
    return encoder.encode(row)


_TABLE_HEADER = (
    "Sentence ID", "Parent", "Child", "Parent POS", "Child POS",
    "Parent NER", "Child NER", "Dependency role", "Is Root",
    "Parent position", "Child position",
)


def dump_features(rows):
    """Tab-separated debug dump of the combined feature table."""
    lines = ["\t".join(_TABLE_HEADER)]
    for row in rows:
        lines.append("\t".join([
            row.sentence_id, row.parent_lemma, row.child_lemma,
            row.parent_pos, row.child_pos, row.parent_ner, row.child_ner,
            row.deprel, "1" if row.is_root else "0",
            str(row.parent_position), str(row.child_position),
        ]))
    return "\n".join(lines) + "\n"
