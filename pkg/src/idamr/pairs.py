"""Dependency pair extraction and rule-based filtering.

Every non-root token yields one (head, dependent) candidate pair. The three
filter rules knock out pairs whose parent or child is a preposition, a
determiner, or a subordinating conjunction; each rule matches on UPOS or on
the lowercased surface form.
"""

from dataclasses import dataclass

from idamr.errors import ConfigError, FormatError


@dataclass(frozen=True)
class DepPair:
    parent: object
    child: object
    deprel: str
    is_root_pair: bool


@dataclass(frozen=True)
class FilterRule:
    enabled: bool
    upos: frozenset
    words: frozenset

    def matches(self, token):
        if not self.enabled:
            return False
        return token.upos in self.upos or token.form.lower() in self.words


RULE_NAMES = ("determiner", "preposition", "subordinate_conjunction")

_DEFAULT_UPOS = {
    "determiner": frozenset({"DET"}),
    "preposition": frozenset({"ADP"}),
    "subordinate_conjunction": frozenset({"SCONJ"}),
}
_DEFAULT_WORDS = {
    "determiner": frozenset({"yang"}),
    "preposition": frozenset({"di", "ke", "dari"}),
    "subordinate_conjunction": frozenset({"dengan"}),
}

_NAME_ALIASES = {
    "det": "determiner", "determiner": "determiner",
    "prep": "preposition", "preposition": "preposition",
    "sconj": "subordinate_conjunction",
    "subordinate_conjunction": "subordinate_conjunction",
}

_SHORT_NAMES = {
    "determiner": "det", "preposition": "prep", "subordinate_conjunction": "sconj",
}


@dataclass(frozen=True)
class FilterRuleSet:
    determiner: FilterRule
    preposition: FilterRule
    subordinate_conjunction: FilterRule

    @classmethod
    def default(cls, enabled=RULE_NAMES):
        rules = {}
        for name in RULE_NAMES:
            rules[name] = FilterRule(enabled=name in enabled,
                                     upos=_DEFAULT_UPOS[name],
                                     words=_DEFAULT_WORDS[name])
        return cls(**rules)

    @classmethod
    def none(cls):
        return cls.default(enabled=())

    @classmethod
    def from_names(cls, spec):
        """Build a rule set from a CLI spec such as "det,prep,sconj" or "none"."""
        spec = spec.strip()
        if spec in ("none", ""):
            return cls.none()
        enabled = set()
        for part in spec.split(","):
            name = _NAME_ALIASES.get(part.strip().lower())
            if name is None:
                raise ConfigError(
                    f"unknown filter rule {part.strip()!r}; "
                    f"expected det, prep, sconj, or none")
            enabled.add(name)
        return cls.default(enabled=enabled)

    @classmethod
    def from_json(cls, doc):
        """Build a rule set from a configuration document.

        Each rule section may override enabled, upos, and words; unmentioned
        rules keep their default tag/word sets but stay disabled.
        """
        if not isinstance(doc, dict):
            raise FormatError("rule configuration must be a JSON object")
        unknown = set(doc) - set(RULE_NAMES)
        if unknown:
            raise FormatError(f"unknown rule name {sorted(unknown)[0]!r} in configuration")
        rules = {}
        for name in RULE_NAMES:
            section = doc.get(name, {})
            if not isinstance(section, dict):
                raise FormatError(f"rule {name!r}: expected a JSON object")
            rules[name] = FilterRule(
                enabled=bool(section.get("enabled", False)),
                upos=frozenset(section.get("upos", _DEFAULT_UPOS[name])),
                words=frozenset(w.lower() for w in section.get("words", _DEFAULT_WORDS[name])),
            )
        return cls(**rules)

    def to_json(self):
        doc = {}
        for name in RULE_NAMES:
            rule = getattr(self, name)
            doc[name] = {
                "enabled": rule.enabled,
                "upos": sorted(rule.upos),
                "words": sorted(rule.words),
            }
        return doc

    def enabled_names(self):
        return tuple(name for name in RULE_NAMES if getattr(self, name).enabled)

    def removes(self, pair):
        for name in RULE_NAMES:
            rule = getattr(self, name)
            if rule.matches(pair.parent) or rule.matches(pair.child):
                return True
        return False


# The eight on/off combinations of the three rules, in the order the
# ablation harness reports them.
RULE_COMBINATIONS = (
    (),
    ("determiner",),
    ("preposition",),
    ("subordinate_conjunction",),
    ("determiner", "preposition"),
    ("determiner", "subordinate_conjunction"),
    ("preposition", "subordinate_conjunction"),
    ("determiner", "preposition", "subordinate_conjunction"),
)


def combination_label(combo):
    if not combo:
        return "-"
    return "+".join(_SHORT_NAMES[name] for name in combo)


def extract_pairs(sentence):
    """One candidate pair per non-root token, ordered by child index."""
    pairs = []
    root_index = sentence.root.index
    for tok in sentence.tokens:
        if tok.head == 0:
            continue
        parent = sentence.token(tok.head)
        pairs.append(DepPair(parent=parent, child=tok, deprel=tok.deprel,
                             is_root_pair=parent.index == root_index))
    return pairs


def apply_filter(pairs, rules):
    """Drop pairs matched by any enabled rule; order of survivors is kept."""
    return [pair for pair in pairs if not rules.removes(pair)]
