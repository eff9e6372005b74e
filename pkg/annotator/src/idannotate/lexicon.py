"""Deterministic Indonesian analysis: tokenizer, lexicon-backed tagger and
lemmatizer, and a heuristic dependency attacher.

This is the bundled stand-in for a pretrained pipeline, so it favours
predictability over coverage. Words the lexicon does not know fall back to
affix rules (the meN- verb prefix family only) and then to part-of-speech
guesses; whatever analysis comes out is written as-is, exactly like the
output of a real model would be.
"""

import string
from dataclasses import dataclass

from idannotate.errors import CannotAnnotate

_PUNCT = set(string.punctuation) | set("…“”‘’—–")
_VOWELS = "aeiou"

# (prefix, restored initials): lemma candidates for a meN- verb form, tried
# in order. The nasal swallows the root initial for some consonants, so
# "memukul" restores p (pukul) while "membaca" keeps the b (baca).
_MEN_RULES = (
    ("meng", ("", "k")),
    ("meny", ("s",)),
    ("mem", ("p", "")),
    ("men", ("t", "")),
    ("me", ("",)),
)

_NOUNISH = ("NOUN", "PROPN", "PRON", "NUM")


@dataclass(frozen=True)
class Analysis:
    form: str
    lemma: str
    upos: str
    ner: str
    head: int
    deprel: str


def tokenize(text):
    """Whitespace tokens with leading and trailing punctuation peeled off
    as single-character tokens; internal punctuation (hyphens, decimal
    points) stays inside the token."""
    tokens = []
    for chunk in text.split():
        lead = []
        tail = []
        while chunk and chunk[0] in _PUNCT:
            lead.append(chunk[0])
            chunk = chunk[1:]
        while chunk and chunk[-1] in _PUNCT:
            tail.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(lead)
        if chunk:
            tokens.append(chunk)
        tokens.extend(reversed(tail))
    return tokens


def verb_lemma_candidates(word):
    """Possible roots of a meN- prefixed verb form, best guess first;
    empty when the form does not look prefixed."""
    for prefix, initials in _MEN_RULES:
        rest = word[len(prefix):]
        if not word.startswith(prefix) or len(rest) < 2:
            continue
        if prefix in ("meng", "mem", "men") and rest[0] not in _VOWELS:
            # The nasal only swallowed an initial before a vowel; with a
            # consonant the root is the rest itself (men + jahit).
            return (rest,)
        if prefix == "meng" and rest[0] in _VOWELS:
            # meng + vowel is ambiguous (ambil vs kirim); prefer the bare
            # root and let the lexicon override.
            return (rest, "k" + rest)
        return tuple(initial + rest for initial in initials)
    return ()


class Lexicon:
    """Surface form (lowercased) to (lemma, upos, ner), with fallbacks."""

    def __init__(self, entries):
        self.entries = dict(entries)

    def analyze(self, form, first_in_sentence):
        low = form.lower()
        if all(ch in _PUNCT for ch in form):
            return form, "PUNCT", "O"
        entry = self.entries.get(low)
        if entry is not None:
            return entry["lemma"], entry["upos"], entry["ner"]
        if low.replace(".", "").replace(",", "").isdigit():
            return form, "NUM", "O"
        for candidate in verb_lemma_candidates(low):
            if candidate in self.entries:
                return candidate, "VERB", "O"
        candidates = verb_lemma_candidates(low)
        if candidates:
            return candidates[0], "VERB", "O"
        if form[0].isupper() and not first_in_sentence:
            return form, "PROPN", "O"
        return low, "NOUN", "O"


def _pick_root(tagged):
    for i, (_, _, upos, _) in enumerate(tagged):
        if upos == "VERB":
            return i
    for i, (_, _, upos, _) in enumerate(tagged):
        if upos != "PUNCT":
            return i
    raise CannotAnnotate("no word tokens")


def attach(tagged):
    """Heads and relations for tagged tokens, 0-based in, 1-based out.

    One pass, left to right: the first verb is the root (first non-
    punctuation token in verbless sentences), nouns before it are
    subjects, the first bare noun after it is the object, later ones are
    obliques. Adpositions and subordinators defer to the next content
    token and hang off it; determiners, adjectives, and name continuations
    attach backward. Everything points at the root eventually, so the
    result is always a tree.
    """
    if not any(any(ch.isalpha() for ch in form) for form, _, _, _ in tagged):
        raise CannotAnnotate("no word tokens")
    root = _pick_root(tagged)
    n = len(tagged)
    heads = [None] * n
    deprels = [None] * n

    content = [i for i in range(n) if tagged[i][2] != "PUNCT"]
    subj_seen = False
    obj_seen = False
    pending = None  # index of an adposition or subordinator waiting ahead
    last_noun = None
    chain_start = None  # first token of the current proper-name run

    for i in content:
        form, _, upos, _ = tagged[i]
        prev = _previous_content(content, i)

        if upos == "PROPN" and chain_start is not None and prev is not None \
                and tagged[prev][2] == "PROPN":
            heads[i] = chain_start + 1
            deprels[i] = "flat:name"
            continue
        chain_start = i if upos == "PROPN" else None

        if i == root:
            heads[i] = 0
            deprels[i] = "root"
            if upos in _NOUNISH:
                last_noun = i
            continue

        if upos in ("ADP", "SCONJ"):
            pending = i
            continue

        if pending is not None:
            heads[pending] = i + 1
            deprels[pending] = "case" if tagged[pending][2] == "ADP" else "mark"
            pending = None
            if upos in _NOUNISH:
                heads[i] = root + 1
                deprels[i] = "obl"
                last_noun = i
            elif upos == "VERB":
                heads[i] = root + 1
                deprels[i] = "advcl"
            else:
                heads[i] = root + 1
                deprels[i] = "advmod"
            continue

        if upos == "DET" or form.lower() == "yang":
            heads[i] = last_noun + 1 if last_noun is not None else root + 1
            deprels[i] = "det" if upos == "DET" else "mark"
            continue

        if upos in _NOUNISH:
            if i < root and not subj_seen:
                deprels[i] = "nsubj"
                subj_seen = True
            elif i > root and not obj_seen:
                deprels[i] = "obj"
                obj_seen = True
            else:
                deprels[i] = "obl"
            heads[i] = root + 1
            last_noun = i
            continue

        if upos in ("ADJ", "ADV"):
            if prev is not None and tagged[prev][2] in ("NOUN", "PROPN") \
                    and upos == "ADJ":
                heads[i] = prev + 1
                deprels[i] = "amod"
            else:
                heads[i] = root + 1
                deprels[i] = "advmod"
            continue

        if upos == "VERB":
            heads[i] = root + 1
            deprels[i] = "acl" if prev is not None \
                and tagged[prev][2] in ("NOUN", "PROPN") else "advcl"
            continue

        heads[i] = root + 1
        deprels[i] = "dep"

    if pending is not None:
        # Sentence-final adposition with nothing to lean on.
        heads[pending] = (last_noun if last_noun is not None else root) + 1
        if heads[pending] == pending + 1:
            heads[pending] = root + 1
        deprels[pending] = "case"

    for i in range(n):
        if tagged[i][2] == "PUNCT":
            heads[i] = root + 1
            deprels[i] = "punct"

    return heads, deprels


def _previous_content(content, i):
    pos = content.index(i)
    return content[pos - 1] if pos > 0 else None


def annotate_sentence(text, lexicon):
    """Analyses for one raw sentence, punctuation retained."""
    forms = tokenize(text)
    if not forms:
        raise CannotAnnotate("no word tokens")
    tagged = []
    for i, form in enumerate(forms):
        lemma, upos, ner = lexicon.analyze(form, first_in_sentence=i == 0)
        tagged.append((form, lemma, upos, ner))
    heads, deprels = attach(tagged)
    return [Analysis(form=f, lemma=le, upos=u, ner=ne, head=h, deprel=d)
            for (f, le, u, ne), h, d in zip(tagged, heads, deprels)]
