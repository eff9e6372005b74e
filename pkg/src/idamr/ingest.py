"""Readers and writers for the three on-disk formats the pipeline consumes.

* extended CoNLL-U: ten tab-separated columns, NER carried in MISC as
  "NER=<tag>". Punctuation is dropped at read time and indices renumbered,
  so downstream code never sees PUNCT tokens.
* AMR corpus: blank-line separated PENMAN blocks with optional "# ::id" and
  "# ::snt" comments.
* word2vec text embeddings, with or without the count/dimension header.
"""

import io
from dataclasses import dataclass

import numpy as np

from idamr.errors import FormatError
from idamr.graph import parse_penman, serialize_penman


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    lemma: str
    upos: str
    ner: str
    head: int
    deprel: str


@dataclass(frozen=True)
class AnnotatedSentence:
    id: str
    text: str
    tokens: tuple

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        roots = [t for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise FormatError(
                f"sentence {self.id!r}: expected exactly one root, found {len(roots)}")
        n = len(self.tokens)
        for i, tok in enumerate(self.tokens, start=1):
            if tok.index != i:
                raise FormatError(
                    f"sentence {self.id!r}: token indices must be contiguous from 1")
            if tok.head == tok.index:
                raise FormatError(
                    f"sentence {self.id!r}: token {tok.index} is its own head")
            if tok.head < 0 or tok.head > n:
                raise FormatError(
                    f"sentence {self.id!r}: head {tok.head} out of range")
            if not tok.lemma:
                raise FormatError(
                    f"sentence {self.id!r}: token {tok.index} has an empty lemma")
        # The head function must form a tree.
        for start in range(1, n + 1):
            seen = set()
            cur = start
            while cur != 0:
                if cur in seen:
                    raise FormatError(f"sentence {self.id!r}: head cycle at token {cur}")
                seen.add(cur)
                cur = self.tokens[cur - 1].head

    @property
    def root(self):
        for tok in self.tokens:
            if tok.head == 0:
                return tok
        raise FormatError(f"sentence {self.id!r} has no root")

    def token(self, index):
        return self.tokens[index - 1]


def _as_lines(source):
    if isinstance(source, str):
        return source.split("\n")
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        return source.read().split("\n")
    return list(source)


def _ner_from_misc(misc):
    if misc == "_":
        return "O"
    for part in misc.split("|"):
        if part.startswith("NER="):
            return part[len("NER="):]
    return "O"


def read_conllu(source):
    """Parse extended CoNLL-U text into a list of AnnotatedSentence.

    Multiword range lines (id like "3-4") are skipped. UPOS=PUNCT tokens are
    removed: anything headed by a dropped token is re-attached to the nearest
    non-punctuation ancestor and indices are renumbered contiguously.
    """
    lines = _as_lines(source)
    sentences = []
    block_comments = {}
    rows = []  # (line_no, cols)

    def flush():
        if not rows and not block_comments:
            return
        if not rows:
            raise FormatError("sentence block contains no token lines")
        position = len(sentences) + 1
        sent_id = block_comments.get("sent_id", str(position))
        text = block_comments.get("text")
        sentences.append(_build_sentence(sent_id, text, rows))
        block_comments.clear()
        rows.clear()

    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\r")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                block_comments[key.strip()] = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise FormatError(
                f"line {line_no}: expected 10 tab-separated columns, got {len(cols)}")
        if "-" in cols[0] or "." in cols[0]:
            continue  # multiword range / empty node line; the word lines follow
        rows.append((line_no, cols))
    flush()
    return sentences


def _build_sentence(sent_id, text, rows):
    parsed = []
    for offset, (line_no, cols) in enumerate(rows, start=1):
        try:
            index = int(cols[0])
        except ValueError:
            raise FormatError(f"line {line_no}: non-integer token id {cols[0]!r}") from None
        if index != offset:
            raise FormatError(
                f"line {line_no}: token ids must count 1..n, got {cols[0]!r}")
        try:
            head = int(cols[6])
        except ValueError:
            raise FormatError(f"line {line_no}: non-integer head {cols[6]!r}") from None
        form = cols[1]
        lemma = cols[2]
        if lemma in ("", "_"):
            lemma = form  # unannotated lemma column; fall back to the surface form
        parsed.append({
            "index": index, "form": form, "lemma": lemma, "upos": cols[3],
            "head": head, "deprel": cols[7], "ner": _ner_from_misc(cols[9]),
        })

    n = len(parsed)
    for row in parsed:
        if row["head"] < 0 or row["head"] > n:
            raise FormatError(
                f"sentence {sent_id!r}: head {row['head']} out of range")

    def resolve_head(head):
        # Walk past dropped punctuation to the nearest surviving ancestor.
        seen = set()
        while head != 0 and parsed[head - 1]["upos"] == "PUNCT":
            if head in seen:
                raise FormatError(f"sentence {sent_id!r}: head cycle at token {head}")
            seen.add(head)
            head = parsed[head - 1]["head"]
        return head

    kept = [row for row in parsed if row["upos"] != "PUNCT"]
    if not kept:
        raise FormatError(f"sentence {sent_id!r}: no tokens left after removing punctuation")
    renumber = {row["index"]: i for i, row in enumerate(kept, start=1)}

    tokens = []
    for i, row in enumerate(kept, start=1):
        head = resolve_head(row["head"])
        head = renumber[head] if head != 0 else 0
        tokens.append(Token(index=i, form=row["form"], lemma=row["lemma"],
                            upos=row["upos"], ner=row["ner"], head=head,
                            deprel=row["deprel"]))
    if text is None:
        text = " ".join(row["form"] for row in parsed)
    return AnnotatedSentence(id=sent_id, text=text, tokens=tokens)


def write_conllu(sentences):
    """Serialize sentences back to extended CoNLL-U text."""
    blocks = []
    for sent in sentences:
        lines = [f"# sent_id = {sent.id}", f"# text = {sent.text}"]
        for tok in sent.tokens:
            misc = f"NER={tok.ner}" if tok.ner != "O" else "_"
            lines.append("\t".join([
                str(tok.index), tok.form, tok.lemma, tok.upos, "_", "_",
                str(tok.head), tok.deprel, "_", misc,
            ]))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


@dataclass(frozen=True)
class AmrEntry:
    id: str
    snt: str
    graph: object


def read_amr_corpus(source):
    """Read an AMR corpus file into a list of AmrEntry.

    Entries are separated by blank lines. "# ::id" and "# ::snt" comments are
    honoured; entries without an id get their 1-based position. Multi-line
    PENMAN blocks are joined before parsing.
    """
    lines = _as_lines(source)
    entries = []
    seen_ids = set()
    comments = {}
    graph_lines = []

    def flush():
        if not graph_lines and not comments:
            return
        position = len(entries) + 1
        if not graph_lines:
            raise FormatError(f"entry {position}: missing PENMAN block")
        entry_id = comments.get("id", str(position))
        if entry_id in seen_ids:
            raise FormatError(f"duplicate corpus id {entry_id!r}")
        seen_ids.add(entry_id)
        text = "\n".join(graph_lines)
        try:
            graph = parse_penman(text)
        except FormatError as exc:
            raise FormatError(f"entry {entry_id!r}: {exc}") from exc
        entries.append(AmrEntry(id=entry_id, snt=comments.get("snt", ""), graph=graph))
        comments.clear()
        graph_lines.clear()

    for raw in lines:
        line = raw.rstrip("\r")
        if not line.strip():
            flush()
            continue
        if line.lstrip().startswith("#"):
            body = line.lstrip()[1:].strip()
            if body.startswith("::"):
                key, _, value = body[2:].partition(" ")
                comments[key] = value.strip()
            continue
        graph_lines.append(line)
    flush()
    return entries


def write_amr_corpus(entries):
    """Serialize (id, snt, graph) entries to AMR corpus text."""
    blocks = []
    for entry in entries:
        lines = [f"# ::id {entry.id}"]
        if entry.snt:
            lines.append(f"# ::snt {entry.snt}")
        lines.append(serialize_penman(entry.graph))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


class EmbeddingTable:
    """Token to vector lookup with lowercase fallback for unknown tokens."""

    def __init__(self, dimension, vectors):
        if dimension < 1:
            raise FormatError("embedding dimension must be positive")
        self.dimension = dimension
        self.vectors = dict(vectors)
        for token, vec in self.vectors.items():
            if vec.shape != (dimension,):
                raise FormatError(
                    f"vector for {token!r} has length {vec.shape[0]}, expected {dimension}")

    def embed(self, token):
        """Exact lookup, then lowercase lookup, then the zero vector."""
        vec = self.vectors.get(token)
        if vec is None:
            vec = self.vectors.get(token.lower())
        if vec is None:
            return np.zeros(self.dimension)
        return vec

    def __contains__(self, token):
        return token in self.vectors

    def __len__(self):
        return len(self.vectors)


def load_embeddings(source):
    """Parse word2vec text format into an EmbeddingTable.

    A first line of exactly two integers is treated as the optional
    count/dimension header and skipped; the dimension is always inferred
    from the first vector line. Later duplicates of a token overwrite
    earlier ones.
    """
    lines = [line for line in _as_lines(source)]
    vectors = {}
    dimension = None
    start = 0
    for i, line in enumerate(lines):
        parts = line.split()
        if not parts:
            continue
        if len(parts) == 2 and all(_is_int(p) for p in parts):
            start = i + 1
        break
    for line_no, line in enumerate(lines[start:], start=start + 1):
        parts = line.split()
        if not parts:
            continue
        token = parts[0]
        if len(parts) < 2:
            raise FormatError(f"line {line_no}: no vector components for {token!r}")
        if dimension is None:
            dimension = len(parts) - 1
        elif len(parts) - 1 != dimension:
            raise FormatError(
                f"line {line_no}: vector for {token!r} has length {len(parts) - 1}, "
                f"expected {dimension}")
        try:
            vectors[token] = np.array([float(p) for p in parts[1:]], dtype=np.float64)
        except ValueError:
            raise FormatError(
                f"line {line_no}: non-numeric component for {token!r}") from None
    if dimension is None:
        raise FormatError("embedding file contains no vectors")
    return EmbeddingTable(dimension, vectors)


def _is_int(text):
    try:
        int(text)
    except ValueError:
        return False
    return True
