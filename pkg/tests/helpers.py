"""Shared test helpers: seeded random AMR trees in PENMAN text form."""

import numpy as np

from idamr.graph import CORE_LABELS, parse_penman

CONCEPTS = ("makan", "kue", "rumah", "tidur", "besar", "anak",
            "lihat", "kota", "pagi", "baju")


def random_penman(rng, max_nodes=10, concepts=CONCEPTS):
    """A random rooted tree rendered as PENMAN text.

    Concepts repeat (small vocabulary), so mapping two such trees is not
    concept-unique and the alignment search has real work to do. Whitespace
    is varied a little to exercise the tokenizer.
    """
    n = int(rng.integers(1, max_nodes + 1))
    parents = [None] + [int(rng.integers(0, i)) for i in range(1, n)]
    concept = [concepts[int(rng.integers(0, len(concepts)))] for _ in range(n)]
    labels = [CORE_LABELS[int(rng.integers(0, len(CORE_LABELS)))]
              for _ in range(n)]
    children = {}
    for i in range(1, n):
        children.setdefault(parents[i], []).append(i)

    def render(i):
        sep = " " if rng.integers(0, 2) else "  "
        text = f"(n{i + 1} / {concept[i]}"
        for c in children.get(i, ()):
            text += f"{sep}:{labels[c]}{sep}{render(c)}"
        return text + ")"

    return render(0)


def random_graph(rng, max_nodes=10, concepts=CONCEPTS):
    return parse_penman(random_penman(rng, max_nodes, concepts))


def rng_for(seed):
    return np.random.default_rng(seed)
