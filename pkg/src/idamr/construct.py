"""Assemble an AMR tree from surviving dependency pairs and their labels.

The graph mirrors the dependency structure that survived filtering: the
selected root becomes vv1, tokens reachable through surviving pairs become
nodes named in depth-first visit order, and each edge carries its predicted
label. Pairs cut off from the root are dropped, not re-attached; the
classifier never scored a connection for them.
"""

from dataclasses import dataclass

from idamr.errors import GraphError
from idamr.graph import AmrEdge, AmrGraph, AmrNode, _FORBIDDEN_IN_CONCEPT
from idamr.pairs import DepPair


@dataclass(frozen=True)
class LabeledPair:
    pair: DepPair
    label: str
    confidence: float

    def __post_init__(self):
        if not 0.0 <= self.confidence <= 1.0:
            raise GraphError(
                f"confidence {self.confidence} outside [0, 1]")


def _concept(lemma):
    """Lemmas become concepts verbatim unless they contain PENMAN delimiter
    characters, which are replaced to keep the output parseable."""
    cleaned = "".join("-" if ch in _FORBIDDEN_IN_CONCEPT else ch
                      for ch in lemma)
    return cleaned if cleaned else "unknown"


def select_root(pairs, sentence):
    """The dependency root, unless filtering removed all its pairs; then the
    token with the most surviving out-pairs, ties by lowest index."""
    root = sentence.root
    if not pairs:
        return root
    for lp in pairs:
        if root.index in (lp.pair.parent.index, lp.pair.child.index):
            return root
    counts = {}
    for lp in pairs:
        counts[lp.pair.parent.index] = counts.get(lp.pair.parent.index, 0) + 1
    best_index = min(idx for idx, c in counts.items()
                     if c == max(counts.values()))
    return sentence.token(best_index)


def build_graph(pairs, sentence):
    """Depth-first tree construction over pairs reachable from the root.

    Variables are assigned vv1, vv2, ... in visit order; a node's children
    are visited in child token-index order. An isolated root yields a
    single-node graph.
    """
    root_token = select_root(pairs, sentence)
    children = {}
    for lp in pairs:
        children.setdefault(lp.pair.parent.index, []).append(lp)
    for index in children:
        children[index].sort(key=lambda lp: lp.pair.child.index)

    nodes = []
    edges = []
    variables = {}

    def visit(token):
        var = f"vv{len(nodes) + 1}"
        variables[token.index] = var
        nodes.append(AmrNode(variable=var, concept=_concept(token.lemma)))
        for lp in children.get(token.index, ()):
            child = lp.pair.child
            if child.index in variables:
                continue
            # visit() assigns the next vv number immediately, so the child's
            # variable is known before descending
            edges.append(AmrEdge(source=var, target=f"vv{len(nodes) + 1}",
                                 label=lp.label))
            visit(child)

    visit(root_token)
    return AmrGraph(nodes=tuple(nodes), edges=tuple(edges),
                    root=variables[root_token.index])
