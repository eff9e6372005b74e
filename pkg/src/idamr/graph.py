"""AMR graph model: construction, PENMAN reading and writing, triple form.

Graphs are validated eagerly, so every AmrGraph in the system carries the
same guarantees: unique variables, every node reachable from the root along
directed edges, no directed cycles, and no repeated (source, target, label)
edge. Node order is first-mention order and edge order is the order edges
were added, which for parsed text is PENMAN nesting order; the serializer
walks depth-first from the root emitting children in that order, so
parse(serialize(g)) reproduces g exactly.
"""

import re
from dataclasses import dataclass

from idamr.errors import GraphError, PenmanParseError

# Closed relation inventory of the annotation scheme. Edge labels outside
# this set are still legal on a graph so foreign corpora round-trip.
CORE_LABELS = ("ARG0", "ARG1", "name", "time", "location", "mod")

_VARIABLE_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
# Characters that would break re-parsing if they appeared inside a concept.
_FORBIDDEN_IN_CONCEPT = set(' \t\r\n()/:"')


@dataclass(frozen=True)
class AmrNode:
    variable: str
    concept: str


@dataclass(frozen=True)
class AmrEdge:
    source: str
    target: str
    label: str


@dataclass(frozen=True)
class TripleSet:
    """SMATCH-style decomposition of a graph.

    instances holds (variable, concept) pairs, relations holds
    (label, source, target) triples, and top names the root variable.
    """

    instances: tuple
    relations: tuple
    top: str

    def __len__(self):
        return len(self.instances) + len(self.relations) + 1


def _check_concept(concept):
    if not concept:
        raise GraphError("empty concept")
    bad = _FORBIDDEN_IN_CONCEPT.intersection(concept)
    if bad:
        raise GraphError(
            f"concept {concept!r} contains forbidden character {sorted(bad)[0]!r}")


class AmrGraph:
    """Rooted, directed, acyclic graph of concept nodes."""

    def __init__(self, nodes, edges, root):
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)
        self.root = root
        self._concepts = {}
        self._validate()

    def _validate(self):
        if not self.nodes:
            raise GraphError("graph has no nodes")
        for node in self.nodes:
            if not _VARIABLE_RE.match(node.variable):
                raise GraphError(f"invalid variable name {node.variable!r}")
            _check_concept(node.concept)
            if node.variable in self._concepts:
                raise GraphError(f"duplicate variable {node.variable!r}")
            self._concepts[node.variable] = node.concept
        if self.root not in self._concepts:
            raise GraphError(f"root {self.root!r} is not a node")

        seen_edges = set()
        out = {v: [] for v in self._concepts}
        for edge in self.edges:
            if edge.source == edge.target:
                raise GraphError(f"self edge on {edge.source!r}")
            for endpoint in (edge.source, edge.target):
                if endpoint not in self._concepts:
                    raise GraphError(f"edge endpoint {endpoint!r} is not a node")
            key = (edge.source, edge.target, edge.label)
            if key in seen_edges:
                raise GraphError(
                    f"duplicate edge {edge.source} -{edge.label}-> {edge.target}")
            seen_edges.add(key)
            out[edge.source].append(edge)
        self._out = out

        # Reachability from the root doubles as the connectivity check and
        # is what makes every valid graph expressible in PENMAN.
        reached = {self.root}
        stack = [self.root]
        while stack:
            for edge in out[stack.pop()]:
                if edge.target not in reached:
                    reached.add(edge.target)
                    stack.append(edge.target)
        if len(reached) != len(self.nodes):
            missing = sorted(set(self._concepts) - reached)
            raise GraphError(f"node {missing[0]!r} is unreachable from the root")

        # Cycle check over directed edges (iterative colouring).
        state = {}  # 1 = on stack, 2 = done
        for start in self._concepts:
            if state.get(start):
                continue
            stack = [(start, 0)]
            while stack:
                var, i = stack.pop()
                if i == 0:
                    state[var] = 1
                targets = out[var]
                if i < len(targets):
                    stack.append((var, i + 1))
                    nxt = targets[i].target
                    if state.get(nxt) == 1:
                        raise GraphError(f"cycle through {nxt!r}")
                    if not state.get(nxt):
                        stack.append((nxt, 0))
                else:
                    state[var] = 2

    def variables(self):
        return tuple(node.variable for node in self.nodes)

    def concept(self, variable):
        return self._concepts[variable]

    def out_edges(self, variable):
        return tuple(self._out[variable])

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        """Structural equality: node set, root, and ordered edge list."""
        if not isinstance(other, AmrGraph):
            return NotImplemented
        return (set(self.nodes) == set(other.nodes)
                and self.root == other.root
                and self.edges == other.edges)

    def __repr__(self):
        return f"AmrGraph({len(self.nodes)} nodes, {len(self.edges)} edges, root={self.root!r})"


# ---------------------------------------------------------------------------
# PENMAN reading

_TOKEN_RE = re.compile(r'\(|\)|/|"[^"\n]*"|:[^\s()/:"]*|[^\s()/:"]+')


def _tokenize(text):
    tokens = []
    for line_no, line in enumerate(text.split("\n"), start=1):
        pos = 0
        while pos < len(line):
            if line[pos] in " \t\r":
                pos += 1
                continue
            m = _TOKEN_RE.match(line, pos)
            if m is None:
                raise PenmanParseError(
                    f"unexpected character {line[pos]!r}", line_no, pos + 1)
            tokens.append((m.group(), line_no, pos + 1))
            pos = m.end()
    return tokens


def parse_penman(text):
    """Parse one PENMAN block into an AmrGraph.

    Re-mentions of an already defined variable become re-entrant edges.
    Bare atoms and quoted strings that never get a definition are constants
    and are wrapped in fresh concept nodes so that everything downstream
    deals with nodes only.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PenmanParseError("empty input", 1, 1)

    node_order = []  # variables in definition order
    concepts = {}
    raw_edges = []   # [label, source, target-or-placeholder]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, *_end_position())

    def _end_position():
        tok, line, col = tokens[-1]
        return line, col + len(tok)

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_node():
        nonlocal pos
        tok, line, col = advance()
        if tok != "(":
            raise PenmanParseError(f"expected '(' but found {tok!r}", line, col)
        tok, line, col = peek()
        if tok is None or tok in "()/" or tok.startswith(":") or tok.startswith('"'):
            raise PenmanParseError("expected a variable", line, col)
        advance()
        variable = tok
        if not _VARIABLE_RE.match(variable):
            raise PenmanParseError(f"invalid variable name {variable!r}", line, col)
        if variable in concepts:
            raise PenmanParseError(
                f"duplicate definition of variable {variable!r}", line, col)
        tok, line, col = peek()
        if tok != "/":
            raise PenmanParseError(
                f"expected '/' after variable {variable!r}", line, col)
        advance()
        tok, line, col = peek()
        if tok is None or tok == ")" or tok == "/" or tok.startswith(":") or tok == "(":
            raise PenmanParseError("empty concept", line, col)
        advance()
        if tok.startswith('"'):
            raise PenmanParseError("concept must be an unquoted atom", line, col)
        concepts[variable] = tok
        node_order.append(variable)

        while True:
            tok, line, col = peek()
            if tok is None:
                raise PenmanParseError("unbalanced parentheses: missing ')'", line, col)
            if tok == ")":
                advance()
                return variable
            if not tok.startswith(":"):
                raise PenmanParseError(
                    f"edge label missing leading colon before {tok!r}", line, col)
            advance()
            label = tok[1:]
            if not label:
                raise PenmanParseError("empty edge label", line, col)
            tok, tline, tcol = peek()
            if tok == "(":
                child = parse_node()
                raw_edges.append([label, variable, ("node", child)])
            elif tok is None or tok == ")" or tok == "/" or tok.startswith(":"):
                raise PenmanParseError(
                    f"missing target for label :{label}", tline, tcol)
            elif tok.startswith('"'):
                advance()
                raw_edges.append([label, variable, ("const", tok[1:-1], tline, tcol)])
            else:
                advance()
                raw_edges.append([label, variable, ("atom", tok, tline, tcol)])

    root = parse_node()
    if pos < len(tokens):
        tok, line, col = tokens[pos]
        raise PenmanParseError(f"trailing content {tok!r} after graph", line, col)

    # Second pass: atoms naming a defined variable are re-entrant references,
    # everything else is a constant that gets its own node.
    edges = []
    used_names = set(concepts)
    counter = 1
    for label, source, target in raw_edges:
        kind = target[0]
        if kind == "node":
            edges.append(AmrEdge(source, target[1], label))
            continue
        value, line, col = target[1], target[2], target[3]
        if kind == "atom" and value in concepts:
            edges.append(AmrEdge(source, value, label))
            continue
        bad = _FORBIDDEN_IN_CONCEPT.intersection(value)
        if bad or not value:
            raise PenmanParseError(
                f"constant {value!r} cannot be used as a concept", line, col)
        while f"c{counter}" in used_names:
            counter += 1
        fresh = f"c{counter}"
        used_names.add(fresh)
        concepts[fresh] = value
        node_order.append(fresh)
        edges.append(AmrEdge(source, fresh, label))

    nodes = [AmrNode(v, concepts[v]) for v in node_order]
    return AmrGraph(nodes, edges, root)


# ---------------------------------------------------------------------------
# PENMAN writing

def serialize_penman(graph, pretty=False):
    """Render a graph as PENMAN text.

    Output is deterministic: depth-first from the root, children in edge
    order, one space between tokens, a single line. A node already emitted
    is referenced by its bare variable. pretty=True indents one child per
    line for display; the single-line form is the canonical one.
    """
    seen = set()

    def render(variable, depth):
        seen.add(variable)
        pieces = [f"({variable} / {graph.concept(variable)}"]
        for edge in graph.out_edges(variable):
            if edge.target in seen:
                child = edge.target
            else:
                child = render(edge.target, depth + 1)
            if pretty:
                pieces.append("\n" + "    " * (depth + 1) + f":{edge.label} {child}")
            else:
                pieces.append(f" :{edge.label} {child}")
        return "".join(pieces) + ")"

    return render(graph.root, 0)


def to_triples(graph):
    """Decompose a graph into instance, relation, and top triples."""
    instances = tuple((node.variable, node.concept) for node in graph.nodes)
    relations = tuple((edge.label, edge.source, edge.target) for edge in graph.edges)
    return TripleSet(instances=instances, relations=relations, top=graph.root)
