"""Parse a PENMAN string, inspect the graph, and serialize it back.

The serializer emits a canonical layout (children ordered as parsed,
four-space indentation per depth level), so parse -> serialize -> parse
is stable: the second pass reproduces the first exactly.
"""

from idamr import PenmanParseError, parse_penman, serialize_penman, to_triples

TEXT = """\
(m / makan
    :ARG0 (a / aku)
    :ARG1 (k / kue)
    :location (t / teras
        :mod (d / di)))"""


def main():
    graph = parse_penman(TEXT)
    print(f"root variable: {graph.root}")
    print(f"nodes: {len(graph.nodes)}, edges: {len(graph.edges)}")
    for node in graph.nodes:
        print(f"  {node.variable} / {node.concept}")

    triples = to_triples(graph)
    print(f"\ntriples ({len(triples)} total, top = {triples.top}):")
    for variable, concept in triples.instances:
        print(f"  (instance, {variable}, {concept})")
    for label, source, target in triples.relations:
        print(f"  ({label}, {source}, {target})")

    rendered = serialize_penman(graph)
    print("\nserialized form:")
    print(rendered)
    again = serialize_penman(parse_penman(rendered))
    print(f"\nround trip stable: {rendered == again}")

    try:
        parse_penman("(a / x :ARG0 (b / y)")
    except PenmanParseError as err:
        print(f"\nunbalanced input is rejected: {err}")


if __name__ == "__main__":
    main()
