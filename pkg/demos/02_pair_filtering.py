"""Extract parent-child pairs from a dependency tree and filter them.

The filter rules drop pairs whose parent or child looks like a determiner,
a preposition, or a subordinating conjunction. Each rule matches on the
token's universal POS tag or on its lowercased surface form, so "di"
tagged ADP is removed by the preposition rule twice over.
"""

from idamr import (RULE_COMBINATIONS, FilterRuleSet, apply_filter,
                   extract_pairs, read_conllu)
from idamr.pairs import combination_label

SENTENCE = """\
# sent_id = demo
# text = Aku makan kue di teras
1\tAku\taku\tPRON\t_\t_\t2\tnsubj\t_\t_
2\tmakan\tmakan\tVERB\t_\t_\t0\troot\t_\t_
3\tkue\tkue\tNOUN\t_\t_\t2\tobj\t_\t_
4\tdi\tdi\tADP\t_\t_\t5\tcase\t_\t_
5\tteras\tteras\tNOUN\t_\t_\t2\tobl\t_\t_
"""


def describe(pairs):
    return ", ".join(f"{p.parent.lemma}->{p.child.lemma}" for p in pairs)


def main():
    (sentence,) = read_conllu(SENTENCE)
    pairs = extract_pairs(sentence)
    print(f"extracted {len(pairs)} pairs: {describe(pairs)}")

    for names in RULE_COMBINATIONS:
        rules = FilterRuleSet.default(enabled=names)
        kept = apply_filter(pairs, rules)
        print(f"  {combination_label(names):<16} keeps {len(kept)}: "
              f"{describe(kept)}")

    print("\nthe preposition rule removes teras->di because the child is ADP;")
    print("the other three pairs touch no determiner, preposition, or")
    print("subordinating conjunction, so every combination keeps them.")


if __name__ == "__main__":
    main()
