"""Command line entry point: raw Indonesian text in, extended CoNLL-U out.

One sentence per input line, optionally prefixed "id<TAB>sentence".
Sentences are processed in input order and output blocks keep the line
order. Lines the backend cannot annotate are skipped with a warning and
listed in a sidecar report next to the output file. Punctuation tokens
are kept; removing them is the consumer's job.

Exit codes: 0 success, 1 unreadable or malformed input, 2 configuration
problems including models that fail to load.
"""

import argparse
import json
import sys
from pathlib import Path

from idannotate.backends import load_backend
from idannotate.errors import CannotAnnotate, ConfigError, FormatError


def split_line(line, lineno):
    """(sentence id, sentence text) for one non-blank input line."""
    if "\t" in line:
        sid, text = line.split("\t", 1)
        sid = sid.strip()
        text = text.strip()
        if not sid or not text:
            raise FormatError(
                f"line {lineno}: id-prefixed lines need both an id and a "
                "sentence")
        return sid, text
    return f"s{lineno}", line.strip()


def conllu_block(sid, text, rows):
    lines = [f"# sent_id = {sid}", f"# text = {text}"]
    for i, row in enumerate(rows, start=1):
        lines.append("\t".join([
            str(i), row.form, row.lemma, row.upos, "_", "_",
            str(row.head), row.deprel, "_", f"NER={row.ner}"]))
    return "\n".join(lines) + "\n"


def annotate_corpus(text, backend):
    """(CoNLL-U blocks, skipped line records) for a raw corpus."""
    blocks = []
    skipped = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line.strip():
            continue
        sid, sentence = split_line(line, lineno)
        try:
            rows = backend.annotate(sentence)
        except CannotAnnotate as exc:
            skipped.append({"id": sid, "line": lineno, "reason": str(exc),
                            "text": sentence})
            continue
        blocks.append(conllu_block(sid, sentence, rows))
    return blocks, skipped


def build_parser():
    parser = argparse.ArgumentParser(
        prog="annotate",
        description="Annotate raw Indonesian text (one sentence per line) "
                    "into the extended CoNLL-U format.")
    parser.add_argument("--in", dest="infile", required=True,
                        help="raw text file; optional 'id<TAB>sentence' lines")
    parser.add_argument("--out", required=True,
                        help="extended CoNLL-U file to write")
    parser.add_argument("--manifest", required=True,
                        help="JSON manifest pinning the annotation models")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        backend = load_backend(args.manifest)
        raw = Path(args.infile).read_text(encoding="utf-8")
        blocks, skipped = annotate_corpus(raw, backend)
        Path(args.out).write_text("\n".join(blocks), encoding="utf-8")
        if skipped:
            for record in skipped:
                print(f"warning: skipping line {record['line']} "
                      f"({record['id']}): {record['reason']}",
                      file=sys.stderr)
            sidecar = Path(args.out + ".skipped.json")
            sidecar.write_text(
                json.dumps(skipped, sort_keys=True,
                           separators=(",", ":")) + "\n",
                encoding="utf-8")
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
