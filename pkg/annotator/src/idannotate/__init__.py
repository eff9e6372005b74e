"""Annotation adapter: raw Indonesian text to extended CoNLL-U.

The adapter exists so the parsing toolkit next door has reproducible
input: model choices are pinned in a manifest, the bundled lexicon
backend is fully deterministic, and output is ordered by input line.
"""

from idannotate.backends import (BACKEND_NAMES, LexiconBackend, Manifest,
                                 StanzaBackend, load_backend, load_manifest)
from idannotate.cli import annotate_corpus, conllu_block, split_line
from idannotate.errors import (AnnotateError, CannotAnnotate, ConfigError,
                               FormatError)
from idannotate.lexicon import (Analysis, Lexicon, annotate_sentence, attach,
                                tokenize, verb_lemma_candidates)

__version__ = "0.1.0"

__all__ = [
    "Analysis", "AnnotateError", "BACKEND_NAMES", "CannotAnnotate",
    "ConfigError", "FormatError", "Lexicon", "LexiconBackend", "Manifest",
    "StanzaBackend", "annotate_corpus", "annotate_sentence", "attach",
    "conllu_block", "load_backend", "load_manifest", "split_line",
    "tokenize", "verb_lemma_candidates",
]
