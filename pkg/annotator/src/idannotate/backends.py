"""Annotation backends and the manifest that pins them.

The manifest (models.lock) is a JSON object naming the backend and, per
backend, the exact model resources it is allowed to use. The bundled
"lexicon" backend is pinned by the content hash of its lexicon file; the
"stanza" backend is pinned by package version and processor list and
refuses to run when the package or its Indonesian models are missing,
because silently substituting models would make annotations
irreproducible.
"""

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from idannotate.errors import ConfigError
from idannotate.lexicon import Lexicon, annotate_sentence

BACKEND_NAMES = ("lexicon", "stanza")


@dataclass(frozen=True)
class Manifest:
    backend: str
    models: dict

    def entry(self):
        entry = self.models.get(self.backend)
        if not isinstance(entry, dict):
            raise ConfigError(
                f"manifest has no model entry for backend {self.backend!r}")
        return entry


def load_manifest(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"manifest {path}: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"manifest {path} is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise ConfigError(f"manifest {path} must be a JSON object")
    backend = doc.get("backend")
    if backend not in BACKEND_NAMES:
        raise ConfigError(
            f"unknown backend {backend!r}; expected one of "
            f"{', '.join(BACKEND_NAMES)}")
    models = doc.get("models")
    if not isinstance(models, dict):
        raise ConfigError(f"manifest {path} needs a \"models\" object")
    return Manifest(backend=backend, models=models)


class LexiconBackend:
    """The bundled deterministic analyzer; see the lexicon module."""

    def __init__(self, manifest):
        entry = manifest.entry()
        for key in ("resource", "version", "sha256"):
            if key not in entry:
                raise ConfigError(f"lexicon model entry needs {key!r}")
        data = resources.files("idannotate").joinpath(
            "data/lexicon.json").read_bytes()
        digest = hashlib.sha256(data).hexdigest()
        if digest != entry["sha256"]:
            raise ConfigError(
                "bundled lexicon does not match the manifest pin "
                f"(sha256 {digest}, pinned {entry['sha256']})")
        self.lexicon = Lexicon(json.loads(data.decode("utf-8")))

    def annotate(self, text):
        return annotate_sentence(text, self.lexicon)


class StanzaBackend:
    """Wrapper over the stanza pipeline named in the manifest.

    Models must already exist locally; this backend never downloads
    anything.
    """

    def __init__(self, manifest):
        entry = manifest.entry()
        for key in ("version", "lang", "processors"):
            if key not in entry:
                raise ConfigError(f"stanza model entry needs {key!r}")
        try:
            import stanza
        except ImportError:
            raise ConfigError(
                f"backend 'stanza' is pinned to stanza {entry['version']} "
                "but the package is not installed")
        if stanza.__version__ != entry["version"]:
            raise ConfigError(
                f"installed stanza {stanza.__version__} does not match the "
                f"pinned version {entry['version']}")
        try:
            self.pipeline = stanza.Pipeline(
                lang=entry["lang"], processors=entry["processors"],
                download_method=None, verbose=False,
                tokenize_no_ssplit=True)
        except Exception as exc:
            raise ConfigError(
                f"cannot load stanza models for language "
                f"{entry['lang']!r}: {exc}")

    def annotate(self, text):
        from idannotate.lexicon import Analysis
        doc = self.pipeline(text)
        rows = []
        offset = 0
        for sentence in doc.sentences:
            for word in sentence.words:
                ner = getattr(word.parent, "ner", "O") or "O"
                ner = ner.split("-", 1)[-1] if ner != "O" else "O"
                head = word.head + offset if word.head else 0
                rows.append(Analysis(
                    form=word.text, lemma=word.lemma or word.text.lower(),
                    upos=word.upos or "X", ner=ner,
                    head=head, deprel=word.deprel or "dep"))
            offset += len(sentence.words)
        return rows


def load_backend(manifest_path):
    manifest = load_manifest(manifest_path)
    if manifest.backend == "lexicon":
        return LexiconBackend(manifest)
    return StanzaBackend(manifest)
