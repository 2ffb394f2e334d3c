"""Word-list loading for the tagger and the feature extractor.

Lexicons are plain UTF-8 text files, one lowercase entry per line, with
'#' comment lines. They live in the package's ``data/`` directory by
default; a different directory can be supplied explicitly or through the
``SARCNET_LEXICONS`` environment variable. The combined digest of all
files is carried into output artifacts for provenance tracking.
"""

import hashlib
import os
from dataclasses import dataclass, fields
from functools import lru_cache
from pathlib import Path

from .errors import DataError

ENV_LEXICON_DIR = "SARCNET_LEXICONS"

DEFAULT_LEXICON_DIR = Path(__file__).parent / "data"

# dataclass field name -> file name
LEXICON_FILES = {
    "interjections": "interjections.txt",
    "personal_pronouns": "pronouns_personal.txt",
    "possessive_pronouns": "pronouns_possessive.txt",
    "determiners": "determiners.txt",
    "prepositions": "prepositions.txt",
    "conjunctions": "conjunctions.txt",
    "invocations": "invocations.txt",
    "intensifiers": "intensifiers.txt",
    "positive_words": "positive_words.txt",
    "negative_words": "negative_words.txt",
    "second_person": "second_person.txt",
    "first_person_plural": "first_person_plural.txt",
}


@dataclass(frozen=True)
class Lexicons:
    """All closed-class and sentiment word sets, plus their combined digest."""

    interjections: frozenset
    personal_pronouns: frozenset
    possessive_pronouns: frozenset
    determiners: frozenset
    prepositions: frozenset
    conjunctions: frozenset
    invocations: frozenset
    intensifiers: frozenset
    positive_words: frozenset
    negative_words: frozenset
    second_person: frozenset
    first_person_plural: frozenset
    digest: str


def _parse_wordlist(raw: str) -> frozenset:
    words = set()
    for line in raw.splitlines():
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        words.add(entry.lower())
    return frozenset(words)


def resolve_lexicon_dir(directory: str | Path | None = None) -> Path:
    """Explicit argument wins, then the environment variable, then the bundled data."""
    if directory is not None:
        return Path(directory)
    env = os.environ.get(ENV_LEXICON_DIR)
    if env:
        return Path(env)
    return DEFAULT_LEXICON_DIR


def load_lexicons(directory: str | Path | None = None) -> Lexicons:
    base = resolve_lexicon_dir(directory)
    if not base.is_dir():
        raise DataError(f"lexicon directory not found: {base}")
    sets = {}
    digest = hashlib.sha256()
    for field_name in sorted(LEXICON_FILES):
        path = base / LEXICON_FILES[field_name]
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise DataError(f"missing lexicon file: {path}") from exc
        digest.update(LEXICON_FILES[field_name].encode("utf-8"))
        digest.update(b"\x00")
        digest.update(raw)
        digest.update(b"\x00")
        sets[field_name] = _parse_wordlist(raw.decode("utf-8"))
    return Lexicons(digest=digest.hexdigest(), **sets)


@lru_cache(maxsize=4)
def _cached(resolved: str) -> Lexicons:
    return load_lexicons(resolved)


def default_lexicons() -> Lexicons:
    """Cached load of the currently configured lexicon directory."""
    return _cached(str(resolve_lexicon_dir().resolve()))


def lexicon_field_names() -> tuple:
    return tuple(f.name for f in fields(Lexicons) if f.name != "digest")
