"""The 15-feature sarcasm catalog: counting and normalization.

Features fall into four categories. Keyword features count lexicon hits
(interjections, invocations, intensifiers, sentiment words) plus a
sentiment-contrast flag. Punctuation features classify punctuation-run
and ellipsis tokens. Orthographic features catch shouted (all-caps) and
elongated ("sooooo") words. Person-reference features count second-person
and first-person-plural pronouns.

Raw counts are turned into network inputs by dividing each rate feature
by the word count and clipping at 1; flags pass through unchanged. A
review with no words maps to the zero vector.
"""

import csv
import enum
from dataclasses import dataclass

import numpy as np

from .lexicons import Lexicons, default_lexicons
from .text import PosTag, TaggedToken, TokenKind, pos_tag, tokenize

N_FEATURES = 15


class FeatureCategory(enum.Enum):
    KEYWORD = "Keyword"
    PUNCTUATION = "Punctuation"
    ORTHOGRAPHIC = "Orthographic"
    PERSON_REFERENCE = "PersonReference"


class FeatureKind(enum.Enum):
    RATE = "rate"
    FLAG = "flag"


@dataclass(frozen=True)
class FeatureDescriptor:
    id: str
    name: str
    category: FeatureCategory
    kind: FeatureKind
    definition: str


_CATALOG = (
    FeatureDescriptor("f1", "interjection_rate", FeatureCategory.KEYWORD, FeatureKind.RATE,
                      "words tagged UH (laughter forms and the interjection lexicon)"),
    FeatureDescriptor("f2", "invocation_rate", FeatureCategory.KEYWORD, FeatureKind.RATE,
                      "words in the invocation lexicon (god, gosh, ...)"),
    FeatureDescriptor("f3", "intensifier_rate", FeatureCategory.KEYWORD, FeatureKind.RATE,
                      "words in the intensifier lexicon (so, really, ...)"),
    FeatureDescriptor("f4", "positive_word_rate", FeatureCategory.KEYWORD, FeatureKind.RATE,
                      "words in the positive-sentiment lexicon"),
    FeatureDescriptor("f5", "negative_word_rate", FeatureCategory.KEYWORD, FeatureKind.RATE,
                      "words in the negative-sentiment lexicon"),
    FeatureDescriptor("f6", "sentiment_contrast", FeatureCategory.KEYWORD, FeatureKind.FLAG,
                      "1 when the review has both a positive and a negative word"),
    FeatureDescriptor("f7", "multi_exclamation_rate", FeatureCategory.PUNCTUATION, FeatureKind.RATE,
                      "punctuation runs of two or more '!'"),
    FeatureDescriptor("f8", "multi_question_rate", FeatureCategory.PUNCTUATION, FeatureKind.RATE,
                      "punctuation runs of two or more '?'"),
    FeatureDescriptor("f9", "mixed_run_rate", FeatureCategory.PUNCTUATION, FeatureKind.RATE,
                      "punctuation runs containing both '!' and '?'"),
    FeatureDescriptor("f10", "ellipsis_rate", FeatureCategory.PUNCTUATION, FeatureKind.RATE,
                      "ellipsis tokens ('...' or the one-character form)"),
    FeatureDescriptor("f11", "single_exclamation_rate", FeatureCategory.PUNCTUATION, FeatureKind.RATE,
                      "punctuation runs that are exactly one '!'"),
    FeatureDescriptor("f12", "all_caps_rate", FeatureCategory.ORTHOGRAPHIC, FeatureKind.RATE,
                      "words of length >= 2 made entirely of uppercase letters"),
    FeatureDescriptor("f13", "elongated_rate", FeatureCategory.ORTHOGRAPHIC, FeatureKind.RATE,
                      "words with three or more identical consecutive letters"),
    FeatureDescriptor("f14", "second_person_rate", FeatureCategory.PERSON_REFERENCE, FeatureKind.RATE,
                      "second-person pronouns (you, your, yours, u)"),
    FeatureDescriptor("f15", "first_person_plural_rate", FeatureCategory.PERSON_REFERENCE, FeatureKind.RATE,
                      "first-person-plural pronouns (we, us, our, ours)"),
)


def catalog() -> tuple:
    """The fixed, ordered feature catalog. Order defines vector layout."""
    return _CATALOG


def feature_names() -> list:
    return [d.name for d in _CATALOG]


@dataclass(frozen=True)
class FeatureCounts:
    f1: int = 0
    f2: int = 0
    f3: int = 0
    f4: int = 0
    f5: int = 0
    f6: int = 0
    f7: int = 0
    f8: int = 0
    f9: int = 0
    f10: int = 0
    f11: int = 0
    f12: int = 0
    f13: int = 0
    f14: int = 0
    f15: int = 0
    word_count: int = 0

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, d.id) for d in _CATALOG], dtype=float)


def _is_all_caps(surface: str) -> bool:
    return len(surface) >= 2 and surface.isalpha() and surface.isupper()


def _is_elongated(surface: str) -> bool:
    run = 1
    for prev, cur in zip(surface, surface[1:]):
        if cur == prev and cur.isalpha():
            run += 1
            if run >= 3:
                return True
        else:
            run = 1
    return False


def extract_counts(tagged: list, lexicons: Lexicons | None = None) -> FeatureCounts:
    """Count every catalog feature over one review's tagged tokens."""
    lex = lexicons if lexicons is not None else default_lexicons()
    c = dict.fromkeys([d.id for d in _CATALOG], 0)
    word_count = 0
    for tt in tagged:
        token = tt.token
        if token.kind is TokenKind.WORD:
            word_count += 1
            lower = token.surface.lower()
            if tt.tag is PosTag.UH:
                c["f1"] += 1
            if lower in lex.invocations:
                c["f2"] += 1
            if lower in lex.intensifiers:
                c["f3"] += 1
            if lower in lex.positive_words:
                c["f4"] += 1
            if lower in lex.negative_words:
                c["f5"] += 1
            if _is_all_caps(token.surface):
                c["f12"] += 1
            if _is_elongated(token.surface):
                c["f13"] += 1
            if lower in lex.second_person:
                c["f14"] += 1
            if lower in lex.first_person_plural:
                c["f15"] += 1
        elif token.kind is TokenKind.PUNCT_RUN:
            s = token.surface
            if "!" in s and "?" in s:
                c["f9"] += 1
            elif s == "!":
                c["f11"] += 1
            elif "!" in s:
                c["f7"] += 1
            elif len(s) >= 2:
                c["f8"] += 1
        elif token.kind is TokenKind.ELLIPSIS:
            c["f10"] += 1
    c["f6"] = 1 if c["f4"] > 0 and c["f5"] > 0 else 0
    return FeatureCounts(word_count=word_count, **c)


def normalize(counts: FeatureCounts) -> np.ndarray:
    """Map raw counts to the 15-component vector in [0, 1]."""
    if counts.word_count == 0:
        return np.zeros(N_FEATURES)
    out = np.empty(N_FEATURES)
    for i, desc in enumerate(_CATALOG):
        raw = getattr(counts, desc.id)
        if desc.kind is FeatureKind.FLAG:
            out[i] = float(raw)
        else:
            out[i] = min(1.0, raw / counts.word_count)
    return out


class FeaturePipeline:
    """text -> tokenize -> tag -> count -> normalize, with one lexicon set.

    Instances are cheap and stateless beyond the lexicons, so one pipeline
    can serve a whole corpus (and is safe to share across threads).
    """

    def __init__(self, lexicons: Lexicons | None = None):
        self.lexicons = lexicons if lexicons is not None else default_lexicons()

    def counts(self, text: str) -> FeatureCounts:
        return extract_counts(pos_tag(tokenize(text), self.lexicons), self.lexicons)

    def vector(self, text: str) -> np.ndarray:
        return normalize(self.counts(text))


def write_feature_dump(path, rows, provenance=None) -> None:
    """Write a feature dump: '#' provenance stanza, then a CSV table.

    ``rows`` yields (review_id, label, FeatureCounts, vector) tuples; label
    may be None for unlabeled reviews. Values are printed with 10 decimal
    digits of mantissa so a reread loses nothing at float32 scale.
    """
    names = feature_names()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in provenance or []:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["review_id", "word_count", "label"] + names)
        for review_id, label, counts, vector in rows:
            label_field = "" if label is None else str(int(label))
            writer.writerow(
                [review_id, counts.word_count, label_field]
                + [f"{v:.10e}" for v in vector]
            )


def read_feature_dump(path):
    """Read back a feature dump as (provenance_lines, list of row dicts)."""
    provenance = []
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        data_lines = []
        for line in fh:
            if line.startswith("#"):
                provenance.append(line[1:].strip())
            else:
                data_lines.append(line)
        reader = csv.DictReader(data_lines)
        for record in reader:
            vector = np.array([float(record[name]) for name in feature_names()])
            rows.append(
                {
                    "review_id": record["review_id"],
                    "word_count": int(record["word_count"]),
                    "label": None if record["label"] == "" else int(record["label"]),
                    "vector": vector,
                }
            )
    return provenance, rows
