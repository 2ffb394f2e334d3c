"""Review ingestion, sarcasm labels, star buckets, and seeded splits.

Reviews arrive as UTF-8 JSON lines with at least review_id, stars, and
text; extra fields are ignored, which keeps the reader compatible with
Yelp Dataset Challenge review files. Bad lines are collected as
ParseError records instead of aborting, so one mangled record in a
multi-million-line file costs one record, not the run.

Labels are a separate append-only JSON-lines file: one (review_id,
annotator, sarcastic) vote per line. The resolved label is the majority
vote over annotators, with ties going to non-sarcastic. A later line by
the same annotator for the same review supersedes the earlier one.

Splits shuffle a single-star pool with a seeded Fisher-Yates permutation
(``random.Random(seed).shuffle``) and cut it into train/test prefixes,
so identical inputs and seed always give bit-identical membership and
order.
"""

import json
import random
from dataclasses import dataclass

from .errors import DataError


@dataclass(frozen=True)
class Review:
    review_id: str
    stars: int
    text: str


@dataclass(frozen=True)
class SarcasmLabel:
    review_id: str
    sarcastic: bool
    annotator: str


@dataclass(frozen=True)
class LabeledReview:
    review: Review
    sarcastic: bool


@dataclass(frozen=True)
class ParseError:
    line_number: int
    reason: str


@dataclass(frozen=True)
class DatasetSplit:
    stars: int
    train: tuple
    test: tuple
    seed: int


STAR_VALUES = (1, 2, 3, 4, 5)


def _coerce_stars(value):
    """Accept ints and integral floats (Yelp dumps write 5.0); else None."""
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return None


def parse_review_stream(lines) -> tuple:
    """Parse JSON-lines review records into (reviews, parse_errors).

    ``lines`` is any iterable of strings. Valid records keep input order.
    Invalid lines (bad JSON, missing field, stars out of range, blank
    text, duplicate review_id) become ParseError entries; parsing always
    reaches the end of the stream.
    """
    reviews = []
    errors = []
    seen_ids = set()
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(ParseError(line_number, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(record, dict):
            errors.append(ParseError(line_number, "record is not an object"))
            continue
        missing = [k for k in ("review_id", "stars", "text") if k not in record]
        if missing:
            errors.append(ParseError(line_number, f"missing field: {', '.join(missing)}"))
            continue
        review_id = record["review_id"]
        if not isinstance(review_id, str) or not review_id:
            errors.append(ParseError(line_number, "review_id must be a non-empty string"))
            continue
        stars = _coerce_stars(record["stars"])
        if stars is None or stars not in STAR_VALUES:
            errors.append(ParseError(line_number, "stars out of range"))
            continue
        text = record["text"]
        if not isinstance(text, str) or not text.strip():
            errors.append(ParseError(line_number, "empty text"))
            continue
        if review_id in seen_ids:
            errors.append(ParseError(line_number, f"duplicate review_id: {review_id}"))
            continue
        seen_ids.add(review_id)
        reviews.append(Review(review_id, stars, text))
    return reviews, errors


def read_reviews(path) -> tuple:
    with open(path, encoding="utf-8") as fh:
        return parse_review_stream(fh)


def write_reviews(path, reviews) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in reviews:
            fh.write(json.dumps(
                {"review_id": r.review_id, "stars": r.stars, "text": r.text},
                ensure_ascii=False, sort_keys=True,
            ) + "\n")


def segregate_by_stars(reviews) -> dict:
    """Partition reviews into the five star buckets, preserving order."""
    buckets = {stars: [] for stars in STAR_VALUES}
    for review in reviews:
        buckets[review.stars].append(review)
    return buckets


def parse_label_stream(lines) -> tuple:
    """Parse JSON-lines label votes into (labels, parse_errors)."""
    labels = []
    errors = []
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(ParseError(line_number, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(record, dict):
            errors.append(ParseError(line_number, "record is not an object"))
            continue
        missing = [k for k in ("review_id", "sarcastic", "annotator") if k not in record]
        if missing:
            errors.append(ParseError(line_number, f"missing field: {', '.join(missing)}"))
            continue
        review_id = record["review_id"]
        sarcastic = record["sarcastic"]
        annotator = record["annotator"]
        if not isinstance(review_id, str) or not review_id:
            errors.append(ParseError(line_number, "review_id must be a non-empty string"))
            continue
        if not isinstance(sarcastic, bool):
            errors.append(ParseError(line_number, "sarcastic must be a boolean"))
            continue
        if not isinstance(annotator, str) or not annotator:
            errors.append(ParseError(line_number, "annotator must be a non-empty string"))
            continue
        labels.append(SarcasmLabel(review_id, sarcastic, annotator))
    return labels, errors


def read_labels(path) -> tuple:
    with open(path, encoding="utf-8") as fh:
        return parse_label_stream(fh)


def append_labels(path, labels) -> None:
    """Append label votes to the labels file (the file is append-only)."""
    with open(path, "a", encoding="utf-8") as fh:
        for label in labels:
            fh.write(json.dumps(
                {
                    "review_id": label.review_id,
                    "sarcastic": label.sarcastic,
                    "annotator": label.annotator,
                },
                ensure_ascii=False, sort_keys=True,
            ) + "\n")


def resolve_labels(labels) -> dict:
    """Majority-vote each review's label; ties resolve to non-sarcastic.

    One vote per (review_id, annotator): since the file is append-only,
    the last vote an annotator recorded for a review wins.
    """
    votes = {}
    for label in labels:
        votes.setdefault(label.review_id, {})[label.annotator] = label.sarcastic
    resolved = {}
    for review_id, per_annotator in votes.items():
        yes = sum(1 for v in per_annotator.values() if v)
        no = len(per_annotator) - yes
        resolved[review_id] = yes > no
    return resolved


def label_reviews(reviews, labels) -> list:
    """Join reviews with resolved labels; unlabeled reviews are dropped."""
    resolved = resolve_labels(labels)
    return [
        LabeledReview(review, resolved[review.review_id])
        for review in reviews
        if review.review_id in resolved
    ]


def make_split(pool, train_n: int, test_n: int, seed: int) -> DatasetSplit:
    """Shuffle a single-star pool and cut train/test prefixes."""
    need = train_n + test_n
    if len(pool) < need:
        raise DataError(f"need {need}, have {len(pool)}")
    star_values = {lr.review.stars for lr in pool}
    if not star_values:
        raise DataError("cannot split an empty pool")
    if len(star_values) > 1:
        raise DataError(f"pool mixes star ratings: {sorted(star_values)}")
    shuffled = list(pool)
    random.Random(seed).shuffle(shuffled)
    (stars,) = star_values
    return DatasetSplit(
        stars=stars,
        train=tuple(shuffled[:train_n]),
        test=tuple(shuffled[train_n:train_n + test_n]),
        seed=seed,
    )


def curriculum_subset(pool, want_sarcastic: bool, n: int, seed: int) -> list:
    """Pick n reviews with the requested label by seeded permutation."""
    matching = [lr for lr in pool if lr.sarcastic == want_sarcastic]
    if len(matching) < n:
        raise DataError(f"requested {n}, available {len(matching)}")
    random.Random(seed).shuffle(matching)
    return matching[:n]


def write_split_manifest(path, split: DatasetSplit, provenance: dict | None = None) -> None:
    """Record a split so it can be audited and reconstructed."""
    manifest = {
        "stars": split.stars,
        "seed": split.seed,
        "train_n": len(split.train),
        "test_n": len(split.test),
        "train_review_ids": [lr.review.review_id for lr in split.train],
        "test_review_ids": [lr.review.review_id for lr in split.test],
    }
    if provenance is not None:
        manifest["provenance"] = provenance
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_split_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    for key in ("stars", "seed", "train_n", "test_n", "train_review_ids", "test_review_ids"):
        if key not in manifest:
            raise DataError(f"split manifest missing field: {key}")
    return manifest
