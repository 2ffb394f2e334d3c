"""Show the 15-dimensional feature vector for a handful of reviews.

Run from the repo root:

    python3 demos/02_feature_vectors.py

Each review reduces to rates of sarcasm markers: interjections,
invocations, sentiment words, emphatic punctuation, stretched words,
capitalized shouting, and person references, plus one flag that fires
when positive and negative sentiment collide in the same review.
"""

from sarcnet import FeaturePipeline, catalog

REVIEWS = [
    "Haha! I'm trying to imagine you with a personality!!",
    "God! Aren't we clever??",
    "WOW what a GREAT idea... cold fries, my favorite!!",
    "The portions were generous and we enjoyed the dessert.",
]


def main() -> None:
    pipeline = FeaturePipeline()
    descriptors = catalog()
    for text in REVIEWS:
        counts = pipeline.counts(text)
        vector = pipeline.vector(text)
        print(f"\n{text!r}  (words: {counts.word_count})")
        for descriptor, value in zip(descriptors, vector):
            if value == 0.0:
                continue
            print(f"  {descriptor.id:>3}  {descriptor.name:<24} {value:.4f}")
    print("\nZero-valued features are hidden above; the classifier always")
    print("sees the full 15-entry vector in catalog order.")


if __name__ == "__main__":
    main()
