"""Walk a few review sentences through the tokenizer and the rule tagger.

Run from the repo root:

    python3 demos/01_tokenize_and_tag.py

The tokenizer keeps three kinds of tokens: words (with apostrophes
intact), punctuation runs made of ! and ?, and ellipses. Everything
else separates tokens. Spans are byte offsets into the UTF-8 text, so
slicing the encoded review recovers each surface exactly.
"""

from sarcnet import pos_tag, tokenize

SENTENCES = [
    "Haha! I'm trying to imagine you with a personality!!",
    "God! Aren't we clever??",
    "Sooooo impressive... truly the BEST salad in town?!",
    "The soup was warm and the server was polite.",
]


def show(text: str) -> None:
    print(f"\n{text!r}")
    raw = text.encode("utf-8")
    for tagged in pos_tag(tokenize(text)):
        token = tagged.token
        surface = raw[token.start:token.end].decode("utf-8")
        assert surface == token.surface
        print(f"  {token.surface!r:>18}  {token.kind.name:<9} "
              f"{tagged.tag.name:<5} bytes {token.start}..{token.end}")


def main() -> None:
    for sentence in SENTENCES:
        show(sentence)
    print("\nNote how laughter ('Haha'), the closed-class words, and the")
    print("suffix rules drive the tags; anything unmatched falls back to NN,")
    print("and punctuation runs get the OTHER tag since they are not words.")


if __name__ == "__main__":
    main()
