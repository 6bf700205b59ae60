"""Subtoken-to-word alignment over whitespace words.

Word boundaries are the whitespace words of the raw sentence; a subtoken
belongs to the word whose character span contains the subtoken's first
character.  Sentences pass through verbatim (no lowercasing or cleanup).
"""

from __future__ import annotations


def word_spans(sentence: str) -> list[tuple[int, int]]:
    """Character spans of the whitespace words, in order."""
    spans = []
    pos = 0
    for word in sentence.split():
        start = sentence.index(word, pos)
        spans.append((start, start + len(word)))
        pos = start + len(word)
    return spans


def map_offsets_to_words(offsets: list[tuple[int, int]],
                         sentence: str) -> list[int]:
    """Word index per subtoken, from tokenizer character offsets."""
    spans = word_spans(sentence)
    out = []
    word = 0
    for start, end in offsets:
        if end <= start:
            raise ValueError(f"empty offset ({start}, {end}); special tokens "
                             f"must be stripped before alignment")
        while word + 1 < len(spans) and start >= spans[word][1]:
            word += 1
        if not spans[word][0] <= start < spans[word][1]:
            raise ValueError(f"offset {start} falls outside every word span")
        out.append(word)
    if out and (out[0] != 0 or out[-1] != len(spans) - 1):
        raise ValueError("tokenization does not cover the whole sentence")
    return out
