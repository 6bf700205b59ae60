"""Extraction job description and scheme/direction validation."""

from __future__ import annotations

from dataclasses import dataclass

UNIDIRECTIONAL = "unidirectional"
BIDIRECTIONAL = "bidirectional"

SCHEMES_BY_DIRECTION = {
    UNIDIRECTIONAL: ("causal",),
    BIDIRECTIONAL: ("pll_word_l2r", "pll_original", "l2r_masked"),
}
ALL_SCHEMES = tuple(s for group in SCHEMES_BY_DIRECTION.values() for s in group)

# config.model_type values that condition only on left context
CAUSAL_MODEL_TYPES = {"gpt2", "gpt_neo", "gptj", "gpt_neox", "llama", "mistral",
                      "mpt", "opt", "bloom", "phi"}
MASKED_MODEL_TYPES = {"bert", "roberta", "albert", "distilbert", "electra",
                      "deberta", "deberta-v2", "mpnet", "xlm-roberta"}


def direction_for_model_type(model_type: str) -> str:
    if model_type in CAUSAL_MODEL_TYPES:
        return UNIDIRECTIONAL
    if model_type in MASKED_MODEL_TYPES:
        return BIDIRECTIONAL
    raise ValueError(f"cannot infer direction for model type {model_type!r}; "
                     f"pass it explicitly")


@dataclass(frozen=True)
class ExtractionJob:
    """What to extract from which checkpoint."""

    model_id: str
    direction: str
    schemes: tuple[str, ...] = ()
    layers: tuple[int, ...] = ()
    sentences: tuple[tuple[str, str], ...] = ()  # (sentence_id, text)
    device: str = "cpu"
    batch_size: int = 16

    def __post_init__(self) -> None:
        if self.direction not in SCHEMES_BY_DIRECTION:
            raise ValueError(f"unknown direction {self.direction!r}")
        allowed = SCHEMES_BY_DIRECTION[self.direction]
        for scheme in self.schemes:
            if scheme not in ALL_SCHEMES:
                raise ValueError(f"unknown scheme {scheme!r}")
            if scheme not in allowed:
                raise ValueError(f"scheme {scheme!r} is not defined for "
                                 f"{self.direction} models")
        if not self.sentences and not self.layers:
            raise ValueError("job requests neither log-probabilities nor layers")
        for sid, text in self.sentences:
            if not text.strip():
                raise ValueError(f"sentence {sid!r} is empty")
        if len({sid for sid, _ in self.sentences}) != len(self.sentences):
            raise ValueError("duplicate sentence ids in job")


def read_sentences(path) -> tuple[tuple[str, str], ...]:
    """Read a two-column TSV: sentence_id <TAB> sentence (header optional)."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 columns")
            if lineno == 1 and parts == ["sentence_id", "sentence"]:
                continue
            rows.append((parts[0], parts[1]))
    if not rows:
        raise ValueError(f"{path}: no sentences")
    return tuple(rows)
