"""Sentence-level plausibility scores from per-token conditional log-probs.

Token records arrive as JSONL, one record per line:

    {"sentence_id": ..., "scorer_id": ..., "scheme": ...,
     "tokens": [{"surface": ..., "word_index": ..., "logprob": ...}, ...]}

Word alignment is the producer's responsibility; this module trusts
``word_index`` and never re-tokenizes.  All stored sentence scores are on
the canonical orientation (higher = more plausible), so surprisal-style
sources are negated at ingestion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

SCHEMES = ("causal", "pll_word_l2r", "pll_original", "l2r_masked")
METRICS = ("sentence_ll", "last_word", "verb", "surprisal_neg")


@dataclass(frozen=True)
class Token:
    surface: str
    word_index: int
    logprob: float


@dataclass(frozen=True)
class TokenLogProbRecord:
    """Per-sentence sequence of token-level conditional log-probabilities."""

    sentence_id: str
    scorer_id: str
    scheme: str
    tokens: tuple[Token, ...]

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not self.tokens:
            raise ValueError(f"record {self.sentence_id}: empty token list")
        prev = -1
        for tok in self.tokens:
            if tok.word_index < prev:
                raise ValueError(f"record {self.sentence_id}: word_index decreases")
            prev = tok.word_index
            if tok.logprob > 0.0:
                raise ValueError(f"record {self.sentence_id}: positive logprob "
                                 f"{tok.logprob} for {tok.surface!r}")

    @property
    def logprobs(self) -> tuple[float, ...]:
        return tuple(t.logprob for t in self.tokens)


@dataclass(frozen=True)
class SentenceScore:
    """One sentence-level score; higher is more plausible."""

    sentence_id: str
    scorer_id: str
    metric: str
    value: float

    def __post_init__(self) -> None:
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")


@dataclass(frozen=True)
class PairDecision:
    pair_id: str
    scorer_id: str
    correct: int
    tie: bool = False


def aggregate_sentence_score(rec: TokenLogProbRecord, agg: str = "sum") -> SentenceScore:
    """Sum or mean of token log-probabilities as the sentence score."""
    total = math.fsum(rec.logprobs)
    if agg == "sum":
        value = total
    elif agg == "mean":
        value = total / len(rec.tokens)
    else:
        raise ValueError(f"unknown aggregation {agg!r}")
    return SentenceScore(rec.sentence_id, rec.scorer_id, "sentence_ll", value)


def surprisal_score(rec: TokenLogProbRecord) -> SentenceScore:
    """Negated mean surprisal (equals the mean token log-probability)."""
    value = math.fsum(rec.logprobs) / len(rec.tokens)
    return SentenceScore(rec.sentence_id, rec.scorer_id, "surprisal_neg", value)


def last_word_score(rec: TokenLogProbRecord) -> SentenceScore:
    """Mean log-probability over the subtokens of the final word."""
    last = max(t.word_index for t in rec.tokens)
    values = [t.logprob for t in rec.tokens if t.word_index == last]
    return SentenceScore(rec.sentence_id, rec.scorer_id, "last_word",
                         math.fsum(values) / len(values))


def verb_score(rec: TokenLogProbRecord, verb_span: tuple[int, int]) -> SentenceScore:
    """Mean log-probability over subtokens of the words in ``verb_span``."""
    start, end = verb_span
    hi = max(t.word_index for t in rec.tokens)
    if not 0 <= start < end <= hi + 1:
        raise ValueError(f"verb span {verb_span} outside record word range 0..{hi}")
    values = [t.logprob for t in rec.tokens if start <= t.word_index < end]
    if not values:
        raise ValueError(f"verb span {verb_span} matches no tokens")
    return SentenceScore(rec.sentence_id, rec.scorer_id, "verb",
                         math.fsum(values) / len(values))


def pair_decision(pair_id: str, plaus: SentenceScore, implaus: SentenceScore) -> PairDecision:
    """1 iff the plausible member scored strictly higher; ties count as 0."""
    if plaus.scorer_id != implaus.scorer_id:
        raise ValueError(f"scorer mismatch: {plaus.scorer_id} vs {implaus.scorer_id}")
    if plaus.metric != implaus.metric:
        raise ValueError(f"metric mismatch: {plaus.metric} vs {implaus.metric}")
    if plaus.value == implaus.value:
        return PairDecision(pair_id, plaus.scorer_id, correct=0, tie=True)
    return PairDecision(pair_id, plaus.scorer_id, correct=int(plaus.value > implaus.value))


def binary_accuracy(decisions: Iterable[PairDecision]) -> tuple[float, float, int, int]:
    """Accuracy with its binomial standard error: (accuracy, se, k, n)."""
    dec = list(decisions)
    if not dec:
        raise ValueError("binary_accuracy over an empty decision list")
    n = len(dec)
    k = sum(d.correct for d in dec)
    acc = k / n
    se = math.sqrt(acc * (1.0 - acc) / n)
    return acc, se, k, n


def write_records(records: Iterable[TokenLogProbRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({
                "sentence_id": rec.sentence_id,
                "scorer_id": rec.scorer_id,
                "scheme": rec.scheme,
                "tokens": [{"surface": t.surface, "word_index": t.word_index,
                            "logprob": t.logprob} for t in rec.tokens],
            }) + "\n")


def read_records(path: str | Path) -> Iterator[TokenLogProbRecord]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
                tokens = tuple(Token(t["surface"], int(t["word_index"]), float(t["logprob"]))
                               for t in raw["tokens"])
                yield TokenLogProbRecord(raw["sentence_id"], raw["scorer_id"],
                                         raw["scheme"], tokens)
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad token record: {exc}") from exc


def write_scores(scores: Iterable[SentenceScore], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in scores:
            fh.write(json.dumps({"sentence_id": s.sentence_id, "scorer_id": s.scorer_id,
                                 "metric": s.metric, "value": s.value}) + "\n")


def read_scores(path: str | Path) -> Iterator[SentenceScore]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
                yield SentenceScore(raw["sentence_id"], raw["scorer_id"],
                                    raw["metric"], float(raw["value"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad score record: {exc}") from exc
