"""Per-token conditional log-probabilities under the four schemes.

Every emitted record carries, per subtoken of the raw sentence, the
natural-log probability of that subtoken under the scheme's conditioning
set, together with its surface form and whitespace-word index:

  causal        log P(t_i | t_<i), left-to-right models
  pll_original  log P(t_i | all others), target masked
  pll_word_l2r  target masked along with all within-word tokens to its right
  l2r_masked    all tokens at positions >= i masked when predicting t_i

The masking schemes need a mask token and bidirectional attention, so the
job validator only admits them for bidirectional checkpoints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import torch
import torch.nn.functional as F

from .align import map_offsets_to_words
from .jobs import UNIDIRECTIONAL, ExtractionJob

CONSISTENCY_TOL = 1e-4


@dataclass(frozen=True)
class TokenRow:
    surface: str
    word_index: int
    logprob: float


@dataclass(frozen=True)
class Record:
    sentence_id: str
    scorer_id: str
    scheme: str
    tokens: tuple[TokenRow, ...]

    def as_json(self) -> str:
        return json.dumps({
            "sentence_id": self.sentence_id,
            "scorer_id": self.scorer_id,
            "scheme": self.scheme,
            "tokens": [{"surface": t.surface, "word_index": t.word_index,
                        "logprob": t.logprob} for t in self.tokens],
        })


def _encode_plain(tokenizer, text):
    enc = tokenizer(text, return_offsets_mapping=True, add_special_tokens=False)
    ids = enc["input_ids"]
    if not ids:
        raise ValueError(f"tokenizer produced no tokens for {text!r}")
    words = map_offsets_to_words(enc["offset_mapping"], text)
    surfaces = tokenizer.convert_ids_to_tokens(ids)
    return ids, words, surfaces


def _causal_records(model, tokenizer, job: ExtractionJob) -> Iterator[Record]:
    bos = tokenizer.bos_token_id
    if bos is None:
        bos = tokenizer.eos_token_id
    if bos is None:
        raise ValueError("causal scoring needs a BOS or EOS token to condition "
                         "the first sentence token")
    for sid, text in job.sentences:
        ids, words, surfaces = _encode_plain(tokenizer, text)
        input_ids = torch.tensor([[bos] + ids], device=job.device)
        with torch.no_grad():
            logits = model(input_ids).logits[0].double()
        logprobs = F.log_softmax(logits, dim=-1)
        targets = torch.tensor(ids)
        per_token = logprobs[torch.arange(len(ids)), targets]
        # cross-check: the one-pass sequence log-likelihood must agree
        whole = -F.cross_entropy(logits[: len(ids)], targets, reduction="sum")
        if abs(float(per_token.sum()) - float(whole)) > CONSISTENCY_TOL:
            raise RuntimeError(f"sequence log-likelihood mismatch for {sid}")
        yield Record(sid, job.model_id, "causal", tuple(
            TokenRow(s, w, min(float(lp), 0.0))
            for s, w, lp in zip(surfaces, words, per_token)))


def _mask_sets(scheme: str, words: list[int]) -> list[list[int]]:
    """Positions to mask when predicting each target position."""
    n = len(words)
    out = []
    for i in range(n):
        if scheme == "pll_original":
            masked = [i]
        elif scheme == "pll_word_l2r":
            masked = [i] + [j for j in range(i + 1, n) if words[j] == words[i]]
        else:  # l2r_masked
            masked = list(range(i, n))
        out.append(masked)
    return out


def _masked_records(model, tokenizer, job: ExtractionJob,
                    scheme: str) -> Iterator[Record]:
    mask_id = tokenizer.mask_token_id
    if mask_id is None:
        raise ValueError("masked scoring needs a mask token")
    for sid, text in job.sentences:
        ids, words, surfaces = _encode_plain(tokenizer, text)
        enc = tokenizer(text, return_special_tokens_mask=True)
        full_ids = enc["input_ids"]
        special = enc["special_tokens_mask"]
        positions = [i for i, flag in enumerate(special) if not flag]
        if len(positions) != len(ids):
            raise RuntimeError(f"special-token layout mismatch for {sid}")
        base = torch.tensor(full_ids)
        batch = base.repeat(len(ids), 1)
        for target, masked in enumerate(_mask_sets(scheme, words)):
            for j in masked:
                batch[target, positions[j]] = mask_id
        with torch.no_grad():
            logits = model(batch.to(job.device)).logits
        rows = []
        for target in range(len(ids)):
            lp = F.log_softmax(logits[target, positions[target]].double(), -1)
            rows.append(TokenRow(surfaces[target], words[target],
                                 min(float(lp[ids[target]]), 0.0)))
        yield Record(sid, job.model_id, scheme, tuple(rows))


def extract_token_logprobs(model, tokenizer, job: ExtractionJob,
                           scheme: str) -> Iterator[Record]:
    """Stream one record per sentence under the given scheme."""
    if scheme not in job.schemes:
        raise ValueError(f"scheme {scheme!r} not requested by the job")
    model.eval()
    if job.direction == UNIDIRECTIONAL:
        yield from _causal_records(model, tokenizer, job)
    else:
        yield from _masked_records(model, tokenizer, job, scheme)


def write_records(records: Iterable[Record], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.as_json() + "\n")
