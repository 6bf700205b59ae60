"""Per-layer summary-token hidden states.

Bidirectional checkpoints contribute the hidden state at the classifier
token's position; unidirectional checkpoints get the sequence-final token
after an EOS is added to both ends of the sequence.  Layer 0 is the output
of the embedding layer; layer k is the k-th transformer block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import torch

from .jobs import UNIDIRECTIONAL, ExtractionJob


@dataclass(frozen=True)
class EmbeddingRow:
    sentence_id: str
    scorer_id: str
    layer: int
    summary_token: str
    vector: tuple[float, ...]

    def as_json(self) -> str:
        return json.dumps({
            "sentence_id": self.sentence_id, "scorer_id": self.scorer_id,
            "layer": self.layer, "summary_token": self.summary_token,
            "vector": list(self.vector),
        })


def extract_embeddings(model, tokenizer, job: ExtractionJob) -> Iterator[EmbeddingRow]:
    """Stream one record per (sentence, requested layer)."""
    model.eval()
    n_layers = model.config.num_hidden_layers
    for layer in job.layers:
        if not 0 <= layer <= n_layers:
            raise ValueError(f"layer {layer} outside 0..{n_layers}")
    if job.direction == UNIDIRECTIONAL:
        eos = tokenizer.eos_token_id
        if eos is None:
            raise ValueError("unidirectional embedding extraction needs an EOS token")
        summary = "final"
    else:
        if tokenizer.cls_token_id is None:
            raise ValueError("bidirectional embedding extraction needs a CLS token")
        summary = "cls"
    for sid, text in job.sentences:
        if summary == "final":
            ids = tokenizer(text, add_special_tokens=False)["input_ids"]
            input_ids = torch.tensor([[eos] + ids + [eos]], device=job.device)
            position = -1
        else:
            input_ids = torch.tensor([tokenizer(text)["input_ids"]],
                                     device=job.device)
            position = int(input_ids[0].tolist().index(tokenizer.cls_token_id))
        with torch.no_grad():
            hidden = model(input_ids, output_hidden_states=True).hidden_states
        for layer in job.layers:
            vector = hidden[layer][0, position]
            yield EmbeddingRow(sid, job.model_id, layer, summary,
                               tuple(float(x) for x in vector))


def write_embeddings(rows: Iterable[EmbeddingRow], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(row.as_json() + "\n")
