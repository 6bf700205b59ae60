"""Token log-probability and layer-embedding extraction for transformer
checkpoints, emitting the evaluation pipeline's JSONL record formats."""

__version__ = "0.1.0"
