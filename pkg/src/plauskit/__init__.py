"""Event-plausibility evaluation over minimal sentence pairs.

Subpackages group by pipeline stage: ``dataset`` (sentence sets, ratings,
normalization), ``scoring`` (token log-probs to sentence scores and binary
accuracy), ``corpus_stats`` (triple counts, PPMI, word frequencies),
``vector_models`` (thematic fit and the structured event-graph score),
``stats`` (all test procedures and the mixed model), ``probes`` (linear
probing with pair-preserving folds), and ``harness``/``cli`` (config-driven
runs).
"""

__version__ = "0.1.0"
