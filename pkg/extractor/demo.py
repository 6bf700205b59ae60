"""Train the miniature checkpoints, extract every scheme, and inspect
what the two pseudo-log-likelihood variants disagree about.

Run from this directory:  python demo.py
"""

import tempfile
from pathlib import Path

from transformers import (AutoModelForCausalLM, AutoModelForMaskedLM,
                          AutoTokenizer)

from extractor.jobs import ExtractionJob
from extractor.logprobs import extract_token_logprobs
from extractor.tiny import (synthetic_corpus, train_causal_checkpoint,
                            train_masked_checkpoint)

work = Path(tempfile.mkdtemp(prefix="tiny-extract-"))
print("training miniature checkpoints (seconds on CPU)...")
uni_dir = train_causal_checkpoint(work / "uni", seed=0)
bi_dir = train_masked_checkpoint(work / "bi", seed=0)

_, items = synthetic_corpus(0)
sentence = items[0].plausible
print(f"\nexample sentence: {sentence!r}")

# ---------------------------------------------------------------------------
# The two masked-scoring variants on a sentence with a split word
# ---------------------------------------------------------------------------
tok = AutoTokenizer.from_pretrained(bi_dir)
model = AutoModelForMaskedLM.from_pretrained(bi_dir)
split_sentence = "The teacher bought the laptop"
job = ExtractionJob("tiny-bi", "bidirectional",
                    ("pll_original", "pll_word_l2r", "l2r_masked"), (),
                    (("demo", split_sentence),))
print(f"\nper-token log-probabilities for {split_sentence!r}:")
rows = {}
for scheme in job.schemes:
    rec = next(extract_token_logprobs(model, tok, job, scheme))
    rows[scheme] = rec.tokens
header = " ".join(f"{t.surface:>8s}" for t in rows["pll_original"])
print(f"  {'scheme':13s} {header}")
for scheme, tokens in rows.items():
    values = " ".join(f"{t.logprob:8.2f}" for t in tokens)
    print(f"  {scheme:13s} {values}")
print("\nMasking only the target lets 'lap' peek at '##top', so its score")
print("is inflated; the word-aware variant hides the rest of the word and")
print("the left-to-right variant hides everything to the right.")

# ---------------------------------------------------------------------------
# Causal scoring over the evaluation pairs
# ---------------------------------------------------------------------------
tok = AutoTokenizer.from_pretrained(uni_dir)
model = AutoModelForCausalLM.from_pretrained(uni_dir)
sentences = []
for item in items:
    sentences.append((f"{item.pair_id}:p", item.plausible))
    sentences.append((f"{item.pair_id}:i", item.implausible))
job = ExtractionJob("tiny-uni", "unidirectional", ("causal",), (),
                    tuple(sentences))
totals = {rec.sentence_id: sum(t.logprob for t in rec.tokens)
          for rec in extract_token_logprobs(model, tok, job, "causal")}
print("\ncausal-model pair accuracy on held-out style items:")
for kind in ("AI", "AA"):
    pairs = [it for it in items if it.item_type == kind]
    wins = sum(totals[f"{it.pair_id}:p"] > totals[f"{it.pair_id}:i"]
               for it in pairs)
    print(f"  {kind}: {wins}/{len(pairs)} = {wins / len(pairs):.3f}")
print("\nImpossible swaps never occurred in training, so they separate")
print("perfectly; unlikely swaps did occur, and a few pairs flip.")
