"""Score the sentence sets with the three corpus-statistics baselines.

The toy triple table shipped under data/toy attests plausible argument
assignments strongly and swapped ones weakly, so the baselines can be run
end to end on a laptop: role-marked PPMI sums, the thematic-fit prototype
cosine, and the two-tier event-graph score.

Run from the repository root:  python demos/02_corpus_baselines.py
"""

from pathlib import Path

from plauskit.corpus_stats import (count_triples, ppmi, read_triple_stream,
                                   score_sentence_ppmi)
from plauskit.dataset import load_dataset
from plauskit.vector_models import (EventGraph, VectorSpace, patient_prototype,
                                    sdm_score, thematic_fit_score)

DATA = Path(__file__).resolve().parent.parent / "data"

tc = count_triples(read_triple_stream(DATA / "toy" / "triples.tsv"))
vs = VectorSpace.load_text(DATA / "toy" / "vectors.txt")
deg = EventGraph.from_counts(tc)
print(f"triple table: {tc.vocabulary_size} distinct triples, N = {tc.total}")
print(f"vector space: {len(vs)} words, d = {vs.dim}")

d1 = load_dataset(DATA / "dataset1.tsv", "D1")

# ---------------------------------------------------------------------------
# One pair under the microscope
# ---------------------------------------------------------------------------
item = d1.headline().select(item_type="AI").items[0]
print(f"\nexample pair: '{item.plausible.text}' / '{item.implausible.text}'")
for sent in (item.plausible, item.implausible):
    verb = sent.role_head("verb")
    agent = sent.role_head("agent")
    patient = sent.role_head("patient")
    print(f"  {sent.plausibility:11s} "
          f"ppmi(v,agent,subj)={ppmi(tc, verb, agent, 'subj'):5.2f}  "
          f"ppmi(v,patient,obj)={ppmi(tc, verb, patient, 'obj'):5.2f}")

proto = patient_prototype(item.plausible.role_head("verb"),
                          item.plausible.role_head("agent"), tc, vs)
print(f"  patient prototype built from {len(proto.support)} entities, "
      f"e.g. {list(proto.support[:5])}")

# ---------------------------------------------------------------------------
# Accuracy of each scorer per item type
# ---------------------------------------------------------------------------
scorers = {
    "syntax-ppmi": lambda s: score_sentence_ppmi(s, tc).value,
    "thematic-fit": lambda s: thematic_fit_score(s, tc, vs).value,
    "sdm": lambda s: sdm_score(s, deg, vs).value,
}

print("\naccuracy over active-voice pairs (plausible must score higher):")
print(f"  {'scorer':14s} {'AI':>6s} {'AA':>6s} {'control':>8s}")
for name, fn in scorers.items():
    row = []
    for itype in ("AI", "AA", "AA_control"):
        selection = d1.headline().select(item_type=itype)
        wins = sum(fn(item.plausible) > fn(item.implausible)
                   for item in selection)
        row.append(wins / len(selection))
    print(f"  {name:14s} {row[0]:6.2f} {row[1]:6.2f} {row[2]:8.2f}")

print("\nImpossible assignments are unattested, so every scorer separates")
print("AI pairs; the merely unlikely AA swaps are attested too, and the")
print("margin shrinks. Reversible controls carry no signal, so whatever")
print("a scorer does there reflects its own quirks, not event knowledge.")
