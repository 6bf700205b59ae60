"""Drive a complete run through the command-line entry point.

Equivalent to:

    plauskit report --config configs/reference.ini --out runs/demo

which validates all inputs, scores the sentence sets with the native
corpus baselines, evaluates accuracies with binomial/equal-proportion
tests and FDR columns, fits the per-scorer mixed models, runs the rating
ceiling probes, and emits plot-ready CSVs plus a manifest carrying the
config hash and seed.

Run from the repository root:  python demos/05_full_report.py
"""

from pathlib import Path

from plauskit.cli import main

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "runs" / "demo"

rc = main(["report", "--config", str(ROOT / "configs" / "reference.ini"),
           "--out", str(OUT)])
assert rc == 0, "report run failed"

print("\nartifacts:")
for path in sorted(OUT.rglob("*")):
    if path.is_file():
        print(f"  {path.relative_to(ROOT)}")

results = (OUT / "results.tsv").read_text().splitlines()
print("\nheadline rows from results.tsv:")
header = results[1].split("\t")
for line in results[2:]:
    fields = dict(zip(header, line.split("\t")))
    if fields["analysis"].startswith(("accuracy:", "ai_vs_aa_gap")) \
            and fields["scorer"] == "human":
        print(f"  {fields['analysis']:22s} {fields['statistic']:9s} "
              f"{float(fields['value']):.3f}")
