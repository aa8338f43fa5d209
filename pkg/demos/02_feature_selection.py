"""Dual feature selection on ILPD: correlation filter, then shadow contests.

Run from the repository root:  python3 demos/02_feature_selection.py
(about half a minute; the contest trains one small forest per trial)
"""

from pathlib import Path

from liverscreen import BorutaConfig, boruta, correlation_filter, handle_missing, parse_ilpd, pearson_matrix

DATA = Path(__file__).resolve().parent.parent / "data" / "ilpd.csv"
d = handle_missing(parse_ilpd(DATA))

# Stage 1: Pearson correlations among the nine numeric biomarkers.
matrix = pearson_matrix(d, d.schema.numeric_feature_names)
print("strongly correlated pairs (|r| > 0.70):")
names = matrix.feature_names
for i in range(len(names)):
    for j in range(i + 1, len(names)):
        r = matrix.r[i, j]
        if abs(r) > 0.70:
            print(f"  {names[i]} ~ {names[j]}: r = {r:+.4f}")

kept, removed = correlation_filter(d, threshold=0.70)
for feature, partner, r in removed:
    print(f"filtered out {feature} (r = {r:+.4f} with retained {partner})")
print(f"numeric features surviving the filter: {', '.join(kept)}")

# Stage 2: every feature races shadow copies of itself inside a random
# forest; an exact binomial test on the running hit count decides.
# The filter stays off here so all ten attributes enter the contest.
print("\nrunning the shadow contest on all ten attributes (seed 7)...")
report = boruta(d, BorutaConfig(max_trials=100), seed=7)
print(f"decided after {report.trials_run} trials:")
for res in report.results:
    print(
        f"  {res.name:<10} {res.decision:<10} hits {res.hit_count:>3}/{res.trials:<3}"
        f"  importance {res.raw_importance:+.5f}  (normalized {res.normalized_importance:.4f})"
    )
print(f"\nconfirmed: {', '.join(report.confirmed)}")
