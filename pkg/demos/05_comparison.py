"""Regenerate the five-algorithm comparison table on ILPD.

Run from the repository root:  python3 demos/05_comparison.py
(about half a minute: dual selection, then all five classifiers)

Equivalent CLI:  liverscreen compare --data data/ilpd.csv --seed 13
"""

from pathlib import Path

from liverscreen import compare_all, parse_ilpd

DATA = Path(__file__).resolve().parent.parent / "data" / "ilpd.csv"

table = compare_all(parse_ilpd(DATA), seed=13)
print(table.render_text())

print("\ncorrelation filter removed:")
for feature, partner, r in table.correlation_filtered:
    print(f"  {feature} (r = {r:+.4f} with {partner})")
print("contest decisions:", ", ".join(
    f"{r.name}={r.decision}" for r in table.feature_report.results
))
