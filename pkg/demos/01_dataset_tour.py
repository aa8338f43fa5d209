"""Walk through the dataset layer: parsing, cleaning, shuffling, splitting.

Run from the repository root:  python3 demos/01_dataset_tour.py
"""

from pathlib import Path

from liverscreen import handle_missing, kfold_plan, parse_ilpd, shuffle, split

DATA = Path(__file__).resolve().parent.parent / "data" / "ilpd.csv"

# The distributed file: 583 patients, ten biomarkers, class 1 = liver patient.
d = parse_ilpd(DATA, provenance=str(DATA))
ones, twos = d.class_counts()
print(f"parsed {len(d)} records from {DATA.name}: {ones} liver patients, {twos} non-patients")

# Four records lack the albumin/globulin ratio; the default policy drops them
# because none of the learners accept missing values.
clean = handle_missing(d, "drop_record")
print(f"after drop_record: {len(clean)} records ({len(d) - len(clean)} had missing fields)")
kept = handle_missing(d, "null_out")
print(f"null_out keeps all {len(kept)} records and leaves the gaps visible downstream")

# Everything seeded is reproducible: same seed, same order.
assert shuffle(d, seed=42).records == shuffle(d, seed=42).records
print("shuffle(seed=42) twice -> identical order")

# The canonical split: ceil(2/3 * 583) = 389 train, 194 test.
result = split(d, fraction=2 / 3, seed=1)
print(f"split 2/3 -> train {len(result.train)}, test {len(result.test)}")

# A 70% split would give different counts, which is why 2/3 is the default.
alt = split(d, fraction=0.7, seed=1)
print(f"split 0.7 -> train {len(alt.train)}, test {len(alt.test)} (ceil rule)")

# Ten folds for cross-validation: sizes differ by at most one.
folds = kfold_plan(len(clean), k=10, seed=5)
print(f"10-fold plan over {len(clean)} records, fold sizes: {sorted(len(f) for f in folds)}")
