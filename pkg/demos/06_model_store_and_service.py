"""Persist trained models and answer screening requests from the store.

Run from the repository root:  python3 demos/06_model_store_and_service.py
"""

import tempfile
from pathlib import Path

from liverscreen import (
    SvmSpec,
    handle_missing,
    list_models,
    load_model,
    parse_ilpd,
    predict_any,
    save_model,
    split,
    train,
    train_neurosvm,
)
from liverscreen.service import validate_attributes

DATA = Path(__file__).resolve().parent.parent / "data" / "ilpd.csv"
clean = handle_missing(parse_ilpd(DATA))
result = split(clean, seed=7)

store = Path(tempfile.mkdtemp(prefix="liverscreen-store-"))
svm_id = save_model(train(SvmSpec(), result.train, seed=7), store)
hybrid_id = save_model(train_neurosvm(result.train, seed=7), store)

# Files are content-addressed: the name is the sha256 of the canonical JSON,
# so saving the same model twice is a no-op and any tampering is detected.
again = save_model(train(SvmSpec(), result.train, seed=7), store)
assert again == svm_id
print(f"store {store}")
for envelope in list_models(store):
    print(f"  {envelope.algorithm:<9} {envelope.model_id[:16]}...  created {envelope.created_at}")

# A clinician's request arrives as an attribute map with Gender as text;
# validation mirrors the HTTP service exactly.
request = {
    "Age": 51, "Gender": "Male", "TB": 2.9, "DB": 1.3, "Alkphos": 482,
    "Sgpt": 22, "Sgot": 34, "TP": 7.0, "ALB": 3.4, "A/G Ratio": 0.9,
}
model = load_model(store, hybrid_id)
values, errors = validate_attributes(request, model.feature_names)
assert not errors
label, score = predict_any(model, values)
verdict = "liver patient" if label == 1 else "non-patient"
print(f"\nscreening verdict: {verdict} (label {label}, score {score:.4f})")

print("\nserve the same store over HTTP with:")
print(f"  liverscreen serve --store {store} --port 8000")
print("then POST {\"model_id\": ..., \"attributes\": {...}} to /predict")
