import os
from pathlib import Path

import pytest

from liverscreen.dataset import Dataset, Record, Schema, parse_ilpd

REPO_ROOT = Path(__file__).resolve().parent.parent
ILPD_PATH = Path(os.environ.get("ILPD_CSV", REPO_ROOT / "data" / "ilpd.csv"))


@pytest.fixture(scope="session")
def ilpd_path() -> Path:
    if not ILPD_PATH.exists():
        pytest.fail(f"ILPD file not found at {ILPD_PATH}; set ILPD_CSV to override")
    return ILPD_PATH


@pytest.fixture(scope="session")
def ilpd(ilpd_path) -> Dataset:
    return parse_ilpd(ilpd_path, provenance=str(ilpd_path))


def toy_schema(features=("x",)) -> Schema:
    attrs = tuple((f, "numeric") for f in features) + (("Class", "numeric"),)
    return Schema(attributes=attrs, class_attribute="Class")


def make_dataset(rows, labels, features=None) -> Dataset:
    """Small all-numeric dataset for learner tests.

    ``rows`` is a list of feature tuples (scalars allowed for one feature).
    """
    rows = [r if isinstance(r, (tuple, list)) else (r,) for r in rows]
    if features is None:
        width = len(rows[0]) if rows else 1
        features = tuple(f"x{i}" for i in range(width)) if width > 1 else ("x",)
    schema = toy_schema(features)
    records = tuple(
        Record(values=tuple(float(v) for v in row), label=int(label))
        for row, label in zip(rows, labels)
    )
    return Dataset(schema=schema, records=records, provenance="test")
