"""ILPD dataset handling: parsing, validation, cleaning, shuffling, splitting.

All randomized operations are driven by numpy's PCG64 generator
(``numpy.random.default_rng``) plus an explicit Fisher-Yates shuffle, so a
given seed produces the same permutation on every platform. Tests pin
permutations against a hand-traced run of that exact generator.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

GENDER_FEMALE = 0.0
GENDER_MALE = 1.0

#: Attributes measured as nonnegative amounts (everything numeric except Gender).
_AMOUNT_ATTRIBUTES = ("Age", "TB", "DB", "Alkphos", "Sgpt", "Sgot", "TP", "ALB", "A/G Ratio")


class ParseError(ValueError):
    """Malformed input row (wrong column count, bad numeric field)."""


class ValidationError(ValueError):
    """Structurally valid input carrying an out-of-range value."""


@dataclass(frozen=True)
class Schema:
    """Ordered attribute list plus the name of the class attribute."""

    attributes: tuple[tuple[str, str], ...]  # (name, "numeric"|"nominal")
    class_attribute: str

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.attributes if n != self.class_attribute)

    @property
    def numeric_feature_names(self) -> tuple[str, ...]:
        return tuple(
            n for n, kind in self.attributes if n != self.class_attribute and kind == "numeric"
        )

    def feature_index(self, name: str) -> int:
        for i, feat in enumerate(self.feature_names):
            if feat == name:
                return i
        raise KeyError(f"unknown feature {name!r}")


def ilpd_schema() -> Schema:
    """The ten ILPD biomarkers plus the binary class attribute."""
    return Schema(
        attributes=(
            ("Age", "numeric"),
            ("Gender", "nominal"),
            ("TB", "numeric"),
            ("DB", "numeric"),
            ("Alkphos", "numeric"),
            ("Sgpt", "numeric"),
            ("Sgot", "numeric"),
            ("TP", "numeric"),
            ("ALB", "numeric"),
            ("A/G Ratio", "numeric"),
            ("Class", "numeric"),
        ),
        class_attribute="Class",
    )


@dataclass(frozen=True)
class Record:
    """One patient row: per-feature optional values plus the class label.

    Gender is encoded 0=Female, 1=Male. Label 1 means liver patient, 2 means
    non-patient.
    """

    values: tuple[float | None, ...]
    label: int

    @property
    def has_missing(self) -> bool:
        return any(v is None for v in self.values)


@dataclass(frozen=True)
class Dataset:
    schema: Schema
    records: tuple[Record, ...]
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.records)

    def labels(self) -> np.ndarray:
        return np.array([r.label for r in self.records], dtype=np.int64)

    def class_counts(self) -> tuple[int, int]:
        labels = [r.label for r in self.records]
        return labels.count(1), labels.count(2)

    def feature_matrix(self, features: Iterable[str] | None = None) -> np.ndarray:
        """Dense float matrix with the requested features as columns.

        Missing values surface as NaN; callers that cannot handle them must
        clean the dataset first (see :func:`handle_missing`).
        """
        names = tuple(features) if features is not None else self.schema.feature_names
        cols = [self.schema.feature_index(n) for n in names]
        out = np.empty((len(self.records), len(cols)), dtype=np.float64)
        for i, rec in enumerate(self.records):
            for j, c in enumerate(cols):
                v = rec.values[c]
                out[i, j] = np.nan if v is None else v
        return out

    def record_mapping(self, index: int) -> dict[str, float | None]:
        rec = self.records[index]
        return dict(zip(self.schema.feature_names, rec.values))


@dataclass(frozen=True)
class SplitResult:
    train: Dataset
    test: Dataset
    seed: int
    fraction: float


def _validate_record(values: list[float | None], label: int, line_no: int, schema: Schema) -> None:
    if label not in (1, 2):
        raise ValidationError(f"line {line_no}: class value {label} outside {{1, 2}}")
    names = schema.feature_names
    for name, v in zip(names, values):
        if v is None:
            continue
        if name in _AMOUNT_ATTRIBUTES and v < 0:
            raise ValidationError(f"line {line_no}: {name} must be >= 0, got {v}")


def _parse_gender(text: str, line_no: int) -> float | None:
    t = text.strip().lower()
    if t == "":
        return None
    if t == "male":
        return GENDER_MALE
    if t == "female":
        return GENDER_FEMALE
    raise ParseError(f"line {line_no}: Gender must be 'Male' or 'Female', got {text!r}")


def _parse_number(text: str, name: str, line_no: int) -> float | None:
    t = text.strip()
    if t == "":
        return None
    try:
        return float(t)
    except ValueError:
        raise ParseError(f"line {line_no}: malformed numeric field {name}={text!r}") from None


def parse_ilpd(source, schema: Schema | None = None, provenance: str = "") -> Dataset:
    """Parse an ILPD CSV stream into a validated :class:`Dataset`.

    ``source`` may be a path, a text/byte string, or an open file object.
    Column order follows the schema; Gender is text ("Male"/"Female",
    case-insensitive); empty fields are missing values. A header row is
    detected by a non-numeric, non-empty first field.
    """
    schema = schema or ilpd_schema()
    text = _read_text(source)
    n_cols = len(schema.attributes)
    class_col = n_cols - 1
    gender_col = next(
        i for i, (n, kind) in enumerate(schema.attributes) if kind == "nominal"
    )

    records: list[Record] = []
    for line_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row:
            continue  # blank line
        if line_no == 1 and _looks_like_header(row):
            continue
        if len(row) != n_cols:
            raise ParseError(
                f"line {line_no}: expected {n_cols} columns, got {len(row)}"
            )
        values: list[float | None] = []
        for col, cell in enumerate(row[:class_col]):
            name = schema.attributes[col][0]
            if col == gender_col:
                values.append(_parse_gender(cell, line_no))
            else:
                values.append(_parse_number(cell, name, line_no))
        raw_label = _parse_number(row[class_col], schema.class_attribute, line_no)
        if raw_label is None or raw_label != int(raw_label):
            raise ValidationError(f"line {line_no}: class value {row[class_col]!r} outside {{1, 2}}")
        label = int(raw_label)
        _validate_record(values, label, line_no, schema)
        records.append(Record(values=tuple(values), label=label))
    return Dataset(schema=schema, records=tuple(records), provenance=provenance)


def _read_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _looks_like_header(row: list[str]) -> bool:
    first = row[0].strip()
    if first == "":
        return False  # empty means missing value, not a header
    try:
        float(first)
        return False
    except ValueError:
        return True


def serialize_ilpd(d: Dataset) -> str:
    """Render a dataset back to ILPD CSV text (inverse of :func:`parse_ilpd`)."""
    gender_col = next(
        i for i, (n, kind) in enumerate(d.schema.attributes) if kind == "nominal"
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for rec in d.records:
        row = []
        for col, v in enumerate(rec.values):
            if v is None:
                row.append("")
            elif col == gender_col:
                row.append("Male" if v == GENDER_MALE else "Female")
            else:
                row.append(repr(v))
        row.append(str(rec.label))
        writer.writerow(row)
    return buf.getvalue()


MissingPolicy = Literal["drop_record", "null_out"]


def handle_missing(d: Dataset, policy: MissingPolicy = "drop_record") -> Dataset:
    """Apply the missing-value policy.

    ``drop_record`` removes records carrying any missing value; ``null_out``
    keeps every record, leaving the missing flags for downstream consumers to
    reject.
    """
    if policy == "null_out":
        return d
    if policy != "drop_record":
        raise ValueError(f"unknown missing-value policy {policy!r}")
    kept = tuple(r for r in d.records if not r.has_missing)
    return replace(d, records=kept)


def _permutation(n: int, seed: int) -> list[int]:
    """Fisher-Yates permutation of range(n) driven by PCG64(seed)."""
    rng = np.random.default_rng(seed)
    idx = list(range(n))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        idx[i], idx[j] = idx[j], idx[i]
    return idx


def shuffle(d: Dataset, seed: int) -> Dataset:
    """Uniformly permute the records; fully determined by ``seed``."""
    order = _permutation(len(d.records), seed)
    return replace(d, records=tuple(d.records[i] for i in order))


def split(d: Dataset, fraction: float = 2.0 / 3.0, seed: int = 0) -> SplitResult:
    """Seeded shuffle, then the first ``ceil(fraction * n)`` records train.

    The default fraction 2/3 turns the 583-record ILPD into the canonical
    389/194 train/test sizes.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    shuffled = shuffle(d, seed)
    n_train = math.ceil(fraction * len(shuffled.records))
    train = replace(shuffled, records=shuffled.records[:n_train])
    test = replace(shuffled, records=shuffled.records[n_train:])
    return SplitResult(train=train, test=test, seed=seed, fraction=fraction)


def kfold_plan(n: int, k: int, seed: int) -> list[list[int]]:
    """Partition {0..n-1} into k folds whose sizes differ by at most one."""
    if k < 2 or k > n:
        raise ValueError(f"k must satisfy 2 <= k <= n, got k={k}, n={n}")
    order = _permutation(n, seed)
    base, extra = divmod(n, k)
    folds: list[list[int]] = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        folds.append(sorted(order[start : start + size]))
        start += size
    return folds
