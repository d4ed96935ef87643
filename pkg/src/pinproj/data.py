"""Dataset ingestion, per-feature min-max scaling, and feature extraction."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class ScaleRange:
    """Target interval for min-max scaling; requires low < high."""

    low: float
    high: float

    def __post_init__(self):
        if not (np.isfinite(self.low) and np.isfinite(self.high)):
            raise ValueError("scale range bounds must be finite")
        if not self.low < self.high:
            raise ValueError(f"scale range needs low < high, got ({self.low}, {self.high})")

    @property
    def midpoint(self) -> float:
        return (self.low + self.high) / 2.0


DEFAULT_RANGE = ScaleRange(0.0, 1.0)


@dataclass(frozen=True, eq=False)
class Dataset:
    """An N x F matrix of finite reals with unique feature names and optional labels.

    Labels are categorical tags carried alongside the rows; they are never
    consumed by the projection itself, only by quality metrics and plots.
    """

    values: np.ndarray
    feature_names: tuple[str, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if values.ndim != 2:
            raise ValueError(f"values must be 2-D, got shape {values.shape}")
        n, f = values.shape
        if n < 2:
            raise ValueError(f"need at least 2 rows, got {n}")
        if f < 1:
            raise ValueError("need at least 1 feature")
        if not np.isfinite(values).all():
            bad = np.argwhere(~np.isfinite(values))[0]
            raise ValueError(f"non-finite value at row {bad[0]}, column {bad[1]}")
        if len(self.feature_names) != f:
            raise ValueError(f"{len(self.feature_names)} feature names for {f} columns")
        if len(set(self.feature_names)) != f:
            raise ValueError("feature names must be unique")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} labels for {n} rows")

    @property
    def n_points(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]


def load_csv(path: str | Path, label_column: str | None = None) -> Dataset:
    """Parse a header-first CSV into a Dataset.

    Every cell outside the optional label column must parse as a real number;
    the first offending cell is reported by file line and column name.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, header row required") from None
        if len(set(header)) != len(header):
            dupes = sorted({h for h in header if header.count(h) > 1})
            raise ValueError(f"{path}: duplicate column names {dupes}")
        if label_column is not None and label_column not in header:
            raise ValueError(f"{path}: no column named {label_column!r}")
        label_idx = header.index(label_column) if label_column is not None else None
        feat_idx = [i for i in range(len(header)) if i != label_idx]
        rows: list[list[float]] = []
        labels: list[str] = []
        for line, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(header):
                raise ValueError(
                    f"{path}: line {line} has {len(record)} cells, expected {len(header)}"
                )
            parsed = []
            for i in feat_idx:
                try:
                    parsed.append(float(record[i]))
                except ValueError:
                    raise ValueError(
                        f"{path}: line {line}, column {header[i]!r}: "
                        f"cannot parse {record[i]!r} as a number"
                    ) from None
            rows.append(parsed)
            if label_idx is not None:
                labels.append(record[label_idx])
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least 2 data rows, got {len(rows)}")
    return Dataset(
        values=np.array(rows, dtype=float),
        feature_names=tuple(header[i] for i in feat_idx),
        labels=tuple(labels) if label_idx is not None else None,
    )


def scale_matrix(values: np.ndarray, r: ScaleRange = DEFAULT_RANGE) -> np.ndarray:
    """Map each column affinely so its min hits r.low and its max hits r.high.

    Constant columns carry no information either way; they land on the range
    midpoint instead of dividing by zero.
    """
    values = np.asarray(values, dtype=float)
    mins = values.min(axis=0)
    span = values.max(axis=0) - mins
    out = np.full_like(values, r.midpoint)
    nz = span != 0
    # divide by span first: the column max maps to exactly 1 before the affine
    out[:, nz] = r.low + ((values[:, nz] - mins[nz]) / span[nz]) * (r.high - r.low)
    return out


def scale_features(d: Dataset, r: ScaleRange = DEFAULT_RANGE) -> Dataset:
    """Per-feature min-max normalization; labels pass through untouched."""
    return Dataset(scale_matrix(d.values, r), d.feature_names, d.labels)


def extract_feature(d: Dataset, name: str) -> np.ndarray:
    """Return a copy of the named feature column, in row order."""
    try:
        idx = d.feature_names.index(name)
    except ValueError:
        raise ValueError(
            f"unknown feature {name!r}; available: {', '.join(d.feature_names)}"
        ) from None
    return d.values[:, idx].copy()


def subsample(d: Dataset, n_points: int, seed: int = 0) -> Dataset:
    """Seeded without-replacement row subsample, original row order preserved."""
    if n_points >= d.n_points:
        return d
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.choice(d.n_points, size=n_points, replace=False))
    labels = tuple(d.labels[i] for i in idx) if d.labels is not None else None
    return Dataset(d.values[idx], d.feature_names, labels)
