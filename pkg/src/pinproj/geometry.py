"""Condensed pairwise Euclidean distances over a dataset."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.spatial.distance import pdist

from .data import Dataset


@dataclass(frozen=True, eq=False)
class CondensedDistanceMatrix:
    """Flat upper triangle of a symmetric distance matrix.

    Entries are ordered (0,1), (0,2), ..., (0,N-1), (1,2), ...; the diagonal
    is implicitly zero.
    """

    entries: np.ndarray
    n_points: int

    def __post_init__(self):
        entries = np.ascontiguousarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", entries)
        n = self.n_points
        if n < 2:
            raise ValueError("need at least 2 points")
        if entries.shape != (n * (n - 1) // 2,):
            raise ValueError(
                f"expected {n * (n - 1) // 2} entries for {n} points, got {entries.shape}"
            )
        if not np.isfinite(entries).all():
            raise ValueError("distances must be finite")
        if (entries < 0).any():
            raise ValueError("distances must be non-negative")


def condensed_index(n: int, i: int, j: int) -> int:
    """Flat index of the (i, j) pair, i != j, in condensed order."""
    if i > j:
        i, j = j, i
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def pairwise_distances(values: np.ndarray) -> CondensedDistanceMatrix:
    """Euclidean distances between all point pairs of a coordinate matrix."""
    values = np.asarray(values, dtype=float)
    return CondensedDistanceMatrix(pdist(values, metric="euclidean"), values.shape[0])


def build_distance_matrix(d: Dataset) -> CondensedDistanceMatrix:
    """Distance matrix over all features of an (already scaled) dataset."""
    return pairwise_distances(d.values)


def get_distance(m: CondensedDistanceMatrix, i: int, j: int) -> float:
    """Symmetric lookup; zero on the diagonal."""
    n = m.n_points
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"indices ({i}, {j}) out of bounds for {n} points")
    if i == j:
        return 0.0
    return float(m.entries[condensed_index(n, i, j)])


def save_distances(m: CondensedDistanceMatrix, path: str | Path) -> None:
    """Dump the condensed vector: u64-LE entry count, then f64-LE entries."""
    entries = np.asarray(m.entries, dtype="<f8")
    with Path(path).open("wb") as fh:
        fh.write(struct.pack("<Q", entries.shape[0]))
        fh.write(entries.tobytes())


def load_distances(path: str | Path) -> CondensedDistanceMatrix:
    with Path(path).open("rb") as fh:
        (count,) = struct.unpack("<Q", fh.read(8))
        raw = fh.read(count * 8)
    if len(raw) != count * 8:
        raise ValueError(f"{path}: truncated, expected {count} entries")
    entries = np.frombuffer(raw, dtype="<f8").astype(float)
    # invert count = n(n-1)/2
    n = int(round((1 + np.sqrt(1 + 8 * count)) / 2))
    if n * (n - 1) // 2 != count:
        raise ValueError(f"{path}: {count} entries is not a valid condensed length")
    return CondensedDistanceMatrix(entries, n)
