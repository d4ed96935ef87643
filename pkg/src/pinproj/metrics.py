"""Projection quality metrics: Kruskal stress and a 1-NN label-accuracy proxy."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .data import Dataset, DEFAULT_RANGE, ScaleRange, scale_features, scale_matrix
from .embedding import Embedding
from .geometry import CondensedDistanceMatrix, build_distance_matrix, pairwise_distances


@dataclass(frozen=True)
class StressReport:
    stress: float
    n_points: int
    scale: ScaleRange | None = None

    def to_text(self) -> str:
        lines = [f"stress={self.stress:.17g}", f"n_points={self.n_points}"]
        if self.scale is not None:
            lines.append(f"scale_low={self.scale.low:.17g}")
            lines.append(f"scale_high={self.scale.high:.17g}")
        return "\n".join(lines) + "\n"


def kruskal_stress(original: CondensedDistanceMatrix,
                   projected: CondensedDistanceMatrix) -> StressReport:
    """S = sqrt(sum((d - delta)^2) / sum(d^2)) over all point pairs.

    Raw formula on whatever distances are handed in; see stress_pipeline for
    the variant that rescales both sides to a common range first (which is
    what keeps S inside [0, 1]).
    """
    if original.n_points != projected.n_points:
        raise ValueError(
            f"point counts differ: {original.n_points} vs {projected.n_points}"
        )
    d = original.entries
    delta = projected.entries
    denom = float(np.sum(d * d))
    if denom == 0.0:
        raise ValueError("original distances are all zero; stress is undefined")
    value = float(np.sqrt(np.sum((d - delta) ** 2) / denom))
    return StressReport(stress=value, n_points=original.n_points)


def stress_pipeline(d: Dataset, e: Embedding,
                    r: ScaleRange = DEFAULT_RANGE) -> StressReport:
    """Stress with both sides min-max scaled to the same range per column.

    The dataset's features and the embedding's axes are each normalized to r
    before taking distances, so the comparison is scale-free on both ends.
    """
    if d.n_points != e.n_points:
        raise ValueError(f"dataset has {d.n_points} rows, embedding {e.n_points}")
    original = build_distance_matrix(scale_features(d, r))
    projected = pairwise_distances(scale_matrix(e.coords, r))
    report = kruskal_stress(original, projected)
    return StressReport(stress=report.stress, n_points=report.n_points, scale=r)


def knn_label_accuracy(e: Embedding, labels, k: int = 1) -> float:
    """Leave-one-out accuracy of k-NN label voting in the embedding.

    Majority label among the k nearest neighbors (self excluded); vote ties
    fall back to the single nearest neighbor's label.
    """
    if labels is None:
        raise ValueError("labels are required")
    labels = list(labels)
    n = e.n_points
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} points")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in [1, {n - 1}], got {k}")
    dist = squareform(pdist(e.coords))
    np.fill_diagonal(dist, np.inf)
    neighbors = np.argsort(dist, axis=1, kind="stable")[:, :k]
    hits = 0
    for i in range(n):
        votes = Counter(labels[j] for j in neighbors[i])
        top = votes.most_common()
        best = [lab for lab, c in top if c == top[0][1]]
        predicted = best[0] if len(best) == 1 else labels[neighbors[i][0]]
        hits += predicted == labels[i]
    return hits / n
