"""Force-directed dimensionality reduction with a user-pinned projection axis."""

from .bench import BenchGrid, BenchReport, BenchRow, DatasetSpec, parse_grid, run_grid
from .constraint import (
    ConstraintPolicy,
    GaussianParams,
    apply_constraint,
    gaussian_params,
    inverse_normal_cdf,
    moving_ratio,
    normal_cdf,
)
from .data import (
    Dataset,
    DEFAULT_RANGE,
    ScaleRange,
    extract_feature,
    load_csv,
    scale_features,
    scale_matrix,
    subsample,
)
from .embedding import Embedding, fix_axis, init_embedding, jacobi_eigh, pca_components
from .engine import ProjectionConfig, RunResult, force_step, run_projection
from .geometry import (
    CondensedDistanceMatrix,
    build_distance_matrix,
    condensed_index,
    get_distance,
    load_distances,
    pairwise_distances,
    save_distances,
)
from .metrics import StressReport, knn_label_accuracy, kruskal_stress, stress_pipeline
from .plot import PlotSpec, color_map, render_panels, render_scatter

__version__ = "0.1.0"

__all__ = [
    "BenchGrid", "BenchReport", "BenchRow", "DatasetSpec", "parse_grid", "run_grid",
    "ConstraintPolicy", "GaussianParams", "apply_constraint", "gaussian_params",
    "inverse_normal_cdf", "moving_ratio", "normal_cdf",
    "Dataset", "DEFAULT_RANGE", "ScaleRange", "extract_feature", "load_csv",
    "scale_features", "scale_matrix", "subsample",
    "Embedding", "fix_axis", "init_embedding", "jacobi_eigh", "pca_components",
    "ProjectionConfig", "RunResult", "force_step", "run_projection",
    "CondensedDistanceMatrix", "build_distance_matrix", "condensed_index",
    "get_distance", "load_distances", "pairwise_distances", "save_distances",
    "StressReport", "knn_label_accuracy", "kruskal_stress", "stress_pipeline",
    "PlotSpec", "color_map", "render_panels", "render_scatter",
    "__version__",
]
