"""Benchmark grid: dataset x method x init x seed, with timing and stress rows."""

from __future__ import annotations

import csv
import shlex
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constraint import ConstraintPolicy
from .data import Dataset, DEFAULT_RANGE, ScaleRange, load_csv, scale_features, subsample
from .embedding import init_embedding
from .engine import ProjectionConfig, run_projection
from .metrics import knn_label_accuracy, stress_pipeline

PCA_ONLY = "pca-only"


@dataclass(frozen=True)
class DatasetSpec:
    name: str
    path: str
    fixed_feature: str | None = None
    subsample_to: int | None = None


@dataclass(frozen=True)
class BenchGrid:
    datasets: tuple[DatasetSpec, ...]
    methods: tuple[str, ...]
    inits: tuple[str, ...]
    seeds: tuple[int, ...]
    dims: int = 3
    iterations: int = 500
    learning_rate: float = 0.05
    scale: ScaleRange = DEFAULT_RANGE
    label_column: str = "label"
    subsample_seed: int = 0

    def __post_init__(self):
        if not (self.datasets and self.methods and self.inits and self.seeds):
            raise ValueError("datasets, methods, inits and seeds must all be non-empty")
        for token in self.methods:
            parse_method(token)  # validates
        pinning = [t for t in self.methods if t not in ("vanilla", PCA_ONLY)]
        if pinning:
            missing = [d.name for d in self.datasets if d.fixed_feature is None]
            if missing:
                raise ValueError(
                    f"methods {pinning} pin an axis but datasets {missing} "
                    f"name no fixed feature"
                )


@dataclass
class BenchRow:
    dataset: str
    method: str
    init: str
    seed: int
    stress: float | None = None
    wall_time_total: float | None = None
    wall_time_init: float | None = None
    knn_accuracy: float | None = None
    error: str | None = None


@dataclass
class BenchReport:
    rows: list[BenchRow]

    def summary(self) -> list[dict]:
        """Median and IQR per (dataset, method, init) over the seeds that ran."""
        cells: dict[tuple[str, str, str], list[BenchRow]] = {}
        for row in self.rows:
            cells.setdefault((row.dataset, row.method, row.init), []).append(row)
        out = []
        for (dataset, method, init), group in cells.items():
            ok = [r for r in group if r.error is None]
            entry = {
                "dataset": dataset, "method": method, "init": init,
                "n_seeds": len(group), "n_failed": len(group) - len(ok),
            }
            for field_name in ("stress", "wall_time_total", "knn_accuracy"):
                vals = [getattr(r, field_name) for r in ok
                        if getattr(r, field_name) is not None]
                if vals:
                    entry[f"median_{field_name}"] = float(np.median(vals))
                    entry[f"iqr_{field_name}"] = float(
                        np.percentile(vals, 75) - np.percentile(vals, 25)
                    )
                else:
                    entry[f"median_{field_name}"] = None
                    entry[f"iqr_{field_name}"] = None
            out.append(entry)
        return out

    def to_csv(self, path: str | Path) -> None:
        fields = ["dataset", "method", "init", "seed", "stress",
                  "wall_time_total", "wall_time_init", "knn_accuracy", "error"]
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(fields)
            for row in self.rows:
                writer.writerow([
                    row.dataset, row.method, row.init, row.seed,
                    "" if row.stress is None else f"{row.stress:.17g}",
                    "" if row.wall_time_total is None else f"{row.wall_time_total:.6f}",
                    "" if row.wall_time_init is None else f"{row.wall_time_init:.6f}",
                    "" if row.knn_accuracy is None else f"{row.knn_accuracy:.6f}",
                    row.error or "",
                ])

    def table(self) -> str:
        """Aligned-column text table of the per-cell medians."""
        headers = ["dataset", "method", "init", "stress", "iqr", "time_s", "knn", "seeds", "failed"]
        rows = []
        for s in sorted(self.summary(), key=lambda s: (s["dataset"], s["method"], s["init"])):
            rows.append([
                s["dataset"], s["method"], s["init"],
                "-" if s["median_stress"] is None else f"{s['median_stress']:.4f}",
                "-" if s["iqr_stress"] is None else f"{s['iqr_stress']:.4f}",
                "-" if s["median_wall_time_total"] is None else f"{s['median_wall_time_total']:.3f}",
                "-" if s["median_knn_accuracy"] is None else f"{s['median_knn_accuracy']:.4f}",
                str(s["n_seeds"]), str(s["n_failed"]),
            ])
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(headers)]
        lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
        lines.append("  ".join("-" * w for w in widths))
        lines.extend("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row))
                     for row in rows)
        return "\n".join(lines) + "\n"


def parse_method(token: str) -> ConstraintPolicy | str:
    """Method tokens: vanilla | strict | range:A | gauss:A:CI | pca-only."""
    if token == "vanilla":
        return ConstraintPolicy.vanilla()
    if token == "strict":
        return ConstraintPolicy.strict()
    if token == PCA_ONLY:
        return PCA_ONLY
    if token.startswith("range:"):
        return ConstraintPolicy.normal_range(float(token.split(":", 1)[1]))
    if token.startswith("gauss:"):
        parts = token.split(":")
        if len(parts) != 3:
            raise ValueError(f"gauss method needs gauss:A:CI, got {token!r}")
        return ConstraintPolicy.gaussian_range(float(parts[1]), float(parts[2]))
    raise ValueError(f"unknown method token {token!r}")


def parse_grid(path: str | Path) -> BenchGrid:
    """Read a grid spec: one `key value...` statement per line, shlex-quoted.

    Keys: dataset NAME PATH [FIXED_FEATURE [SUBSAMPLE_N]], method TOKEN,
    init {random|pca}, seeds N..., dims {2|3}, iters N, lr X, scale LO HI,
    label NAME, subsample-seed N. Blank lines and '#' comments are skipped.
    """
    path = Path(path)
    datasets: list[DatasetSpec] = []
    methods: list[str] = []
    inits: list[str] = []
    seeds: list[int] = []
    options: dict = {}
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        tokens = shlex.split(raw, comments=True)
        if not tokens:
            continue
        key, args = tokens[0], tokens[1:]
        try:
            if key == "dataset":
                if not 2 <= len(args) <= 4:
                    raise ValueError("dataset NAME PATH [FIXED_FEATURE [SUBSAMPLE_N]]")
                datasets.append(DatasetSpec(
                    name=args[0], path=args[1],
                    fixed_feature=args[2] if len(args) > 2 else None,
                    subsample_to=int(args[3]) if len(args) > 3 else None,
                ))
            elif key == "method":
                if len(args) != 1:
                    raise ValueError("method TOKEN")
                methods.append(args[0])
            elif key == "init":
                inits.extend(args)
            elif key in ("seed", "seeds"):
                seeds.extend(int(a) for a in args)
            elif key == "dims":
                options["dims"] = int(args[0])
            elif key == "iters":
                options["iterations"] = int(args[0])
            elif key == "lr":
                options["learning_rate"] = float(args[0])
            elif key == "scale":
                options["scale"] = ScaleRange(float(args[0]), float(args[1]))
            elif key == "label":
                options["label_column"] = args[0]
            elif key == "subsample-seed":
                options["subsample_seed"] = int(args[0])
            else:
                raise ValueError(f"unknown key {key!r}")
        except (ValueError, IndexError) as err:
            raise ValueError(f"{path}: line {line_no}: {err}") from None
    return BenchGrid(datasets=tuple(datasets), methods=tuple(methods),
                     inits=tuple(inits), seeds=tuple(seeds), **options)


def _load_grid_dataset(spec: DatasetSpec, grid: BenchGrid) -> Dataset:
    with Path(spec.path).open(encoding="utf-8-sig") as fh:
        header = fh.readline()
    has_label = grid.label_column in next(csv.reader([header]))
    d = load_csv(spec.path, label_column=grid.label_column if has_label else None)
    if spec.subsample_to is not None:
        d = subsample(d, spec.subsample_to, seed=grid.subsample_seed)
    return d


def _run_cell(d: Dataset, spec: DatasetSpec, method_token: str,
              init_mode: str, seed: int, grid: BenchGrid) -> BenchRow:
    row = BenchRow(dataset=spec.name, method=method_token, init=init_mode, seed=seed)
    try:
        method = parse_method(method_token)
        if method == PCA_ONLY:
            t0 = time.perf_counter()
            scaled = scale_features(d, grid.scale)
            e = init_embedding(scaled, grid.dims, "pca", seed, grid.scale)
            wall = time.perf_counter() - t0
            row.wall_time_total = row.wall_time_init = wall
        else:
            cfg = ProjectionConfig(
                policy=method,
                fixed_feature=spec.fixed_feature if method.needs_fixed_feature else None,
                target_dims=grid.dims, init=init_mode, seed=seed,
                learning_rate=grid.learning_rate, max_iterations=grid.iterations,
                scale=grid.scale,
            )
            result = run_projection(d, cfg)
            e = result.embedding
            row.wall_time_total = result.wall_time_total
            row.wall_time_init = result.wall_time_init
        row.stress = stress_pipeline(d, e, grid.scale).stress
        if d.labels is not None:
            row.knn_accuracy = knn_label_accuracy(e, d.labels, k=1)
    except Exception as err:  # isolate the cell, keep the grid running
        row.error = f"{type(err).__name__}: {err}"
    return row


def run_grid(grid: BenchGrid, progress=None) -> BenchReport:
    """Execute every (dataset, method, init, seed) cell sequentially.

    Cell failures are recorded as rows with an error field; they never abort
    the grid. Stress values are reproducible from the seeds; timings are not.
    """
    rows: list[BenchRow] = []
    for spec in grid.datasets:
        try:
            d = _load_grid_dataset(spec, grid)
        except Exception as err:
            for method_token in grid.methods:
                for init_mode in grid.inits:
                    for seed in grid.seeds:
                        rows.append(BenchRow(spec.name, method_token, init_mode, seed,
                                             error=f"{type(err).__name__}: {err}"))
            continue
        for method_token in grid.methods:
            for init_mode in grid.inits:
                for seed in grid.seeds:
                    row = _run_cell(d, spec, method_token, init_mode, seed, grid)
                    rows.append(row)
                    if progress is not None:
                        progress(row)
    return BenchReport(rows=rows)
