"""Command-line front door: project, stress, bench, plot.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .bench import parse_grid, run_grid
from .constraint import ConstraintPolicy
from .data import ScaleRange, load_csv
from .embedding import Embedding
from .engine import ProjectionConfig, run_projection
from .metrics import stress_pipeline
from .plot import PlotSpec, render_panels, render_scatter


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_scale(text: str) -> ScaleRange:
    try:
        low, high = (float(part) for part in text.split(","))
        return ScaleRange(low, high)
    except ValueError:
        raise UsageError(f"--scale expects LO,HI with LO < HI, got {text!r}") from None


def _policy_from_flags(args) -> ConstraintPolicy:
    if args.mode == "vanilla":
        return ConstraintPolicy.vanilla()
    if args.feature is None:
        raise UsageError(f"--mode {args.mode} requires --feature")
    if args.mode == "strict":
        return ConstraintPolicy.strict()
    if args.range is None:
        raise UsageError(f"--mode {args.mode} requires --range")
    if args.mode == "range":
        return ConstraintPolicy.normal_range(args.range)
    if args.ci is None:
        raise UsageError("--mode gauss requires --ci")
    return ConstraintPolicy.gaussian_range(args.range, args.ci)


def _write_projection_csv(path: Path, coords: np.ndarray, labels) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = ["id"] + [f"dim{k}" for k in range(coords.shape[1])]
        if labels is not None:
            header.append("label")
        writer.writerow(header)
        for i in range(coords.shape[0]):
            row = [str(i)] + [f"{v:.17g}" for v in coords[i]]
            if labels is not None:
                row.append(labels[i])
            writer.writerow(row)


def read_projection_csv(path: str | Path, label_column: str | None = "label",
                        ) -> tuple[np.ndarray, tuple[str, ...] | None]:
    """Read an `id,dim0,...[,label]` projection CSV back into coordinates."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty projection file") from None
        dim_cols = [i for i, name in enumerate(header) if name.startswith("dim")]
        if not dim_cols:
            raise ValueError(f"{path}: no dim0.. columns in header {header}")
        label_col = header.index(label_column) if label_column in header else None
        coords, labels = [], []
        for record in reader:
            if not record:
                continue
            coords.append([float(record[i]) for i in dim_cols])
            if label_col is not None:
                labels.append(record[label_col])
    return np.array(coords, dtype=float), tuple(labels) if label_col is not None else None


def _report_lines(cfg: ProjectionConfig, args, result, report) -> str:
    lines = [
        f"input={args.input}",
        f"mode={args.mode}",
        f"dims={cfg.target_dims}",
        f"init={cfg.init}",
        f"iters={cfg.max_iterations}",
        f"lr={cfg.learning_rate:.17g}",
        f"seed={cfg.seed}",
        f"scale={cfg.scale.low:.17g},{cfg.scale.high:.17g}",
    ]
    if cfg.fixed_feature is not None:
        lines.append(f"feature={cfg.fixed_feature}")
    if cfg.policy.half_range is not None:
        lines.append(f"range={cfg.policy.half_range:.17g}")
    if cfg.policy.confidence is not None:
        lines.append(f"ci={cfg.policy.confidence:.17g}")
    lines += [
        f"stress={report.stress:.17g}",
        f"n_points={report.n_points}",
        f"iterations_run={result.iterations_run}",
        f"wall_time_total={result.wall_time_total:.6f}",
        f"wall_time_init={result.wall_time_init:.6f}",
    ]
    return "\n".join(lines) + "\n"


def cmd_project(args) -> int:
    policy = _policy_from_flags(args)
    cfg = ProjectionConfig(
        policy=policy,
        fixed_feature=args.feature if policy.needs_fixed_feature else None,
        target_dims=args.dims,
        init=args.init,
        seed=args.seed,
        learning_rate=args.lr,
        lr_decay=args.lr_decay,
        max_iterations=args.iters,
        scale=_parse_scale(args.scale),
    )
    dataset = load_csv(args.input, label_column=args.label)
    result = run_projection(dataset, cfg)
    report = stress_pipeline(dataset, result.embedding, cfg.scale)
    out = Path(args.out)
    _write_projection_csv(out, result.embedding.coords, dataset.labels)
    report_path = out.with_suffix(".report.txt")
    report_path.write_text(_report_lines(cfg, args, result, report), encoding="utf-8")
    print(f"wrote {out} and {report_path} (stress={report.stress:.6f}, "
          f"{result.wall_time_total:.2f}s)")
    return 0


def cmd_stress(args) -> int:
    scale = _parse_scale(args.scale)
    dataset = load_csv(args.input, label_column=args.label)
    coords, _ = read_projection_csv(args.projection)
    if coords.shape[0] != dataset.n_points:
        raise ValueError(
            f"row counts differ: {args.input} has {dataset.n_points}, "
            f"{args.projection} has {coords.shape[0]}"
        )
    report = stress_pipeline(dataset, Embedding(coords), scale)
    sys.stdout.write(report.to_text())
    return 0


def cmd_bench(args) -> int:
    grid = parse_grid(args.grid)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def progress(row):
        status = row.error or f"stress={row.stress:.4f}"
        print(f"[{row.dataset} {row.method} {row.init} seed={row.seed}] {status}",
              flush=True)

    report = run_grid(grid, progress=progress if not args.quiet else None)
    report.to_csv(out_dir / "report.csv")
    table = report.table()
    (out_dir / "summary.txt").write_text(table, encoding="utf-8")
    print(table, end="")
    failures = sum(1 for r in report.rows if r.error is not None)
    print(f"wrote {out_dir / 'report.csv'} and {out_dir / 'summary.txt'} "
          f"({len(report.rows)} rows, {failures} failed)")
    return 0


def cmd_plot(args) -> int:
    coords, labels = read_projection_csv(args.projection, label_column=args.labels)
    if args.labels and labels is None:
        raise ValueError(f"{args.projection}: no column named {args.labels!r}")
    e = Embedding(coords)
    spec = PlotSpec(axis_labels=("dim0", "dim1"))
    if e.n_dims == 2:
        svg = render_scatter(e, labels, spec)
    elif args.panels:
        svg = render_panels(e, labels, spec)
    else:
        raise ValueError("projection is 3-D; pass --panels to export axis-pair panels")
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="pinproj",
                     description="Force-directed projection with a pinned axis")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("project", help="project a CSV dataset")
    p.add_argument("--input", required=True, help="input CSV (header row required)")
    p.add_argument("--dims", type=int, choices=(2, 3), default=2)
    p.add_argument("--mode", required=True, choices=("vanilla", "strict", "range", "gauss"))
    p.add_argument("--feature", help="feature pinned to the last axis")
    p.add_argument("--range", type=float, help="half-range a for range/gauss modes")
    p.add_argument("--ci", type=float, help="confidence in (0,1) for gauss mode")
    p.add_argument("--init", choices=("random", "pca"), default="random")
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--lr", type=float, default=0.05)
    p.add_argument("--lr-decay", action="store_true", help="linear learning-rate decay")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", default="0,1", help="LO,HI scaling range")
    p.add_argument("--label", help="label column name in the input CSV")
    p.add_argument("--out", required=True, help="output projection CSV path")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("stress", help="stress of a projection against its dataset")
    p.add_argument("--input", required=True)
    p.add_argument("--projection", required=True)
    p.add_argument("--scale", default="0,1")
    p.add_argument("--label", help="label column name in the input CSV")
    p.set_defaults(func=cmd_stress)

    p = sub.add_parser("bench", help="run a benchmark grid file")
    p.add_argument("--grid", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="render a projection CSV to SVG")
    p.add_argument("--projection", required=True)
    p.add_argument("--labels", help="use the projection's label column, by name")
    p.add_argument("--out", required=True)
    p.add_argument("--panels", action="store_true",
                   help="render a 3-D projection as three axis-pair panels")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            parser.print_help()
            return 1
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except Exception as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
