import csv

import numpy as np
import pytest

from pinproj import load_csv, scale_features, extract_feature
from pinproj.cli import main, read_projection_csv


def run_cli(*argv):
    return main(list(argv))


def project_args(tiny_csv, out, mode="strict", extra=()):
    args = [
        "project", "--input", str(tiny_csv), "--dims", "2", "--mode", mode,
        "--init", "random", "--iters", "40", "--lr", "0.1", "--seed", "7",
        "--scale", "0,1", "--label", "label", "--out", str(out),
    ]
    if mode != "vanilla":
        args += ["--feature", "x"]
    return args + list(extra)


class TestUsageErrors:
    def test_range_mode_without_range_flag(self, tiny_csv, tmp_path):
        code = run_cli(*project_args(tiny_csv, tmp_path / "p.csv", mode="range"))
        assert code == 1

    def test_gauss_mode_without_ci(self, tiny_csv, tmp_path):
        code = run_cli(*project_args(tiny_csv, tmp_path / "p.csv", mode="gauss",
                                     extra=["--range", "0.1"]))
        assert code == 1

    def test_non_vanilla_requires_feature(self, tiny_csv, tmp_path):
        code = run_cli("project", "--input", str(tiny_csv), "--mode", "strict",
                       "--out", str(tmp_path / "p.csv"))
        assert code == 1

    def test_unknown_flag_rejected(self, tiny_csv, tmp_path):
        code = run_cli(*project_args(tiny_csv, tmp_path / "p.csv"), "--bogus")
        assert code == 1

    def test_missing_required_flag(self):
        assert run_cli("project", "--mode", "vanilla") == 1

    def test_unknown_subcommand(self):
        assert run_cli("transmogrify") == 1

    def test_bad_scale_format(self, tiny_csv, tmp_path):
        code = run_cli("project", "--input", str(tiny_csv), "--mode", "vanilla",
                       "--scale", "1", "--out", str(tmp_path / "p.csv"))
        assert code == 1


class TestProject:
    def test_strict_projection_csv(self, tiny_csv, tmp_path):
        out = tmp_path / "p.csv"
        assert run_cli(*project_args(tiny_csv, out)) == 0
        with out.open() as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["id", "dim0", "dim1", "label"]
        assert len(rows) == 11
        coords, labels = read_projection_csv(out)
        d = scale_features(load_csv(tiny_csv, label_column="label"))
        assert np.array_equal(coords[:, 1], extract_feature(d, "x"))
        assert labels == d.labels
        report = (tmp_path / "p.report.txt").read_text()
        assert "stress=" in report and "seed=7" in report

    def test_runtime_error_exit_code(self, tmp_path):
        out = tmp_path / "p.csv"
        code = run_cli("project", "--input", str(tmp_path / "missing.csv"),
                       "--mode", "vanilla", "--out", str(out))
        assert code == 2

    def test_vanilla_has_no_label_column_without_flag(self, tiny_csv, tmp_path):
        out = tmp_path / "p.csv"
        args = ["project", "--input", str(tiny_csv), "--mode", "vanilla",
                "--iters", "5", "--out", str(out)]
        assert run_cli(*args) == 2  # label column text breaks numeric parse
        args += ["--label", "label"]
        assert run_cli(*args) == 0


class TestStress:
    def test_round_trip_matches_report(self, tiny_csv, tmp_path, capsys):
        out = tmp_path / "p.csv"
        assert run_cli(*project_args(tiny_csv, out)) == 0
        reported = dict(
            line.split("=")
            for line in (tmp_path / "p.report.txt").read_text().strip().splitlines()
        )
        assert run_cli("stress", "--input", str(tiny_csv), "--projection", str(out),
                       "--scale", "0,1", "--label", "label") == 0
        printed = dict(line.split("=") for line in
                       capsys.readouterr().out.strip().splitlines())
        assert abs(float(printed["stress"]) - float(reported["stress"])) < 1e-9

    def test_identity_projection_zero_stress(self, tmp_path, capsys):
        data = tmp_path / "d.csv"
        rng = np.random.default_rng(0)
        rows = rng.uniform(-2, 5, size=(8, 2))
        data.write_text(
            "a,b\n" + "\n".join(f"{float(x)!r},{float(y)!r}" for x, y in rows) + "\n"
        )
        scaled = scale_features(load_csv(data)).values
        proj = tmp_path / "p.csv"
        proj.write_text(
            "id,dim0,dim1\n"
            + "\n".join(f"{i},{float(x)!r},{float(y)!r}"
                        for i, (x, y) in enumerate(scaled))
            + "\n"
        )
        assert run_cli("stress", "--input", str(data), "--projection", str(proj)) == 0
        printed = capsys.readouterr().out
        assert float(printed.split("stress=")[1].splitlines()[0]) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_hand_built_three_point_pair(self, tmp_path, capsys):
        # dataset column {0, .5, 1} -> scaled distances {.5, 1, .5};
        # projection x {0, 0, 1} with constant y -> distances {0, 1, 1};
        # S = sqrt((0.25 + 0 + 0.25) / 1.5) = sqrt(1/3) = 0.57735...
        data = tmp_path / "d.csv"
        data.write_text("a\n0\n0.5\n1\n")
        proj = tmp_path / "p.csv"
        proj.write_text("id,dim0,dim1\n0,0,0.25\n1,0,0.25\n2,1,0.25\n")
        assert run_cli("stress", "--input", str(data), "--projection", str(proj),
                       "--scale", "0,1") == 0
        value = float(capsys.readouterr().out.split("stress=")[1].splitlines()[0])
        assert value == pytest.approx(0.57735, abs=1e-5)

    def test_mismatched_row_counts_exit_2(self, tiny_csv, tmp_path):
        proj = tmp_path / "p.csv"
        proj.write_text("id,dim0,dim1\n0,0,0\n1,1,1\n")
        code = run_cli("stress", "--input", str(tiny_csv), "--projection", str(proj),
                       "--label", "label")
        assert code == 2


class TestPlot:
    def make_projection(self, tiny_csv, tmp_path, dims="2"):
        out = tmp_path / "p.csv"
        args = project_args(tiny_csv, out)
        args[args.index("--dims") + 1] = dims
        assert run_cli(*args) == 0
        return out

    def test_plot_with_labels(self, tiny_csv, tmp_path):
        proj = self.make_projection(tiny_csv, tmp_path)
        svg_path = tmp_path / "p.svg"
        assert run_cli("plot", "--projection", str(proj), "--labels", "label",
                       "--out", str(svg_path)) == 0
        svg = svg_path.read_text()
        assert svg.count("<circle") == 10
        assert svg.count("<rect") == 3  # background + 2 legend swatches

    def test_plot_without_labels(self, tiny_csv, tmp_path):
        proj = self.make_projection(tiny_csv, tmp_path)
        svg_path = tmp_path / "p.svg"
        assert run_cli("plot", "--projection", str(proj), "--out", str(svg_path)) == 0
        assert svg_path.read_text().count("<rect") == 1

    def test_three_dim_needs_panels_flag(self, tiny_csv, tmp_path):
        proj = self.make_projection(tiny_csv, tmp_path, dims="3")
        svg_path = tmp_path / "p.svg"
        assert run_cli("plot", "--projection", str(proj), "--out", str(svg_path)) == 2
        assert run_cli("plot", "--projection", str(proj), "--out", str(svg_path),
                       "--panels") == 0
        assert svg_path.read_text().count("<circle") == 30

    def test_missing_projection_exit_2(self, tmp_path):
        assert run_cli("plot", "--projection", str(tmp_path / "none.csv"),
                       "--out", str(tmp_path / "x.svg")) == 2

    def test_unknown_label_column_exit_2(self, tiny_csv, tmp_path):
        proj = self.make_projection(tiny_csv, tmp_path)
        assert run_cli("plot", "--projection", str(proj), "--labels", "klass",
                       "--out", str(tmp_path / "x.svg")) == 2


class TestBench:
    def test_bench_command(self, tiny_csv, tmp_path):
        grid = tmp_path / "grid.txt"
        grid.write_text(
            f"dataset tiny {tiny_csv} x\nmethod vanilla\ninit random\n"
            f"seeds 1\niters 5\ndims 2\n"
        )
        out_dir = tmp_path / "results"
        assert run_cli("bench", "--grid", str(grid), "--out-dir", str(out_dir),
                       "--quiet") == 0
        assert (out_dir / "report.csv").exists()
        assert (out_dir / "summary.txt").exists()
        lines = (out_dir / "report.csv").read_text().strip().splitlines()
        assert len(lines) == 2

    def test_bench_cell_failure_still_exits_zero(self, tiny_csv, tmp_path):
        grid = tmp_path / "grid.txt"
        grid.write_text(
            f"dataset tiny {tiny_csv} ghost-feature\nmethod strict\ninit random\n"
            f"seeds 1\niters 5\ndims 2\n"
        )
        out_dir = tmp_path / "results"
        assert run_cli("bench", "--grid", str(grid), "--out-dir", str(out_dir),
                       "--quiet") == 0
        report = (out_dir / "report.csv").read_text()
        assert "ghost-feature" in report

    def test_bench_unreadable_grid_exit_2(self, tmp_path):
        assert run_cli("bench", "--grid", str(tmp_path / "nope.txt"),
                       "--out-dir", str(tmp_path / "r")) == 2


class TestDeterminism:
    def test_identical_runs_byte_identical_outputs(self, tiny_csv, tmp_path):
        outs = []
        for tag in ("one", "two"):
            out = tmp_path / f"{tag}.csv"
            assert run_cli(*project_args(tiny_csv, out)) == 0
            svg = tmp_path / f"{tag}.svg"
            assert run_cli("plot", "--projection", str(out), "--labels", "label",
                           "--out", str(svg)) == 0
            outs.append((out.read_bytes(), svg.read_bytes()))
        assert outs[0] == outs[1]
