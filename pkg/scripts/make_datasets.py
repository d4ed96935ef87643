#!/usr/bin/env python3
"""Export the four benchmark datasets (iris, wine, cancer, digits) to CSV.

Requires scikit-learn (the datasets ship with it, no download needed).
Each CSV gets a header row, float cells in shortest round-trip form, and a
trailing `label` column with the class name.

Usage:
  python3 scripts/make_datasets.py --out-dir data
"""

import argparse
import csv
from pathlib import Path


def _write(path: Path, names, values, labels) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([*names, "label"])
        for row, label in zip(values, labels):
            writer.writerow([repr(float(v)) for v in row] + [str(label)])
    return path


def export_iris(out_dir: Path) -> Path:
    from sklearn.datasets import load_iris

    bunch = load_iris()
    names = [n.replace(" (cm)", "") for n in bunch.feature_names]
    labels = [bunch.target_names[t] for t in bunch.target]
    return _write(out_dir / "iris.csv", names, bunch.data, labels)


def export_wine(out_dir: Path) -> Path:
    from sklearn.datasets import load_wine

    bunch = load_wine()
    names = [n.replace("_", " ") for n in bunch.feature_names]
    labels = [bunch.target_names[t] for t in bunch.target]
    return _write(out_dir / "wine.csv", names, bunch.data, labels)


def export_cancer(out_dir: Path) -> Path:
    from sklearn.datasets import load_breast_cancer

    bunch = load_breast_cancer()
    labels = [bunch.target_names[t] for t in bunch.target]
    return _write(out_dir / "cancer.csv", list(bunch.feature_names), bunch.data, labels)


def export_digits(out_dir: Path) -> Path:
    from sklearn.datasets import load_digits

    bunch = load_digits()
    names = [f"pixel {r},{c}" for r in range(8) for c in range(8)]
    labels = [str(t) for t in bunch.target]
    return _write(out_dir / "digits.csv", names, bunch.data, labels)


EXPORTERS = {
    "iris": export_iris,
    "wine": export_wine,
    "cancer": export_cancer,
    "digits": export_digits,
}

# The grid configs pin these features to the last axis.
FIXED_FEATURES = {
    "iris": "sepal width",
    "wine": "alcalinity of ash",
    "cancer": "worst concave points",
    "digits": "pixel 6,4",
}


def export_all(out_dir) -> dict:
    out_dir = Path(out_dir)
    return {name: fn(out_dir) for name, fn in EXPORTERS.items()}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="data", help="target directory")
    parser.add_argument("--only", choices=sorted(EXPORTERS), nargs="*",
                        help="export a subset")
    args = parser.parse_args()
    names = args.only or sorted(EXPORTERS)
    for name in names:
        path = EXPORTERS[name](Path(args.out_dir))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
