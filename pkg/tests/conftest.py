import sys
from pathlib import Path

import numpy as np
import pytest

SCRIPTS_DIR = Path(__file__).resolve().parents[1] / "scripts"
sys.path.insert(0, str(SCRIPTS_DIR))

import make_datasets  # noqa: E402


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """The four benchmark CSVs, exported once per session."""
    out = tmp_path_factory.mktemp("datasets")
    make_datasets.export_all(out)
    return out


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance suite's per-criterion lines past output capture."""
    lines = getattr(sys.modules.get("test_acceptance"), "CRITERION_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def tiny_csv(tmp_path):
    """A small labeled 2-feature dataset, awkward enough to exercise scaling."""
    rng = np.random.default_rng(42)
    path = tmp_path / "tiny.csv"
    lines = ["x,y,label"]
    for i in range(10):
        a, b = rng.uniform(0, 5), rng.uniform(-3, 3)
        lines.append(f"{a!r},{b!r},{'pos' if b > 0 else 'neg'}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
