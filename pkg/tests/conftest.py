import json
import subprocess
import sys

import pytest


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "fibcobweb", *args], capture_output=True, text=True, check=False
    )


@pytest.fixture
def cli():
    return run_cli


@pytest.fixture
def corrupted_expected(tmp_path):
    """Packaged expected values with the GF(2)^4 plane count changed from 35 to 36."""
    from fibcobweb.checks import load_expected

    data = load_expected()
    data["subspaces"]["n=4,k=2,q=2"] = "36"
    path = tmp_path / "expected_corrupt.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path
