"""Fixture batches produced through the simulator's own CLI, so the
plotting package is exercised strictly against the public file schemas."""

import shutil
import subprocess
import sys

import pytest

FAST = ["--runs", "2", "--days", "30", "--seed", "9", "--workers", "1"]


def run_cli(args):
    exe = shutil.which("epiecon")
    cmd = [exe] if exe else [sys.executable, "-m", "epiecon.cli"]
    proc = subprocess.run(cmd + args, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def compare_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("compare")
    run_cli(["compare", "--scenarios", "all", "--out", str(out)] + FAST
            + ["--param", "population_size=90"])
    return out


@pytest.fixture(scope="session")
def sweep_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweep")
    run_cli(["sweep", "--values", "0.4:0.8:0.2", "--out", str(out)] + FAST)
    return out
