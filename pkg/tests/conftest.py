import os
import subprocess
import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[1]
SRC = REPO / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def cli_env():
    env = os.environ.copy()
    env["PYTHONPATH"] = str(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    return env


@pytest.fixture(scope="session")
def run_cli(cli_env):
    def run(*args, timeout=180):
        return subprocess.run(
            [sys.executable, "-m", "bsbound", *args],
            capture_output=True, text=True, env=cli_env, timeout=timeout,
        )

    return run
