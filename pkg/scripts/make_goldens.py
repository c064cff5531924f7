"""Regenerate the golden CLI outputs under tests/golden/.

Run after any intentional format change, then review the diff.
"""

import os
import subprocess
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
GOLDEN = REPO / "tests" / "golden"

CASES = {
    "eval_point.csv": [
        "eval", "--eps-s", "6.2", "--gamma", "1e-3", "--omega", "1e-3",
        "--thickness", "500",
    ],
    "eval_point.jsonl": [
        "eval", "--eps-s", "6.2", "--gamma", "1e-3", "--omega", "1e-3",
        "--thickness", "500", "--format", "json",
    ],
    "sweep_small.csv": [
        "sweep", "--x-min", "0.5", "--x-max", "2", "--points", "3", "--log",
    ],
}


def main() -> None:
    env = os.environ.copy()
    env["PYTHONPATH"] = str(REPO / "src") + os.pathsep + env.get("PYTHONPATH", "")
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, args in CASES.items():
        out = subprocess.run(
            [sys.executable, "-m", "bsbound", *args],
            capture_output=True, text=True, env=env, check=True,
        )
        (GOLDEN / name).write_text(out.stdout)
        print(f"wrote {GOLDEN / name}")


if __name__ == "__main__":
    main()
