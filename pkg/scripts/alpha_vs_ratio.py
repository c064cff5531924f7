"""Regenerate the alpha(x) and eps_s(x) curves over a log grid of ratios.

Writes the same CSV columns as `bsbound sweep`; plotting is left to the
reader's tool of choice, e.g.

    python scripts/alpha_vs_ratio.py --points 41 --out alpha_curve.csv
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from bsbound.optimizer import sweep  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--x-min", type=float, default=1e-2)
    parser.add_argument("--x-max", type=float, default=1e2)
    parser.add_argument("--points", type=int, default=41)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    grid = np.geomspace(args.x_min, args.x_max, args.points)
    rows = sweep([float(x) for x in grid], jobs=args.jobs)
    lines = ["x,alpha,eps_s,d,p_min,feasible"]
    for row in rows:
        feas = "true" if row.feasible else "false"
        lines.append(
            f"{row.x!r},{row.alpha!r},{row.eps_s_star!r},{row.d_star!r},"
            f"{row.p_min!r},{feas}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.points} rows to {args.out}")
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
