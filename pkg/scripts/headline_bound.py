"""Worked example: the full bound chain for a symmetric and a highly
reflective splitter, printed step by step.

    python scripts/headline_bound.py
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from bsbound.linewidth import (  # noqa: E402
    DecayContext,
    min_absorption_probability,
    scaled_linewidth_bound,
)
from bsbound.optimizer import extract_alpha  # noqa: E402

N_VT = 1e9
OMEGA_TILDE = 0.1


def main() -> None:
    results = {}
    for x in (1.0, 0.05):
        ex = extract_alpha(x)
        eps_s = ex.results[-1].eps_s_star
        ctx = DecayContext(n_vt=N_VT, eta=math.sqrt(eps_s))
        p_min = min_absorption_probability(ex.alpha, ctx, OMEGA_TILDE)
        results[x] = p_min
        print(f"splitting ratio x = {x}")
        print(f"  alpha          = {ex.alpha:.4f}  (drift {ex.drift:.1e})")
        print(f"  eps_s at optimum = {eps_s:.3f}")
        print(f"  scaled line-width bound at omega={OMEGA_TILDE}: "
              f"{scaled_linewidth_bound(ctx, OMEGA_TILDE):.4e}")
        print(f"  omega^4 prefactor = {p_min / OMEGA_TILDE**4:.4e}")
        print(f"  p_min(omega={OMEGA_TILDE}) = {p_min:.4e}")
        print()
    print(f"p_min(x=0.05) / p_min(x=1) = {results[0.05] / results[1.0]:.2f}")


if __name__ == "__main__":
    main()
