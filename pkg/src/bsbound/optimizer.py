"""Constrained minimization of slab absorption at a fixed splitting ratio.

For a target ratio x = |T|^2/|R|^2 and small (gamma_tilde, omega_tilde),
finds the static permittivity and scaled thickness that minimize the
absorption probability p, extracts the coefficient alpha = p/(gamma*omega),
and sweeps x to produce the alpha(x) and eps_s(x) curves.

The search works in the optical phase phi = eta0 * omega_tilde * d, where
eta0 = sqrt(eps_s).  Within one interference period phi in (0, pi) the
ratio x(phi) falls from large values to a single valley and rises again,
so a target ratio has at most two roots ("first" below the valley,
"second" above).  The outer search scans eps_s geometrically and refines
the best bracket by golden section, separately per branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

from scipy.optimize import brentq

from .slab import reflection, transmission, working_index

__all__ = [
    "MinimizeConfig",
    "MinimizeDiagnostics",
    "MinimizeResult",
    "AlphaExtraction",
    "SweepRow",
    "solve_thickness_for_ratio",
    "minimize_absorption",
    "extract_alpha",
    "sweep",
    "DEFAULT_LEVELS",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_BRANCHES = ("first", "second")

# phase endpoints of the first interference period; the ratio diverges at
# both ends, so any feasible target is bracketed against the valley
_PHI_LO = 1e-12
_PHI_HI = math.pi * (1.0 - 1e-12)

# default refinement ladder for alpha extraction
DEFAULT_LEVELS: tuple[tuple[float, float], ...] = ((1e-3, 1e-3), (1e-4, 1e-4))


@dataclass(frozen=True)
class MinimizeConfig:
    """Knobs of one constrained minimization."""

    x_target: float
    gamma_tilde: float = 1e-3
    omega_tilde: float = 1e-3
    eps_s_range: tuple[float, float] = (1.0 + 1e-6, 1e3)
    branch_policy: str = "both"
    scan_points: int = 256
    constraint_rtol: float = 1e-10
    objective_rtol: float = 1e-8
    drift_tol: float = 0.01

    def __post_init__(self) -> None:
        if not self.x_target > 0:
            raise ValueError(f"x_target must be positive, got {self.x_target}")
        if not 0 < self.gamma_tilde:
            raise ValueError(f"gamma_tilde must be positive, got {self.gamma_tilde}")
        if not 0 < self.omega_tilde:
            raise ValueError(f"omega_tilde must be positive, got {self.omega_tilde}")
        lo, hi = self.eps_s_range
        if not (1.0 < lo < hi):
            raise ValueError(f"eps_s_range must satisfy 1 < lo < hi, got {self.eps_s_range}")
        if self.branch_policy not in ("both",) + _BRANCHES:
            raise ValueError(f"unknown branch_policy {self.branch_policy!r}")
        if self.scan_points < 16:
            raise ValueError("scan_points must be at least 16")


@dataclass(frozen=True)
class MinimizeDiagnostics:
    constraint_residual: float
    scan_feasible: int
    refine_iterations: int
    slab_evaluations: int
    rejected_branch_p: float


@dataclass(frozen=True)
class MinimizeResult:
    """Optimum of one constrained minimization.

    alpha = p_min / (gamma_tilde * omega_tilde) is the working-point
    estimate of the small-parameter coefficient.  Infeasible results carry
    NaN numeric fields and branch "none".
    """

    alpha: float
    eps_s_star: float
    d_star: float
    p_min: float
    phi_star: float
    branch: str
    feasible: bool
    diagnostics: MinimizeDiagnostics


@dataclass(frozen=True)
class AlphaExtraction:
    """alpha from a ladder of shrinking (gamma_tilde, omega_tilde) levels."""

    alpha: float
    drift: float
    scaling_ok: bool
    feasible: bool
    results: tuple[MinimizeResult, ...]


@dataclass(frozen=True)
class SweepRow:
    x: float
    alpha: float
    eps_s_star: float
    d_star: float
    p_min: float
    feasible: bool


class _Probe:
    """Response of one eps_s slice as a function of phase, with eval count."""

    def __init__(self, eps_s: float, gamma_tilde: float, omega_tilde: float) -> None:
        self.eps_s = eps_s
        self.gamma_tilde = gamma_tilde
        self.omega_tilde = omega_tilde
        self.eta0 = math.sqrt(eps_s)
        self.index = working_index(eps_s, gamma_tilde, omega_tilde)
        self.evals = 0

    def response(self, phi: float) -> tuple[float, float]:
        """(p, x) at optical phase phi = eta0 * omega_tilde * d."""
        self.evals += 1
        phase = phi / self.eta0
        t = transmission(self.index, phase)
        r = reflection(self.index, phase, t)
        t_sq = abs(t) ** 2
        r_sq = abs(r) ** 2
        p = 1.0 - t_sq - r_sq
        x = t_sq / r_sq if r_sq > 0.0 else math.inf
        return p, x

    def d_of_phi(self, phi: float) -> float:
        return phi / (self.eta0 * self.omega_tilde)


def _golden_min(
    f: Callable[[float], float], a: float, b: float, rel_tol: float
) -> tuple[float, float, int]:
    """Golden-section minimum of f on [a, b]; returns (x, f(x), iterations)."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    iters = 0
    while (b - a) > rel_tol * max(abs(a), abs(b)):
        iters += 1
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc, iters) if fc < fd else (d, fd, iters)


def _branch_roots(
    probe: _Probe, x_target: float, branches: Sequence[str]
) -> dict[str, float]:
    """Phase roots of x(phi) = x_target in the first period, per branch.

    Returns an empty mapping when the slice cannot reach the target ratio
    (the valley of x(phi) stays above x_target).
    """
    ln_xt = math.log(x_target)

    def ln_ratio(phi: float) -> float:
        return math.log(probe.response(phi)[1])

    def h(phi: float) -> float:
        return ln_ratio(phi) - ln_xt

    phi_valley, ln_x_valley, _ = _golden_min(ln_ratio, _PHI_LO, _PHI_HI, 1e-7)
    if ln_x_valley > ln_xt:
        return {}
    roots: dict[str, float] = {}
    intervals = {"first": (_PHI_LO, phi_valley), "second": (phi_valley, _PHI_HI)}
    for branch in branches:
        a, b = intervals[branch]
        ha, hb = h(a), h(b)
        if ha == 0.0:
            roots[branch] = a
            continue
        if hb == 0.0:
            roots[branch] = b
            continue
        if ha * hb > 0.0:
            continue  # target above this branch's reachable range
        roots[branch] = brentq(h, a, b, xtol=1e-15, rtol=8.9e-16)
    return roots


def solve_thickness_for_ratio(
    eps_s: float,
    x_target: float,
    gamma_tilde: float = 1e-3,
    omega_tilde: float = 1e-3,
    branch: str = "first",
) -> Optional[float]:
    """Scaled thickness d with evaluate(...).x == x_target, or None.

    The phase is restricted to the first interference period; `branch`
    selects the root below ("first") or above ("second") the ratio valley.
    Infeasibility (the slab cannot reflect strongly enough at this eps_s)
    is a domain answer, reported as None.
    """
    if branch not in _BRANCHES:
        raise ValueError(f"branch must be one of {_BRANCHES}, got {branch!r}")
    if not eps_s > 1:
        raise ValueError(f"eps_s must exceed 1, got {eps_s}")
    if not x_target > 0:
        raise ValueError(f"x_target must be positive, got {x_target}")
    probe = _Probe(eps_s, gamma_tilde, omega_tilde)
    roots = _branch_roots(probe, x_target, (branch,))
    if branch not in roots:
        return None
    return probe.d_of_phi(roots[branch])


def _constrained_p(
    probe: _Probe, x_target: float, branches: Sequence[str], constraint_rtol: float
) -> dict[str, tuple[float, float, float]]:
    """branch -> (phi, p, residual) at the constraint, checked against tolerance."""
    out: dict[str, tuple[float, float, float]] = {}
    for branch, phi in _branch_roots(probe, x_target, branches).items():
        p, x = probe.response(phi)
        residual = abs(x - x_target) / x_target
        if residual > constraint_rtol:
            raise RuntimeError(
                f"inner solve left residual {residual:.3e} > {constraint_rtol:.1e} "
                f"at eps_s={probe.eps_s}, x={x_target}, branch={branch}"
            )
        out[branch] = (phi, p, residual)
    return out


def _scan_grid(lo: float, hi: float, points: int) -> list[float]:
    # geometric in (eps_s - 1): resolves both the near-unity region probed
    # by large x and the large-eps_s region probed by small x
    ratio = (hi - 1.0) / (lo - 1.0)
    return [1.0 + (lo - 1.0) * ratio ** (k / (points - 1)) for k in range(points)]


def minimize_absorption(config: MinimizeConfig) -> MinimizeResult:
    """Minimum absorption over eps_s and thickness at a fixed ratio.

    Scans eps_s over config.eps_s_range (skipping slices that cannot reach
    x_target even without loss), golden-section refines the best bracket
    per branch, and reports the better branch.  Ties within the objective
    tolerance go to the thinner slab.
    """
    branches = _BRANCHES if config.branch_policy == "both" else (config.branch_policy,)
    lo, hi = config.eps_s_range
    grid = _scan_grid(lo, hi, config.scan_points)
    evals = 0
    scan_feasible = 0

    # lossless feasibility with 5% margin: loss shifts the reachable ratio
    # by O(gamma*omega), far below the margin
    def surely_infeasible(eps: float) -> bool:
        return 4.0 * eps / (config.x_target * (eps - 1.0) ** 2) > 1.05

    best_idx: dict[str, int] = {}
    best_p: dict[str, float] = {}
    for i, eps in enumerate(grid):
        if surely_infeasible(eps):
            continue
        probe = _Probe(eps, config.gamma_tilde, config.omega_tilde)
        sols = _constrained_p(probe, config.x_target, branches, config.constraint_rtol)
        evals += probe.evals
        if sols:
            scan_feasible += 1
        for branch, (_, p, _) in sols.items():
            if branch not in best_p or p < best_p[branch]:
                best_p[branch] = p
                best_idx[branch] = i

    if not best_idx:
        nan = math.nan
        return MinimizeResult(
            alpha=nan, eps_s_star=nan, d_star=nan, p_min=nan, phi_star=nan,
            branch="none", feasible=False,
            diagnostics=MinimizeDiagnostics(
                constraint_residual=nan, scan_feasible=0,
                refine_iterations=0, slab_evaluations=evals,
                rejected_branch_p=nan,
            ),
        )

    refine_iters = 0
    candidates: dict[str, tuple[float, float]] = {}
    for branch in branches:
        if branch not in best_idx:
            continue
        i = best_idx[branch]
        a = grid[max(i - 1, 0)]
        b = grid[min(i + 1, len(grid) - 1)]

        def p_of_eps(eps: float, branch: str = branch) -> float:
            nonlocal evals
            probe = _Probe(eps, config.gamma_tilde, config.omega_tilde)
            sols = _constrained_p(probe, config.x_target, (branch,), config.constraint_rtol)
            evals += probe.evals
            return sols[branch][1] if branch in sols else math.inf

        eps_star, p_star, iters = _golden_min(p_of_eps, a, b, 1e-7)
        refine_iters += iters
        if math.isfinite(p_star):
            candidates[branch] = (eps_star, p_star)

    if not candidates:
        nan = math.nan
        return MinimizeResult(
            alpha=nan, eps_s_star=nan, d_star=nan, p_min=nan, phi_star=nan,
            branch="none", feasible=False,
            diagnostics=MinimizeDiagnostics(
                constraint_residual=nan, scan_feasible=scan_feasible,
                refine_iterations=refine_iters, slab_evaluations=evals,
                rejected_branch_p=nan,
            ),
        )

    # branch selection: smaller p wins, ties go to the thinner slab (first)
    order = [b for b in _BRANCHES if b in candidates]
    chosen = order[0]
    for branch in order[1:]:
        p_c, p_b = candidates[chosen][1], candidates[branch][1]
        if p_b < p_c * (1.0 - config.objective_rtol):
            chosen = branch
    rejected_p = min(
        (candidates[b][1] for b in order if b != chosen), default=math.nan
    )

    eps_star = candidates[chosen][0]
    probe = _Probe(eps_star, config.gamma_tilde, config.omega_tilde)
    phi, p_min, residual = _constrained_p(
        probe, config.x_target, (chosen,), config.constraint_rtol
    )[chosen]
    evals += probe.evals
    d_star = probe.d_of_phi(phi)
    # report the actual optical phase at the working frequency
    phi_star = probe.index.eta * config.omega_tilde * d_star
    return MinimizeResult(
        alpha=p_min / (config.gamma_tilde * config.omega_tilde),
        eps_s_star=eps_star,
        d_star=d_star,
        p_min=p_min,
        phi_star=phi_star,
        branch=chosen,
        feasible=True,
        diagnostics=MinimizeDiagnostics(
            constraint_residual=residual,
            scan_feasible=scan_feasible,
            refine_iterations=refine_iters,
            slab_evaluations=evals,
            rejected_branch_p=rejected_p,
        ),
    )


def extract_alpha(
    x_target: float,
    levels: Sequence[tuple[float, float]] = DEFAULT_LEVELS,
    config: Optional[MinimizeConfig] = None,
) -> AlphaExtraction:
    """alpha from repeated minimization at shrinking (gamma, omega) levels.

    The inter-level relative drift of alpha is the error estimate; drift
    above config.drift_tol flags a departure from the separable small-
    parameter scaling.
    """
    if len(levels) < 2:
        raise ValueError("need at least two refinement levels")
    base = config if config is not None else MinimizeConfig(x_target=x_target)
    results = []
    for gamma_tilde, omega_tilde in levels:
        cfg = replace(
            base, x_target=x_target, gamma_tilde=gamma_tilde, omega_tilde=omega_tilde
        )
        results.append(minimize_absorption(cfg))
    results = tuple(results)
    if not all(r.feasible for r in results):
        return AlphaExtraction(
            alpha=math.nan, drift=math.nan, scaling_ok=False, feasible=False,
            results=results,
        )
    drift = max(
        abs(a.alpha - b.alpha) / abs(b.alpha)
        for a, b in zip(results[:-1], results[1:])
    )
    return AlphaExtraction(
        alpha=results[-1].alpha,
        drift=drift,
        scaling_ok=drift <= base.drift_tol,
        feasible=True,
        results=results,
    )


def _sweep_worker(args: tuple[float, MinimizeConfig]) -> SweepRow:
    x, base = args
    res = minimize_absorption(replace(base, x_target=x))
    return SweepRow(
        x=x, alpha=res.alpha, eps_s_star=res.eps_s_star, d_star=res.d_star,
        p_min=res.p_min, feasible=res.feasible,
    )


def sweep(
    x_values: Sequence[float],
    config: Optional[MinimizeConfig] = None,
    jobs: int = 1,
) -> tuple[SweepRow, ...]:
    """One minimization per ratio; rows are independent and deterministic.

    Per-row infeasibility is recorded in the row, never raised.  With
    jobs > 1 rows are computed in a process pool; the output order and
    content are identical regardless of jobs.
    """
    xs = [float(x) for x in x_values]
    if not xs:
        raise ValueError("x_values must be non-empty")
    if any(x <= 0 for x in xs):
        raise ValueError("x_values must all be positive")
    base = config if config is not None else MinimizeConfig(x_target=1.0)
    tasks = [(x, base) for x in xs]
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            rows = pool.map(_sweep_worker, tasks, chunksize=1)
    else:
        rows = [_sweep_worker(t) for t in tasks]
    return tuple(rows)
