"""Complex transmission and reflection of a single planar slab in vacuum.

Normal incidence, one linear polarization.  All quantities are expressed
in the scaled working coordinates: frequency and line width in units of
the resonance frequency, thickness as d = omega_t * l / c.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .dielectric import ComplexIndex, DrudeLorentzModel, Resonance, refractive_index

__all__ = [
    "ScaledSlabParams",
    "SlabResponse",
    "DegenerateDenominatorError",
    "transmission",
    "reflection",
    "working_index",
    "evaluate",
]


class DegenerateDenominatorError(ArithmeticError):
    """Interference denominator underflowed to zero (cannot occur for kappa > 0)."""


@dataclass(frozen=True)
class ScaledSlabParams:
    """Dimensionless working point of a single-resonance slab.

    gamma_tilde = 0 is accepted as the lossless test hook and d = 0 as the
    no-slab identity; the physical pipeline uses strictly positive values.
    """

    omega_tilde: float
    gamma_tilde: float
    d: float
    eps_s: float

    def __post_init__(self) -> None:
        if not self.omega_tilde > 0:
            raise ValueError(f"omega_tilde must be positive, got {self.omega_tilde}")
        if self.gamma_tilde < 0:
            raise ValueError(f"gamma_tilde must be non-negative, got {self.gamma_tilde}")
        if self.d < 0:
            raise ValueError(f"d must be non-negative, got {self.d}")
        if not self.eps_s > 1:
            raise ValueError(f"eps_s must exceed 1, got {self.eps_s}")


@dataclass(frozen=True)
class SlabResponse:
    """Amplitudes and scalar figures at one working point.

    p = 1 - |t|^2 - |r|^2 by construction; x = |t|^2 / |r|^2, infinite
    when the reflection vanishes exactly.
    """

    t: complex
    r: complex
    p: float
    x: float


def transmission(n: ComplexIndex, phase_arg: float) -> complex:
    """Transmission amplitude for vacuum phase phase_arg = omega*l/c."""
    if phase_arg < 0:
        raise ValueError(f"phase_arg must be non-negative, got {phase_arg}")
    if phase_arg == 0.0:
        # zero thickness transmits exactly; the formula only reaches 1 to roundoff
        return complex(1.0, 0.0)
    nc = n.as_complex
    den = (1 + nc) ** 2 - (1 - nc) ** 2 * cmath.exp(2j * nc * phase_arg)
    if abs(den) == 0.0:
        raise DegenerateDenominatorError(
            f"interference denominator vanished at n={nc}, phase={phase_arg}"
        )
    return 4 * nc * cmath.exp(1j * (nc - 1) * phase_arg) / den


def reflection(n: ComplexIndex, phase_arg: float, t: complex) -> complex:
    """Reflection amplitude given the matching transmission t.

    The bracket carries phase (n+1)*phase_arg: the unique choice for which
    |t|^2 + |r|^2 = 1 holds exactly at kappa = 0 (verified against the
    transfer-matrix oracle in the tests).
    """
    nc = n.as_complex
    return (nc - 1) / (nc + 1) * cmath.exp(-1j * phase_arg) * (
        1 - t * cmath.exp(1j * (nc + 1) * phase_arg)
    )


def working_index(eps_s: float, gamma_tilde: float, omega_tilde: float) -> ComplexIndex:
    """Index of the single-resonance slab at the scaled working point."""
    model = DrudeLorentzModel(
        [Resonance(omega_t=1.0, omega_p=math.sqrt(eps_s - 1.0), gamma=gamma_tilde)]
    )
    return refractive_index(model, omega_tilde)


def evaluate(params: ScaledSlabParams) -> SlabResponse:
    """Full response at one working point.

    Builds the single-resonance model with omega_p^2 = eps_s - 1 in scaled
    units, evaluates the index at omega_tilde, and applies the slab
    formulas at vacuum phase omega_tilde * d.
    """
    n = working_index(params.eps_s, params.gamma_tilde, params.omega_tilde)
    t = transmission(n, params.omega_tilde * params.d)
    r = reflection(n, params.omega_tilde * params.d, t)
    t_sq = abs(t) ** 2
    r_sq = abs(r) ** 2
    p = 1.0 - t_sq - r_sq
    x = t_sq / r_sq if r_sq > 0.0 else math.inf
    return SlabResponse(t=t, r=r, p=p, x=x)
