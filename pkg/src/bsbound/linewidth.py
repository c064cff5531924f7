"""Spontaneous-decay lower bound on the slab line width and the final
minimal absorption probability.

The scaled pipeline (scaled_linewidth_bound, min_absorption_probability)
is constant-free by construction; only the unscaled dipole operations use
the physical constants below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "HBAR",
    "EPSILON_0",
    "SPEED_OF_LIGHT",
    "DecayContext",
    "PhysicalDipoleInputs",
    "free_space_decay_rate",
    "dipole_sq_from_static_index",
    "local_field_factor",
    "scaled_linewidth_bound",
    "min_absorption_probability",
]

# CODATA 2018; c and hbar = h/2pi are exact by SI definition
HBAR = 1.054571817e-34  # J s
EPSILON_0 = 8.8541878128e-12  # F / m
SPEED_OF_LIGHT = 299792458.0  # m / s


@dataclass(frozen=True)
class DecayContext:
    """Scaled inputs of the line-width bound.

    n_vt is the number of radiating dipoles in a cube of side one
    transition wavelength (lambda_t = 2 pi c / omega_t); eta is the static
    refractive index, which must come from the constrained minimization.
    """

    n_vt: float
    eta: float

    def __post_init__(self) -> None:
        if not self.n_vt > 0:
            raise ValueError(f"n_vt must be positive, got {self.n_vt}")
        if not self.eta > 1:
            raise ValueError(f"eta must exceed 1, got {self.eta}")


@dataclass(frozen=True)
class PhysicalDipoleInputs:
    """Unscaled quantities entering the dipole relations (SI units)."""

    omega_t: float  # rad / s
    number_density: float  # m^-3
    dipole_sq: float  # C^2 m^2

    def __post_init__(self) -> None:
        if not (self.omega_t > 0 and self.number_density > 0 and self.dipole_sq > 0):
            raise ValueError("all PhysicalDipoleInputs fields must be positive")

    @classmethod
    def from_static_index(
        cls, eta: float, omega_t: float, number_density: float
    ) -> "PhysicalDipoleInputs":
        return cls(
            omega_t=omega_t,
            number_density=number_density,
            dipole_sq=dipole_sq_from_static_index(eta, omega_t, number_density),
        )


def free_space_decay_rate(omega: float, dipole_sq: float) -> float:
    """Free-space rate omega^3 d^2 / (3 pi hbar eps0 c^3) in s^-1."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if dipole_sq < 0:
        raise ValueError(f"dipole_sq must be non-negative, got {dipole_sq}")
    return omega**3 * dipole_sq / (3.0 * math.pi * HBAR * EPSILON_0 * SPEED_OF_LIGHT**3)


def dipole_sq_from_static_index(
    eta: float, omega_t: float, number_density: float
) -> float:
    """Squared dipole matrix element from the static index.

    Inverts the zero-frequency susceptibility of an isotropic two-level
    ensemble: d^2 = 3 hbar omega_t eps0 (eta^2 - 1) / (2 n).  eta = 1 is
    the vacuum limit with d^2 = 0.
    """
    if eta < 1:
        raise ValueError(f"eta must be at least 1, got {eta}")
    if omega_t <= 0 or number_density <= 0:
        raise ValueError("omega_t and number_density must be positive")
    return 3.0 * HBAR * omega_t * EPSILON_0 * (eta**2 - 1.0) / (2.0 * number_density)


def local_field_factor(eta: float) -> float:
    """Real-cavity correction eta * (3 eta^2 / (2 eta^2 + 1))^2.

    Multiplies the free-space decay rate to give the in-medium rate;
    equals 1 in vacuum and increases monotonically with eta.
    """
    if eta < 1:
        raise ValueError(f"eta must be at least 1, got {eta}")
    return eta * (3.0 * eta**2 / (2.0 * eta**2 + 1.0)) ** 2


def scaled_linewidth_bound(ctx: DecayContext, omega_tilde: float) -> float:
    """Lower bound on the scaled line width gamma/omega_t.

    (4 pi^2 / n_vt) * omega_tilde^3 * eta (eta^2 - 1) (3 eta^2/(2 eta^2+1))^2.
    Algebraically identical to chaining the free-space rate, the dipole
    relation, and the local-field factor with consistent unscaled inputs.
    """
    if omega_tilde <= 0:
        raise ValueError(f"omega_tilde must be positive, got {omega_tilde}")
    eta = ctx.eta
    return (
        4.0 * math.pi**2 / ctx.n_vt
        * omega_tilde**3
        * eta * (eta**2 - 1.0)
        * (3.0 * eta**2 / (2.0 * eta**2 + 1.0)) ** 2
    )


def min_absorption_probability(
    alpha: float, ctx: DecayContext, omega_tilde: float
) -> float:
    """Minimal absorption probability with the line width at its bound.

    Equals alpha * omega_tilde * scaled_linewidth_bound(ctx, omega_tilde),
    hence scales exactly as omega_tilde^4.  alpha and ctx.eta must come
    from the same minimization (eta = sqrt(eps_s_star)).
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return alpha * omega_tilde * scaled_linewidth_bound(ctx, omega_tilde)
