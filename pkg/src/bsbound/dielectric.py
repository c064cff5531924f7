"""Drude-Lorentz dielectric response.

Susceptibility as a sum of damped-oscillator resonances, the complex
refractive index on its physical branch, the low-frequency expansions of
both index components, and a numerical check of the index sum rule
(integral of eta - 1 over all frequencies vanishes).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "Resonance",
    "DrudeLorentzModel",
    "ComplexIndex",
    "QuadratureError",
    "susceptibility",
    "refractive_index",
    "low_frequency_approx",
    "superconvergence_residual",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


class QuadratureError(RuntimeError):
    """Raised when sum-rule refinements fail to settle within tolerance."""


@dataclass(frozen=True)
class Resonance:
    """One damped-oscillator resonance.

    Frequencies are in whatever unit the caller chose; the optimization
    pipeline uses the scaled convention omega_t = 1.  A physical resonance
    has omega_p > 0 and gamma > 0; zero values are accepted as the exact
    vacuum / lossless limits used by the test hooks.
    """

    omega_t: float
    omega_p: float
    gamma: float

    def __post_init__(self) -> None:
        if not self.omega_t > 0:
            raise ValueError(f"omega_t must be positive, got {self.omega_t}")
        if self.omega_p < 0:
            raise ValueError(f"omega_p must be non-negative, got {self.omega_p}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")


@dataclass(frozen=True)
class DrudeLorentzModel:
    """Ordered collection of resonances defining chi(omega)."""

    resonances: tuple[Resonance, ...]

    def __init__(self, resonances: Sequence[Resonance]) -> None:
        resonances = tuple(resonances)
        if not resonances:
            raise ValueError("model needs at least one resonance")
        object.__setattr__(self, "resonances", resonances)

    def static_permittivity(self) -> float:
        """1 + chi(0), always real and > 1 for a physical model."""
        return 1.0 + sum(r.omega_p**2 / r.omega_t**2 for r in self.resonances)


@dataclass(frozen=True)
class ComplexIndex:
    """Refractive index n = eta + i*kappa on the physical branch."""

    eta: float
    kappa: float

    def __post_init__(self) -> None:
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")

    @property
    def as_complex(self) -> complex:
        return complex(self.eta, self.kappa)


def susceptibility(
    model: DrudeLorentzModel, omega: Union[float, np.ndarray]
) -> Union[complex, np.ndarray]:
    """Sum of Drude-Lorentz terms omega_p^2 / (omega_t^2 - omega^2 - i*gamma*omega).

    Accepts a scalar frequency or a numpy array.  The imaginary part is
    strictly positive for omega > 0 whenever every gamma > 0, and exactly
    zero at omega = 0.
    """
    if isinstance(omega, np.ndarray):
        total = np.zeros(omega.shape, dtype=complex)
        for r in model.resonances:
            total += r.omega_p**2 / (r.omega_t**2 - omega**2 - 1j * r.gamma * omega)
        return total
    if omega < 0:
        raise ValueError(f"omega must be non-negative, got {omega}")
    if omega == 0:
        return complex(model.static_permittivity() - 1.0, 0.0)
    total = 0j
    for r in model.resonances:
        den = complex(r.omega_t**2 - omega * omega, -r.gamma * omega)
        if den == 0:
            # reachable only with the gamma = 0 hook exactly on resonance
            raise ValueError(f"susceptibility pole at omega = {omega} for gamma = 0")
        total += r.omega_p**2 / den
    return total


def refractive_index(model: DrudeLorentzModel, omega: float) -> ComplexIndex:
    """n = sqrt(1 + chi) with eta > 0, kappa >= 0.

    Since Im(1 + chi) > 0 for omega > 0, the principal square root already
    lands on the physical branch; no branch tracking is needed.
    """
    if omega == 0:
        # kappa is exactly zero at omega = 0, not merely small
        return ComplexIndex(math.sqrt(model.static_permittivity()), 0.0)
    eps = 1.0 + susceptibility(model, omega)
    if eps.imag == 0.0 and eps.real <= 0.0:
        raise ValueError(
            f"permittivity {eps} on the negative real axis; branch undefined"
        )
    n = cmath.sqrt(eps)
    return ComplexIndex(n.real, n.imag if n.imag != 0.0 else 0.0)


def low_frequency_approx(model: DrudeLorentzModel, omega: float) -> ComplexIndex:
    """Lowest-order index components for omega well below every resonance.

    eta is the static index sqrt(1 + sum omega_p^2/omega_t^2); kappa grows
    linearly in omega with the summed damping weights.  No validity check
    is made, that is the caller's responsibility.
    """
    eta = math.sqrt(model.static_permittivity())
    weight = sum(
        (1.0 / r.omega_t) * (r.gamma / r.omega_t) * (r.omega_p**2 / r.omega_t**2)
        for r in model.resonances
    )
    return ComplexIndex(eta, omega / (2.0 * eta) * weight)


def _eta_minus_one(model: DrudeLorentzModel, omega: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 + susceptibility(model, omega)).real - 1.0


def _gauss_panel(model: DrudeLorentzModel, a: float, b: float, m: int) -> float:
    """Composite 15-point Gauss-Legendre over m subintervals of [a, b].

    Subintervals are geometric when the panel spans more than a factor 4,
    so slowly decaying tails are resolved at constant relative width.
    """
    if a > 0 and b / a > 4.0:
        edges = a * (b / a) ** (np.arange(m + 1) / m)
    else:
        edges = np.linspace(a, b, m + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    vals = _eta_minus_one(model, pts).reshape(m, -1)
    return float(np.sum(half * (vals @ _GL_WEIGHTS)))


def superconvergence_residual(
    model: DrudeLorentzModel,
    omega_max: float,
    quadrature_points: int = 64,
    tol: float = 1e-12,
    max_subdivisions: int = 8192,
) -> float:
    """Tail-corrected residual of the sum rule for eta - 1.

    Integrates eta(omega) - 1 from 0 to omega_max with resonance-aware
    panels split at each omega_t +- 10*gamma, then adds the analytic tail
    estimate -sum(omega_p^2) / (2*omega_max) from the large-omega
    asymptote.  The result approaches zero as omega_max grows.

    quadrature_points sets the initial subinterval count per panel; each
    panel is doubled until successive refinements agree within tol (split
    across panels).  Raises QuadratureError if a panel fails to settle
    before max_subdivisions.
    """
    if omega_max <= 0:
        raise ValueError(f"omega_max must be positive, got {omega_max}")
    if quadrature_points < 1:
        raise ValueError("quadrature_points must be at least 1")
    breaks = {0.0, float(omega_max)}
    for r in model.resonances:
        for b in (r.omega_t - 10.0 * r.gamma, r.omega_t, r.omega_t + 10.0 * r.gamma):
            if 0.0 < b < omega_max:
                breaks.add(b)
    edges = sorted(breaks)
    panel_tol = tol / (len(edges) - 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        m = quadrature_points
        prev = _gauss_panel(model, a, b, m)
        while True:
            m *= 2
            cur = _gauss_panel(model, a, b, m)
            if abs(cur - prev) <= panel_tol:
                break
            if m > max_subdivisions:
                raise QuadratureError(
                    f"sum-rule panel [{a:g}, {b:g}] did not converge: "
                    f"last refinement changed by {abs(cur - prev):.3e}"
                )
            prev = cur
        total += cur
    tail = -sum(r.omega_p**2 for r in model.resonances) / (2.0 * omega_max)
    return total + tail
