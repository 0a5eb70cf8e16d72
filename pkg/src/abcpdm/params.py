"""Physical parameters and derived scalar quantities.

The system is a charged Dirac particle moving in a plane, with

* an Aharonov-Bohm flux line of strength ``phi_ab`` (flux in units of the
  flux quantum 2*pi/e),
* an attractive 2D Coulomb potential ``V = -z_alpha / rho``,
* a position-dependent rest mass ``m(rho) = m0 + kappa / rho``.

Everything is expressed in natural units (hbar = c = 1) with ``m0`` setting
the energy scale.  A channel is labelled by the half-odd-integer orbital
magnetic quantum number ``m_l`` and the spinor-component label ``s = +-1``,
and carries the effective angular parameter

    gamma   = sqrt((m_l + phi_ab)^2 - z_alpha^2 + kappa^2)
    gamma_s = gamma - s/2

Bound states live strictly inside the mass gap, |E| < m0, with decay
constant ``eta = sqrt(m0^2 - E^2)`` and effective Coulomb parameter
``z0 = (z_alpha*E - m0*kappa) / eta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotABoundState, SupercriticalCoupling

#: CODATA fine-structure constant, used when a parameter set is built from an
#: integer atomic number instead of the product z_alpha.
ALPHA_FS = 0.0072973525693

#: Elementary charge in Gaussian natural units (e^2 = alpha).
E_CHARGE = math.sqrt(ALPHA_FS)

#: Magnetic flux quantum 2*pi/e.
FLUX_QUANTUM = 2.0 * math.pi / E_CHARGE


@dataclass(frozen=True)
class SystemParams:
    """Immutable physical configuration.

    Attributes
    ----------
    m0:
        Rest mass at infinity, > 0.  Sets all scales.
    z_alpha:
        Coulomb coupling Z*alpha >= 0.
    phi_ab:
        Aharonov-Bohm flux ratio Phi/Phi_0 >= 0.
    kappa:
        Strength of the 1/rho mass term, >= 0.

    Zero values of ``z_alpha``, ``phi_ab`` and ``kappa`` are admitted as
    limiting cases; :meth:`limiting_cases` reports which ones are active.
    """

    m0: float
    z_alpha: float
    phi_ab: float
    kappa: float

    def __post_init__(self) -> None:
        if not self.m0 > 0.0:
            raise DomainError(f"m0 must be positive, got {self.m0}")
        if self.z_alpha < 0.0:
            raise DomainError(f"z_alpha must be non-negative, got {self.z_alpha}")
        if self.phi_ab < 0.0:
            raise DomainError(f"phi_ab must be non-negative, got {self.phi_ab}")
        if self.kappa < 0.0:
            raise DomainError(f"kappa must be non-negative, got {self.kappa}")

    @classmethod
    def from_atomic_number(
        cls,
        atomic_number: int,
        m0: float = 1.0,
        phi_ab: float = 0.0,
        kappa: float = 0.0,
        alpha: float = ALPHA_FS,
    ) -> "SystemParams":
        """Build parameters from an integer nuclear charge Z, using
        ``z_alpha = Z * alpha``."""
        if atomic_number < 0:
            raise DomainError(f"atomic number must be non-negative, got {atomic_number}")
        return cls(m0=m0, z_alpha=atomic_number * alpha, phi_ab=phi_ab, kappa=kappa)

    def limiting_cases(self) -> tuple[str, ...]:
        """Names of the limiting regimes this parameter set sits in."""
        flags = []
        if self.kappa == 0.0:
            flags.append("constant-mass")
        if self.z_alpha == 0.0:
            flags.append("no-coulomb")
        if self.phi_ab == 0.0:
            flags.append("no-flux")
        return tuple(flags)

    def subcritical(self, m_l: float) -> bool:
        """True when the channel admits a real angular parameter gamma."""
        return (m_l + self.phi_ab) ** 2 - self.z_alpha**2 + self.kappa**2 > 0.0


@dataclass(frozen=True)
class QuantumNumbers:
    """Labels (n, m_l, s) of a single bound-state channel.

    ``n`` is the radial quantum number (number of radial nodes), ``m_l`` the
    half-odd-integer orbital magnetic quantum number and ``s`` the spinor
    component label.  The combination ``n_s = n + (1 - s)/2`` enters the
    spectrum.
    """

    n: int
    m_l: float
    s: int

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        two_ml = 2.0 * self.m_l
        if abs(two_ml - round(two_ml)) > 1e-12 or round(two_ml) % 2 == 0:
            raise DomainError(f"m_l must be half-odd-integer (+-1/2, +-3/2, ...), got {self.m_l}")
        if self.s not in (+1, -1):
            raise DomainError(f"s must be +1 or -1, got {self.s}")

    @property
    def n_s(self) -> int:
        return self.n + (1 - self.s) // 2


@dataclass(frozen=True)
class DerivedQuantities:
    """Scalars derived from (params, quantum numbers, energy)."""

    gamma_s: float
    gamma: float
    eta: float
    z0: float


def gamma(params: SystemParams, m_l: float) -> float:
    """Angular parameter gamma = sqrt((m_l+phi_ab)^2 - z_alpha^2 + kappa^2).

    Raises :class:`SupercriticalCoupling` when the radicand is <= 0, i.e.
    when (m_l + phi_ab)^2 + kappa^2 <= z_alpha^2.
    """
    radicand = (m_l + params.phi_ab) ** 2 - params.z_alpha**2 + params.kappa**2
    if radicand <= 0.0:
        raise SupercriticalCoupling(
            f"channel m_l={m_l} is supercritical: "
            f"(m_l+phi_ab)^2 + kappa^2 <= z_alpha^2 (radicand {radicand:.3e})"
        )
    return math.sqrt(radicand)


def gamma_s(params: SystemParams, qn: QuantumNumbers) -> float:
    """Effective angular parameter gamma_s = gamma - s/2 for the channel."""
    return gamma(params, qn.m_l) - qn.s / 2.0


def eta(params: SystemParams, energy: float) -> float:
    """Bound-state decay constant eta = sqrt(m0^2 - E^2).

    Raises :class:`NotABoundState` unless |E| < m0.
    """
    if abs(energy) >= params.m0:
        raise NotABoundState(f"|E| = {abs(energy)} is not inside the gap (m0 = {params.m0})")
    return math.sqrt((params.m0 - energy) * (params.m0 + energy))


def z0(params: SystemParams, energy: float) -> float:
    """Effective Coulomb parameter z0 = (z_alpha*E - m0*kappa) / eta."""
    return (params.z_alpha * energy - params.m0 * params.kappa) / eta(params, energy)


def derive(params: SystemParams, qn: QuantumNumbers, energy: float) -> DerivedQuantities:
    """Bundle gamma_s, gamma, eta and z0 for a candidate bound state."""
    g = gamma(params, qn.m_l)
    return DerivedQuantities(
        gamma_s=g - qn.s / 2.0,
        gamma=g,
        eta=eta(params, energy),
        z0=z0(params, energy),
    )


def pdm_mass(params: SystemParams, rho):
    """Position-dependent mass m(rho) = m0 + kappa/rho for rho > 0.

    Accepts a scalar or an array; tends to m0 as rho -> infinity.
    """
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr <= 0.0):
        raise DomainError("rho must be positive")
    out = params.m0 + params.kappa / rho_arr
    return float(out) if np.isscalar(rho) else out


def potentials(params: SystemParams, rho):
    """External fields at radius rho > 0 (outside the solenoid).

    Returns the pair ``(a_theta, v)`` with the azimuthal vector potential
    ``a_theta = Phi / (2 pi rho) = phi_ab / (e rho)`` (e^2 = alpha) and the
    Coulomb potential ``v = -z_alpha / rho``.
    """
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr <= 0.0):
        raise DomainError("rho must be positive")
    a_theta = params.phi_ab * FLUX_QUANTUM / (2.0 * math.pi * rho_arr)
    v = -params.z_alpha / rho_arr
    if np.isscalar(rho):
        return float(a_theta), float(v)
    return a_theta, v
