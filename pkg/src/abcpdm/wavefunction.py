"""Radial functions and reconstructed spinor components of a bound level.

The radial function of component s is

    phi_s(rho) = C_s (2 eta rho)^|gamma_s| e^(-eta rho) L_n^(2|gamma_s|)(2 eta rho)

normalized so that the integral of |phi_s|^2 rho d(rho) over (0, inf) is 1,
each component independently.  The full spinor is reconstructed from the
first-order Dirac operator acting on the component pair; with
m(rho) = m0 + kappa/rho and cbar_s = C_s (2 eta)^|gamma_s| / sqrt(2 pi),

    F_s = (cbar_s / m(rho)) e^(-eta rho) rho^|gamma_s| L_n^(2|gamma_s|)(2 eta rho)
          * (s E + m0 + (kappa + s z_alpha)/rho)
    G_s = (cbar_s / m(rho)) e^(-eta rho) rho^|gamma_s|
          * ( L_n^(2|gamma_s|)(2 eta rho) * (eta + (s m_l - 1/2 - |gamma_s| + s phi_ab)/rho)
              + 2 eta L_{n-1}^(2|gamma_s|+1)(2 eta rho) ),

with the convention L_{-1} = 0, and the stationary two-component spinor is

    upper = e^{i[(m_l - 1/2) theta - E t]} (F_+ + i G_-)
    lower = e^{i[(m_l + 1/2) theta - E t]} (F_- - i G_+).

The relative weight of the two reconstructed components is not fixed by the
radial problem; both are built from independently normalized phi_s with
equal weights by default (override via ``weight_ratio``), and emitters
record the convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import params as pc
from . import specfun
from .errors import DomainError, GridTooCoarse
from .spectrum import EnergyLevel

TWO_PI = 2.0 * math.pi

#: Default number of geometric grid points.
DEFAULT_GRID_POINTS = 2048


@dataclass(frozen=True)
class RadialFunction:
    """Sampled normalized radial function of one spinor component.

    ``s`` may differ from ``level.qn.s``: the off-diagonal component of an
    eigenlevel is a perfectly good function, but only the level's own
    component solves the radial equation at ``level.energy``.
    """

    level: EnergyLevel
    s: int
    grid: np.ndarray
    values: np.ndarray
    norm_constant: float


@dataclass(frozen=True)
class SpinorSample:
    """Radial factors of the reconstructed spinor on a grid.

    The stored samples are functions of rho only; the full spinor adds the
    phase factors e^{i[(m_l -+ 1/2) theta - E t]} (see :func:`assemble_spinor`).
    """

    level: EnergyLevel
    grid: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray
    g_plus: np.ndarray
    g_minus: np.ndarray

    @property
    def density(self) -> np.ndarray:
        return self.f_plus**2 + self.g_minus**2 + self.f_minus**2 + self.g_plus**2


def _abs_gamma_s(level: EnergyLevel, s: int) -> float:
    if s not in (+1, -1):
        raise DomainError(f"s must be +1 or -1, got {s}")
    return abs(level.gamma - s / 2.0)


def default_grid(level: EnergyLevel, s: int | None = None, num_points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    """Geometric grid from 1e-4/eta to (n + |gamma_s| + 20)/eta.

    All scales are set by 1/eta; the range covers both the power-law core
    and the exponential tail down to ~1e-9 of the peak.
    """
    s = level.qn.s if s is None else s
    eta = pc.eta(level.params, level.energy)
    a = _abs_gamma_s(level, s)
    rho_min = 1e-4 / eta
    rho_max = (level.qn.n + a + 20.0) / eta
    return np.geomspace(rho_min, rho_max, num_points)


def unnormalized_phi(level: EnergyLevel, s: int, rho) -> np.ndarray:
    """(2 eta rho)^|gamma_s| e^(-eta rho) L_n^(2|gamma_s|)(2 eta rho), no prefactor."""
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr <= 0.0):
        raise DomainError("rho must be positive")
    eta = pc.eta(level.params, level.energy)
    a = _abs_gamma_s(level, s)
    z = 2.0 * eta * rho_arr
    return z**a * np.exp(-eta * rho_arr) * specfun.laguerre(level.qn.n, 2.0 * a, z)


def normalize(level: EnergyLevel, s: int | None = None, tol: float = 1e-12) -> float:
    """Normalization constant C_s so that int |phi_s|^2 rho d(rho) = 1.

    Computed by adaptive quadrature; the closed-form value via the Laguerre
    norm integral is used as an independent check in the test suite.
    """
    s = level.qn.s if s is None else s
    raw = specfun.integrate(
        lambda r: unnormalized_phi(level, s, r) ** 2 * r,
        0.0,
        math.inf,
        tol=tol,
    )
    return 1.0 / math.sqrt(raw)


def radial_phi(level: EnergyLevel, s: int | None = None, rho=None, norm_constant: float | None = None):
    """Normalized radial function phi_s at the given radii."""
    s = level.qn.s if s is None else s
    if norm_constant is None:
        norm_constant = normalize(level, s)
    out = norm_constant * unnormalized_phi(level, s, rho)
    return float(out) if np.isscalar(rho) else out


def build_radial_function(
    level: EnergyLevel,
    s: int | None = None,
    grid: np.ndarray | None = None,
    num_points: int = DEFAULT_GRID_POINTS,
) -> RadialFunction:
    """Sample the normalized phi_s on a grid (default geometric grid)."""
    s = level.qn.s if s is None else s
    if grid is None:
        grid = default_grid(level, s, num_points)
    grid = np.asarray(grid, dtype=float)
    c = normalize(level, s)
    return RadialFunction(level=level, s=s, grid=grid, values=c * unnormalized_phi(level, s, grid), norm_constant=c)


def count_nodes(radial: RadialFunction) -> int:
    """Interior sign changes of the sampled radial function.

    Must equal ``level.qn.n`` for the level's own component.  Raises
    :class:`GridTooCoarse` when the grid is too short to resolve the
    expected oscillations (under ~40 points per node) or when two sign
    changes land within three samples of each other.
    """
    n_expected = radial.level.qn.n
    if len(radial.grid) < 40 * (n_expected + 1):
        raise GridTooCoarse(
            f"{len(radial.grid)} points cannot resolve {n_expected} nodes; need >= {40 * (n_expected + 1)}"
        )
    vals = radial.values[1:-1]
    signs = np.sign(vals)
    nz = np.nonzero(signs)[0]
    changes = nz[np.nonzero(signs[nz][1:] != signs[nz][:-1])[0] + 1]
    if len(changes) >= 2 and np.any(np.diff(changes) < 3):
        raise GridTooCoarse("adjacent sign changes closer than 3 samples; oscillation unresolved")
    return int(len(changes))


def _cbar(level: EnergyLevel, s: int, weight: float) -> float:
    eta = pc.eta(level.params, level.energy)
    a = _abs_gamma_s(level, s)
    return weight * normalize(level, s) * (2.0 * eta) ** a / math.sqrt(TWO_PI)


def spinor_components(level: EnergyLevel, rho, weight_ratio: float = 1.0):
    """Radial factors (F_+, F_-, G_+, G_-) of the reconstructed spinor.

    ``weight_ratio`` multiplies the s = -1 constant cbar_- relative to
    cbar_+ (default 1, equal weights).
    """
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr <= 0.0):
        raise DomainError("rho must be positive")
    p, qn = level.params, level.qn
    energy = level.energy
    eta = pc.eta(p, energy)
    mass = pc.pdm_mass(p, rho_arr)

    out_f = {}
    out_g = {}
    for s, weight in ((+1, 1.0), (-1, weight_ratio)):
        a = _abs_gamma_s(level, s)
        z = 2.0 * eta * rho_arr
        lag_n = specfun.laguerre(qn.n, 2.0 * a, z)
        base = _cbar(level, s, weight) / mass * np.exp(-eta * rho_arr) * rho_arr**a
        out_f[s] = base * lag_n * (s * energy + p.m0 + (p.kappa + s * p.z_alpha) / rho_arr)
        ang = s * qn.m_l - 0.5 - a + s * p.phi_ab
        g = lag_n * (eta + ang / rho_arr)
        if qn.n > 0:
            g = g + 2.0 * eta * specfun.laguerre(qn.n - 1, 2.0 * a + 1.0, z)
        out_g[s] = base * g
    return out_f[+1], out_f[-1], out_g[+1], out_g[-1]


def build_spinor_sample(
    level: EnergyLevel,
    grid: np.ndarray | None = None,
    num_points: int = DEFAULT_GRID_POINTS,
    weight_ratio: float = 1.0,
) -> SpinorSample:
    if grid is None:
        grid = default_grid(level, level.qn.s, num_points)
    grid = np.asarray(grid, dtype=float)
    f_p, f_m, g_p, g_m = spinor_components(level, grid, weight_ratio)
    return SpinorSample(level=level, grid=grid, f_plus=f_p, f_minus=f_m, g_plus=g_p, g_minus=g_m)


def assemble_spinor(level: EnergyLevel, rho, theta: float, t: float, weight_ratio: float = 1.0):
    """Complex (upper, lower) spinor amplitudes at (rho, theta, t).

    The angular winding numbers m_l -+ 1/2 are integers, so the spinor is
    single-valued under theta -> theta + 2 pi; phase arguments are reduced
    modulo 2 pi before exponentiation to keep that identity tight in floats.
    """
    f_p, f_m, g_p, g_m = spinor_components(level, rho, weight_ratio)
    k_up = round(level.qn.m_l - 0.5)
    k_lo = round(level.qn.m_l + 0.5)
    phase_up = cmath_exp(k_up * math.remainder(theta, TWO_PI) - level.energy * t)
    phase_lo = cmath_exp(k_lo * math.remainder(theta, TWO_PI) - level.energy * t)
    upper = phase_up * (f_p + 1j * g_m)
    lower = phase_lo * (f_m - 1j * g_p)
    return upper, lower


def cmath_exp(angle: float) -> complex:
    """e^{i angle} with the angle reduced into (-pi, pi] first."""
    reduced = math.remainder(angle, TWO_PI)
    return complex(math.cos(reduced), math.sin(reduced))
