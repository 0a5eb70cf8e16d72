"""Independent numerical oracle for the closed-form spectrum.

The radial equation is integrated directly, with no reference to the
closed-form energies.  Two equivalent first-derivative-free forms are used:

* in the radius itself, u(rho) = sqrt(rho) phi(rho) obeys u'' + Q(rho) u = 0
  with Q(rho) = -(gamma_s^2 - 1/4)/rho^2 + 2(z_alpha E - m0 kappa)/rho
  + (E^2 - m0^2)  (:func:`transform_to_normal_form`);

* in the log radius x = ln rho, phi itself obeys phi_xx + Qt(x) phi = 0 with
  Qt = -gamma_s^2 + 2(z_alpha E - m0 kappa) rho + (E^2 - m0^2) rho^2,
  which is the form actually integrated: a geometric rho mesh is uniform in
  x, where the Numerov scheme keeps its fourth order.

Eigenvalues are located by a node-counting sweep and bisection (the number
of sign changes of the outward solution counts the eigenvalues below E),
then polished by bisecting the logarithmic-derivative matching defect at the
outermost classical turning point.  The outward solution starts on the
regular branch phi ~ rho^|gamma_s| (1 + c1 rho) with the first Frobenius
correction c1 = -2(z_alpha E - m0 kappa)/(2|gamma_s| + 1); the inward
solution starts on the decaying tail e^(-eta rho).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import params as pc
from . import wavefunction as wf
from .errors import GridTooCoarse, NodeCountMismatch, NoRootInBracket
from .spectrum import EnergyLevel

#: Tail depth: rho_max is chosen so that eta * rho_max >= TAIL_DEPTH.
TAIL_DEPTH = 35.0


@dataclass(frozen=True)
class ShootingConfig:
    """Controls for one eigenvalue search.

    ``rho_min``/``rho_max`` of None mean scale-aware defaults 1e-5/eta and
    TAIL_DEPTH/eta at the current trial energy.  ``match_index`` of None
    places the matching point at the outermost classical turning point.
    ``tol_e`` is the absolute tolerance on E/m0.
    """

    num_points: int = 4096
    rho_min: float | None = None
    rho_max: float | None = None
    e_lo: float | None = None  # defaults to 1e-6 * m0
    e_hi: float | None = None  # defaults to (1 - 1e-9) * m0
    node_target: int | None = None  # defaults to qn.n
    match_index: int | None = None
    tol_e: float = 1e-9
    sweep_points: int = 64

    def __post_init__(self) -> None:
        if self.num_points < 16:
            raise ValueError("num_points must be at least 16")
        if self.tol_e <= 0.0:
            raise ValueError("tol_e must be positive")
        if self.sweep_points < 2:
            raise ValueError("sweep_points must be at least 2")


@dataclass(frozen=True)
class ShootingResult:
    """Converged oracle eigenvalue with its certificates."""

    energy: float
    node_count: int
    defect: float
    grid: np.ndarray
    values: np.ndarray  # normalized eigenfunction phi on the grid
    method: str  # "defect-bisection" or "node-bisection"


@dataclass(frozen=True)
class VerificationReport:
    """Comparison of one closed-form level against the oracle."""

    n: int
    m_l: float
    s: int
    analytic_energy: float
    oracle_energy: float
    delta_e_over_m0: float
    node_expected: int
    node_observed: int
    shape_deviation: float
    residual: float
    energy_ok: bool
    nodes_ok: bool
    shape_ok: bool
    passed: bool


def transform_to_normal_form(params: pc.SystemParams, qn: pc.QuantumNumbers, energy: float):
    """Coefficient Q(rho) of the normal form u'' + Q(rho) u = 0, u = sqrt(rho) phi.

    Returns a vectorized callable.  Raises :class:`SupercriticalCoupling`
    for channels with imaginary gamma.  The energy is not restricted to the
    bound window here; the coefficient is well defined for any real E.
    """
    gs = pc.gamma_s(params, qn)
    centrifugal = gs * gs - 0.25
    coulomb = 2.0 * (params.z_alpha * energy - params.m0 * params.kappa)
    constant = energy * energy - params.m0 * params.m0

    def q_of_rho(rho):
        rho_arr = np.asarray(rho, dtype=float)
        out = -centrifugal / rho_arr**2 + coulomb / rho_arr + constant
        return float(out) if np.isscalar(rho) else out

    return q_of_rho


def log_form_coefficient(params: pc.SystemParams, qn: pc.QuantumNumbers, energy: float, rho: np.ndarray) -> np.ndarray:
    """Coefficient Qt of phi_xx + Qt phi = 0 on the log-radius grid."""
    gs = pc.gamma_s(params, qn)
    return (
        -gs * gs
        + 2.0 * (params.z_alpha * energy - params.m0 * params.kappa) * rho
        + (energy * energy - params.m0 * params.m0) * rho * rho
    )


def _trial_grid(params: pc.SystemParams, qn: pc.QuantumNumbers, energy: float, config: ShootingConfig):
    eta = pc.eta(params, energy)
    rho_min = config.rho_min if config.rho_min is not None else 1e-5 / eta
    rho_max = config.rho_max if config.rho_max is not None else TAIL_DEPTH / eta
    x = np.linspace(math.log(rho_min), math.log(rho_max), config.num_points)
    return x, np.exp(x)


def _numerov_outward(params, qn, energy, x, rho, stop: int | None = None):
    """Integrate phi outward up to index ``stop`` (inclusive); returns phi."""
    m = len(x) if stop is None else stop + 1
    dx = x[1] - x[0]
    f = 1.0 + dx * dx / 12.0 * log_form_coefficient(params, qn, energy, rho)
    gs_abs = abs(pc.gamma_s(params, qn))
    c1 = -2.0 * (params.z_alpha * energy - params.m0 * params.kappa) / (2.0 * gs_abs + 1.0)
    phi = np.zeros(m)
    phi[0] = math.exp(gs_abs * (x[0] - x[1])) * (1.0 + c1 * rho[0])
    phi[1] = 1.0 + c1 * rho[1]
    for i in range(1, m - 1):
        phi[i + 1] = ((12.0 - 10.0 * f[i]) * phi[i] - f[i - 1] * phi[i - 1]) / f[i + 1]
        if abs(phi[i + 1]) > 1e250:
            phi[: i + 2] /= abs(phi[i + 1])
    return phi


def _numerov_inward(params, qn, energy, x, rho, stop: int):
    """Integrate phi inward from the tail down to index ``stop``; returns the
    full-length array with entries below ``stop`` left at zero."""
    m = len(x)
    dx = x[1] - x[0]
    f = 1.0 + dx * dx / 12.0 * log_form_coefficient(params, qn, energy, rho)
    eta = pc.eta(params, energy)
    phi = np.zeros(m)
    phi[m - 1] = math.exp(-eta * (rho[m - 1] - rho[m - 2]))
    phi[m - 2] = 1.0
    for i in range(m - 2, stop, -1):
        phi[i - 1] = ((12.0 - 10.0 * f[i]) * phi[i] - f[i + 1] * phi[i + 1]) / f[i - 1]
        if abs(phi[i - 1]) > 1e250:
            phi[i - 1 :] /= abs(phi[i - 1])
    return phi


def _count_sign_changes(values: np.ndarray) -> int:
    signs = np.sign(values)
    nz = signs[signs != 0.0]
    if len(nz) < 2:
        return 0
    return int(np.count_nonzero(nz[1:] != nz[:-1]))


def _outward_node_count(params, qn, energy, config) -> int:
    x, rho = _trial_grid(params, qn, energy, config)
    phi = _numerov_outward(params, qn, energy, x, rho)
    return _count_sign_changes(phi[1:])


def _turning_index(params, qn, energy, rho) -> int:
    qt = log_form_coefficient(params, qn, energy, rho)
    allowed = np.nonzero(qt > 0.0)[0]
    if len(allowed) == 0:
        raise NoRootInBracket("no classically allowed region at this energy; channel hosts no state")
    return int(allowed[-1])


def _matching_defect(params, qn, energy, x, rho, match: int) -> float:
    dx = x[1] - x[0]
    out = _numerov_outward(params, qn, energy, x, rho, stop=match + 1)
    inw = _numerov_inward(params, qn, energy, x, rho, stop=match - 1)
    if out[match] == 0.0 or inw[match] == 0.0:
        return math.inf
    ld_out = (out[match + 1] - out[match - 1]) / (2.0 * dx * out[match])
    ld_in = (inw[match + 1] - inw[match - 1]) / (2.0 * dx * inw[match])
    return ld_out - ld_in


def shoot_eigenvalue(params: pc.SystemParams, qn: pc.QuantumNumbers, config: ShootingConfig | None = None) -> ShootingResult:
    """Locate the eigenvalue with ``node_target`` radial nodes by shooting.

    Never consults the closed-form spectrum.  Raises
    :class:`NoRootInBracket` when the bracket holds no state with more than
    ``node_target`` nodes (no transition to bisect) and
    :class:`NodeCountMismatch` when the bracket excludes the target state
    from below or the converged eigenfunction fails the node certificate.
    """
    if config is None:
        config = ShootingConfig()
    m0 = params.m0
    target = config.node_target if config.node_target is not None else qn.n
    e_lo = config.e_lo if config.e_lo is not None else 1e-6 * m0
    e_hi = config.e_hi if config.e_hi is not None else (1.0 - 1e-9) * m0
    if not 0.0 < e_lo < e_hi < m0:
        raise ValueError("energy bracket must satisfy 0 < e_lo < e_hi < m0")

    # Sweep: bracket the count transition target -> target+1.
    energies = np.linspace(e_lo, e_hi, config.sweep_points)
    lo = hi = None
    prev_e, prev_count = e_lo, None
    for e in energies:
        count = _outward_node_count(params, qn, float(e), config)
        if count > target:
            if prev_count is None:
                raise NodeCountMismatch(
                    f"bracket starts above the target state: {count} nodes at E = {e}"
                )
            lo, hi = prev_e, float(e)
            break
        prev_e, prev_count = float(e), count
    if lo is None:
        raise NoRootInBracket(
            f"no state with {target + 1} nodes below E = {e_hi}; bracket holds no transition"
        )

    # Node-count bisection down to a tight window around the eigenvalue.
    coarse = max(64.0 * config.tol_e * m0, 1e-13 * m0)
    while hi - lo > coarse:
        mid = 0.5 * (lo + hi)
        if _outward_node_count(params, qn, mid, config) <= target:
            lo = mid
        else:
            hi = mid

    # Defect bisection on a frozen grid (continuity of the defect in E).
    x, rho = _trial_grid(params, qn, hi, config)
    mid_e = 0.5 * (lo + hi)
    match = config.match_index if config.match_index is not None else _turning_index(params, qn, mid_e, rho)
    match = min(max(match, 2), len(x) - 3)
    method = "defect-bisection"
    d_lo = _matching_defect(params, qn, lo, x, rho, match)
    d_hi = _matching_defect(params, qn, hi, x, rho, match)
    if math.isfinite(d_lo) and math.isfinite(d_hi) and d_lo * d_hi < 0.0:
        while hi - lo > config.tol_e * m0:
            mid = 0.5 * (lo + hi)
            d_mid = _matching_defect(params, qn, mid, x, rho, match)
            if not math.isfinite(d_mid):
                break
            if (d_mid < 0.0) == (d_lo < 0.0):
                lo, d_lo = mid, d_mid
            else:
                hi = mid
    else:
        # Defect did not change sign across the tight window (matching point
        # degeneracy); fall back to pure node-count bisection.
        method = "node-bisection"
        while hi - lo > config.tol_e * m0:
            mid = 0.5 * (lo + hi)
            if _outward_node_count(params, qn, mid, config) <= target:
                lo = mid
            else:
                hi = mid

    energy = 0.5 * (lo + hi)

    # Composite eigenfunction and node certificate.
    out = _numerov_outward(params, qn, energy, x, rho, stop=match + 1)
    inw = _numerov_inward(params, qn, energy, x, rho, stop=match - 1)
    phi = np.empty(len(x))
    phi[: match + 1] = out[: match + 1]
    scale = out[match] / inw[match] if inw[match] != 0.0 else 1.0
    phi[match + 1 :] = scale * inw[match + 1 :]
    nodes = _count_sign_changes(phi[1:-1])
    if nodes != target:
        raise NodeCountMismatch(f"converged on a state with {nodes} nodes, wanted {target}")
    norm = math.sqrt(np.trapezoid(phi * phi * rho * rho, x))
    phi /= norm
    defect = _matching_defect(params, qn, energy, x, rho, match)
    return ShootingResult(energy=energy, node_count=nodes, defect=defect, grid=rho, values=phi, method=method)


def residual_check(level: EnergyLevel, radial: wf.RadialFunction) -> float:
    """Dimensionless second-difference residual of the radial equation.

    The sampled phi is pushed through the log-radius form phi_xx + Qt phi
    (exactly equivalent to the radial equation on the geometric grid) with a
    centered second difference; the max interior residual is scaled by
    max|phi| times the largest coefficient magnitude max|Qt|, the natural
    size of the terms the equation balances.  Second-order convergence under
    grid refinement; an exact eigenpair at the default grid sits well below
    1e-5, while an energy off by 1e-3 m0 inflates the result by orders of
    magnitude.
    """
    grid = np.asarray(radial.grid, dtype=float)
    if len(grid) < 8:
        raise GridTooCoarse("need at least 8 samples for a residual estimate")
    x = np.log(grid)
    dx_all = np.diff(x)
    dx = float(dx_all[0])
    if np.max(np.abs(dx_all - dx)) > 1e-8 * dx:
        raise ValueError("residual_check requires a geometric grid")
    qt = log_form_coefficient(level.params, level.qn, level.energy, grid)
    if dx * dx * float(np.max(np.abs(qt))) / 12.0 > 0.5:
        raise GridTooCoarse("grid spacing too large for the second-difference stencil")
    phi = np.asarray(radial.values, dtype=float)
    resid = (phi[2:] - 2.0 * phi[1:-1] + phi[:-2]) / (dx * dx) + qt[1:-1] * phi[1:-1]
    scale = float(np.max(np.abs(phi))) * float(np.max(np.abs(qt)))
    return float(np.max(np.abs(resid))) / scale


def verify_level(
    level: EnergyLevel,
    config: ShootingConfig | None = None,
    tol_e: float = 1e-6,
    shape_tol: float = 1e-4,
    energy_perturbation: float = 0.0,
) -> VerificationReport:
    """Compare one closed-form level against the shooting oracle.

    ``energy_perturbation`` (in units of m0) shifts the closed-form energy
    before comparison; it exists as a fault-injection control and must drive
    the report to failure when of order 1e-3.
    """
    probe = level
    if energy_perturbation != 0.0:
        probe = replace(level, energy=level.energy + energy_perturbation * level.params.m0)

    oracle = shoot_eigenvalue(level.params, level.qn, config)
    delta = abs(oracle.energy - probe.energy) / level.params.m0

    radial = wf.build_radial_function(probe)
    residual = residual_check(probe, radial)

    # Mutual normalization on the oracle grid, same discrete measure.
    analytic_vals = wf.radial_phi(probe, probe.qn.s, oracle.grid, norm_constant=radial.norm_constant)
    x = np.log(oracle.grid)
    norm_a = math.sqrt(np.trapezoid(analytic_vals**2 * oracle.grid**2, x))
    a_vals = analytic_vals / norm_a
    o_vals = oracle.values.copy()
    if float(np.dot(a_vals, o_vals)) < 0.0:
        o_vals = -o_vals
    shape_dev = float(np.max(np.abs(a_vals - o_vals))) / float(np.max(np.abs(a_vals)))

    energy_ok = delta <= tol_e
    nodes_ok = oracle.node_count == level.qn.n
    shape_ok = shape_dev <= shape_tol
    return VerificationReport(
        n=level.qn.n,
        m_l=level.qn.m_l,
        s=level.qn.s,
        analytic_energy=probe.energy,
        oracle_energy=oracle.energy,
        delta_e_over_m0=delta,
        node_expected=level.qn.n,
        node_observed=oracle.node_count,
        shape_deviation=shape_dev,
        residual=residual,
        energy_ok=energy_ok,
        nodes_ok=nodes_ok,
        shape_ok=shape_ok,
        passed=energy_ok and nodes_ok,
    )


def verify_spectrum(
    table_levels: list[EnergyLevel],
    config: ShootingConfig | None = None,
    tol_e: float = 1e-6,
    shape_tol: float = 1e-4,
    energy_perturbation: float = 0.0,
    max_workers: int = 1,
) -> list[VerificationReport]:
    """Verify a list of levels; reports are returned in a deterministic
    (n, m_l, s) order regardless of execution order."""
    levels = sorted(table_levels, key=lambda lv: (lv.qn.n, lv.qn.m_l, lv.qn.s))

    def run(level: EnergyLevel) -> VerificationReport:
        return verify_level(level, config, tol_e, shape_tol, energy_perturbation)

    if max_workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(run, levels))
    return [run(level) for level in levels]
