"""Closed-form bound-state energies, the quantization condition, limiting
cases and spectrum enumeration.

Quantization condition
----------------------
A channel (n, m_l, s) hosts a normalizable state at energy E exactly when

    z0(E) = n + |gamma_s| + 1/2  =: N,

with z0 = (z_alpha*E - m0*kappa)/eta.  Squaring this relation and solving
the resulting quadratic for E gives the closed form implemented by
:func:`analytic_energy`,

    E = m0 * (z_alpha*kappa + sqrt((z_alpha*kappa)^2 + D*(N^2 - kappa^2))) / D,
    D = N^2 + z_alpha^2,

the positive-energy branch.  Squaring admits one spurious sign: the value
above satisfies z0(E) = +N exactly when z_alpha > kappa, and z0(E) = -N
when z_alpha < kappa.  Only the former is a genuine bound state (the
confluent series must terminate with z0 > 0); the latter is the algebraic
continuation of the formula, e.g. the whole z_alpha = 0 "scalar coupling"
family E = m0*sqrt(1 - kappa^2/(n_s + sqrt(m_l^2 + kappa^2))^2).
:func:`analytic_energy` returns the closed-form value in both regimes;
:func:`enumerate_spectrum` keeps only levels whose quantization residual
vanishes, so tables contain genuine bound states only.

For gamma >= 1/2 (the generic regime) N equals n_s + gamma with
n_s = n + (1-s)/2, and the levels (n, m_l, +1) and (n-1, m_l, -1) are exactly
degenerate.  For gamma < 1/2 the s = +1 channel has gamma_s < 0, the
regular-solution exponent flips to |gamma_s| = 1/2 - gamma, and that
degeneracy is broken (N = n + 1 - gamma versus n + gamma); degeneracy
classes therefore key on the sign of gamma_s as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import params as pc
from .errors import NoBoundState, NotABoundState, SupercriticalCoupling

#: Absolute tolerance on the quantization residual below which a level is
#: accepted into a spectrum table.
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class EnergyLevel:
    """A single bound-state (or formal) level with its derived scalars."""

    params: pc.SystemParams
    qn: pc.QuantumNumbers
    energy: float
    n_s: int
    gamma: float

    @property
    def gamma_s(self) -> float:
        return self.gamma - self.qn.s / 2.0

    @property
    def e_over_m0(self) -> float:
        return self.energy / self.params.m0

    def derived(self) -> pc.DerivedQuantities:
        return pc.derive(self.params, self.qn, self.energy)

    def residual(self) -> float:
        return quantization_residual(self.params, self.qn, self.energy)


@dataclass(frozen=True)
class SkippedLevel:
    """Record of a channel excluded from a spectrum table."""

    n: int
    m_l: float
    s: int
    reason: str


@dataclass
class SpectrumTable:
    """Enumerated levels, sorted by energy, with degeneracy bookkeeping.

    ``degeneracy_classes`` lists index groups into ``levels``; levels share a
    class iff they share (n_s, gamma rounded at 1e-12, sign of gamma_s).
    ``class_ids`` maps each level to its class index.
    """

    params: pc.SystemParams
    levels: list[EnergyLevel] = field(default_factory=list)
    degeneracy_classes: list[list[int]] = field(default_factory=list)
    class_ids: list[int] = field(default_factory=list)
    skipped: list[SkippedLevel] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class KappaScanReport:
    """Signed-difference table of E(kappa) for one fixed channel."""

    kappas: tuple[float, ...]
    energies: tuple  # float or None per kappa (None when the level is absent)
    deltas: tuple  # consecutive differences over present pairs
    nondecreasing: bool
    counterexample: tuple | None  # (kappa_i, kappa_j, E_i, E_j) or None


def effective_quantum_number(params: pc.SystemParams, qn: pc.QuantumNumbers) -> float:
    """N = n + |gamma_s| + 1/2, the number the quantization condition pins."""
    return qn.n + abs(pc.gamma_s(params, qn)) + 0.5


def quantization_residual(params: pc.SystemParams, qn: pc.QuantumNumbers, energy: float) -> float:
    """z0(E) - (n + |gamma_s| + 1/2); zero iff E is the channel's eigenvalue."""
    if abs(energy) >= params.m0:
        raise NotABoundState(f"|E| = {abs(energy)} is outside the gap (m0 = {params.m0})")
    return pc.z0(params, energy) - effective_quantum_number(params, qn)


def analytic_energy(params: pc.SystemParams, qn: pc.QuantumNumbers) -> float:
    """Positive-branch closed-form energy of the channel (n, m_l, s).

    Raises :class:`SupercriticalCoupling` when gamma is imaginary and
    :class:`NoBoundState` when the inner radicand is negative (kappa > N) or
    the branch value falls outside the open interval (0, m0), which includes
    the threshold cases z_alpha = kappa (E -> m0).

    The returned value satisfies the quantization condition z0(E) = N when
    z_alpha > kappa; for z_alpha < kappa it is the algebraic continuation
    (z0(E) = -N) and no normalizable state exists, see the module docstring.
    """
    big_n = effective_quantum_number(params, qn)  # raises SupercriticalCoupling
    za, kap, m0 = params.z_alpha, params.kappa, params.m0
    dd = big_n * big_n + za * za
    radicand = (za * kap) ** 2 + dd * (big_n * big_n - kap * kap)
    if radicand < 0.0:
        raise NoBoundState(
            f"inner radicand negative (kappa = {kap} exceeds N = {big_n}); no level"
        )
    energy = m0 * (za * kap + math.sqrt(radicand)) / dd
    if not 0.0 < energy < m0:
        raise NoBoundState(
            f"closed-form value E = {energy} is not inside (0, m0); threshold or unbound"
        )
    return energy


def scalar_coupling_energy(params: pc.SystemParams, qn: pc.QuantumNumbers) -> float:
    """Formal spectrum of the pure 1/rho mass term (z_alpha = phi_ab = 0),

        E = m0 * sqrt(1 - kappa^2 / (n_s + sqrt(m_l^2 + kappa^2))^2).

    Equals :func:`analytic_energy` on the same parameters to rounding error.
    At kappa = 0 this returns m0 (the continuum threshold); enumeration flags
    that case as NoBoundState rather than listing it.
    """
    if params.z_alpha != 0.0 or params.phi_ab != 0.0:
        raise ValueError("scalar_coupling_energy requires z_alpha = 0 and phi_ab = 0")
    kap = params.kappa
    denom = qn.n_s + math.sqrt(qn.m_l * qn.m_l + kap * kap)
    return params.m0 * math.sqrt(1.0 - (kap / denom) ** 2)


def bisect_quantization_energy(
    params: pc.SystemParams,
    qn: pc.QuantumNumbers,
    tol: float = 1e-14,
    max_iter: int = 240,
) -> float:
    """Root of z0(E) - N = 0 by bisection on E in (0, m0).

    Independent of the closed form; used as an oracle for it.  z0 is strictly
    increasing in E whenever z_alpha > kappa, so the root is unique.  Raises
    :class:`NoBoundState` when the residual has no sign change in the
    bracket (the z_alpha <= kappa regime).
    """
    m0 = params.m0
    lo = 1e-12 * m0
    hi = m0 * (1.0 - 1e-12)
    f_lo = quantization_residual(params, qn, lo)
    f_hi = quantization_residual(params, qn, hi)
    if f_lo > 0.0 or f_hi < 0.0:
        raise NoBoundState("quantization condition has no root in (0, m0) for this channel")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if quantization_residual(params, qn, mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * m0:
            break
    return 0.5 * (lo + hi)


def make_level(params: pc.SystemParams, qn: pc.QuantumNumbers) -> EnergyLevel:
    """EnergyLevel carrying the closed-form energy for the channel."""
    energy = analytic_energy(params, qn)
    return EnergyLevel(
        params=params,
        qn=qn,
        energy=energy,
        n_s=qn.n_s,
        gamma=pc.gamma(params, qn.m_l),
    )


def level_exists(params: pc.SystemParams, qn: pc.QuantumNumbers, residual_tol: float = RESIDUAL_TOL) -> bool:
    """True when the channel hosts a genuine bound state (closed-form energy
    in range and quantization residual below tolerance)."""
    try:
        energy = analytic_energy(params, qn)
    except (SupercriticalCoupling, NoBoundState):
        return False
    return abs(quantization_residual(params, qn, energy)) < residual_tol


def m_l_values(m_l_max: float) -> list[float]:
    """Half-odd-integers +-1/2, +-3/2, ... up to |m_l| <= m_l_max."""
    if m_l_max < 0.5:
        raise ValueError(f"m_l_max must be at least 1/2, got {m_l_max}")
    count = int(math.floor(m_l_max - 0.5)) + 1
    out: list[float] = []
    for k in range(count):
        base = k + 0.5
        out.extend((base, -base))
    return out


def enumerate_spectrum(params: pc.SystemParams, n_max: int, m_l_max: float) -> SpectrumTable:
    """All bound levels with n <= n_max, |m_l| <= m_l_max, s = +-1.

    Channels that are supercritical, have no closed-form level, or whose
    closed-form value fails the quantization condition (the formal
    z_alpha <= kappa branch) are recorded in ``skipped`` with a reason;
    the table itself never aborts.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    table = SpectrumTable(params=params)
    for m_l in m_l_values(m_l_max):
        for n in range(n_max + 1):
            for s in (+1, -1):
                qn = pc.QuantumNumbers(n=n, m_l=m_l, s=s)
                try:
                    level = make_level(params, qn)
                except SupercriticalCoupling:
                    table.skipped.append(SkippedLevel(n, m_l, s, "supercritical coupling"))
                    continue
                except NoBoundState as exc:
                    table.skipped.append(SkippedLevel(n, m_l, s, f"no bound state: {exc}"))
                    continue
                if abs(level.residual()) >= RESIDUAL_TOL:
                    table.skipped.append(
                        SkippedLevel(n, m_l, s, "quantization condition unsatisfied (formal branch)")
                    )
                    continue
                table.levels.append(level)
    table.levels.sort(key=lambda lv: (lv.energy, lv.qn.n, lv.qn.m_l, lv.qn.s))
    _assign_degeneracy_classes(table)
    return table


def _degeneracy_key(level: EnergyLevel) -> tuple:
    # gamma rounded at 1e-12 so float jitter cannot split a class; the sign
    # of gamma_s separates the gamma < 1/2 exceptional branch whose energies
    # genuinely differ (see module docstring).
    return (level.n_s, round(level.gamma, 12), level.gamma_s >= 0.0)


def _assign_degeneracy_classes(table: SpectrumTable) -> None:
    key_to_class: dict[tuple, int] = {}
    table.degeneracy_classes = []
    table.class_ids = []
    for idx, level in enumerate(table.levels):
        key = _degeneracy_key(level)
        if key not in key_to_class:
            key_to_class[key] = len(table.degeneracy_classes)
            table.degeneracy_classes.append([])
        cid = key_to_class[key]
        table.degeneracy_classes[cid].append(idx)
        table.class_ids.append(cid)


def kappa_monotonicity_scan(
    params: pc.SystemParams,
    qn: pc.QuantumNumbers,
    kappas,
) -> KappaScanReport:
    """Tabulate E(kappa) over a grid for one fixed channel.

    Reports whether the sequence is nondecreasing over consecutive present
    pairs and, when it is not, the first counterexample pair.  Values are
    the closed-form energies; absent levels (supercritical or out of range)
    are recorded as None.  No direction is asserted: the trend genuinely
    differs between regimes (in particular E(kappa) decreases when
    z_alpha = phi_ab = 0).
    """
    kappas = tuple(float(k) for k in kappas)
    energies: list[float | None] = []
    for kap in kappas:
        trial = pc.SystemParams(params.m0, params.z_alpha, params.phi_ab, kap)
        try:
            energies.append(analytic_energy(trial, qn))
        except (SupercriticalCoupling, NoBoundState):
            energies.append(None)
    deltas: list[float] = []
    nondecreasing = True
    counterexample = None
    prev_idx: int | None = None
    for i, e_i in enumerate(energies):
        if e_i is None:
            continue
        if prev_idx is not None:
            d = e_i - energies[prev_idx]
            deltas.append(d)
            if d < 0.0 and nondecreasing:
                nondecreasing = False
                counterexample = (kappas[prev_idx], kappas[i], energies[prev_idx], e_i)
        prev_idx = i
    return KappaScanReport(
        kappas=kappas,
        energies=tuple(energies),
        deltas=tuple(deltas),
        nondecreasing=nondecreasing,
        counterexample=counterexample,
    )
