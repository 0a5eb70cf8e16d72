"""Bound states of a planar Dirac particle with a 1/rho mass term in a
combined Aharonov-Bohm flux and 2D Coulomb field.

Closed-form energies and spinor eigenfunctions, plus an independent Numerov
shooting oracle that re-derives every eigenvalue numerically.
"""

from .errors import (
    AbcPdmError,
    DomainError,
    GridTooCoarse,
    NoBoundState,
    NoConvergence,
    NodeCountMismatch,
    NoRootInBracket,
    NotABoundState,
    SupercriticalCoupling,
)
from .params import (
    ALPHA_FS,
    DerivedQuantities,
    QuantumNumbers,
    SystemParams,
    derive,
    eta,
    gamma,
    gamma_s,
    pdm_mass,
    potentials,
    z0,
)
from .spectrum import (
    EnergyLevel,
    KappaScanReport,
    SpectrumTable,
    analytic_energy,
    bisect_quantization_energy,
    enumerate_spectrum,
    kappa_monotonicity_scan,
    level_exists,
    quantization_residual,
    scalar_coupling_energy,
)
from .verifier import (
    ShootingConfig,
    ShootingResult,
    VerificationReport,
    residual_check,
    shoot_eigenvalue,
    transform_to_normal_form,
    verify_level,
    verify_spectrum,
)
from .wavefunction import (
    RadialFunction,
    SpinorSample,
    assemble_spinor,
    build_radial_function,
    build_spinor_sample,
    count_nodes,
    normalize,
    radial_phi,
    spinor_components,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_FS",
    "AbcPdmError",
    "DerivedQuantities",
    "DomainError",
    "EnergyLevel",
    "GridTooCoarse",
    "KappaScanReport",
    "NoBoundState",
    "NoConvergence",
    "NodeCountMismatch",
    "NoRootInBracket",
    "NotABoundState",
    "QuantumNumbers",
    "RadialFunction",
    "ShootingConfig",
    "ShootingResult",
    "SpectrumTable",
    "SpinorSample",
    "SupercriticalCoupling",
    "SystemParams",
    "VerificationReport",
    "analytic_energy",
    "assemble_spinor",
    "bisect_quantization_energy",
    "build_radial_function",
    "build_spinor_sample",
    "count_nodes",
    "derive",
    "enumerate_spectrum",
    "eta",
    "gamma",
    "gamma_s",
    "kappa_monotonicity_scan",
    "level_exists",
    "normalize",
    "pdm_mass",
    "potentials",
    "quantization_residual",
    "radial_phi",
    "residual_check",
    "scalar_coupling_energy",
    "shoot_eigenvalue",
    "spinor_components",
    "transform_to_normal_form",
    "verify_level",
    "verify_spectrum",
    "z0",
]
