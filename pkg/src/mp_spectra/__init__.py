"""Spectra, phase shifts and wavefunctions of the Meixner-Pollaczek quantum system."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AccuracyError,
    ConsistencyError,
    ConvergenceError,
    DefinitenessError,
    DegenerateOutputError,
    DomainError,
    MPSpectraError,
)
from .linalg import EigenResult, SymTridiag, generalized_eigensolve, sym_eigensolve  # noqa: E402
from .system import (  # noqa: E402
    REFERENCE_PARAMS,
    PhysicalParams,
    analytic_spectrum,
    build_J,
    build_J_flat,
    build_Omega,
    expansion_coefficients,
    map_energy,
    numerical_spectrum,
    physical_phase_shift,
    wavefunction,
)

__all__ = [
    "__version__",
    "AccuracyError",
    "ConsistencyError",
    "ConvergenceError",
    "DefinitenessError",
    "DegenerateOutputError",
    "DomainError",
    "MPSpectraError",
    "EigenResult",
    "SymTridiag",
    "generalized_eigensolve",
    "sym_eigensolve",
    "REFERENCE_PARAMS",
    "PhysicalParams",
    "analytic_spectrum",
    "build_J",
    "build_J_flat",
    "build_Omega",
    "expansion_coefficients",
    "map_energy",
    "numerical_spectrum",
    "physical_phase_shift",
    "wavefunction",
]
