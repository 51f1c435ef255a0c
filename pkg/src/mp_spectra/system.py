"""The Meixner-Pollaczek quantum system in a Laguerre basis.

Physical inputs are the basis scale ``λ``, the coupling ``μ`` (with
``b = μλ``), the polynomial parameter ``ρ`` and the angular parameter ``ν``.
Energies use ħ = m = 1, and spectral quantities are reported in terms of
``ε = κ = sqrt(2E)``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateOutputError, DomainError
from .linalg import SymTridiag, generalized_eigensolve
from .polys import (
    MeixnerParams,
    MPParams,
    meixner_eval,
    meixner_weight,
    mp_eval_recursion,
    mp_weight,
)
from .specfun import ln_gamma_complex, laguerre_sequence

__all__ = [
    "PhysicalParams",
    "EnergyPoint",
    "WavefunctionGrid",
    "SpectrumEntry",
    "REFERENCE_PARAMS",
    "HAMILTONIANS",
    "map_energy",
    "energy_parameter",
    "analytic_spectrum",
    "physical_phase_shift",
    "basis_function",
    "basis_matrix",
    "build_J",
    "build_J_flat",
    "build_Omega",
    "numerical_spectrum",
    "label_spectrum",
    "expansion_coefficients",
    "coefficient_residual",
    "wavefunction",
    "scattering_state",
    "bound_state_meixner",
    "default_grid",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Inputs of the system; ``b = mu * lam`` is derived."""

    lam: float
    mu: float
    rho: float
    nu: float
    b: float = field(init=False)

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"lambda must be > 0, got {self.lam!r}")
        if not self.mu > 0:
            raise DomainError(f"mu must be > 0, got {self.mu!r}")
        if not self.rho > -1:
            raise DomainError(f"rho must be > -1, got {self.rho!r}")
        if not self.nu > -1:
            raise DomainError(f"nu must be > -1, got {self.nu!r}")
        for name in ("lam", "mu", "rho", "nu"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        object.__setattr__(self, "b", self.mu * self.lam)

    @classmethod
    def from_rho(cls, lam, rho, nu):
        """Constrained form with the coupling tied to ``mu = rho + 1``."""
        return cls(lam, rho + 1.0, rho, nu)


REFERENCE_PARAMS = PhysicalParams(lam=0.7, mu=1.1, rho=2.1, nu=0.3)


@dataclass(frozen=True)
class EnergyPoint:
    E: float
    kappa: float
    z: float
    theta: float
    zprime: float


@dataclass(frozen=True)
class WavefunctionGrid:
    x: np.ndarray
    psi: np.ndarray
    coefficients: np.ndarray
    normalization: float


@dataclass(frozen=True)
class SpectrumEntry:
    index: int
    epsilon: float
    physical: bool
    energy: float | None


def energy_parameter(pp, kappa):
    """``z' = 4 sqrt(κ b) ln(κ/λ)``, continued by zero at ``κ = 0``."""
    if kappa == 0:
        return 0.0
    if kappa < 0:
        raise DomainError("wavefunction undefined: z' requires kappa > 0")
    return 4.0 * math.sqrt(kappa * pp.b) * math.log(kappa / pp.lam)


def map_energy(pp, E):
    """Spectral variables ``(κ, z, θ, z')`` of a positive energy."""
    if not E > 0:
        raise DomainError(f"scattering variables undefined below threshold (E = {E!r})")
    kappa = math.sqrt(2.0 * E)
    z = math.log(kappa / pp.lam)
    theta = math.acos((kappa - pp.b) / (kappa + pp.b))
    zprime = 4.0 * math.sqrt(kappa * pp.b) * z
    return EnergyPoint(E, kappa, z, theta, zprime)


def analytic_spectrum(pp, m_max):
    """Bound-state energies ``(λ²/2) exp(2(m + μ))`` for ``m = 0..m_max``."""
    if m_max < 0:
        raise DomainError(f"m_max must be >= 0, got {m_max}")
    m = np.arange(m_max + 1, dtype=float)
    return 0.5 * pp.lam**2 * np.exp(2.0 * (m + pp.mu))


def physical_phase_shift(pp, E):
    """Phase shift ``arg Γ(ρ + 1 + i ln(κ/λ))``, continuous in ``E``."""
    z = map_energy(pp, E).z
    return ln_gamma_complex(complex(pp.rho + 1.0, z)).imag


# ---------------------------------------------------------------------------
# basis and matrices


def basis_matrix(pp, N, x):
    """Rows ``φ_0(x) .. φ_{N-1}(x)`` of the Laguerre basis on the points ``x``.

    ``φ_n(x) = sqrt(n!/Γ(n+ν+1)) (λx)^ν exp(-λx/2) L_n^ν(λx)``.
    """
    if N < 1:
        raise DomainError(f"basis size must be >= 1, got {N}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("basis functions are defined for x >= 0")
    y = pp.lam * x
    L = laguerre_sequence(N - 1, pp.nu, y)
    n = np.arange(N, dtype=float)
    norm = np.exp(0.5 * np.array([math.lgamma(k + 1) - math.lgamma(k + pp.nu + 1) for k in n]))
    envelope = np.power(y, pp.nu) * np.exp(-0.5 * y)
    return norm.reshape((N,) + (1,) * y.ndim) * L * envelope


def basis_function(pp, n, x):
    vals = basis_matrix(pp, n + 1, x)[n]
    return float(vals) if vals.ndim == 0 else vals


def _offdiag(pp, N):
    k = np.arange(N - 1, dtype=float)
    return np.sqrt((k + 1) * (k + 2 * pp.rho + 2))


def build_J(pp, N):
    """Tridiagonal operator of the energy recursion evaluated at ``E = 0``.

    Diagonal ``2b(n+ρ+1)``, off-diagonal ``b sqrt((n+1)(n+2ρ+2))``.
    """
    if N < 1:
        raise DomainError(f"basis size must be >= 1, got {N}")
    n = np.arange(N, dtype=float)
    return SymTridiag(2 * pp.b * (n + pp.rho + 1), pp.b * _offdiag(pp, N))


def build_J_flat(pp, N):
    """Same off-diagonal as :func:`build_J`, constant diagonal ``2b``.

    This is the Hamiltonian whose pencil with the overlap matrix yields the
    reference eigenvalue table for the default parameters.
    """
    if N < 1:
        raise DomainError(f"basis size must be >= 1, got {N}")
    return SymTridiag(np.full(N, 2 * pp.b), pp.b * _offdiag(pp, N))


def build_Omega(pp, N):
    """Overlap matrix of the Laguerre basis: ``2(n+ρ+1)`` and ``-sqrt((n+1)(n+2ρ+2))``."""
    if N < 1:
        raise DomainError(f"basis size must be >= 1, got {N}")
    n = np.arange(N, dtype=float)
    return SymTridiag(2 * (n + pp.rho + 1), -_offdiag(pp, N))


HAMILTONIANS = {"flat": build_J_flat, "zero-energy": build_J}


def numerical_spectrum(pp, N, hamiltonian="flat"):
    """Generalized eigenvalues ``ε`` of ``(H, Ω)`` in ascending order.

    ``hamiltonian`` selects an entry of :data:`HAMILTONIANS`.
    """
    try:
        build = HAMILTONIANS[hamiltonian]
    except KeyError:
        raise DomainError(
            f"unknown hamiltonian {hamiltonian!r}; choose from {sorted(HAMILTONIANS)}"
        ) from None
    return generalized_eigensolve(build(pp, N), build_Omega(pp, N))


def label_spectrum(eigenvalues):
    """Tag each ``ε``; only ``ε > 0`` carries an energy ``ε²/2`` and a wavefunction."""
    out = []
    for i, eps in enumerate(eigenvalues):
        eps = float(eps)
        physical = eps > 0
        out.append(SpectrumEntry(i, eps, physical, 0.5 * eps * eps if physical else None))
    return out


# ---------------------------------------------------------------------------
# expansion coefficients and wavefunctions


def expansion_coefficients(pp, epsilon, N):
    """Coefficients ``P_0 .. P_{N-1}`` of the bound-state expansion at ``ε``.

    Runs the recursion ``z' P_n = 2b(n+ρ+1) P_n + b sqrt(n(n+2ρ+1)) P_{n-1}
    + b sqrt((n+1)(n+2ρ+2)) P_{n+1}`` upward from ``P_0 = 1``.
    """
    if not epsilon > 0:
        raise DomainError("wavefunction undefined: z' requires kappa > 0")
    if N < 1:
        raise DomainError(f"basis size must be >= 1, got {N}")
    zp = energy_parameter(pp, epsilon)
    b, rho = pp.b, pp.rho
    P = np.empty(N)
    P[0] = 1.0
    for n in range(N - 1):
        acc = (zp - 2 * b * (n + rho + 1)) * P[n]
        if n > 0:
            acc -= b * math.sqrt(n * (n + 2 * rho + 1)) * P[n - 1]
        P[n + 1] = acc / (b * math.sqrt((n + 1) * (n + 2 * rho + 2)))
    return P


def coefficient_residual(pp, epsilon, P):
    """Recursion residual at each degree that has a successor in ``P``.

    Entry ``n`` is ``|lhs - rhs| / max(1, |P_n|)``.
    """
    zp = energy_parameter(pp, epsilon)
    b, rho = pp.b, pp.rho
    res = []
    for n in range(len(P) - 1):
        rhs = 2 * b * (n + rho + 1) * P[n] + b * math.sqrt((n + 1) * (n + 2 * rho + 2)) * P[n + 1]
        if n > 0:
            rhs += b * math.sqrt(n * (n + 2 * rho + 1)) * P[n - 1]
        res.append(abs(zp * P[n] - rhs) / max(1.0, abs(P[n])))
    return np.array(res)


def _check_grid(x_grid):
    x = np.asarray(x_grid, dtype=float).reshape(-1)
    if len(x) == 0:
        raise DomainError("x grid must not be empty")
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise DomainError("x grid must be finite and nonnegative")
    if np.any(np.diff(x) <= 0):
        raise DomainError("x grid must be strictly increasing")
    return x


def _normalize(x, raw):
    if not np.all(np.isfinite(raw)):
        raise DegenerateOutputError("wavefunction sum overflowed")
    norm = math.sqrt(float(np.trapezoid(raw * raw, x))) if len(x) > 1 else abs(float(raw[0]))
    if norm == 0 or not math.isfinite(norm):
        raise DegenerateOutputError("wavefunction vanishes on the grid")
    return raw / norm, norm


def wavefunction(pp, epsilon, N, x_grid):
    """Bound-state profile ``Σ_{n<N} P_n(ε) φ_n(x)`` with unit trapezoidal L² norm."""
    x = _check_grid(x_grid)
    coeffs = expansion_coefficients(pp, epsilon, N)
    psi, norm = _normalize(x, coeffs @ basis_matrix(pp, N, x))
    return WavefunctionGrid(x, psi, coeffs, norm)


def scattering_state(pp, E, N, x_grid):
    """Energy-normalized continuum state ``sqrt(ρ(z)) Σ_{n<N} P_n(z, θ) φ_n(x)``.

    The polynomial parameter is ``ρ + 1``. No grid normalization is applied.
    """
    x = _check_grid(x_grid)
    ep = map_energy(pp, E)
    mpp = MPParams(pp.rho + 1.0, ep.theta)
    coeffs = math.sqrt(mp_weight(mpp, ep.z)) * mp_eval_recursion(mpp, ep.z, N - 1)
    psi = coeffs @ basis_matrix(pp, N, x)
    return WavefunctionGrid(x, psi, coeffs, 1.0)


def bound_state_meixner(pp, beta, k, N, x_grid):
    """Bound state ``k`` expanded in discrete Meixner polynomials, unit-normalized."""
    x = _check_grid(x_grid)
    if k < 0:
        raise DomainError(f"bound-state index must be >= 0, got {k}")
    mp = MeixnerParams(pp.rho + 1.0, beta)
    coeffs = math.sqrt(meixner_weight(mp, k)) * meixner_eval(mp, k, N - 1)
    psi, norm = _normalize(x, coeffs @ basis_matrix(pp, N, x))
    return WavefunctionGrid(x, psi, coeffs, norm)


def default_grid(pp, points=400, x_max=None):
    """Uniform grid on ``[0, 40/λ]`` unless ``x_max`` is given."""
    x_max = 40.0 / pp.lam if x_max is None else x_max
    if not x_max > 0 or points < 2:
        raise DomainError("grid needs x_max > 0 and at least two points")
    return np.linspace(0.0, x_max, points)
