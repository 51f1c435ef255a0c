"""Continuous Meixner-Pollaczek, discrete Meixner and Krawtchouk polynomials.

All three families are used in orthonormal form, so that the polynomial of
degree zero is identically one and the Gram matrices against the normalized
weights are identities. Each family has a hypergeometric route and a
three-term recurrence route; the two are kept independent so either can serve
as the oracle for the other.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, ConsistencyError, DomainError
from .specfun import hyp2f1_terminating, ln_gamma_complex, ln_gamma_real

__all__ = [
    "MPParams",
    "MeixnerParams",
    "KrawtchoukParams",
    "QuadratureSpec",
    "GramResult",
    "mp_eval_recursion",
    "mp_eval_hypergeometric",
    "mp_weight",
    "mp_asymptotic",
    "mp_scattering",
    "meixner_eval",
    "meixner_eval_recursion",
    "meixner_recursion_residual",
    "meixner_weight",
    "krawtchouk_eval",
    "krawtchouk_sequence",
    "krawtchouk_recursion_residual",
    "krawtchouk_weight",
    "gram_continuous",
    "gram_discrete_meixner",
    "gram_discrete_krawtchouk",
]


@dataclass(frozen=True)
class MPParams:
    """Parameters ``(μ, θ)`` of the continuous Meixner-Pollaczek family."""

    mu: float
    theta: float

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"mu must be > 0, got {self.mu!r}")
        if not 0 < self.theta < math.pi:
            raise DomainError(f"theta must lie in (0, pi), got {self.theta!r}")


@dataclass(frozen=True)
class MeixnerParams:
    mu: float
    beta: float

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError(f"mu must be > 0, got {self.mu!r}")
        if not 0 < self.beta < 1:
            raise DomainError(f"beta must lie in (0, 1), got {self.beta!r}")


@dataclass(frozen=True)
class KrawtchoukParams:
    N: int
    gamma: float

    def __post_init__(self):
        if self.N < 0 or int(self.N) != self.N:
            raise DomainError(f"N must be a nonnegative integer, got {self.N!r}")
        if not 0 < self.gamma < 1:
            raise DomainError(f"gamma must lie in (0, 1), got {self.gamma!r}")

    def check_index(self, k, name):
        if not 0 <= k <= self.N or int(k) != k:
            raise DomainError(f"{name} = {k!r} outside [0, {self.N}]")


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule for integrals over the real line.

    The cutoff ``[-Z, Z]`` is grown panel by panel until the integrand bound
    at both ends drops below ``tail_tol``. ``tol`` is the accuracy the Gram
    check must certify, estimated by comparing against a rule with twice the
    nodes per panel.
    """

    panel_width: float = 0.5
    nodes_per_panel: int = 32
    tail_tol: float = 1e-16
    tol: float = 1e-10
    z_max_limit: float = 1e4


@dataclass(frozen=True)
class GramResult:
    matrix: np.ndarray
    max_deviation: float
    error_bound: float


# ---------------------------------------------------------------------------
# continuous Meixner-Pollaczek


def mp_eval_recursion(p, z, nmax):
    """Orthonormal MP polynomials ``P_0 .. P_nmax`` by upward recurrence.

    ``z`` may be a scalar or an array; the result has shape
    ``(nmax + 1,) + np.shape(z)``.
    """
    if nmax < 0:
        raise DomainError(f"nmax must be >= 0, got {nmax}")
    z = np.asarray(z, dtype=float)
    s, c = math.sin(p.theta), math.cos(p.theta)
    out = np.empty((nmax + 1,) + z.shape)
    out[0] = 1.0
    prev = np.zeros(z.shape)
    for n in range(nmax):
        lower = 0.5 * math.sqrt(n * (n + 2 * p.mu - 1))
        upper = 0.5 * math.sqrt((n + 1) * (n + 2 * p.mu))
        out[n + 1] = ((z * s + (n + p.mu) * c) * out[n] - lower * prev) / upper
        prev = out[n]
    return out


def _sqrt_norm(two_mu, n):
    # sqrt((2mu)_n / n!)
    return math.exp(0.5 * (math.lgamma(two_mu + n) - math.lgamma(two_mu) - math.lgamma(n + 1)))


def mp_eval_hypergeometric(p, z, n):
    """Degree-``n`` orthonormal MP polynomial from its terminating 2F1.

    The series is summed exactly (its terms alternate strongly once ``n`` is
    large), then multiplied by the phase and normalization in complex
    arithmetic. The imaginary part is a pure rounding artifact and must stay
    below ``1e-9 (1 + |P|)``.
    """
    x = 1.0 - complex(math.cos(2 * p.theta), -math.sin(2 * p.theta))
    f = hyp2f1_terminating(n, complex(p.mu, z), 2 * p.mu, x, exact=True)
    val = _sqrt_norm(2 * p.mu, n) * complex(math.cos(n * p.theta), math.sin(n * p.theta)) * f
    if abs(val.imag) > 1e-9 * (1.0 + abs(val.real)):
        raise ConsistencyError(
            f"MP polynomial P_{n}({z}) has imaginary part {val.imag:.3e}; expected a real value"
        )
    return val.real


def _log_mp_weight(p, z):
    lg = ln_gamma_complex(p.mu + 1j * np.asarray(z, dtype=float))
    return (
        2.0 * np.real(lg)
        + (2 * p.theta - math.pi) * np.asarray(z, dtype=float)
        + 2 * p.mu * math.log(2 * math.sin(p.theta))
        - math.log(2 * math.pi)
        - ln_gamma_real(2 * p.mu)
    )


def mp_weight(p, z):
    """Normalized MP weight ``ρ(z)``, assembled in log space."""
    out = np.exp(_log_mp_weight(p, z))
    return float(out) if np.ndim(out) == 0 else out


def mp_scattering(p, z):
    """Scattering amplitude and phase shift of the large-degree asymptotics.

    The amplitude is the envelope ``A`` in ``P_n ≈ n^{-1/2} A cos(nθ + δ + ...)``
    and satisfies ``ρ(z) A(z)^2 = 2/π``. The phase is ``arg Γ(μ + iz)`` on the
    continuous branch.
    """
    lg = ln_gamma_complex(complex(p.mu, z))
    log_amp = (
        math.log(2.0)
        + 0.5 * ln_gamma_real(2 * p.mu)
        + (0.5 * math.pi - p.theta) * z
        - p.mu * math.log(2 * math.sin(p.theta))
        - lg.real
    )
    return math.exp(log_amp), lg.imag


def mp_asymptotic(p, z, n):
    """Large-``n`` approximation of the orthonormal MP polynomial.

    Keeps the ``z ln(2n sinθ)`` phase drift. ``n`` may be an integer array.
    """
    n = np.asarray(n, dtype=float)
    if np.any(n < 1):
        raise DomainError("mp_asymptotic requires n >= 1")
    amp, phase = mp_scattering(p, z)
    arg = (
        n * p.theta
        + phase
        - p.mu * (0.5 * math.pi - p.theta)
        - z * np.log(2 * n * math.sin(p.theta))
    )
    out = amp * n ** -0.5 * np.cos(arg)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# discrete Meixner


def meixner_eval(p, m, nmax):
    """Orthonormal Meixner polynomials ``M_0(m) .. M_nmax(m)`` from 2F1.

    The series alternates with growing terms once ``m`` is large, so it is
    summed exactly.
    """
    if m < 0 or nmax < 0:
        raise DomainError("meixner_eval requires m >= 0 and nmax >= 0")
    x = 1.0 - 1.0 / p.beta
    out = np.empty(nmax + 1)
    for n in range(nmax + 1):
        f = hyp2f1_terminating(n, -m, 2 * p.mu, x, exact=True).real
        out[n] = _sqrt_norm(2 * p.mu, n) * p.beta ** (n / 2) * f
    return out


def meixner_eval_recursion(p, m, nmax):
    """Same values as :func:`meixner_eval`, from the three-term recurrence.

    ``m`` may be an array of nonnegative lattice points.
    """
    m = np.asarray(m, dtype=float)
    beta, mu = p.beta, p.mu
    out = np.empty((nmax + 1,) + m.shape)
    out[0] = 1.0
    prev = np.zeros(m.shape)
    for n in range(nmax):
        diag = (beta - 1) * m + n * (1 + beta) + 2 * mu * beta
        lower = math.sqrt(n * (n + 2 * mu - 1) * beta)
        upper = math.sqrt((n + 1) * (n + 2 * mu) * beta)
        out[n + 1] = (diag * out[n] - lower * prev) / upper
        prev = out[n]
    return out


def meixner_recursion_residual(p, m, seq):
    """Per-degree residual of the Meixner recurrence for ``seq = M_0..M_nmax``.

    Entry ``n`` checks the relation at degree ``n`` for ``1 <= n < nmax``
    (``n = 0`` uses the two-term form), scaled by the largest of 1 and the
    magnitudes of the three values entering the relation.
    """
    beta, mu = p.beta, p.mu
    res = []
    for n in range(len(seq) - 1):
        lhs = (beta - 1) * m * seq[n]
        rhs = -(n * (1 + beta) + 2 * mu * beta) * seq[n] + math.sqrt(
            (n + 1) * (n + 2 * mu) * beta
        ) * seq[n + 1]
        if n > 0:
            rhs += math.sqrt(n * (n + 2 * mu - 1) * beta) * seq[n - 1]
        res.append(abs(lhs - rhs) / _scale(seq, n))
    return np.array(res)


def _scale(seq, n):
    return max(1.0, *(abs(seq[j]) for j in (n - 1, n, n + 1) if 0 <= j < len(seq)))


def _log_meixner_weight(p, m):
    m = np.asarray(m, dtype=float)
    lg = np.vectorize(math.lgamma)
    return (
        2 * p.mu * math.log1p(-p.beta)
        + m * math.log(p.beta)
        + lg(m + 2 * p.mu)
        - math.lgamma(2 * p.mu)
        - lg(m + 1)
    )


def meixner_weight(p, m):
    """Negative-binomial weight ``(1-β)^{2μ} β^m (2μ)_m / m!``."""
    if np.any(np.asarray(m) < 0):
        raise DomainError("meixner_weight requires m >= 0")
    out = np.exp(_log_meixner_weight(p, m))
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# Krawtchouk


def _log_binom(N, k):
    return math.lgamma(N + 1) - math.lgamma(k + 1) - math.lgamma(N - k + 1)


def krawtchouk_eval(p, m, n):
    """Orthonormal Krawtchouk polynomial ``K_n(m)`` on ``{0, ..., N}``."""
    p.check_index(m, "m")
    p.check_index(n, "n")
    g = p.gamma
    f = hyp2f1_terminating(n, -m, -p.N, 1.0 / g, exact=True).real
    scale = math.exp(0.5 * (_log_binom(p.N, n) + n * (math.log(g) - math.log1p(-g))))
    return scale * f


def krawtchouk_sequence(p, m):
    """``K_0(m) .. K_N(m)`` as an array."""
    return np.array([krawtchouk_eval(p, m, n) for n in range(p.N + 1)])


def krawtchouk_recursion_residual(p, m, seq):
    """Residual of the Krawtchouk recurrence at every degree ``0..N``.

    ``m K_n = [Nγ + n(1-2γ)] K_n - c_{n-1} K_{n-1} - c_n K_{n+1}`` with
    ``c_n = sqrt((n+1)(N-n) γ(1-γ))``; ``c_N = 0`` closes the recurrence.
    Scaled like :func:`meixner_recursion_residual`.
    """
    N, g = p.N, p.gamma
    res = []
    for n in range(N + 1):
        rhs = (N * g + n * (1 - 2 * g)) * seq[n]
        if n > 0:
            rhs -= math.sqrt(n * (N - n + 1) * g * (1 - g)) * seq[n - 1]
        if n < N:
            rhs -= math.sqrt((n + 1) * (N - n) * g * (1 - g)) * seq[n + 1]
        res.append(abs(m * seq[n] - rhs) / _scale(seq, n))
    return np.array(res)


def krawtchouk_weight(p, m):
    """Binomial weight ``C(N, m) γ^m (1-γ)^{N-m}``."""
    p.check_index(m, "m")
    g = p.gamma
    return math.comb(p.N, m) * g**m * (1 - g) ** (p.N - m)


# ---------------------------------------------------------------------------
# orthogonality checks


def _deviation(G):
    return float(np.max(np.abs(G - np.eye(len(G)))))


def _mp_cutoff(p, nmax, spec, direction):
    z = 0.0
    while True:
        z += direction * spec.panel_width
        if abs(z) > spec.z_max_limit:
            raise AccuracyError("weight tail did not decay below tail_tol", abs(z))
        P = mp_eval_recursion(p, z, nmax)
        if mp_weight(p, z) * float(np.max(P**2)) < spec.tail_tol:
            return z


def _mp_panels(p, nmax, spec, lo, hi, nodes_per_panel):
    """Per-panel Gram contributions over ``[lo, hi]``."""
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = np.arange(lo, hi + 0.5 * spec.panel_width, spec.panel_width)
    half = 0.5 * spec.panel_width
    contributions = []
    for a in edges[:-1]:
        zs = a + half * (x + 1.0)
        wz = half * w * mp_weight(p, zs)
        P = mp_eval_recursion(p, zs, nmax)
        contributions.append((P * wz) @ P.T)
    return contributions


def gram_continuous(p, nmax, quad=None):
    """Gram matrix of ``P_0..P_nmax`` against the continuous MP weight.

    Raises
    ------
    AccuracyError
        When the estimated quadrature error plus tail bound exceeds
        ``quad.tol``.
    """
    quad = quad or QuadratureSpec()
    lo = _mp_cutoff(p, nmax, quad, -1.0)
    hi = _mp_cutoff(p, nmax, quad, +1.0)
    coarse = sum(_mp_panels(p, nmax, quad, lo, hi, quad.nodes_per_panel))
    fine = sum(_mp_panels(p, nmax, quad, lo, hi, 2 * quad.nodes_per_panel))
    bound = float(np.max(np.abs(fine - coarse))) + 2 * quad.tail_tol
    if bound > quad.tol:
        raise AccuracyError("continuous Gram quadrature did not converge", bound)
    return GramResult(fine, _deviation(fine), bound)


def gram_discrete_meixner(p, nmax, tail_tol=1e-14, m_limit=100000):
    """Gram matrix of ``M_0..M_nmax`` from the truncated lattice sum.

    Summation stops once the largest weighted square ``ω_m M_n(m)^2`` is both
    decreasing and small enough that a geometric tail bound stays under
    ``tail_tol``.
    """
    chunk = 64
    start = 0
    G = np.zeros((nmax + 1, nmax + 1))
    prev_last = math.inf
    while start < m_limit:
        ms = np.arange(start, start + chunk)
        M = meixner_eval_recursion(p, ms, nmax)
        w = meixner_weight(p, ms)
        G += (M * w) @ M.T
        G = 0.5 * (G + G.T)
        terms = w * np.max(M**2, axis=0)
        ratio = terms[-1] / terms[-2] if terms[-2] > 0 else 0.0
        if terms[-1] < prev_last and ratio < 1:
            tail = terms[-1] * ratio / (1 - ratio)
            if tail < tail_tol and terms[-1] < tail_tol:
                return GramResult(G, _deviation(G), tail)
        prev_last = terms[-1]
        start += chunk
    raise AccuracyError("Meixner lattice sum did not reach tail tolerance", float(terms[-1]))


def gram_discrete_krawtchouk(p):
    """Exact finite-sum Gram matrix of ``K_0..K_N``."""
    K = np.array([krawtchouk_sequence(p, m) for m in range(p.N + 1)]).T
    w = np.array([krawtchouk_weight(p, m) for m in range(p.N + 1)])
    G = (K * w) @ K.T
    G = 0.5 * (G + G.T)
    return GramResult(G, _deviation(G), 0.0)
