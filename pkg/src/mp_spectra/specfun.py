"""Special functions: log-gamma, Pochhammer symbols, terminating 2F1, Laguerre.

Everything here is restricted to what the polynomial families need. In
particular the gamma function is only available on the right half-plane.
"""

import math
from fractions import Fraction

import numpy as np

from .errors import DomainError

__all__ = [
    "ln_gamma_real",
    "ln_gamma_complex",
    "pochhammer",
    "hyp2f1_terminating",
    "laguerre",
    "laguerre_sequence",
]

# Lanczos approximation, g = 7, nine terms (Godfrey's coefficient set).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)


def ln_gamma_real(x):
    """Natural log of the gamma function for real ``x > 0``."""
    if not x > 0:
        raise DomainError(f"ln_gamma_real requires x > 0, got {x!r}")
    return math.lgamma(x)


def _lanczos(w):
    # valid for Re w >= 0.5
    z = w - 1.0
    acc = np.full_like(z, _LANCZOS_COEF[0])
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc = acc + c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LN_2PI + (z + 0.5) * np.log(t) - t + np.log(acc)


def ln_gamma_complex(w):
    """Log-gamma on the right half-plane.

    Returns the branch that is analytic for ``Re w > 0`` and real on the
    positive real axis, so ``Im`` of the result is a continuous ``arg Γ(w)``
    rather than a value wrapped into ``(-π, π]``.

    Parameters
    ----------
    w : complex or array_like of complex
        Arguments with strictly positive real part.

    Returns
    -------
    complex or numpy.ndarray
        Same shape as ``w``.
    """
    arr = np.asarray(w, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError("ln_gamma_complex requires finite arguments")
    if np.any(arr.real <= 0):
        raise DomainError("ln_gamma_complex is only defined here for Re w > 0")
    small = arr.real < 0.5
    out = np.where(small, _lanczos(arr + 1.0) - np.log(arr), _lanczos(arr))
    if out.ndim == 0:
        return complex(out)
    return out


def pochhammer(a, n):
    """Rising factorial ``a (a+1) ... (a+n-1)``, evaluated as a plain product."""
    if n < 0:
        raise DomainError(f"pochhammer requires n >= 0, got {n}")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def _fsum_complex(terms):
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def hyp2f1_terminating(n, b, c, x, exact=False):
    """Terminating Gauss series ``2F1(-n, b; c | x)``.

    Terms are generated from the ratio ``t_{k+1}/t_k``, with the factor
    ``(-n+k)/(c+k)`` formed first so that a negative-integer ``c = -N`` with
    ``n <= N`` (the Krawtchouk case) never divides by zero. The series stops
    as soon as a term vanishes, which also handles ``b = -m`` with ``m < n``.
    Terms are summed with :func:`math.fsum` on each component.

    With ``exact=True`` the inputs are converted to the rationals they
    represent and the whole sum is carried out exactly, leaving only the final
    rounding. Use it where the terms alternate strongly (``|x|`` near 2 and
    large ``n``) and the floating-point sum would lose digits.

    Raises
    ------
    DomainError
        If ``c + k`` vanishes while the series is still running.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"hyp2f1_terminating requires a nonnegative integer n, got {n!r}")
    n = int(n)
    b = complex(b)
    c = complex(c)
    x = complex(x)
    if exact:
        return _hyp2f1_exact(n, b, c, x)
    term = complex(1.0)
    terms = [term]
    for k in range(n):
        if b + k == 0:
            break
        if c + k == 0:
            raise DomainError(f"2F1 denominator (c)_k vanishes at k = {k} before termination")
        term = term * ((-n + k) / (c + k)) * ((b + k) / (k + 1)) * x
        if term == 0:
            break
        terms.append(term)
    return _fsum_complex(terms)


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cdiv(a, b):
    den = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / den, (a[1] * b[0] - a[0] * b[1]) / den)


def _exact(v):
    return (Fraction(v.real), Fraction(v.imag))


def _hyp2f1_exact(n, b, c, x):
    bq, cq, xq = _exact(b), _exact(c), _exact(x)
    term = (Fraction(1), Fraction(0))
    total = term
    for k in range(n):
        if (bq[0] + k, bq[1]) == (0, 0):
            break
        den = (cq[0] + k, cq[1])
        if den == (0, 0):
            raise DomainError(f"2F1 denominator (c)_k vanishes at k = {k} before termination")
        num = _cmul((Fraction(-n + k), Fraction(0)), (bq[0] + k, bq[1]))
        term = _cmul(_cdiv(_cmul(term, num), den), xq)
        term = (term[0] / (k + 1), term[1] / (k + 1))
        if term == (0, 0):
            break
        total = (total[0] + term[0], total[1] + term[1])
    return complex(float(total[0]), float(total[1]))


def laguerre_sequence(nmax, nu, y):
    """Generalized Laguerre polynomials ``L_0^ν(y) ... L_nmax^ν(y)``.

    Upward three-term recurrence in the degree. ``y`` may be an array; the
    result has shape ``(nmax + 1,) + np.shape(y)``.
    """
    if nmax < 0:
        raise DomainError(f"nmax must be >= 0, got {nmax}")
    if not nu > -1:
        raise DomainError(f"Laguerre parameter must satisfy nu > -1, got {nu!r}")
    y = np.asarray(y, dtype=float)
    out = np.empty((nmax + 1,) + y.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = nu + 1.0 - y
    for n in range(1, nmax):
        out[n + 1] = ((2 * n + nu + 1.0 - y) * out[n] - (n + nu) * out[n - 1]) / (n + 1)
    return out


def laguerre(n, nu, y):
    """Generalized Laguerre polynomial ``L_n^ν(y)``."""
    vals = laguerre_sequence(n, nu, y)[n]
    return float(vals) if vals.ndim == 0 else vals
