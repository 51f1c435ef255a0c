"""Symmetric tridiagonal matrices and eigensolvers.

The standard symmetric problem is solved by Householder reduction to
tridiagonal form followed by the implicit-shift QL iteration. The generalized
problem ``A v = ε B v`` with ``B`` positive definite and tridiagonal is reduced
to a standard one with the bidiagonal Cholesky factor of ``B``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DefinitenessError, DomainError

__all__ = [
    "SymTridiag",
    "EigenResult",
    "tridiagonalize",
    "ql_implicit",
    "dense_sym_eigensolve",
    "sym_eigensolve",
    "cholesky_tridiag",
    "generalized_eigensolve",
]

MAX_SWEEPS = 50
SIGN_THRESHOLD = 1e-12
SAFE_MIN = np.finfo(float).tiny


@dataclass(frozen=True)
class SymTridiag:
    """Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.array(self.diag, dtype=float).reshape(-1)
        e = np.array(self.offdiag, dtype=float).reshape(-1)
        if len(d) == 0:
            raise DomainError("SymTridiag needs at least one diagonal entry")
        if len(e) != len(d) - 1:
            raise DomainError(f"offdiag length {len(e)} does not match diag length {len(d)}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise DomainError("SymTridiag entries must be finite")
        d.flags.writeable = False
        e.flags.writeable = False
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self):
        return len(self.diag)

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def matvec(self, v):
        v = np.asarray(v, dtype=float)
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def norm_inf(self):
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.offdiag)
        row[1:] += np.abs(self.offdiag)
        return float(np.max(row))

    def scaled(self, c):
        return SymTridiag(c * self.diag, c * self.offdiag)


@dataclass(frozen=True)
class EigenResult:
    """Sorted eigenpairs with residual diagnostics.

    ``eigenvectors[i]`` belongs to ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_norms: np.ndarray
    b_orthogonality_defect: float


def tridiagonalize(a):
    """Householder reduction of a dense symmetric matrix.

    Returns ``(d, e, Q)`` with ``Q.T @ a @ Q`` tridiagonal with diagonal ``d``
    and off-diagonal ``e``.
    """
    A = np.array(a, dtype=float)
    n = len(A)
    Q = np.eye(n)
    for k in range(n - 2):
        x = A[k + 1 :, k]
        norm = np.linalg.norm(x)
        if norm == 0.0 or np.all(x[1:] == 0.0):
            continue
        v = x.copy()
        v[0] += math.copysign(norm, x[0])
        v /= np.linalg.norm(v)
        A[k + 1 :, :] -= 2.0 * np.outer(v, v @ A[k + 1 :, :])
        A[:, k + 1 :] -= 2.0 * np.outer(A[:, k + 1 :] @ v, v)
        Q[:, k + 1 :] -= 2.0 * np.outer(Q[:, k + 1 :] @ v, v)
    return np.diag(A).copy(), np.diag(A, 1).copy(), Q


def ql_implicit(d, e, z=None, max_sweeps=MAX_SWEEPS):
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix.

    ``z`` is the matrix whose columns are rotated along with the iteration
    (identity when omitted), so on return its columns are the eigenvectors
    of ``z @ T @ z.T``. Eigenvalues are returned unsorted.

    Raises
    ------
    ConvergenceError
        If one eigenvalue needs more than ``max_sweeps`` QL sweeps.
    """
    d = np.array(d, dtype=float)
    n = len(d)
    e = np.append(np.array(e, dtype=float), 0.0)
    z = np.eye(n) if z is None else np.array(z, dtype=float)
    for l in range(n):  # noqa: E741
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd or abs(e[m]) < SAFE_MIN:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                raise ConvergenceError(f"QL iteration did not converge for eigenvalue {l}")
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi = z[:, i].copy()
                z[:, i] = c * zi - s * z[:, i + 1]
                z[:, i + 1] = s * zi + c * z[:, i + 1]
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, z


def _fix_signs(vectors):
    # rows are vectors
    for v in vectors:
        for x in v:
            if abs(x) > SIGN_THRESHOLD:
                if x < 0:
                    v *= -1.0
                break
    return vectors


def _sorted_pairs(values, columns):
    order = np.argsort(values, kind="stable")
    return values[order], _fix_signs(columns[:, order].T.copy())


def dense_sym_eigensolve(a):
    """Eigenvalues (ascending) and eigenvector rows of a dense symmetric matrix."""
    d, e, Q = tridiagonalize(a)
    values, vecs = ql_implicit(d, e, Q)
    return _sorted_pairs(values, vecs)


def sym_eigensolve(A):
    """Full eigendecomposition of a :class:`SymTridiag`."""
    values, vecs = ql_implicit(A.diag, A.offdiag)
    values, vectors = _sorted_pairs(values, vecs)
    residuals = np.array([np.max(np.abs(A.matvec(v) - lam * v)) for lam, v in zip(values, vectors)])
    gram = vectors @ vectors.T
    return EigenResult(values, vectors, residuals, _orthogonality_defect(gram))


def _orthogonality_defect(gram):
    return float(np.max(np.abs(gram - np.eye(len(gram)))))


def cholesky_tridiag(B):
    """Bidiagonal Cholesky factor ``L`` of a positive definite :class:`SymTridiag`.

    Returns the diagonal and sub-diagonal of ``L``.

    Raises
    ------
    DefinitenessError
        Naming the first nonpositive pivot.
    """
    n = B.size
    ld = np.empty(n)
    ls = np.empty(n - 1)
    pivot = B.diag[0]
    for i in range(n):
        if i > 0:
            ls[i - 1] = B.offdiag[i - 1] / ld[i - 1]
            pivot = B.diag[i] - ls[i - 1] ** 2
        if not pivot > 0:
            raise DefinitenessError(i, float(pivot))
        ld[i] = math.sqrt(pivot)
    return ld, ls


def _forward(ld, ls, X):
    # solve L Y = X for lower bidiagonal L, row by row
    Y = np.empty_like(X)
    Y[0] = X[0] / ld[0]
    for i in range(1, len(ld)):
        Y[i] = (X[i] - ls[i - 1] * Y[i - 1]) / ld[i]
    return Y


def _backward(ld, ls, X):
    # solve L^T Y = X
    n = len(ld)
    Y = np.empty_like(X)
    Y[n - 1] = X[n - 1] / ld[n - 1]
    for i in range(n - 2, -1, -1):
        Y[i] = (X[i] - ls[i] * Y[i + 1]) / ld[i]
    return Y


def generalized_eigensolve(A, B):
    """Solve ``A v = ε B v`` for symmetric tridiagonal ``A`` and SPD tridiagonal ``B``.

    With ``B = L L^T`` the pencil is congruent to the dense symmetric matrix
    ``C = L^{-1} A L^{-T}``. Its eigenvectors ``u`` map back to ``v = L^{-T} u``,
    which are ``B``-orthonormal.
    """
    if A.size != B.size:
        raise DomainError(f"matrix sizes differ: {A.size} vs {B.size}")
    ld, ls = cholesky_tridiag(B)
    X = _forward(ld, ls, A.to_dense())
    C = _forward(ld, ls, X.T.copy())
    C = 0.5 * (C + C.T)
    values, U = dense_sym_eigensolve(C)
    V = _fix_signs(_backward(ld, ls, U.T.copy()).T.copy())
    residuals = np.array(
        [np.max(np.abs(A.matvec(v) - lam * B.matvec(v))) for lam, v in zip(values, V)]
    )
    gram = np.array([[u @ B.matvec(v) for v in V] for u in V])
    return EigenResult(values, V, residuals, _orthogonality_defect(gram))
