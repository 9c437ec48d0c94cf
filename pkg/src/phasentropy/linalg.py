"""Cyclic Jacobi diagonalisation used as the independent eigenvalue oracle.

A complex Hermitian ``H = A + iB`` is embedded as the real symmetric matrix
``[[A, -B], [B, A]]`` whose spectrum is that of ``H`` with every eigenvalue
doubled.  Plane rotations are applied sweep by sweep until the off-diagonal
Frobenius norm drops below ``tol``.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InvalidStateError, NumericalError

__all__ = ["jacobi_eigvalsh", "hermitian_eigvalsh", "real_embedding"]


def real_embedding(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=np.complex128)
    a, b = h.real, h.imag
    return np.block([[a, -b], [b, a]])


def _off_norm(m: np.ndarray) -> float:
    off = m - np.diag(np.diag(m))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigvalsh(m: np.ndarray, tol: float = 1e-13, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, descending."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise InvalidStateError("matrix must be square")
    if np.abs(a - a.T).max(initial=0.0) > 1e-12:
        raise InvalidStateError("matrix must be symmetric")
    a = (a + a.T) / 2
    for _ in range(max_sweeps):
        if _off_norm(a) < tol:
            return np.sort(np.diag(a))[::-1].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                diff = a[q, q] - a[p, p]
                if abs(apq) <= 1e-18 * (abs(a[p, p]) + abs(a[q, q])) or abs(apq) < 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                if abs(diff) > 1e150 * abs(apq):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    raise NumericalError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def hermitian_eigvalsh(h: np.ndarray, tol: float = 1e-13) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix, descending."""
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidStateError("matrix must be square")
    if np.abs(h - h.conj().T).max(initial=0.0) > 1e-12:
        raise InvalidStateError("matrix must be Hermitian")
    doubled = jacobi_eigvalsh(real_embedding(h), tol=tol)
    # eigenvalues come in equal pairs; average each pair
    return doubled.reshape(-1, 2).mean(axis=1)
