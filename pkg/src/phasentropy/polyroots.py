"""Characteristic polynomials from power sums and real-root isolation.

Newton's identities turn the power sums ``p_k = Tr rho**k`` into the
elementary symmetric polynomials ``e_k`` of the eigenvalues, hence into the
monic characteristic polynomial.  Its roots are all real, so each root of
the polynomial is bracketed by consecutive roots of the derivative (found
recursively) and located by bisection.
"""
from __future__ import annotations

import numpy as np

from .errors import NumericalError

__all__ = [
    "elementary_from_power_sums",
    "charpoly_from_power_sums",
    "real_roots",
]


def elementary_from_power_sums(power_sums) -> np.ndarray:
    """``[e_0, e_1, ..., e_r]`` from ``[p_1, ..., p_r]``.

    Uses ``k e_k = sum_{i=1..k} (-1)**(i-1) e_{k-i} p_i``.
    """
    p = np.asarray(power_sums, dtype=float).ravel()
    e = np.zeros(p.size + 1)
    e[0] = 1.0
    for k in range(1, p.size + 1):
        total = 0.0
        for i in range(1, k + 1):
            total += (-1) ** (i - 1) * e[k - i] * p[i - 1]
        e[k] = total / k
    return e


def charpoly_from_power_sums(power_sums) -> np.ndarray:
    """Monic characteristic polynomial, highest power first:
    ``x**r - e_1 x**(r-1) + e_2 x**(r-2) - ...``."""
    e = elementary_from_power_sums(power_sums)
    signs = (-1.0) ** np.arange(e.size)
    return signs * e


_WIDTH = 2.0 * np.finfo(float).eps
CLUSTER_TOL = 1e-5


def _horner(c: np.ndarray, x: float) -> float:
    acc = 0.0
    for coef in c:
        acc = acc * x + coef
    return acc


def _bisect(c: np.ndarray, a: float, b: float, fa: float, max_iter: int) -> float:
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b or b - a <= _WIDTH * max(1.0, abs(mid)):
            return mid
        fm = _horner(c, mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    raise NumericalError(f"bisection did not converge in {max_iter} iterations")


def real_roots(
    coeffs,
    lo: float = -0.05,
    hi: float = 1.05,
    *,
    strict: bool = True,
    residual_tol: float = 1e-10,
    max_iter: int = 200,
) -> np.ndarray:
    """All roots, with multiplicity, of a polynomial whose roots lie in ``[lo, hi]``.

    ``coeffs`` is highest power first.  Returns the roots sorted descending.
    With ``strict`` a bracket without a sign change whose best endpoint does
    not vanish (a complex pair in disguise) raises :class:`NumericalError`;
    otherwise that endpoint is accepted as the nearest real approximation.
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "f")
    if c.size == 0:
        raise NumericalError("zero polynomial has no isolated roots")
    c = c / c[0]
    n = c.size - 1
    if n == 0:
        return np.empty(0)
    if n == 1:
        return np.array([-c[1]])

    deriv = c[:-1] * np.arange(n, 0, -1) / n
    crit = real_roots(deriv, lo, hi, strict=False, residual_tol=residual_tol, max_iter=max_iter)
    crit = np.clip(np.sort(crit), lo, hi)
    points = np.concatenate([[lo], crit, [hi]])
    values = [_horner(c, x) for x in points]

    roots = []
    for a, b, fa, fb in zip(points[:-1], points[1:], values[:-1], values[1:]):
        if fa == 0.0:
            roots.append(a)
        elif fb == 0.0:
            roots.append(b)
        elif (fa < 0) != (fb < 0):
            roots.append(_bisect(c, a, b, fa, max_iter))
        else:
            x, fx = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
            if strict and abs(fx) > residual_tol:
                raise NumericalError(
                    f"no real root in [{a:.6g}, {b:.6g}] (|p| = {abs(fx):.3g}); "
                    "polynomial does not have all-real roots in range"
                )
            roots.append(x)
    return _recentre_clusters(c, np.sort(np.array(roots))[::-1], max_iter)


def _recentre_clusters(c: np.ndarray, roots: np.ndarray, max_iter: int) -> np.ndarray:
    # A cluster of m nearly equal roots is resolved only to about eps**(1/m),
    # but its mean is a simple root of the (m-1)-th derivative (up to the
    # cluster spread squared), so shift the cluster onto that point.
    out = roots.copy()
    i = 0
    while i < out.size:
        j = i + 1
        while j < out.size and out[j - 1] - out[j] <= CLUSTER_TOL:
            j += 1
        m = j - i
        if m >= 2:
            lo = out[j - 1] - CLUSTER_TOL
            hi = out[i] + CLUSTER_TOL
            der = np.polyder(c, m - 1)
            flo, fhi = _horner(der, lo), _horner(der, hi)
            if (flo < 0) != (fhi < 0):
                centre = _bisect(der, lo, hi, flo, max_iter)
                out[i:j] += centre - out[i:j].mean()
        i = j
    return out
