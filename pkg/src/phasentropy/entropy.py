"""Closed-form and reconstruction routes to the von Neumann entropy.

Routes implemented here:

* qubits, any number of states: entropy as a function of the perimeter
  (:func:`entropy_2d`) or of the prior-weighted perimeter
  (:func:`entropy_2d_unequal`);
* three states in any dimension: cubic coefficients from the overlap sum Q
  and the unscaled ``V cos gamma``, solved trigonometrically
  (:func:`cubic_coefficients_3states`, :func:`solve_cubic`), or equivalently
  after a Gram-Schmidt reduction to a 3x3 matrix (:func:`gram_schmidt_reduce`);
* N states in three dimensions (:func:`cubic_coefficients_Nstates_3d`),
  which needs the *scaled* ``V cos gamma`` of every triple;
* any ensemble: traces of powers of rho up to its rank, Newton's identities
  and real-root isolation (:func:`entropy_general_d`).

:func:`entropy_oracle` diagonalises rho by Jacobi rotations and shares no
code with the routes above.  Natural logarithms throughout.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import NamedTuple

import numpy as np

from .ensemble import (
    DensityMatrix,
    Ensemble,
    as_density,
    as_state,
    density_from_ensemble,
    mixture_coherence,
    overlap_Q,
    perimeter,
    perimeter_tilde,
)
from .errors import (
    DegenerateEnsembleError,
    DimensionMismatchError,
    DomainError,
    InvalidEnsembleError,
    InvalidSpectrumError,
    NumericalError,
    UnsupportedEnsembleError,
)
from .geometric_phase import PhaseConvention, bargmann, gamma_sum
from .linalg import hermitian_eigvalsh
from .polyroots import charpoly_from_power_sums, real_roots

__all__ = [
    "Spectrum",
    "CubicCoefficients",
    "RankDeficientWarning",
    "entropy_from_eigs",
    "entropy_2d",
    "entropy_2d_unequal",
    "cubic_coefficients_3states",
    "cubic_coefficients_Nstates_3d",
    "solve_cubic",
    "gram_schmidt_reduce",
    "entropy_from_power_sums",
    "entropy_general_d",
    "entropy_oracle",
    "perimeter_from_gamma_2d",
    "entropy_closed_form",
]

EIG_TOL = 1e-10
ARCCOS_CLAMP = 1e-9
GRAM_DET_TOL = 1e-12


class RankDeficientWarning(UserWarning):
    """The three states span fewer than three dimensions."""


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted in descending order."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        ev = np.sort(np.asarray(self.eigenvalues, dtype=float).ravel())[::-1].copy()
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)

    def __len__(self) -> int:
        return self.eigenvalues.size

    def __iter__(self):
        return iter(self.eigenvalues.tolist())

    def __array__(self, dtype=None, copy=None):
        return self.eigenvalues if dtype is None else self.eigenvalues.astype(dtype)


@dataclass(frozen=True)
class CubicCoefficients:
    """Monic cubic ``x**3 + A x**2 + B x + C``."""

    A: float
    B: float
    C: float


def entropy_from_eigs(s) -> float:
    """``-sum x ln x`` with ``0 ln 0 = 0``.

    Eigenvalues must lie in ``[-1e-10, 1 + 1e-10]`` and sum to one within
    1e-10; tiny negatives are clamped to zero.
    """
    x = np.asarray(s.eigenvalues if isinstance(s, Spectrum) else s, dtype=float).ravel()
    if x.size == 0:
        raise InvalidSpectrumError("empty spectrum")
    if not np.all(np.isfinite(x)):
        raise InvalidSpectrumError("spectrum contains non-finite values")
    if x.min() < -EIG_TOL or x.max() > 1 + EIG_TOL:
        raise InvalidSpectrumError(f"eigenvalues outside [0, 1]: {x}")
    if abs(x.sum() - 1.0) > EIG_TOL:
        raise InvalidSpectrumError(f"eigenvalues sum to {x.sum()!r}, not 1")
    x = np.clip(x, 0.0, 1.0)
    x = x[x > 0]
    return float(-np.sum(x * np.log(x))) + 0.0  # no negative zero


def _two_level_entropy(nn: float) -> float:
    r = math.sqrt(min(max(nn, 0.0), 1.0))
    return entropy_from_eigs([(1 + r) / 2, (1 - r) / 2])


def entropy_2d(P: float, t: int) -> float:
    """Qubit ensemble of ``t`` equiprobable states with perimeter ``P``.

    Eigenvalues are ``(1 +- sqrt((t**2 - P) / t**2)) / 2``.
    """
    if t < 1:
        raise DomainError("need at least one state")
    if P < -EIG_TOL or P > t * t * (1 + EIG_TOL):
        raise DomainError(f"perimeter {P!r} outside [0, {t * t}]")
    return _two_level_entropy((t * t - P) / (t * t))


def entropy_2d_unequal(P_tilde: float, priors) -> float:
    """Qubit ensemble with priors ``p`` via ``n.n = t sum p**2 - P_tilde``."""
    p = np.asarray(priors, dtype=float).ravel()
    if p.size < 1 or np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise InvalidEnsembleError("priors must be non-negative and sum to one")
    nn = p.size * float(p @ p) - P_tilde
    if nn < -EIG_TOL or nn > 1 + EIG_TOL:
        raise DomainError(f"inconsistent inputs: n.n = {nn!r} outside [0, 1]")
    return _two_level_entropy(nn)


def cubic_coefficients_3states(e: Ensemble) -> CubicCoefficients:
    """Characteristic cubic of a three-state ensemble of any dimension.

    Equal priors::

        A = -1,  B = (3 - Q) / 9,  C = (-1 + Q - 2v) / 27

    Unequal priors::

        B = sum_{i<j} p_i p_j (1 - |<i|j>|**2),  C = p1 p2 p3 (-1 + Q - 2v)

    with ``v = Re Tr(rho1 rho2 rho3)`` (unscaled convention).
    """
    if len(e) != 3:
        raise UnsupportedEnsembleError(f"need exactly three states, got {len(e)}")
    Q = overlap_Q(e)
    v = bargmann(*e.states).v_cos_gamma
    if e.is_uniform:
        return CubicCoefficients(-1.0, (3.0 - Q) / 9.0, (-1.0 + Q - 2.0 * v) / 27.0)
    p = e.probabilities
    g2 = np.abs(e.gram()) ** 2
    B = sum(p[i] * p[j] * (1.0 - g2[i, j]) for i, j in combinations(range(3), 2))
    C = p[0] * p[1] * p[2] * (-1.0 + Q - 2.0 * v)
    return CubicCoefficients(-1.0, float(B), float(C))


def cubic_coefficients_Nstates_3d(e: Ensemble) -> CubicCoefficients:
    """Characteristic cubic of N equiprobable qutrit states.

    ``C = n.n/9 - 1/27 - 2/(9N**3) Gamma + 2/(9N**3) (C(N,3) + (N-3)(N(N-1) - P) - N/3)``
    where ``Gamma`` sums the *scaled* ``V cos gamma`` over all triples.
    """
    if e.dim != 3:
        raise DimensionMismatchError(f"needs qutrit states, got d={e.dim}")
    if len(e) < 3:
        raise DegenerateEnsembleError("needs at least three states")
    if not e.is_uniform:
        raise UnsupportedEnsembleError("N-state coefficients need equal priors")
    N = len(e)
    n = mixture_coherence(e)
    nn = n.dot(n)
    P = perimeter(e)
    gamma = gamma_sum(e, PhaseConvention.SCALED)
    k = 2.0 / (9.0 * N ** 3)
    C = nn / 9.0 - 1.0 / 27.0 - k * gamma + k * (comb(N, 3) + (N - 3) * (N * (N - 1) - P) - N / 3.0)
    return CubicCoefficients(-1.0, (1.0 - nn) / 3.0, float(C))


def solve_cubic(c: CubicCoefficients) -> Spectrum:
    """Trigonometric solution for a cubic with three real roots::

        R = (9AB - 27C - 2A**3) / 54,  T = (3B - A**2) / 9
        theta = arccos(R / sqrt(-T**3))
        x_m = 2 sqrt(-T) cos((theta + 2 pi (m-1)) / 3) - A/3
    """
    A, B, C = c.A, c.B, c.C
    R = (9 * A * B - 27 * C - 2 * A ** 3) / 54.0
    T = (3 * B - A * A) / 9.0
    if T > 1e-14:
        raise NumericalError(f"T = {T!r} > 0: cubic has no trigonometric real-root form")
    if -T <= 1e-14:
        return Spectrum(np.full(3, -A / 3.0))
    ratio = R / math.sqrt(-T ** 3)
    if abs(ratio) > 1.0:
        # near-degenerate roots: the spread 2 sqrt(-T) bounds the damage
        if abs(ratio) > 1.0 + ARCCOS_CLAMP and math.sqrt(-T) > 1e-6:
            raise NumericalError(f"arccos argument {ratio!r} outside [-1, 1]")
        ratio = math.copysign(1.0, ratio)
    theta = math.acos(ratio)
    amp = 2.0 * math.sqrt(-T)
    roots = [amp * math.cos((theta + 2.0 * math.pi * m) / 3.0) - A / 3.0 for m in range(3)]
    return Spectrum(roots)


class GramSchmidtReduction(NamedTuple):
    rho3: DensityMatrix
    Q: float
    v: float


def gram_schmidt_reduce(psi_a, psi_b, psi_c, priors=None) -> GramSchmidtReduction:
    """Express the three-state mixture in the orthonormal basis obtained by
    Gram-Schmidt on ``(a, b, c)``.

    Returns the 3x3 matrix, the overlap sum Q and
    ``v = Re <a|c><c|b><b|a>``.  If the Gram determinant is below 1e-12 the
    weakest direction is dropped (the block is zero-padded) and a
    :class:`RankDeficientWarning` is issued.
    """
    states = [as_state(s) for s in (psi_a, psi_b, psi_c)]
    if len({s.dim for s in states}) != 1:
        raise DimensionMismatchError("states must share one dimension")
    p = np.full(3, 1.0 / 3.0) if priors is None else np.asarray(priors, dtype=float)
    if p.shape != (3,) or np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
        raise InvalidEnsembleError("need three non-negative priors summing to one")

    def reduce(drop: int | None):
        basis, coords, norms = [], [], []
        for idx, s in enumerate(states):
            c = [np.vdot(v, s.amplitudes) for v in basis]
            r = s.amplitudes.copy()
            for ci, v in zip(c, basis):
                r -= ci * v
            nr = float(np.linalg.norm(r))
            if idx != drop and nr > 0:
                basis.append(r / nr)
                c.append(nr)
            coords.append(c)
            norms.append(nr)
        return coords, norms

    coords, norms = reduce(None)
    a, b, c = (s.amplitudes for s in states)
    gram = np.array([[np.vdot(x, y) for y in (a, b, c)] for x in (a, b, c)])
    if np.linalg.det(gram).real < GRAM_DET_TOL:
        weakest = 1 + int(np.argmin(norms[1:]))
        warnings.warn(
            f"states are linearly dependent; dropped direction of state {weakest}",
            RankDeficientWarning,
            stacklevel=2,
        )
        coords, _ = reduce(weakest)

    rho3 = np.zeros((3, 3), dtype=np.complex128)
    for pj, cj in zip(p, coords):
        vec = np.zeros(3, dtype=np.complex128)
        vec[: len(cj)] = cj
        rho3 += pj * np.outer(vec, vec.conj())
    rho3 = (rho3 + rho3.conj().T) / 2
    rho3 /= np.trace(rho3).real

    ab, bc, ca = np.vdot(a, b), np.vdot(b, c), np.vdot(c, a)
    Q = float(abs(ab) ** 2 + abs(bc) ** 2 + abs(ca) ** 2)
    v = float((np.vdot(a, c) * np.vdot(c, b) * np.vdot(b, a)).real)
    return GramSchmidtReduction(DensityMatrix(rho3), Q, v)


def entropy_from_power_sums(power_sums, *, strict: bool = True) -> tuple[float, Spectrum]:
    """Entropy from ``[Tr rho, Tr rho**2, ..., Tr rho**r]``.

    The eigenvalues are the roots of the characteristic polynomial rebuilt
    by Newton's identities.  ``strict=False`` tolerates noisy traces: roots
    are clipped to ``[0, 1]`` and renormalised.
    """
    coeffs = charpoly_from_power_sums(power_sums)
    roots = real_roots(coeffs, strict=strict)
    if not strict:
        roots = np.clip(roots, 0.0, 1.0)
        total = roots.sum()
        if total <= 0:
            raise NumericalError("reconstructed spectrum is empty")
        roots = roots / total
    spectrum = Spectrum(roots)
    try:
        return entropy_from_eigs(spectrum), spectrum
    except InvalidSpectrumError as exc:
        raise NumericalError(f"reconstructed spectrum is not a density spectrum: {exc}") from None


def _trace_powers(m: np.ndarray, r: int) -> np.ndarray:
    out = np.empty(r)
    power = np.eye(m.shape[0], dtype=m.dtype)
    for k in range(r):
        power = power @ m
        out[k] = np.trace(power).real
    return out


def entropy_general_d(e) -> float:
    """Entropy of any ensemble (or density matrix) from ``Tr rho**k``,
    ``k = 1 .. rank bound``."""
    if isinstance(e, Ensemble):
        rho = density_from_ensemble(e)
        r = min(len(e), e.dim)
    else:
        rho = as_density(e)
        r = rho.dim
    return entropy_from_power_sums(_trace_powers(rho.matrix, r))[0]


def entropy_oracle(rho) -> tuple[float, Spectrum]:
    """Ground truth: Jacobi diagonalisation then ``-sum x ln x``."""
    rho = as_density(rho)
    spectrum = Spectrum(hermitian_eigvalsh(rho.matrix))
    return entropy_from_eigs(spectrum), spectrum


def perimeter_from_gamma_2d(t: int, Gamma_scaled: float) -> float:
    """Qubit perimeter from the sum of scaled ``V cos gamma`` over triples::

        P = t(t-1) + 2 C(t,3) / (t-2) - 2 Gamma / (t-2)
    """
    if t < 3:
        raise DomainError("needs at least three states")
    return t * (t - 1) + 2.0 * comb(t, 3) / (t - 2) - 2.0 * Gamma_scaled / (t - 2)


def entropy_closed_form(e: Ensemble) -> tuple[str, float] | None:
    """Entropy by the most specific closed form applicable to ``e``.

    Returns ``(route, S)`` or None when no closed form covers the ensemble.
    """
    t = len(e)
    if t == 1:
        return "pure", 0.0
    if e.dim == 2:
        if e.is_uniform:
            return "perimeter-2d", entropy_2d(perimeter(e), t)
        return "perimeter-tilde-2d", entropy_2d_unequal(perimeter_tilde(e), e.probabilities)
    if t == 3:
        return "cubic-3-states", entropy_from_eigs(solve_cubic(cubic_coefficients_3states(e)))
    if t > 3 and e.dim == 3 and e.is_uniform:
        return "cubic-N-states-3d", entropy_from_eigs(solve_cubic(cubic_coefficients_Nstates_3d(e)))
    return None
