"""Bargmann invariants, discrete geometric phase and visibility.

For three pure states the Bargmann invariant ``Tr(rho_i rho_j rho_k)`` equals
``V exp(i gamma)``: its modulus is the visibility and its argument the
geometric phase.  The coherence-vector formulas produce the same phase but
their "denominator" is ``d**2`` times ``V cos gamma``.  The two
normalisations are kept apart through :class:`PhaseConvention`::

    UNSCALED:  V cos gamma = Re Tr(rho_i rho_j rho_k)
    SCALED:    V cos gamma = d**2 Re Tr(rho_i rho_j rho_k)

Nothing here picks a convention silently.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .ensemble import CoherenceVector, Ensemble, as_state
from .errors import DegenerateEnsembleError, DimensionMismatchError, InvalidStateError
from .su_basis import GeneratorBasis, gellmann_basis

__all__ = [
    "PhaseConvention",
    "BargmannInvariant",
    "bargmann",
    "phase_2d_coherence",
    "phase_3d_coherence",
    "gamma_sum",
    "triple_invariants",
]

UNDEFINED_PHASE_TOL = 1e-12
UNIT_TOL = 1e-10


class PhaseConvention(enum.Enum):
    UNSCALED = "unscaled"
    SCALED = "scaled"

    def factor(self, d: int) -> float:
        return float(d * d) if self is PhaseConvention.SCALED else 1.0


@dataclass(frozen=True)
class BargmannInvariant:
    """``value = <i|j><j|k><k|i>``; ``phase`` is None when the visibility
    is below 1e-12 (the argument of zero is meaningless)."""

    value: complex

    @property
    def visibility(self) -> float:
        return abs(self.value)

    @property
    def phase(self) -> float | None:
        if self.visibility < UNDEFINED_PHASE_TOL:
            return None
        return math.atan2(self.value.imag, self.value.real)

    @property
    def v_cos_gamma(self) -> float:
        """Unscaled ``V cos gamma``; well defined even when the phase is not."""
        return self.value.real

    def scaled(self, d: int) -> float:
        return d * d * self.value.real


def bargmann(psi_i, psi_j, psi_k) -> BargmannInvariant:
    a, b, c = (as_state(s) for s in (psi_i, psi_j, psi_k))
    if not a.dim == b.dim == c.dim:
        raise DimensionMismatchError("Bargmann invariant needs states of one dimension")
    return BargmannInvariant(a.inner(b) * b.inner(c) * c.inner(a))


def _unit_components(n, dim: int) -> np.ndarray:
    comps = n.components if isinstance(n, CoherenceVector) else np.asarray(n, dtype=float).ravel()
    if isinstance(n, CoherenceVector) and n.dim != dim:
        raise DimensionMismatchError(f"expected a d={dim} coherence vector, got d={n.dim}")
    if comps.size != dim * dim - 1:
        raise DimensionMismatchError(
            f"expected {dim * dim - 1} components, got {comps.size}"
        )
    norm = np.linalg.norm(comps)
    if abs(norm - 1.0) > UNIT_TOL:
        raise InvalidStateError(f"coherence vector is not a unit vector (|n| = {norm!r})")
    return comps


def _phase(numerator: float, denominator: float, scale: float) -> float | None:
    if math.hypot(numerator, denominator) < scale * UNDEFINED_PHASE_TOL:
        return None
    return math.atan2(numerator, denominator)


def phase_2d_coherence(n1, n2, n3) -> tuple[float | None, float]:
    """Qubit geometric phase from Bloch vectors.

    Returns ``(gamma, v_cos_scaled)`` with ``gamma = atan2(n1 x n2 . n3,
    1 + n1.n2 + n2.n3 + n3.n1)``; the denominator is ``4 Re Tr(rho1 rho2 rho3)``.
    """
    a, b, c = (_unit_components(n, 2) for n in (n1, n2, n3))
    numerator = float(np.cross(a, b) @ c)
    denominator = float(1.0 + a @ b + b @ c + c @ a)
    return _phase(numerator, denominator, 4.0), denominator


def phase_3d_coherence(n1, n2, n3, basis: GeneratorBasis | None = None) -> tuple[float | None, float]:
    """Qutrit geometric phase from Gell-Mann coherence vectors.

    ``gamma = atan2(2 sqrt3 f(n1, n2, n3), |n1 + n2 + n3|**2 + 2 sqrt3 d(n1, n2, n3) - 2)``
    where ``f`` and ``d`` contract the SU(3) structure tensors.  The
    denominator returned as ``v_cos_scaled`` equals ``9 Re Tr(rho1 rho2 rho3)``.
    """
    basis = gellmann_basis() if basis is None else basis
    if basis.dim != 3:
        raise DimensionMismatchError("phase_3d_coherence needs an SU(3) basis")
    a, b, c = (_unit_components(n, 3) for n in (n1, n2, n3))
    wedge = float(np.einsum("i,ijk,j,k->", a, basis.f_tensor, b, c))
    star = math.sqrt(3.0) * float(np.einsum("i,ijk,j,k->", a, basis.d_tensor, b, c))
    s = a + b + c
    denominator = float(s @ s + 2.0 * star - 2.0)
    numerator = 2.0 * math.sqrt(3.0) * wedge
    return _phase(numerator, denominator, 9.0), denominator


def triple_invariants(e: Ensemble) -> dict[tuple[int, int, int], BargmannInvariant]:
    """Bargmann invariant of every unordered triple ``i < j < k``."""
    g = e.gram()
    return {
        (i, j, k): BargmannInvariant(complex(g[i, j] * g[j, k] * g[k, i]))
        for i, j, k in combinations(range(len(e)), 3)
    }


def gamma_sum(e: Ensemble, convention: PhaseConvention) -> float:
    """``sum_{i<j<k} V_ijk cos gamma_ijk`` in the requested convention."""
    if not isinstance(convention, PhaseConvention):
        raise TypeError("convention must be a PhaseConvention")
    if len(e) < 3:
        raise DegenerateEnsembleError("gamma_sum needs at least three states")
    total = sum(b.v_cos_gamma for b in triple_invariants(e).values())
    return convention.factor(e.dim) * total
