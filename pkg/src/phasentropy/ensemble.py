"""Pure states, ensembles, density matrices and coherence vectors.

A state of dimension d is written in a generator basis as::

    rho = (I + sqrt(d (d - 1) / 2) * n . lambda) / d

with ``n`` the real (d**2 - 1)-component coherence vector.  Pure states have
``|n| = 1``.  For d >= 3 not every point of the unit ball is a physical state;
:func:`coherence_to_density` does not reject such points.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    DegenerateEnsembleError,
    DimensionMismatchError,
    InvalidEnsembleError,
    InvalidStateError,
)
from .su_basis import GeneratorBasis, basis_for_dim

__all__ = [
    "PureState",
    "Ensemble",
    "DensityMatrix",
    "CoherenceVector",
    "bloch_state",
    "density_from_ensemble",
    "state_to_coherence",
    "coherence_to_density",
    "mixture_coherence",
    "perimeter",
    "perimeter_tilde",
    "overlap_Q",
    "unsquared_P_Q",
    "parse_state_file",
    "load_state_file",
]

NORM_TOL = 1e-12
PROB_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
FILE_NORM_TOL = 1e-6


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm complex amplitude vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=np.complex128).ravel()
        if a.size < 1:
            raise InvalidStateError("state needs at least one amplitude")
        norm = np.linalg.norm(a)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state is not normalised (|psi| = {norm!r})")
        object.__setattr__(self, "amplitudes", _readonly(a))

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        a = np.asarray(amplitudes, dtype=np.complex128).ravel()
        norm = np.linalg.norm(a)
        if norm == 0:
            raise InvalidStateError("zero vector cannot be normalised")
        return cls(a / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def inner(self, other: "PureState") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def as_state(psi) -> PureState:
    return psi if isinstance(psi, PureState) else PureState(psi)


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Sequence of ``(probability, PureState)`` pairs sharing one dimension."""

    probabilities: np.ndarray
    states: tuple

    def __post_init__(self):
        states = tuple(as_state(s) for s in self.states)
        p = np.array(self.probabilities, dtype=float).ravel()
        if not states:
            raise InvalidEnsembleError("ensemble needs at least one member")
        if p.size != len(states):
            raise InvalidEnsembleError(
                f"{p.size} probabilities for {len(states)} states"
            )
        if np.any(~np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
            raise InvalidEnsembleError("probabilities must lie in [0, 1]")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise InvalidEnsembleError(f"probabilities sum to {p.sum()!r}, not 1")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatchError(f"states of mixed dimension {sorted(dims)}")
        object.__setattr__(self, "probabilities", _readonly(p))
        object.__setattr__(self, "states", states)

    @classmethod
    def uniform(cls, states: Iterable) -> "Ensemble":
        states = tuple(states)
        return cls(np.full(len(states), 1.0 / len(states)), states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    @property
    def members(self) -> list[tuple[float, PureState]]:
        return list(zip(self.probabilities.tolist(), self.states))

    @property
    def is_uniform(self) -> bool:
        return bool(np.allclose(self.probabilities, 1.0 / len(self), rtol=0, atol=PROB_TOL))

    def __len__(self) -> int:
        return len(self.states)

    def amplitude_matrix(self) -> np.ndarray:
        """States stacked as columns, shape ``(dim, len(self))``."""
        return np.stack([s.amplitudes for s in self.states], axis=1)

    def gram(self) -> np.ndarray:
        """Gram matrix ``G[i, j] = <psi_i|psi_j>``."""
        a = self.amplitude_matrix()
        return a.conj().T @ a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite ``dim x dim`` matrix.

    ``check_positive=False`` skips the eigenvalue check (used for matrices
    rebuilt from arbitrary coherence vectors).
    """

    matrix: np.ndarray
    check_positive: bool = True

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidStateError("density matrix must be square")
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
            raise InvalidStateError("density matrix must be Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"density matrix trace is {tr!r}, not 1")
        if self.check_positive:
            lowest = np.linalg.eigvalsh(m).min()
            if lowest < -PSD_TOL:
                raise InvalidStateError(f"density matrix has eigenvalue {lowest!r} < 0")
        object.__setattr__(self, "matrix", _readonly(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace_power(self, k: int) -> float:
        return float(np.trace(np.linalg.matrix_power(self.matrix, k)).real)


def as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


@dataclass(frozen=True, eq=False)
class CoherenceVector:
    dim: int
    components: np.ndarray

    def __post_init__(self):
        c = np.array(self.components, dtype=float).ravel()
        if c.size != self.dim * self.dim - 1:
            raise DimensionMismatchError(
                f"coherence vector for d={self.dim} needs {self.dim ** 2 - 1} components, got {c.size}"
            )
        object.__setattr__(self, "components", _readonly(c))

    def __array__(self, dtype=None, copy=None):
        return self.components if dtype is None else self.components.astype(dtype)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def dot(self, other: "CoherenceVector") -> float:
        return float(self.components @ other.components)


def bloch_state(theta: float, phi: float) -> PureState:
    """``cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>``.

    Its coherence vector is ``(sin t cos p, sin t sin p, cos t)``.
    """
    return PureState([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def density_from_ensemble(e: Ensemble) -> DensityMatrix:
    a = e.amplitude_matrix()
    rho = (a * e.probabilities) @ a.conj().T
    # symmetrise away round-off so the Hermiticity check is exact
    return DensityMatrix((rho + rho.conj().T) / 2)


def _coherence_scale(d: int) -> float:
    return np.sqrt(d / (2.0 * (d - 1)))


def _check_basis(dim: int, basis: GeneratorBasis | None) -> GeneratorBasis:
    if basis is None:
        return basis_for_dim(dim)
    if basis.dim != dim:
        raise DimensionMismatchError(f"basis is for d={basis.dim}, state has d={dim}")
    return basis


def _matrix_to_coherence(m: np.ndarray, basis: GeneratorBasis) -> np.ndarray:
    # Tr(m lambda_i) for every generator
    traces = np.einsum("ij,aji->a", m, basis.generators).real
    return _coherence_scale(basis.dim) * traces


def state_to_coherence(psi, basis: GeneratorBasis | None = None) -> CoherenceVector:
    """Coherence vector ``n_i = sqrt(d / (2(d-1))) Tr(|psi><psi| lambda_i)``."""
    psi = as_state(psi)
    basis = _check_basis(psi.dim, basis)
    return CoherenceVector(psi.dim, _matrix_to_coherence(psi.projector(), basis))


def density_to_coherence(rho, basis: GeneratorBasis | None = None) -> CoherenceVector:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=np.complex128)
    basis = _check_basis(m.shape[0], basis)
    return CoherenceVector(m.shape[0], _matrix_to_coherence(m, basis))


def coherence_to_density(n, basis: GeneratorBasis | None = None) -> DensityMatrix:
    """Inverse of :func:`state_to_coherence`; positivity is not checked."""
    if isinstance(n, CoherenceVector):
        comps, dim = n.components, n.dim
    else:
        comps = np.asarray(n, dtype=float).ravel()
        dim = basis.dim if basis is not None else int(round(np.sqrt(comps.size + 1)))
    basis = _check_basis(dim, basis)
    if comps.size != basis.size:
        raise DimensionMismatchError(
            f"coherence vector has {comps.size} components, basis has {basis.size}"
        )
    d = basis.dim
    weight = np.sqrt(d * (d - 1) / 2.0)
    m = (np.eye(d) + weight * np.einsum("a,aij->ij", comps, basis.generators)) / d
    return DensityMatrix((m + m.conj().T) / 2, check_positive=False)


def member_coherences(e: Ensemble, basis: GeneratorBasis | None = None) -> np.ndarray:
    """Coherence vectors of the members, one per row."""
    basis = _check_basis(e.dim, basis)
    return np.stack([state_to_coherence(s, basis).components for s in e.states])


def mixture_coherence(e: Ensemble, basis: GeneratorBasis | None = None) -> CoherenceVector:
    """``n = sum_i p_i n_i``."""
    return CoherenceVector(e.dim, e.probabilities @ member_coherences(e, basis))


def _require_pairs(e: Ensemble) -> None:
    if len(e) < 2:
        raise DegenerateEnsembleError("operation needs at least two states")


def _pair_index(t: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = np.triu_indices(t, k=1)
    return i, j


def perimeter(e: Ensemble, basis: GeneratorBasis | None = None) -> float:
    """Sum of squared coherence-vector distances over all unordered pairs.

    Priors are ignored.  With every pair orthogonal the value reaches
    ``t(t-1)(1 + 1/(d-1))``, which bounds it from above.
    """
    _require_pairs(e)
    n = member_coherences(e, basis)
    i, j = _pair_index(len(e))
    return float(np.sum((n[i] - n[j]) ** 2))


def perimeter_tilde(e: Ensemble, basis: GeneratorBasis | None = None) -> float:
    """Prior-weighted perimeter ``sum_{i<j} |p_i n_i - p_j n_j|**2``.

    Satisfies ``n.n = t * sum(p**2) - perimeter_tilde`` for the mixture
    vector ``n``.
    """
    _require_pairs(e)
    w = e.probabilities[:, None] * member_coherences(e, basis)
    i, j = _pair_index(len(e))
    return float(np.sum((w[i] - w[j]) ** 2))


def overlap_Q(e: Ensemble) -> float:
    """``sum_{i<j} |<psi_i|psi_j>|**2``."""
    _require_pairs(e)
    i, j = _pair_index(len(e))
    return float(np.sum(np.abs(e.gram()[i, j]) ** 2))


def unsquared_P_Q(e: Ensemble, basis: GeneratorBasis | None = None) -> tuple[float, float]:
    """``(P', Q')``: perimeter and overlap sums without the squares."""
    _require_pairs(e)
    n = member_coherences(e, basis)
    i, j = _pair_index(len(e))
    p_prime = float(np.sum(np.linalg.norm(n[i] - n[j], axis=1)))
    q_prime = float(np.sum(np.abs(e.gram()[i, j])))
    return p_prime, q_prime


# -- state files -------------------------------------------------------------

def parse_state_file(text: str) -> Ensemble:
    """Parse the line-oriented ensemble format.

    ::

        # comment
        dim 3
        0.5  1 0  0 0  0 0
        0.5  0 0  1 0  0 0

    Each member line is a probability followed by ``dim`` (re, im) pairs.
    Amplitudes within 1e-6 of unit norm are renormalised; probabilities
    within 1e-6 of summing to one likewise.
    """
    dim = None
    probs: list[float] = []
    states: list[np.ndarray] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if dim is None:
            if len(fields) != 2 or fields[0] != "dim":
                raise InvalidEnsembleError(f"line {lineno}: expected 'dim <d>'")
            try:
                dim = int(fields[1])
            except ValueError:
                raise InvalidEnsembleError(f"line {lineno}: bad dimension {fields[1]!r}") from None
            if dim < 1:
                raise InvalidEnsembleError(f"line {lineno}: dimension must be positive")
            continue
        if len(fields) != 1 + 2 * dim:
            raise InvalidEnsembleError(
                f"line {lineno}: expected {1 + 2 * dim} numbers, got {len(fields)}"
            )
        try:
            values = [float(x) for x in fields]
        except ValueError as exc:
            raise InvalidEnsembleError(f"line {lineno}: {exc}") from None
        amps = np.array(values[1::2]) + 1j * np.array(values[2::2])
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > FILE_NORM_TOL:
            raise InvalidStateError(f"line {lineno}: state norm {norm:.9g} is not 1")
        probs.append(values[0])
        states.append(amps / norm)
    if dim is None:
        raise InvalidEnsembleError("missing 'dim <d>' header")
    if not states:
        raise InvalidEnsembleError("no ensemble members")
    p = np.array(probs)
    if abs(p.sum() - 1.0) > FILE_NORM_TOL:
        raise InvalidEnsembleError(f"probabilities sum to {p.sum():.9g}, not 1")
    return Ensemble(p / p.sum(), [PureState(s) for s in states])


def load_state_file(path: str | os.PathLike) -> Ensemble:
    with open(path, encoding="utf-8") as fh:
        return parse_state_file(fh.read())


def format_state_file(e: Ensemble) -> str:
    lines = [f"dim {e.dim}"]
    for p, s in e.members:
        nums = [repr(p)]
        for a in s.amplitudes:
            nums += [repr(float(a.real)), repr(float(a.imag))]
        lines.append(" ".join(nums))
    return "\n".join(lines) + "\n"
