"""Traceless Hermitian generator bases of SU(d) and their structure tensors.

Generators are normalised so that ``Tr(l_i l_j) = 2 delta_ij``.  For d = 2
the basis is the Pauli triple, for d = 3 the eight Gell-Mann matrices in the
usual order; for d >= 4 the generalized Gell-Mann matrices are ordered as
symmetric off-diagonal pairs, antisymmetric off-diagonal pairs, and finally
the d - 1 diagonal generators.

The representation is not unique: any orthogonal rotation of the generator
space gives an equally valid basis.  Only the bases above are provided.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import InvalidBasisError, InvalidDimensionError

__all__ = [
    "GeneratorBasis",
    "pauli_basis",
    "gellmann_basis",
    "generalized_gellmann",
    "structure_constants",
    "basis_for_dim",
]


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    """The ``d**2 - 1`` generators of SU(d) plus the f and d tensors.

    ``generators`` has shape ``(d**2 - 1, d, d)``; ``f_tensor`` and
    ``d_tensor`` have shape ``(d**2 - 1,) * 3``.  All arrays are read-only.
    """

    dim: int
    generators: np.ndarray
    f_tensor: np.ndarray
    d_tensor: np.ndarray

    @property
    def size(self) -> int:
        return self.dim * self.dim - 1

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, i: int) -> np.ndarray:
        return self.generators[i]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _make(generators: np.ndarray) -> GeneratorBasis:
    generators = np.ascontiguousarray(generators, dtype=np.complex128)
    f, d = structure_constants(generators)
    return GeneratorBasis(
        dim=generators.shape[1],
        generators=_freeze(generators),
        f_tensor=_freeze(f),
        d_tensor=_freeze(d),
    )


def _symmetric(d: int, j: int, k: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=np.complex128)
    m[j, k] = m[k, j] = 1.0
    return m


def _antisymmetric(d: int, j: int, k: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=np.complex128)
    m[j, k] = -1j
    m[k, j] = 1j
    return m


def _diagonal(d: int, l: int) -> np.ndarray:
    # l = 1 .. d-1: diag(1, ..., 1, -l, 0, ..., 0) with l leading ones
    diag = np.zeros(d)
    diag[:l] = 1.0
    diag[l] = -float(l)
    return np.diag(diag * np.sqrt(2.0 / (l * (l + 1)))).astype(np.complex128)


@lru_cache(maxsize=None)
def pauli_basis() -> GeneratorBasis:
    """sigma_1, sigma_2, sigma_3; f is Levi-Civita and d vanishes."""
    d = 2
    return _make(np.stack([_symmetric(d, 0, 1), _antisymmetric(d, 0, 1), _diagonal(d, 1)]))


@lru_cache(maxsize=None)
def gellmann_basis() -> GeneratorBasis:
    """The eight Gell-Mann matrices lambda_1 .. lambda_8 in standard order."""
    d = 3
    gens = [
        _symmetric(d, 0, 1),
        _antisymmetric(d, 0, 1),
        _diagonal(d, 1),
        _symmetric(d, 0, 2),
        _antisymmetric(d, 0, 2),
        _symmetric(d, 1, 2),
        _antisymmetric(d, 1, 2),
        _diagonal(d, 2),
    ]
    return _make(np.stack(gens))


@lru_cache(maxsize=None)
def generalized_gellmann(d: int) -> GeneratorBasis:
    """Generalized Gell-Mann basis of dimension ``d``.

    For d = 2 and d = 3 this returns :func:`pauli_basis` and
    :func:`gellmann_basis` so indices agree with the conventional tables.
    """
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    if d == 2:
        return pauli_basis()
    if d == 3:
        return gellmann_basis()
    pairs = list(combinations(range(d), 2))
    gens = [_symmetric(d, j, k) for j, k in pairs]
    gens += [_antisymmetric(d, j, k) for j, k in pairs]
    gens += [_diagonal(d, l) for l in range(1, d)]
    return _make(np.stack(gens))


def basis_for_dim(d: int) -> GeneratorBasis:
    return generalized_gellmann(d)


def structure_constants(generators, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(f, d)`` with ``f_ijk = Im Tr(l_i l_j l_k)/2`` and
    ``d_ijk = Re Tr(l_i l_j l_k)/2``.

    Raises :class:`InvalidBasisError` unless the set is ``d**2 - 1`` traceless
    Hermitian matrices with ``Tr(l_i l_j) = 2 delta_ij``.
    """
    g = np.asarray(generators, dtype=np.complex128)
    if g.ndim != 3 or g.shape[1] != g.shape[2]:
        raise InvalidBasisError("generators must be an array of square matrices")
    m, d, _ = g.shape
    if m != d * d - 1:
        raise InvalidBasisError(f"expected {d * d - 1} generators for d={d}, got {m}")
    if np.abs(g - np.conj(np.transpose(g, (0, 2, 1)))).max() > tol:
        raise InvalidBasisError("generators must be Hermitian")
    if np.abs(np.einsum("aii->a", g)).max() > tol:
        raise InvalidBasisError("generators must be traceless")
    gram = np.einsum("aij,bji->ab", g, g)
    if np.abs(gram - 2.0 * np.eye(m)).max() > tol:
        raise InvalidBasisError("generators must satisfy Tr(l_i l_j) = 2 delta_ij")

    triple = np.einsum("aij,bjk,cki->abc", g, g, g)
    return triple.imag / 2.0, triple.real / 2.0
