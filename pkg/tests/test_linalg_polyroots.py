from itertools import combinations

import numpy as np
import pytest

from conftest import random_density
from phasentropy.errors import InvalidStateError, NumericalError
from phasentropy.linalg import hermitian_eigvalsh, jacobi_eigvalsh, real_embedding
from phasentropy.polyroots import (
    charpoly_from_power_sums,
    elementary_from_power_sums,
    real_roots,
)


def principal_minor_sums(m):
    """e_k as sums of k x k principal minors (direct expansion of det(xI - m))."""
    n = m.shape[0]
    out = [1.0]
    for k in range(1, n + 1):
        out.append(sum(np.linalg.det(m[np.ix_(idx, idx)]).real for idx in combinations(range(n), k)))
    return np.array(out)


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_jacobi_matches_lapack(rng, n):
    for _ in range(10):
        a = rng.normal(size=(n, n))
        a = a + a.T
        np.testing.assert_allclose(jacobi_eigvalsh(a), np.sort(np.linalg.eigvalsh(a))[::-1], atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 7])
def test_hermitian_eigenvalues(rng, d):
    for _ in range(10):
        rho = random_density(rng, d)
        np.testing.assert_allclose(hermitian_eigvalsh(rho), np.sort(np.linalg.eigvalsh(rho))[::-1], atol=1e-13)


def test_real_embedding_doubles_spectrum(rng):
    rho = random_density(rng, 3)
    doubled = np.sort(np.linalg.eigvalsh(real_embedding(rho)))
    np.testing.assert_allclose(doubled[::2], doubled[1::2], atol=1e-14)
    np.testing.assert_allclose(doubled[::2], np.sort(np.linalg.eigvalsh(rho)), atol=1e-14)


def test_jacobi_handles_diagonal_and_degenerate():
    np.testing.assert_array_equal(jacobi_eigvalsh(np.diag([0.2, 0.5, 0.3])), [0.5, 0.3, 0.2])
    np.testing.assert_allclose(hermitian_eigvalsh(np.eye(4) / 4), np.full(4, 0.25))


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(InvalidStateError):
        hermitian_eigvalsh(np.array([[1, 1], [0, 0]]))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_newton_identities_match_direct_expansion(rng, d):
    for _ in range(10):
        rho = random_density(rng, d)
        sums = [np.trace(np.linalg.matrix_power(rho, k)).real for k in range(1, d + 1)]
        np.testing.assert_allclose(elementary_from_power_sums(sums), principal_minor_sums(rho), atol=1e-10)


def test_charpoly_signs():
    # eigenvalues 1/2, 1/3, 1/6
    x = np.array([1 / 2, 1 / 3, 1 / 6])
    sums = [np.sum(x**k) for k in (1, 2, 3)]
    np.testing.assert_allclose(charpoly_from_power_sums(sums), np.poly(x), atol=1e-14)


@pytest.mark.parametrize(
    "roots",
    [
        [0.5],
        [0.7, 0.3],
        [1 / 3, 1 / 3, 1 / 3],
        [0.5, 0.5, 0.0],
        [0.4, 0.3, 0.2, 0.1],
        [0.25, 0.25, 0.25, 0.25],
        [0.6, 0.2, 0.2, 0.0, 0.0],
        [1.0, 0.0, 0.0],
    ],
)
def test_real_roots_known(roots):
    found = real_roots(np.poly(roots))
    # a root of multiplicity m is only determined to about eps ** (1 / m)
    np.testing.assert_allclose(found, sorted(roots, reverse=True), atol=1e-4)
    assert found.sum() == pytest.approx(sum(roots), abs=1e-13)


def test_real_roots_simple_roots_are_tight():
    roots = [0.55, 0.3, 0.1, 0.05]
    np.testing.assert_allclose(real_roots(np.poly(roots)), roots, atol=1e-13)


def test_real_roots_complex_pair_rejected():
    # (x - 0.2)(x**2 - x + 0.5) has the complex pair 0.5 +- 0.5i
    coeffs = np.polymul([1, -0.2], [1, -1, 0.5])
    with pytest.raises(NumericalError):
        real_roots(coeffs)
    assert len(real_roots(coeffs, strict=False)) == 3
