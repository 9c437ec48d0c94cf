import cmath
import math

import numpy as np
import pytest

from conftest import random_density, random_ensemble, random_state
from phasentropy import (
    Ensemble,
    Exact,
    InputError,
    PureState,
    ResourceLimitError,
    Shots,
    cubic_coefficients_3states,
    density_from_ensemble,
    entropy_from_eigs,
    entropy_oracle,
    entropy_via_interferometry,
    estimate_trace_power,
    run_network,
    shift_operator,
    solve_cubic,
)
from phasentropy.figures import js_states
from phasentropy.interferometer import HADAMARD, controlled_shift, fringe, network_unitary, phase_gate


def trace_power(rho, k):
    return complex(np.trace(np.linalg.matrix_power(np.asarray(rho), k)))


def swap(d):
    """Swap built from its defining action, W|a>|b> = |b>|a>."""
    w = np.zeros((d * d, d * d))
    for a in range(d):
        for b in range(d):
            w[b * d + a, a * d + b] = 1
    return w


def kron_all(*ms):
    out = ms[0]
    for m in ms[1:]:
        out = np.kron(out, m)
    return out


def test_qubit_swap(rng):
    np.testing.assert_array_equal(shift_operator(2, 2), swap(2))
    for _ in range(20):
        rho = random_density(rng, 2)
        assert abs(np.trace(shift_operator(2, 2) @ np.kron(rho, rho)) - trace_power(rho, 2)) <= 1e-13


def test_three_copy_shift(rng):
    s = shift_operator(3, 3)
    for _ in range(20):
        rho = random_density(rng, 3)
        assert abs(np.trace(s @ kron_all(rho, rho, rho)) - trace_power(rho, 3)) <= 1e-13


def test_shift_direction_on_basis_vectors():
    d = 3
    e = np.eye(d)
    a, b, c = e[0], e[1], e[2]
    np.testing.assert_array_equal(shift_operator(d, 3) @ kron_all(a, b, c), kron_all(c, a, b))


@pytest.mark.parametrize("d, k", [(2, 2), (2, 3), (3, 2), (3, 3), (2, 5), (4, 3)])
def test_shift_unitary_and_cyclic(d, k):
    s = shift_operator(d, k)
    np.testing.assert_array_equal(s @ s.T, np.eye(d**k))
    np.testing.assert_array_equal(np.linalg.matrix_power(s, k), np.eye(d**k))


def test_shift_direction_irrelevant_for_trace(rng):
    rho = random_density(rng, 2)
    s = shift_operator(2, 4)
    copies = kron_all(rho, rho, rho, rho)
    assert abs(np.trace(s @ copies) - np.trace(s.T @ copies)) <= 1e-14


def test_shift_rejects_bad_args():
    with pytest.raises(InputError):
        shift_operator(2, 1)
    with pytest.raises(InputError):
        shift_operator(1, 2)


def test_gates_unitary():
    for u in (HADAMARD, phase_gate(0.7), controlled_shift(2, 3), network_unitary(3, 2, 1.1)):
        np.testing.assert_allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=1e-13)


def test_controlled_shift_block_form():
    cs = controlled_shift(2, 2)
    np.testing.assert_array_equal(cs[:4, :4], np.eye(4))
    np.testing.assert_array_equal(cs[4:, 4:], swap(2))
    np.testing.assert_array_equal(cs[:4, 4:], 0)
    np.testing.assert_array_equal(cs[4:, :4], 0)


def test_pure_state_full_brightness(rng):
    psi = random_state(rng, 3)
    assert run_network(psi.projector(), 2, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_maximally_mixed_qubit():
    rho = np.eye(2) / 2
    assert run_network(rho, 2, 0.0) == pytest.approx(0.75, abs=1e-12)
    assert run_network(rho, 2, math.pi) == pytest.approx(0.25, abs=1e-12)


@pytest.mark.parametrize("d, k", [(2, 2), (2, 3), (3, 3), (2, 4), (4, 2)])
def test_intensity_law(rng, d, k):
    phis = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    for _ in range(3):
        rho = random_density(rng, d)
        tr = trace_power(rho, k)
        closed = 0.5 * (1 + abs(tr) * np.cos(phis - cmath.phase(tr)))
        sim = fringe(rho, k, phis)
        np.testing.assert_allclose(sim, closed, atol=1e-12)
        # least-squares fit of A + B cos(phi - delta)
        design = np.column_stack([np.ones_like(phis), np.cos(phis), np.sin(phis)])
        coef, *_ = np.linalg.lstsq(design, sim, rcond=None)
        residual = np.max(np.abs(design @ coef - sim))
        assert residual <= 1e-10
        assert coef[0] == pytest.approx(0.5, abs=1e-12)
        assert math.hypot(coef[1], coef[2]) == pytest.approx(abs(tr) / 2, abs=1e-12)


def test_register_cap():
    rho = np.eye(4) / 4
    with pytest.raises(ResourceLimitError):
        run_network(rho, 6, 0.0)
    with pytest.raises(ResourceLimitError):
        run_network(np.eye(2) / 2, 3, 0.0, cap=8)
    assert run_network(np.eye(2) / 2, 2, 0.0, cap=8) == pytest.approx(0.75)


def test_exact_maximally_mixed_qutrit():
    est = estimate_trace_power(np.eye(3) / 3, 3, Exact())
    assert abs(est.value - 1 / 9) <= 1e-12
    assert est.exact and est.std_error == 0


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_exact_matches_direct_trace(rng, d, k):
    for _ in range(3):
        rho = random_density(rng, d)
        assert abs(estimate_trace_power(rho, k).value - trace_power(rho, k)) <= 1e-12


def test_exact_respects_lowered_cap(rng):
    rho = random_density(rng, 4)
    with pytest.raises(ResourceLimitError):
        estimate_trace_power(rho, 4, cap=256)


def test_shots_maximally_mixed_qubit():
    est = estimate_trace_power(np.eye(2) / 2, 2, Shots(10**5, seed=42))
    assert not est.exact
    assert est.std_error > 0
    assert abs(est.value - 0.5) <= 5 * est.std_error
    assert abs(est.value) <= 1 + 3 * est.std_error


def test_shots_deterministic(rng):
    rho = random_density(rng, 3)
    a = estimate_trace_power(rho, 3, Shots(5000, seed=7))
    b = estimate_trace_power(rho, 3, Shots(5000, seed=7))
    c = estimate_trace_power(rho, 3, Shots(5000, seed=8))
    assert a == b
    assert a.value != c.value


def test_shots_complex_trace_and_phase(rng):
    # a qutrit with a complex third power
    rho = random_density(rng, 3)
    tr = trace_power(rho, 3)
    est = estimate_trace_power(rho, 3, Shots(20000, seed=3))
    assert abs(est.value - tr) <= 5 * est.std_error
    exact = estimate_trace_power(rho, 3)
    assert exact.phase_at_max == pytest.approx(cmath.phase(tr), abs=1e-10)


def test_shots_converge_like_inverse_sqrt(rng):
    rho = random_density(rng, 2)
    tr = trace_power(rho, 2)
    ns = [1000 * 2**j for j in range(5)]
    errors, sigmas = [], []
    for n in ns:
        errs = [abs(estimate_trace_power(rho, 2, Shots(n, seed=s)).value - tr) for s in range(40)]
        errors.append(float(np.sqrt(np.mean(np.square(errs)))))
        sigmas.append(estimate_trace_power(rho, 2, Shots(n, seed=0)).std_error)
    ratio = errors[0] / errors[-1]
    # 16x more shots: expect a 4x smaller error, allow a generous band
    assert 2.0 < ratio < 8.0
    assert sigmas[0] / sigmas[-1] == pytest.approx(4.0, rel=0.1)
    for err, sig in zip(errors, sigmas):
        assert 0.3 < err / sig < 3.0


def test_zero_shots_rejected():
    with pytest.raises(InputError):
        Shots(0)
    with pytest.raises(InputError):
        estimate_trace_power(np.eye(2) / 2, 2, mode="lots")


def test_interferometry_orthonormal_triple():
    res = entropy_via_interferometry(Ensemble.uniform(np.eye(3)))
    assert res.Q == pytest.approx(0.0, abs=1e-12)
    assert res.v == pytest.approx(0.0, abs=1e-12)
    assert res.entropy == pytest.approx(math.log(3), abs=1e-10)


def test_interferometry_js():
    e = Ensemble.uniform(js_states(0.5))
    res = entropy_via_interferometry(e)
    assert res.v == pytest.approx(math.cos(0.5) / 3, abs=1e-10)
    assert res.Q == pytest.approx(1 / 2 + 2 / 3 + 1 / 3, abs=1e-10)
    closed = entropy_from_eigs(solve_cubic(cubic_coefficients_3states(e)))
    assert res.entropy == pytest.approx(closed, abs=1e-9)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_interferometry_pure(rng, d):
    res = entropy_via_interferometry(Ensemble.uniform([random_state(rng, d)]))
    for est in res.traces.values():
        assert abs(est.value - 1) <= 1e-12
    assert res.entropy == pytest.approx(0.0, abs=1e-10)
    assert res.Q is None and res.v is None


def test_interferometry_random_qutrits(rng):
    for _ in range(20):
        e = random_ensemble(rng, 3, 4, uniform=False)
        res = entropy_via_interferometry(e)
        assert res.entropy == pytest.approx(entropy_oracle(density_from_ensemble(e))[0], abs=1e-9)


def test_interferometry_with_shots(rng):
    e = random_ensemble(rng, 3, 3)
    res = entropy_via_interferometry(e, Shots(10**5, seed=1))
    assert res.entropy == pytest.approx(entropy_oracle(density_from_ensemble(e))[0], abs=0.05)
    assert np.all(res.eigenvalues >= 0)
    assert res.eigenvalues.sum() == pytest.approx(1.0, abs=1e-12)


def test_interferometry_cap():
    e = Ensemble.uniform([PureState.normalized(np.ones(5))])
    with pytest.raises(ResourceLimitError):
        entropy_via_interferometry(e)


def test_fringe_equals_literal_evolution(rng):
    for d, k in ((2, 2), (3, 2), (2, 3)):
        rho = random_density(rng, d)
        register = np.kron(np.diag([1.0, 0.0]), kron_all(*[rho] * k))
        half = d**k
        for phi in (0.0, 0.9, 2.5):
            u = network_unitary(d, k, phi)
            literal = np.trace((u @ register @ u.conj().T)[:half, :half]).real
            assert run_network(rho, k, phi) == pytest.approx(literal, abs=1e-13)
