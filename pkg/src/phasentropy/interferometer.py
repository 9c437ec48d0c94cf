"""Density-operator simulation of the controlled-shift interferometer.

An ancilla qubit and ``k`` copies of rho pass through

    H  ->  phase diag(exp(i phi), 1)  ->  |0><0| (x) I + |1><1| (x) S  ->  H

where ``S`` cyclically shifts the ``k`` tensor factors.  The probability of
finding the ancilla in ``|0>`` is ``(1 + |Tr rho**k| cos(phi - arg Tr rho**k)) / 2``,
so two phase settings (or a fitted fringe) give ``Tr rho**k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .ensemble import DensityMatrix, Ensemble, as_density, density_from_ensemble
from .entropy import entropy_from_power_sums
from .errors import InputError, ResourceLimitError

__all__ = [
    "HADAMARD",
    "DEFAULT_REGISTER_CAP",
    "Exact",
    "Shots",
    "TraceEstimate",
    "InterferometryResult",
    "shift_operator",
    "phase_gate",
    "controlled_shift",
    "network_unitary",
    "run_network",
    "fringe",
    "estimate_trace_power",
    "entropy_via_interferometry",
]

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)
DEFAULT_REGISTER_CAP = 4096


@dataclass(frozen=True)
class Exact:
    """Read the ancilla probabilities exactly (no sampling)."""


@dataclass(frozen=True)
class Shots:
    """Binomial sampling of ``n`` ancilla outcomes at each of ``phases``
    equally spaced phase settings.  Sampling at phase index ``i`` uses the
    generator seeded with ``(seed, i)``."""

    n: int
    seed: int = 0
    phases: int = 16

    def __post_init__(self):
        if self.n < 1:
            raise InputError("shot count must be positive")
        if self.phases < 3:
            raise InputError("need at least three phase settings to fit a fringe")


@dataclass(frozen=True)
class TraceEstimate:
    k: int
    value: complex
    shots_used: int | None  # None for exact mode
    std_error: float = 0.0
    phase_at_max: float = field(default=0.0, compare=False)

    @property
    def exact(self) -> bool:
        return self.shots_used is None


def shift_operator(d: int, k: int) -> np.ndarray:
    """Permutation ``S |a> (x) ... (x) |c> (x) |z> = |z> (x) |a> (x) ... (x) |c>``
    on ``k`` qudits of dimension ``d``; for ``k = 2`` it is the swap."""
    if d < 2:
        raise InputError("qudit dimension must be at least 2")
    if k < 2:
        raise InputError("shift needs at least two subsystems")
    size = d ** k
    s = np.zeros((size, size))
    for digits in product(range(d), repeat=k):
        src = int(np.ravel_multi_index(digits, (d,) * k))
        dst_digits = (digits[-1],) + digits[:-1]
        s[np.ravel_multi_index(dst_digits, (d,) * k), src] = 1.0
    return s


def phase_gate(phi: float) -> np.ndarray:
    return np.diag([np.exp(1j * phi), 1.0]).astype(np.complex128)


def controlled_shift(d: int, k: int) -> np.ndarray:
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    return np.kron(p0, np.eye(d ** k)) + np.kron(p1, shift_operator(d, k))


def _check_register(d: int, k: int, cap: int) -> None:
    if k < 2:
        raise InputError("network needs k >= 2 copies")
    size = 2 * d ** k
    if size > cap:
        raise ResourceLimitError(f"register dimension {size} exceeds cap {cap}")


def network_unitary(d: int, k: int, phi: float) -> np.ndarray:
    eye = np.eye(d ** k)
    hadamard = np.kron(HADAMARD, eye)
    return hadamard @ controlled_shift(d, k) @ np.kron(phase_gate(phi), eye) @ hadamard


def _copies(rho: np.ndarray, k: int) -> np.ndarray:
    out = rho
    for _ in range(k - 1):
        out = np.kron(out, rho)
    return out


def run_network(rho, k: int, phi: float, cap: int = DEFAULT_REGISTER_CAP) -> float:
    """Probability of ancilla outcome 0, by evolving the full register."""
    return float(fringe(rho, k, [phi], cap=cap)[0])


def fringe(rho, k: int, phis, cap: int = DEFAULT_REGISTER_CAP) -> np.ndarray:
    """``P(ancilla = 0)`` at each phase in ``phis``.

    The register evolves under ``U = (H (x) I) CS (Phi (x) I) (H (x) I)``.
    Only the phase gate depends on ``phi`` and it is diagonal, so the state
    after the first Hadamard and the observable ``W^dag P0 W`` (with
    ``W = (H (x) I) CS``) are built once and each phase costs one
    elementwise product.
    """
    rho = as_density(rho)
    d = rho.dim
    _check_register(d, k, cap)
    half = d ** k
    eye = np.eye(half)
    hadamard = np.kron(HADAMARD, eye)
    register = np.kron(np.diag([1.0, 0.0]), _copies(rho.matrix, k))
    after_h = hadamard @ register @ hadamard.conj().T
    w = hadamard @ controlled_shift(d, k)
    observable = w.conj().T[:, :half] @ w[:half, :]
    out = []
    for phi in np.atleast_1d(np.asarray(phis, dtype=float)):
        diag = np.concatenate([np.full(half, np.exp(1j * phi)), np.ones(half)])
        state = diag[:, None] * after_h * diag.conj()[None, :]
        out.append(float(np.sum(observable.T * state).real))
    return np.array(out)


def _exact_estimate(rho: DensityMatrix, k: int, cap: int) -> TraceEstimate:
    p0, p90 = fringe(rho, k, [0.0, math.pi / 2], cap=cap)
    value = complex(2 * p0 - 1, 2 * p90 - 1)
    return TraceEstimate(k, value, None, 0.0, math.atan2(value.imag, value.real))


def _shots_estimate(rho: DensityMatrix, k: int, mode: Shots, cap: int) -> TraceEstimate:
    phis = 2 * math.pi * np.arange(mode.phases) / mode.phases
    probs = np.clip(fringe(rho, k, phis, cap=cap), 0.0, 1.0)
    freq = np.empty(mode.phases)
    for i, p in enumerate(probs):
        rng = np.random.default_rng([mode.seed, i])
        freq[i] = rng.binomial(mode.n, p) / mode.n
    # least-squares fringe fit P = a0 + a1 cos(phi) + a2 sin(phi); equal
    # spacing makes the design orthogonal
    m = mode.phases
    cos, sin = np.cos(phis), np.sin(phis)
    a1 = 2.0 / m * float(freq @ cos)
    a2 = 2.0 / m * float(freq @ sin)
    var = freq * (1 - freq) / mode.n
    var_re = 4 * (2.0 / m) ** 2 * float(var @ cos ** 2)
    var_im = 4 * (2.0 / m) ** 2 * float(var @ sin ** 2)
    value = complex(2 * a1, 2 * a2)
    # maximising the fitted intensity gives the phase of Tr rho**k
    phase_at_max = math.atan2(a2, a1)
    return TraceEstimate(k, value, mode.n * m, math.sqrt(var_re + var_im), phase_at_max)


def estimate_trace_power(rho, k: int, mode=None, cap: int = DEFAULT_REGISTER_CAP) -> TraceEstimate:
    """Estimate ``Tr rho**k`` from the simulated ancilla statistics.

    ``Exact()`` reads P(0) at phi = 0 and pi/2 (real and imaginary parts);
    ``Shots(n, seed)`` samples a full fringe and fits it.
    """
    rho = as_density(rho)
    mode = Exact() if mode is None else mode
    if isinstance(mode, Exact):
        return _exact_estimate(rho, k, cap)
    if isinstance(mode, Shots):
        return _shots_estimate(rho, k, mode, cap)
    raise InputError(f"unknown estimation mode {mode!r}")


@dataclass(frozen=True)
class InterferometryResult:
    entropy: float
    traces: dict[int, TraceEstimate]
    eigenvalues: np.ndarray
    Q: float | None = None
    v: float | None = None


def entropy_via_interferometry(e, mode=None, cap: int = DEFAULT_REGISTER_CAP) -> InterferometryResult:
    """Entropy from interferometric estimates of ``Tr rho**k``, ``k = 2 .. d``.

    For three equiprobable qutrit states the overlap sum and ``v = V cos gamma``
    are also recovered: ``Q = (9 Tr rho**2 - 3) / 2`` and
    ``v = (27 Tr rho**3 - 3 - 6Q) / 6``.
    """
    if isinstance(e, Ensemble):
        rho = density_from_ensemble(e)
        r = min(len(e), e.dim)
    else:
        rho = as_density(e)
        r = rho.dim
    mode = Exact() if mode is None else mode
    _check_register(rho.dim, max(rho.dim, 2), cap)
    traces = {k: estimate_trace_power(rho, k, mode, cap) for k in range(2, rho.dim + 1)}
    sums = [1.0] + [traces[k].value.real for k in range(2, r + 1)]
    S, spectrum = entropy_from_power_sums(sums, strict=isinstance(mode, Exact))

    Q = v = None
    if isinstance(e, Ensemble) and len(e) == 3 and e.dim == 3 and e.is_uniform:
        Q = (9 * traces[2].value.real - 3) / 2
        v = (27 * traces[3].value.real - 3 - 6 * Q) / 6
    return InterferometryResult(S, traces, spectrum.eigenvalues, Q, v)
