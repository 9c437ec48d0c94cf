"""Datasets behind the entropy-versus-perimeter/phase curves.

Every dataset is checked row by row before it is returned; a failed check
raises :class:`~phasentropy.errors.NumericalError`.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .ensemble import (
    Ensemble,
    PureState,
    bloch_state,
    density_from_ensemble,
    overlap_Q,
    perimeter,
    unsquared_P_Q,
)
from .entropy import (
    cubic_coefficients_3states,
    entropy_2d,
    entropy_from_eigs,
    entropy_oracle,
    solve_cubic,
)
from .errors import DomainError, NumericalError
from .geometric_phase import bargmann

__all__ = [
    "Dataset",
    "JS_GAMMA_MAX",
    "trine_ensemble",
    "arvind_states",
    "js_states",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "FIGURES",
    "write_dataset",
]

JS_GAMMA_MAX = math.acos(0.75)
DEFAULT_STEPS = 200


@dataclass(frozen=True, eq=False)
class Dataset:
    name: str
    columns: tuple[str, ...]
    rows: np.ndarray  # shape (n_rows, len(columns))

    def column(self, label: str) -> np.ndarray:
        return self.rows[:, self.columns.index(label)]


def _dataset(name, columns, rows) -> Dataset:
    arr = np.array(rows, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise NumericalError(f"{name}: non-finite value in dataset")
    return Dataset(name, tuple(columns), arr)


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise NumericalError(msg)


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise DomainError("steps must be at least 2")
    return np.linspace(lo, hi, steps)


# -- state families ----------------------------------------------------------

def trine_ensemble(phi1: float) -> Ensemble:
    """Three equatorial qubit states at azimuths ``phi1``, 2pi/3 and 4pi/3."""
    return Ensemble.uniform(
        bloch_state(math.pi / 2, phi) for phi in (phi1, 2 * math.pi / 3, 4 * math.pi / 3)
    )


def arvind_states(xi: float, eta: float, zeta: float, chi: float) -> tuple[PureState, ...]:
    """``|2>``, ``sin xi|1> + cos xi|2>`` and
    ``sin eta cos zeta|0> + e^{i chi} sin eta sin zeta|1> + cos eta|2>``."""
    return (
        PureState([0.0, 0.0, 1.0]),
        PureState([0.0, math.sin(xi), math.cos(xi)]),
        PureState([
            math.sin(eta) * math.cos(zeta),
            np.exp(1j * chi) * math.sin(eta) * math.sin(zeta),
            math.cos(eta),
        ]),
    )


def js_states(gamma: float) -> tuple[PureState, ...]:
    """Three qutrit states with fixed pairwise overlaps and geometric phase ``gamma``.

    Real third amplitude requires ``cos gamma >= 3/4``.
    """
    c = 4.0 / 3.0 * math.cos(gamma) - 1.0
    if c < -1e-12:
        raise DomainError(f"gamma = {gamma!r} outside |gamma| <= arccos(3/4)")
    s3 = 1.0 / math.sqrt(3.0)
    return (
        PureState([1.0, 0.0, 0.0]),
        PureState([1 / math.sqrt(2.0), 1 / math.sqrt(2.0), 0.0]),
        PureState.normalized([s3, (2 * np.exp(1j * gamma) - 1) * s3, math.sqrt(max(c, 0.0))]),
    )


# -- datasets ----------------------------------------------------------------

def fig3(steps: int = DEFAULT_STEPS) -> Dataset:
    """Equatorial trine with ``phi1`` swept over ``[0, 2 pi]``:
    columns ``phi1, S, Q, P, Qp, Pp``."""
    rows = []
    for phi1 in _grid(0.0, 2 * math.pi, steps):
        e = trine_ensemble(phi1)
        P = perimeter(e)
        S = entropy_2d(P, 3)
        s_oracle, _ = entropy_oracle(density_from_ensemble(e))
        _check(abs(S - s_oracle) <= 1e-9, f"fig3: closed form disagrees with oracle at phi1={phi1}")
        Pp, Qp = unsquared_P_Q(e)
        rows.append([phi1, S, overlap_Q(e), P, Qp, Pp])
    return _dataset("fig3", ("phi1", "S", "Q", "P", "Qp", "Pp"), rows)


def fig4(steps: int = DEFAULT_STEPS) -> Dataset:
    """Qubit entropy against perimeter for three states, ``P`` in ``[0, 9]``."""
    rows = []
    for P in _grid(0.0, 9.0, steps):
        S = entropy_2d(P, 3)
        _check(-1e-12 <= S <= math.log(2) + 1e-10, f"fig4: S={S} out of range")
        rows.append([P, S])
    ds = _dataset("fig4", ("P", "S"), rows)
    _check(bool(np.all(np.diff(ds.column("S")) >= 0)), "fig4: entropy not monotone in P")
    return ds


def fig5(steps: int = DEFAULT_STEPS) -> Dataset:
    """Zero-visibility qutrit family, ``zeta`` in ``[0, pi/2]``:
    columns ``zeta, P, S, V``."""
    rows = []
    for zeta in _grid(0.0, math.pi / 2, steps):
        e = Ensemble.uniform(arvind_states(math.pi / 2, math.pi / 2, zeta, 0.0))
        P = perimeter(e)
        _check(abs(P - (9 - 3 * math.sin(zeta) ** 2)) <= 1e-10, f"fig5: P mismatch at zeta={zeta}")
        V = bargmann(*e.states).visibility
        _check(V <= 1e-12, f"fig5: visibility {V} should vanish")
        V = 0.0  # cos(pi/2) round-off only
        S = entropy_from_eigs(solve_cubic(cubic_coefficients_3states(e)))
        _check(S <= math.log(3) + 1e-10, "fig5: entropy above ln 3")
        rows.append([zeta, P, S, V])
    return _dataset("fig5", ("zeta", "P", "S", "V"), rows)


_JS_OVERLAPS = (0.5, 2.0 / 3.0, 1.0 / 3.0)


def fig6(steps: int = DEFAULT_STEPS, gamma_max: float = JS_GAMMA_MAX) -> Dataset:
    """Fixed-perimeter, fixed-visibility qutrit family swept in ``gamma``:
    columns ``gamma, P, V, S_closed, S_oracle``."""
    if gamma_max > JS_GAMMA_MAX + 1e-12 or gamma_max < 0:
        raise DomainError(f"gamma_max must lie in [0, arccos(3/4)], got {gamma_max!r}")
    rows = []
    for gamma in _grid(0.0, gamma_max, steps):
        e = Ensemble.uniform(js_states(gamma))
        a, b, c = e.states
        overlaps = (abs(a.inner(b)) ** 2, abs(b.inner(c)) ** 2, abs(c.inner(a)) ** 2)
        _check(
            all(abs(x - y) <= 1e-12 for x, y in zip(overlaps, _JS_OVERLAPS)),
            f"fig6: overlaps {overlaps} drifted at gamma={gamma}",
        )
        inv = bargmann(a, b, c)
        _check(abs(inv.visibility - 1 / 3) <= 1e-10, f"fig6: V={inv.visibility} at gamma={gamma}")
        _check(abs(inv.phase - gamma) <= 1e-10, f"fig6: phase {inv.phase} != {gamma}")
        s_closed = entropy_from_eigs(solve_cubic(cubic_coefficients_3states(e)))
        s_oracle, _ = entropy_oracle(density_from_ensemble(e))
        _check(abs(s_closed - s_oracle) <= 1e-9, f"fig6: entropy routes disagree at gamma={gamma}")
        rows.append([gamma, perimeter(e), inv.visibility, s_closed, s_oracle])
    return _dataset("fig6", ("gamma", "P", "V", "S_closed", "S_oracle"), rows)


FIGURES = {"fig3": fig3, "fig4": fig4, "fig5": fig5, "fig6": fig6}


# -- output ------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def write_dataset(ds: Dataset, fh, fmt: str = "csv") -> None:
    """Write ``ds`` as CSV (header + 12 significant digits) or JSON."""
    if fmt == "csv":
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ds.columns)
        for row in ds.rows:
            writer.writerow([_fmt(x) for x in row])
    elif fmt == "json":
        payload = {
            "figure": ds.name,
            "columns": list(ds.columns),
            "rows": [[float(_fmt(x)) for x in row] for row in ds.rows],
        }
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def dataset_to_string(ds: Dataset, fmt: str = "csv") -> str:
    buf = io.StringIO()
    write_dataset(ds, buf, fmt)
    return buf.getvalue()
