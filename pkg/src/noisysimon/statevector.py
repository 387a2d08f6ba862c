"""Exact statevector simulation of H/X/CNOT circuits.

Basis-state convention: amplitude index i encodes wire q in bit q of i, so
index arithmetic matches the bit-vector convention used everywhere else.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from .circuits import CNOT, Circuit, Gate, H, X

MAX_WIDTH = 28

_SQRT2_INV = 1.0 / math.sqrt(2.0)


class CapacityError(ValueError):
    """Amplitude array would not fit at desk scale."""


def zero_state(width: int) -> np.ndarray:
    if width > MAX_WIDTH:
        raise CapacityError(f"width {width} exceeds the {MAX_WIDTH}-qubit limit")
    state = np.zeros(1 << width, dtype=np.complex128)
    state[0] = 1.0
    return state


def _axis(width: int, qubit: int) -> int:
    return width - 1 - qubit


def apply_h(state: np.ndarray, qubit: int, width: int) -> np.ndarray:
    psi = np.moveaxis(state.reshape([2] * width), _axis(width, qubit), 0)
    out = np.empty_like(psi)
    out[0] = (psi[0] + psi[1]) * _SQRT2_INV
    out[1] = (psi[0] - psi[1]) * _SQRT2_INV
    return np.moveaxis(out, 0, _axis(width, qubit)).reshape(-1)


def apply_x(state: np.ndarray, qubit: int, width: int) -> np.ndarray:
    psi = state.reshape([2] * width)
    return np.flip(psi, axis=_axis(width, qubit)).reshape(-1)


def apply_z(state: np.ndarray, qubit: int, width: int) -> np.ndarray:
    psi = state.reshape([2] * width).copy()
    idx = [slice(None)] * width
    idx[_axis(width, qubit)] = 1
    psi[tuple(idx)] *= -1.0
    return psi.reshape(-1)


def apply_y(state: np.ndarray, qubit: int, width: int) -> np.ndarray:
    psi = np.moveaxis(state.reshape([2] * width), _axis(width, qubit), 0)
    out = np.empty_like(psi)
    out[0] = -1j * psi[1]
    out[1] = 1j * psi[0]
    return np.moveaxis(out, 0, _axis(width, qubit)).reshape(-1)


def apply_cnot(state: np.ndarray, control: int, target: int, width: int) -> np.ndarray:
    psi = state.reshape([2] * width).copy()
    axc = _axis(width, control)
    axt = _axis(width, target)
    idx = [slice(None)] * width
    idx[axc] = 1
    sub = psi[tuple(idx)]
    flip_ax = axt - 1 if axt > axc else axt
    psi[tuple(idx)] = np.flip(sub, axis=flip_ax)
    return psi.reshape(-1)


PAULI_I, PAULI_X, PAULI_Y, PAULI_Z = 0, 1, 2, 3

_PAULI_FNS = {PAULI_X: apply_x, PAULI_Y: apply_y, PAULI_Z: apply_z}


def apply_pauli(state: np.ndarray, code: int, qubit: int, width: int) -> np.ndarray:
    if code == PAULI_I:
        return state
    return _PAULI_FNS[code](state, qubit, width)


def apply_gate(state: np.ndarray, gate: Gate, width: int) -> np.ndarray:
    if gate.kind == H:
        return apply_h(state, gate.target, width)
    if gate.kind == X:
        return apply_x(state, gate.target, width)
    if gate.kind == CNOT:
        return apply_cnot(state, gate.control, gate.target, width)
    raise ValueError(f"unknown gate {gate.kind!r}")


def run_statevector(circuit: Circuit) -> np.ndarray:
    state = zero_state(circuit.width)
    for gate in circuit.gates:
        state = apply_gate(state, gate, circuit.width)
    return state


def measured_marginal(state: np.ndarray, measured: Tuple[int, ...], width: int) -> np.ndarray:
    """Born-rule distribution over outcomes; bit k of the outcome is wire measured[k]."""
    probs = (state.real**2 + state.imag**2).reshape([2] * width)
    keep = [_axis(width, q) for q in measured]
    other = tuple(a for a in range(width) if a not in set(keep))
    if other:
        probs = probs.sum(axis=other)
    if not measured:
        return probs.reshape(1)
    sorted_keep = sorted(keep)
    pos = {a: i for i, a in enumerate(sorted_keep)}
    perm = [pos[_axis(width, q)] for q in reversed(measured)]
    return probs.transpose(perm).reshape(-1)


def exact_output_distribution(circuit: Circuit) -> np.ndarray:
    """Exact outcome distribution of the measured wires."""
    state = run_statevector(circuit)
    return measured_marginal(state, circuit.measured, circuit.width)


def circuits_equivalent(a: Circuit, b: Circuit, tol: float = 1e-9) -> bool:
    """True iff the two measured-outcome distributions agree within tol per outcome."""
    if len(a.measured) != len(b.measured):
        raise ValueError(
            f"incompatible measurement arity: {len(a.measured)} vs {len(b.measured)}"
        )
    da = exact_output_distribution(a)
    db = exact_output_distribution(b)
    return bool(np.max(np.abs(da - db)) <= tol)
