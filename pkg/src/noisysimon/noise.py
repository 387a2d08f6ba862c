"""Synthetic hardware noise: depolarizing gates, crosstalk, biased readout.

The model, per Monte-Carlo shot:

* every gate independently depolarizes its operand wire(s) with probability
  eps1 (one-qubit) or eps2 (two-qubit), realized as a uniform Pauli injection;
* every two-qubit gate additionally depolarizes each *other* wire with
  probability ``crosstalk`` (drive-line disturbance), which is what makes the
  error rate climb as circuits grow even though the decisive wires stay put;
* each measured bit finally flips with a per-qubit asymmetric probability
  p01 (reading a 0 as 1) or p10 (reading a 1 as 0); p10 > p01 gives the
  ground-state bias.

Because H/X/CNOT are Clifford, an injected Pauli propagates to the end of the
circuit as a Pauli, and only its X component can change measured outcomes.
Each shot therefore samples the noiseless outcome distribution XOR-shifted by
the propagated fault mask, which the sampler exploits instead of re-running
the statevector per trajectory.
"""

from __future__ import annotations

import importlib.resources
import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

import numpy as np

from .circuits import CNOT, Circuit, H
from .multiset import MeasurementMultiset
from .statevector import exact_output_distribution

PAULI_I, PAULI_X, PAULI_Y, PAULI_Z = 0, 1, 2, 3


@dataclass(frozen=True)
class NoiseParams:
    """Dimensionless error probabilities; `readout[q] = (p01, p10)` per qubit."""

    eps1: float = 0.0
    eps2: float = 0.0
    crosstalk: float = 0.0
    readout: Tuple[Tuple[float, float], ...] = ()
    default_p01: float = 0.0
    default_p10: float = 0.0

    def __post_init__(self) -> None:
        probs = [self.eps1, self.eps2, self.crosstalk, self.default_p01, self.default_p10]
        probs += [p for pair in self.readout for p in pair]
        for p in probs:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")

    @classmethod
    def ideal(cls) -> "NoiseParams":
        return cls()

    @classmethod
    def uniform(cls, eps1: float, p01: float, p10: float, crosstalk: float = 0.0,
                eps2: float | None = None) -> "NoiseParams":
        """Same readout on every qubit; eps2 defaults to ten times eps1."""
        return cls(
            eps1=eps1,
            eps2=10.0 * eps1 if eps2 is None else eps2,
            crosstalk=crosstalk,
            readout=(),
            default_p01=p01,
            default_p10=p10,
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "NoiseParams":
        d = json.loads(Path(path).read_text())
        return cls(
            eps1=d.get("eps1", 0.0),
            eps2=d.get("eps2", 10.0 * d.get("eps1", 0.0)),
            crosstalk=d.get("crosstalk", 0.0),
            readout=tuple((q[0], q[1]) for q in d.get("readout", [])),
            default_p01=d.get("default_p01", 0.0),
            default_p10=d.get("default_p10", 0.0),
        )

    def readout_for(self, label) -> Tuple[float, float]:
        if isinstance(label, int) and 0 <= label < len(self.readout):
            return self.readout[label]
        return (self.default_p01, self.default_p10)


def default_noise() -> NoiseParams:
    """Calibration shipped with the package (see data/default_noise.json)."""
    ref = importlib.resources.files("noisysimon.data") / "default_noise.json"
    d = json.loads(ref.read_text())
    return NoiseParams(
        eps1=d["eps1"],
        eps2=d["eps2"],
        crosstalk=d["crosstalk"],
        readout=tuple((q[0], q[1]) for q in d["readout"]),
        default_p01=d["default_p01"],
        default_p10=d["default_p10"],
    )


def _fault_masks(circuit: Circuit) -> Tuple[List[List[int]], List[List[int]]]:
    """Propagated X-masks for Paulis injected after each gate.

    fx[g][w] is the end-of-circuit X-mask (bit per wire) of an X injected on
    wire w right after gate g; fzx[g][w] the same for an injected Z. A Y
    behaves as X.Z, i.e. fx^fzx. Z components only produce phases, which
    cannot change measured outcomes.
    """
    width = circuit.width
    fx = [1 << w for w in range(width)]
    fzx = [0] * width
    fx_slots: List[List[int]] = []
    fzx_slots: List[List[int]] = []
    for g in reversed(circuit.gates):
        fx_slots.append(list(fx))
        fzx_slots.append(list(fzx))
        if g.kind == H:
            fx[g.target], fzx[g.target] = fzx[g.target], fx[g.target]
        elif g.kind == CNOT:
            c, t = g.control, g.target
            fx[c] ^= fx[t]
            fzx[t] ^= fzx[c]
        # X gates commute with fault propagation up to phase
    fx_slots.reverse()
    fzx_slots.reverse()
    return fx_slots, fzx_slots


def _mask_for(code: int, fx: int, fzx: int) -> int:
    if code == PAULI_X:
        return fx
    if code == PAULI_Z:
        return fzx
    if code == PAULI_Y:
        return fx ^ fzx
    return 0


def _sample_chunk(
    circuit: Circuit, noise: NoiseParams, shots: int, rng: np.random.Generator
) -> np.ndarray:
    gates = circuit.gates
    width = circuit.width
    measured = circuit.measured

    base = exact_output_distribution(circuit)
    cdf = np.cumsum(base)
    cdf[-1] = 1.0

    # Per-shot fault masks over all wires.
    masks = np.zeros(shots, dtype=np.int64)
    if gates and (noise.eps1 > 0 or noise.eps2 > 0 or noise.crosstalk > 0):
        fx_slots, fzx_slots = _fault_masks(circuit)
        err = np.array([noise.eps2 if g.arity == 2 else noise.eps1 for g in gates])
        hit = rng.random((shots, len(gates))) < err
        shot_idx, gate_idx = np.nonzero(hit)
        if shot_idx.size:
            codes = rng.integers(0, 4, size=(shot_idx.size, 2))
            for k in range(shot_idx.size):
                s, gi = int(shot_idx[k]), int(gate_idx[k])
                g = gates[gi]
                m = _mask_for(int(codes[k, 0]), fx_slots[gi][g.target], fzx_slots[gi][g.target])
                if g.arity == 2:
                    m ^= _mask_for(
                        int(codes[k, 1]), fx_slots[gi][g.control], fzx_slots[gi][g.control]
                    )
                masks[s] ^= m
        if noise.crosstalk > 0:
            for gi, g in enumerate(gates):
                if g.arity != 2:
                    continue
                others = [w for w in range(width) if w not in g.qubits]
                if not others:
                    continue
                hit_ct = rng.random((shots, len(others))) < noise.crosstalk
                s_idx, w_idx = np.nonzero(hit_ct)
                if not s_idx.size:
                    continue
                ct_codes = rng.integers(0, 4, size=s_idx.size)
                for k in range(s_idx.size):
                    w = others[int(w_idx[k])]
                    m = _mask_for(int(ct_codes[k]), fx_slots[gi][w], fzx_slots[gi][w])
                    masks[int(s_idx[k])] ^= m

    # Restrict wire masks to outcome bits (bit k of an outcome is wire measured[k]).
    out_masks = np.zeros(shots, dtype=np.int64)
    for k, q in enumerate(measured):
        out_masks |= ((masks >> q) & 1) << k

    outcomes = np.searchsorted(cdf, rng.random(shots), side="right").astype(np.int64)
    outcomes ^= out_masks

    # Asymmetric readout flips, one stream per outcome bit.
    for k, q in enumerate(measured):
        p01, p10 = noise.readout_for(circuit.label_of(q))
        if p01 == 0.0 and p10 == 0.0:
            rng.random(shots)  # keep the stream layout independent of the rates
            continue
        bits = (outcomes >> k) & 1
        flip_prob = np.where(bits == 1, p10, p01)
        flips = rng.random(shots) < flip_prob
        outcomes ^= flips.astype(np.int64) << k
    return outcomes


def sample_noisy(
    circuit: Circuit,
    noise: NoiseParams,
    shots: int,
    seed=None,
    workers: int = 1,
) -> MeasurementMultiset:
    """Monte-Carlo sampling of the circuit under the synthetic noise model.

    Deterministic for a fixed (seed, workers): worker w draws from an
    independent stream seeded by (seed, w) and takes an equal share of the
    shots (the first workers get the remainder). workers=1 is the canonical
    stream.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    per = shots // workers
    extra = shots % workers
    outcome_chunks = []
    for w in range(workers):
        chunk = per + (1 if w < extra else 0)
        if chunk == 0:
            continue
        rng = np.random.default_rng(seed if seed is None else [int(seed), w])
        outcome_chunks.append(_sample_chunk(circuit, noise, chunk, rng))
    outcomes = np.concatenate(outcome_chunks)
    return MeasurementMultiset.from_outcomes(len(circuit.measured), outcomes)
