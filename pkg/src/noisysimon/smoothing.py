"""Post-processing that reshapes biased measurements toward the two-level model.

Three techniques:

* Permutation: spread the shots over many minimum-norm configurations so
  per-qubit quality differences average out; the circuit norm (and hence the
  error rate) is preserved.
* Double-Flip: rerun with an X appended to every measured wire, complement
  the outcomes classically, and pool with the plain run; inverts the
  ground-state readout bias at the price of n extra gates.
* Hamming: purely classical - pool the multiset with its translate by a
  high-weight vector v; orthogonality (hence the error-rate estimate) is
  preserved exactly whenever v is orthogonal to the period.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np

from .circuits import append_measurement_flips
from .gf2 import BitVec
from .multiset import MeasurementMultiset, merge_all
from .noise import NoiseParams, sample_noisy
from .simon import SimonFunction
from .transpile import (
    Configuration,
    TopologyGraph,
    circuit_norm,
    compile_simon_circuit,
    search_min_configuration,
)


def hamming_vector_candidates(n: int) -> List[BitVec]:
    """The n+1 vectors of weight at least n-1: all-ones plus its single-bit drops."""
    ones = (1 << n) - 1
    return [BitVec(n, ones)] + [BitVec(n, ones ^ (1 << j)) for j in range(n)]


def choose_hamming_vector(s: BitVec) -> BitVec:
    """Highest-weight candidate orthogonal to s.

    All-ones works iff s has even weight; otherwise dropping any set bit of s
    restores orthogonality.
    """
    n = s.n
    ones = BitVec.ones(n)
    if ones.inner(s) == 0:
        return ones
    j = (s.value & -s.value).bit_length() - 1
    return BitVec(n, ones.value ^ (1 << j))


def hamming_smooth(m: MeasurementMultiset, v: BitVec) -> MeasurementMultiset:
    """Pool m with {q + v : q in m}; the total exactly doubles."""
    if v.n != m.n:
        raise ValueError(f"shift length {v.n} != outcome length {m.n}")
    shifted = m.map_outcomes(lambda o: o ^ v.value)
    return m.merge(shifted)


def double_flip(
    f: SimonFunction,
    graph: TopologyGraph,
    config: Configuration,
    noise: NoiseParams,
    shots: int,
    seed=None,
) -> MeasurementMultiset:
    """Pool a plain run with a flipped-readout run (outcomes re-complemented)."""
    base = compile_simon_circuit(f, graph, config)
    flipped = append_measurement_flips(base)
    plain = sample_noisy(base, noise, shots, seed=seed)
    ones = (1 << f.n) - 1
    refl = sample_noisy(flipped, noise, shots, seed=None if seed is None else seed + 1)
    refl = refl.map_outcomes(lambda o: o ^ ones)
    return plain.merge(refl)


def permutation_configurations(
    f: SimonFunction,
    graph: TopologyGraph,
    count: int,
    rng: np.random.Generator,
    base: Optional[Configuration] = None,
) -> List[Configuration]:
    """Norm-preserving reshuffles of a minimum-norm starting configuration.

    Each draw flips a coin to swap the two control-register wires and applies
    a random permutation to the remaining register pairs, relabeling which
    logical pair sits on which physical pair of qubits.
    """
    if base is None:
        base, _ = search_min_configuration(f, graph)
    assign = base.as_dict()
    n = f.n
    out = []
    for _ in range(count):
        new = dict(assign)
        if rng.integers(0, 2) == 1:
            new["x0"], new["x1"] = assign["x1"], assign["x0"]
        idx = list(range(2, n))
        perm = list(rng.permutation(idx)) if idx else []
        for j, pj in zip(idx, perm):
            new[f"x{j}"] = assign[f"x{int(pj)}"]
            new[f"y{j}"] = assign[f"y{int(pj)}"]
        out.append(Configuration.from_dict(new))
    return out


def permutation_smooth(
    f: SimonFunction,
    graph: TopologyGraph,
    configs: Sequence[Configuration],
    shots_per_config: int,
    noise: NoiseParams,
    seed=None,
) -> MeasurementMultiset:
    """Run every configuration and pool the (already logically ordered) outcomes.

    Rejects configurations that do not attain the minimal circuit norm, since
    those would change the error rate they are supposed to preserve.
    """
    _, min_cn = search_min_configuration(f, graph)
    parts = []
    for k, cfg in enumerate(configs):
        circ = compile_simon_circuit(f, graph, cfg)
        cn = circuit_norm(circ)
        if cn.value != min_cn.value:
            raise ValueError(
                f"configuration {k} has norm {cn.value}, not the minimum {min_cn.value}"
            )
        parts.append(
            sample_noisy(circ, noise, shots_per_config, seed=None if seed is None else seed + k)
        )
    return merge_all(parts)
