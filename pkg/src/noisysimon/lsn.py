"""The idealized two-level error model: exact distribution and sampler.

With probability 1-tau a sample is uniform on the subspace orthogonal to the
period, otherwise uniform on its complement; each outcome therefore carries
probability (1-tau)/2^(n-1) or tau/2^(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List

import numpy as np

from .gf2 import BitVec, orthogonal_basis
from .multiset import EmptyMultisetError, MeasurementMultiset


@dataclass(frozen=True)
class LsnParams:
    n: int
    tau: float
    s: BitVec

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau < 0.5:
            raise ValueError(f"tau={self.tau} outside [0, 1/2)")
        if self.s.n != self.n:
            raise ValueError(f"period length {self.s.n} != n={self.n}")
        if self.s.value == 0:
            raise ValueError("period must be nonzero")

    def with_tau(self, tau: float) -> "LsnParams":
        return replace(self, tau=tau)


def _parity_table(n: int, s: int) -> np.ndarray:
    y = np.arange(1 << n, dtype=np.int64) & s
    y ^= y >> 32
    y ^= y >> 16
    y ^= y >> 8
    y ^= y >> 4
    y ^= y >> 2
    y ^= y >> 1
    return (y & 1).astype(np.int64)


def model_distribution(params: LsnParams) -> np.ndarray:
    """Exact two-level outcome distribution."""
    parity = _parity_table(params.n, params.s.value)
    scale = 1.0 / (1 << (params.n - 1))
    return np.where(parity == 0, (1.0 - params.tau) * scale, params.tau * scale)


def sample_many(params: LsnParams, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw `count` samples exactly from the model (no rejection).

    A sample is a uniform combination of an orthogonal-subspace basis, plus a
    fixed non-orthogonal shift when the error coin comes up.
    """
    basis = [row.value for row in orthogonal_basis(params.s).rows]
    out = np.zeros(count, dtype=np.int64)
    picks = rng.integers(0, 2, size=(count, len(basis)))
    for j, b in enumerate(basis):
        out ^= picks[:, j] * b
    shift = 1 << ((params.s.value & -params.s.value).bit_length() - 1)
    errors = rng.random(count) < params.tau
    out[errors] ^= shift
    return out


def sample(params: LsnParams, rng: np.random.Generator) -> BitVec:
    return BitVec(params.n, int(sample_many(params, 1, rng)[0]))


def sample_multiset(params: LsnParams, count: int, rng: np.random.Generator) -> MeasurementMultiset:
    return MeasurementMultiset.from_outcomes(params.n, sample_many(params, count, rng))


def estimate_tau(m: MeasurementMultiset, s: BitVec) -> float:
    """Fraction of counted outcomes not orthogonal to s."""
    if m.total == 0:
        raise EmptyMultisetError("cannot estimate the error rate of an empty multiset")
    bad = sum(c for o, c in m.counts.items() if bin(o & s.value).count("1") % 2 == 1)
    return bad / m.total


def sample_pool(params: LsnParams, count: int, rng: np.random.Generator) -> List[BitVec]:
    return [BitVec(params.n, int(v)) for v in sample_many(params, count, rng)]
