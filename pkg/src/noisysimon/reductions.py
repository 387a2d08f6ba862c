"""Sample transformers between the subspace-sample problem and noisy parities.

Both directions are one XOR per sample: with a uniform vector z satisfying
<z, s> = 1, a subspace-style sample y becomes a parity sample (y + b z, b)
for a fresh uniform bit b, and a parity sample (a, b) becomes the
subspace-style sample a + b z. Conditioned on <z, s> = 1 the transformed
distributions are exactly the target oracles, so the wrappers lose at most a
factor two in success probability per attempt and simply retry with fresh z.
"""

from __future__ import annotations

from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .gf2 import BitVec, DimensionError, rank_ints
from .lsn import LsnParams, model_distribution


class SolveFailure(RuntimeError):
    """All retries exhausted without a verified candidate."""


class LpnSample(NamedTuple):
    a: BitVec
    b: int


def lpn_samples_to_csv(samples: Sequence[LpnSample], path) -> None:
    """Write `a,b` rows, a as an MSB-first bitstring."""
    from pathlib import Path

    lines = ["a,b"] + [f"{a},{b}" for a, b in samples]
    Path(path).write_text("\n".join(lines) + "\n")


def lpn_samples_from_csv(path) -> List[LpnSample]:
    from pathlib import Path

    out = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line == "a,b":
            continue
        a, b = line.split(",")
        out.append(LpnSample(BitVec.from_string(a), int(b)))
    return out


def lsn_sample_to_lpn(y: BitVec, z: BitVec, rng: np.random.Generator) -> LpnSample:
    """(y + b z, b) for a fresh uniform bit b."""
    if y.n != z.n:
        raise DimensionError(f"length mismatch: {y.n} vs {z.n}")
    b = int(rng.integers(0, 2))
    a = y ^ z if b else y
    return LpnSample(a, b)


def lpn_sample_to_lsn(sample: LpnSample, z: BitVec) -> BitVec:
    """a + b z."""
    if sample.a.n != z.n:
        raise DimensionError(f"length mismatch: {sample.a.n} vs {z.n}")
    return sample.a ^ z if sample.b else sample.a


# ---------------------------------------------------------------------------
# Exact transformed distributions (enumeration; used by tests and the checker)


def lpn_model_distribution(params: LsnParams) -> Dict[Tuple[int, int], float]:
    """Exact oracle distribution over (a, b): uniform a, Bernoulli-tau label error."""
    n, tau, s = params.n, params.tau, params.s.value
    out = {}
    for a in range(1 << n):
        pa = bin(a & s).count("1") & 1
        out[(a, pa)] = (1.0 - tau) / (1 << n)
        out[(a, pa ^ 1)] = tau / (1 << n)
    return out


def transformed_lpn_distribution(params: LsnParams, z: BitVec) -> Dict[Tuple[int, int], float]:
    """Distribution of (y + b z, b) when y follows the two-level model."""
    model = model_distribution(params)
    out: Dict[Tuple[int, int], float] = {}
    for y in range(1 << params.n):
        for b in (0, 1):
            a = y ^ z.value if b else y
            out[(a, b)] = out.get((a, b), 0.0) + model[y] * 0.5
    return out


def transformed_lsn_distribution(params: LsnParams, z: BitVec) -> np.ndarray:
    """Distribution of a + b z when (a, b) comes from the parity oracle."""
    out = np.zeros(1 << params.n)
    for (a, b), p in lpn_model_distribution(params).items():
        out[a ^ z.value if b else a] += p
    return out


# ---------------------------------------------------------------------------
# Solver wrappers (Las Vegas: verify, retry with fresh z)


def solve_lsn_via_lpn(
    lsn_oracle: Callable[[], BitVec],
    lpn_solver: Callable[[int, float, Sequence[LpnSample], np.random.Generator], Optional[BitVec]],
    n: int,
    tau: float,
    m: int,
    retries: int,
    verify: Callable[[BitVec], bool],
    rng: np.random.Generator,
) -> BitVec:
    """Recover the period through a parity solver.

    Per attempt: fresh uniform z, m fresh transformed samples, one solver
    call; a candidate is returned only if it is nonzero and verified.
    """
    for _ in range(retries):
        z = BitVec(n, int(rng.integers(0, 1 << n)))
        samples = [lsn_sample_to_lpn(lsn_oracle(), z, rng) for _ in range(m)]
        candidate = lpn_solver(n, tau, samples, rng)
        if candidate is not None and candidate.value != 0 and verify(candidate):
            return candidate
    raise SolveFailure(f"no verified candidate after {retries} attempts")


def solve_lpn_via_lsn(
    lpn_oracle: Callable[[], LpnSample],
    lsn_solver: Callable[[int, float, Sequence[BitVec], np.random.Generator], Optional[BitVec]],
    n: int,
    tau: float,
    m: int,
    retries: int,
    verify: Callable[[BitVec], bool],
    rng: np.random.Generator,
) -> BitVec:
    """Mirror wrapper: recover a parity secret through a subspace-sample solver."""
    for _ in range(retries):
        z = BitVec(n, int(rng.integers(0, 1 << n)))
        pool = [lpn_sample_to_lsn(lpn_oracle(), z) for _ in range(m)]
        candidate = lsn_solver(n, tau, pool, rng)
        if candidate is not None and candidate.value != 0 and verify(candidate):
            return candidate
    raise SolveFailure(f"no verified candidate after {retries} attempts")


# ---------------------------------------------------------------------------
# Statistical verification helpers (projection cells for chi-square at large n)


def projection_functionals(n: int, k: int, exclude: Optional[BitVec] = None) -> List[int]:
    """k standard-basis functionals, linearly independent modulo {exclude}.

    Evaluating them on a vector uniform over either coset of exclude^perp
    yields a uniform k-bit cell index.
    """
    chosen: List[int] = []
    base = [exclude.value] if exclude is not None else []
    for j in range(n):
        cand = chosen + [1 << j]
        if rank_ints(base + cand, n) == len(base) + len(cand):
            chosen.append(1 << j)
        if len(chosen) == k:
            return chosen
    raise ValueError(f"cannot find {k} independent functionals")


def _parity(v: int) -> int:
    return bin(v).count("1") & 1


def lsn_projection_counts(
    outcomes: np.ndarray, params: LsnParams, k: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Bucket samples by (orthogonality bit, k-bit projection); return
    (counts, expected probabilities) for a goodness-of-fit test."""
    funcs = projection_functionals(params.n, k, exclude=params.s)
    cells = np.zeros(2 << k, dtype=np.int64)
    for y in np.asarray(outcomes, dtype=np.int64):
        e = _parity(int(y) & params.s.value)
        idx = 0
        for i, u in enumerate(funcs):
            idx |= _parity(int(y) & u) << i
        cells[(e << k) | idx] += 1
    probs = np.empty(2 << k)
    probs[: 1 << k] = (1.0 - params.tau) / (1 << k)
    probs[1 << k :] = params.tau / (1 << k)
    return cells, probs


def lpn_projection_counts(
    samples: Sequence[LpnSample], params: LsnParams, k: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Bucket parity samples by (label error, k-bit projection of a)."""
    funcs = projection_functionals(params.n, k)
    cells = np.zeros(2 << k, dtype=np.int64)
    s = params.s.value
    for a, b in samples:
        e = (_parity(a.value & s) ^ b) & 1
        idx = 0
        for i, u in enumerate(funcs):
            idx |= _parity(a.value & u) << i
        cells[(e << k) | idx] += 1
    probs = np.empty(2 << k)
    probs[: 1 << k] = (1.0 - params.tau) / (1 << k)
    probs[1 << k :] = params.tau / (1 << k)
    return cells, probs
