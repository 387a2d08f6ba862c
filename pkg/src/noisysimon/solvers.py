"""Period-recovery solvers and their cost models.

Cost is counted in repeat-loop iterations only, the exponential part of each
algorithm; per-iteration work is polynomial with the right bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .gf2 import BitVec, nullspace_ints, rank_ints
from .multiset import MeasurementMultiset
from .reductions import LpnSample, SolveFailure
from .simon import SimonFunction


@dataclass(frozen=True)
class CostReport:
    loop_count: int
    queries: int


@dataclass(frozen=True)
class QueryLedger:
    """Snapshot of the optimal-query bookkeeping: queried points and the
    distances excluded so far."""

    points: Tuple[int, ...]
    distances: Tuple[int, ...]


@dataclass(frozen=True)
class SamplePool:
    n: int
    samples: Tuple[BitVec, ...]

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVec]) -> "SamplePool":
        vectors = tuple(vectors)
        if not vectors:
            raise ValueError("empty pool")
        return cls(vectors[0].n, vectors)

    @classmethod
    def from_multiset(cls, m: MeasurementMultiset) -> "SamplePool":
        return cls(m.n, tuple(BitVec(m.n, int(o)) for o in m.outcomes_array()))

    def __len__(self) -> int:
        return len(self.samples)


# ---------------------------------------------------------------------------
# Optimal classical period finding


def classical_period(
    f: SimonFunction,
    rng: Optional[np.random.Generator] = None,
    ledger_hook: Optional[Callable[[QueryLedger], None]] = None,
) -> Tuple[BitVec, CostReport]:
    """Query f at points chosen to rule out as many distances as possible.

    Maintains the queried set P and the excluded-distance set D; each round
    queries the x maximizing how many d in D would be newly ruled out, i.e.
    |{d in D : x+d not in P}|, ties broken toward the smallest x. Stops on a
    collision or, once |D| = 2^n - 1, names the one remaining distance.

    The score table is maintained incrementally: c[x] counts d in D with
    x+d in P, so the chosen x is argmin c outside P. `rng` is accepted for
    interface symmetry; the procedure itself is deterministic given f.
    """
    del rng
    n = f.n
    size = 1 << n
    c = np.zeros(size, dtype=np.int64)
    in_p = np.zeros(size, dtype=bool)
    in_d = np.zeros(size, dtype=bool)
    points: List[int] = []
    distances: List[int] = []
    seen = {}

    def add_point(x: int) -> None:
        in_p[x] = True
        if distances:
            c[np.bitwise_xor(np.array(distances, dtype=np.int64), x)] += 1
        points.append(x)

    def add_distance(d: int) -> None:
        in_d[d] = True
        if points:
            c[np.bitwise_xor(np.array(points, dtype=np.int64), d)] += 1
        distances.append(d)

    seen[f.eval_int(0)] = 0
    add_point(0)
    add_distance(0)
    loops = 0
    queries = 1
    while len(distances) < size - 1:
        scores = np.where(in_p, np.iinfo(np.int64).max, c)
        x = int(np.argmin(scores))
        loops += 1
        queries += 1
        fx = f.eval_int(x)
        if fx in seen:
            s = x ^ seen[fx]
            if ledger_hook is not None:
                ledger_hook(QueryLedger(tuple(points), tuple(distances)))
            return BitVec(n, s), CostReport(loops, queries)
        seen[fx] = x
        add_point(x)
        arr = np.bitwise_xor(np.array(points, dtype=np.int64), x)
        for d in arr.tolist():
            if not in_d[d]:
                add_distance(d)
        if ledger_hook is not None:
            ledger_hook(QueryLedger(tuple(points), tuple(distances)))
    s = int(np.flatnonzero(~in_d)[0])
    return BitVec(n, s), CostReport(loops, queries)


def classical_period_reference(f: SimonFunction) -> Tuple[BitVec, CostReport]:
    """Brute-force restatement of the same procedure (per-round full rescan);
    cross-checks the incremental bookkeeping for small n."""
    n = f.n
    size = 1 << n
    points = [0]
    values = {f.eval_int(0): 0}
    distances = {0}
    loops = 0
    while len(distances) < size - 1:
        best_x, best_score = None, -1
        for x in range(size):
            if x in points:
                continue
            score = sum(1 for d in distances if (x ^ d) not in points)
            if score > best_score:
                best_x, best_score = x, score
        x = best_x
        loops += 1
        fx = f.eval_int(x)
        if fx in values:
            return BitVec(n, x ^ values[fx]), CostReport(loops, loops + 1)
        values[fx] = x
        points.append(x)
        for p in points:
            distances.add(x ^ p)
    (s,) = set(range(size)) - distances
    return BitVec(n, s), CostReport(loops, loops + 1)


# ---------------------------------------------------------------------------
# Pooled solvers


def _draw_distinct(rng: np.random.Generator, pool_size: int, k: int) -> List[int]:
    while True:
        idx = rng.integers(0, pool_size, size=k)
        if len(set(idx.tolist())) == k:
            return [int(i) for i in idx]


def pooled_lsn(
    f: SimonFunction,
    pool: SamplePool | Sequence[BitVec],
    rng: np.random.Generator,
    max_loops: int = 1_000_000,
) -> Tuple[BitVec, CostReport]:
    """Repeatedly draw n-1 distinct pool samples; on a linearly independent,
    error-free draw the one-dimensional nullspace is the period, which the
    function oracle confirms. Every completed draw counts as one loop."""
    samples = pool.samples if isinstance(pool, SamplePool) else tuple(pool)
    n = f.n
    if len(samples) < n - 1:
        raise ValueError(f"pool of {len(samples)} cannot contain {n - 1} independent samples")
    vals = [v.value for v in samples]
    loops = 0
    queries = 0
    while loops < max_loops:
        loops += 1
        idx = _draw_distinct(rng, len(vals), n - 1) if n > 1 else []
        rows = [vals[i] for i in idx]
        if rank_ints(rows, n) != n - 1:
            continue
        (cand,) = nullspace_ints(rows, n)
        queries += 1
        if f.verify_period(BitVec(n, cand)):
            return BitVec(n, cand), CostReport(loops, queries)
    raise SolveFailure(f"no verified period within {max_loops} loops")


def _solve_full_rank(rows: List[int], labels: List[int], n: int) -> Optional[int]:
    """Solve <a_i, s> = b_i over F_2; None if the a_i do not determine s."""
    aug = [(a << 1) | (b & 1) for a, b in zip(rows, labels)]
    # Gaussian elimination on the label-augmented representation.
    pivots: List[int] = []
    reduced: List[int] = []
    for v in aug:
        for piv, row in zip(pivots, reduced):
            if (v >> (piv + 1)) & 1:
                v ^= row
        if v >> 1:
            piv = ((v >> 1) & -(v >> 1)).bit_length() - 1
            k = 0
            while k < len(pivots) and pivots[k] < piv:
                k += 1
            pivots.insert(k, piv)
            reduced.insert(k, v)
    if len(pivots) != n:
        return None
    for k in range(len(reduced)):
        for j in range(len(reduced)):
            if j != k and (reduced[j] >> (pivots[k] + 1)) & 1:
                reduced[j] ^= reduced[k]
    s = 0
    for piv, row in zip(pivots, reduced):
        s |= (row & 1) << piv
    return s


def pooled_gauss_lpn(
    pool: Sequence[LpnSample],
    verifier: Callable[[BitVec], bool],
    rng: np.random.Generator,
    max_loops: int = 1_000_000,
) -> Tuple[BitVec, CostReport]:
    """Repeatedly draw n distinct parity samples, solve the linear system,
    and return the first candidate the verifier accepts."""
    pool = list(pool)
    if not pool:
        raise ValueError("empty pool")
    n = pool[0].a.n
    if len(pool) < n:
        raise ValueError(f"pool of {len(pool)} cannot determine {n} unknowns")
    loops = 0
    while loops < max_loops:
        loops += 1
        idx = _draw_distinct(rng, len(pool), n)
        rows = [pool[i].a.value for i in idx]
        labels = [pool[i].b for i in idx]
        s = _solve_full_rank(rows, labels, n)
        if s is None or s == 0:
            continue
        cand = BitVec(n, s)
        if verifier(cand):
            return cand, CostReport(loops, loops)
    raise SolveFailure(f"no verified secret within {max_loops} loops")


def majority_verifier(
    heldout: Sequence[LpnSample], tau: float
) -> Callable[[BitVec], bool]:
    """Accept a candidate whose held-out mismatch rate is closer to tau than
    to one half."""
    a_vals = np.array([smp.a.value for smp in heldout], dtype=np.int64)
    b_vals = np.array([smp.b for smp in heldout], dtype=np.int64)
    threshold = (tau + 0.5) / 2.0

    def verify(cand: BitVec) -> bool:
        prod = a_vals & cand.value
        par = prod.copy()
        for shift in (32, 16, 8, 4, 2, 1):
            par ^= par >> shift
        mism = ((par & 1) ^ b_vals).mean()
        return bool(mism < threshold)

    return verify


# ---------------------------------------------------------------------------
# Cost models


def _validate_tau(tau: float) -> None:
    if not 0.0 <= tau < 0.5:
        raise ValueError(f"tau={tau} outside [0, 1/2)")


def runtime_exponent_pooled(tau: float) -> float:
    """Per-bit runtime exponent log2(1/(1-tau)) of the plain pooled solver."""
    _validate_tau(tau)
    return math.log2(1.0 / (1.0 - tau))


def runtime_exponent_wellpooled(tau: float) -> float:
    """Per-bit exponent 1 - 1/(1 + log2(1/(1-tau))) of the well-pooled variant."""
    _validate_tau(tau)
    return 1.0 - 1.0 / (1.0 + math.log2(1.0 / (1.0 - tau)))


def independence_probability(dim: int, draws: int) -> float:
    """P[`draws` iid uniform vectors in F_2^dim are linearly independent]."""
    p = 1.0
    for k in range(draws):
        p *= 1.0 - 2.0 ** (k - dim)
    return p


def expected_pooled_lsn_loops(n: int, tau: float) -> float:
    """1 / ((1-tau)^(n-1) * q) where q is the independence probability of
    n-1 uniform draws from the orthogonal subspace."""
    _validate_tau(tau)
    if n == 1:
        return 1.0
    return 1.0 / ((1.0 - tau) ** (n - 1) * independence_probability(n - 1, n - 1))


def expected_pooled_gauss_loops(n: int, tau: float) -> float:
    """1 / ((1-tau)^n * q) with q the invertibility probability of n uniform draws."""
    _validate_tau(tau)
    return 1.0 / ((1.0 - tau) ** n * independence_probability(n, n))
