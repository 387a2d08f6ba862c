"""Bit-vector and matrix arithmetic over F_2 using int bitsets.

Vectors are fixed-length with coordinate 0 stored in the least significant
bit, so the text form ``"011"`` means x_2=0, x_1=1, x_0=1 (most significant
coordinate printed first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence


class DimensionError(ValueError):
    """Operands have incompatible vector lengths."""


class RankError(ValueError):
    """Matrix rank does not admit the requested operation."""


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class BitVec:
    """Element of F_2^n packed into a Python int."""

    n: int
    value: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"negative length {self.n}")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} out of range for n={self.n}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVec":
        """Build from coordinates given most significant first, as printed."""
        value = 0
        for b in bits:
            value = (value << 1) | (b & 1)
        return cls(len(bits), value)

    @classmethod
    def from_string(cls, text: str) -> "BitVec":
        """Parse a text form like ``"011"`` (most significant coordinate first)."""
        if not all(c in "01" for c in text):
            raise ValueError(f"not a bitstring: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVec":
        return cls(n, (1 << n) - 1)

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVec":
        """Standard basis vector e_i."""
        if not 0 <= i < n:
            raise ValueError(f"coordinate {i} out of range for n={n}")
        return cls(n, 1 << i)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"coordinate {i} out of range for n={self.n}")
        return (self.value >> i) & 1

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return BitVec(self.n, self.value ^ other.value)

    __add__ = __xor__

    def __iter__(self) -> Iterator[int]:
        return ((self.value >> i) & 1 for i in range(self.n))

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b") if self.n else ""

    def __repr__(self) -> str:
        return f"BitVec({str(self)!r})"

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def inner(self, other: "BitVec") -> int:
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return _popcount(self.value & other.value) & 1

    def weight(self) -> int:
        return _popcount(self.value)


def inner_product(x: BitVec, y: BitVec) -> int:
    """<x, y> = sum x_i y_i mod 2."""
    return x.inner(y)


def hamming_weight(x: BitVec) -> int:
    return x.weight()


def add(x: BitVec, y: BitVec) -> BitVec:
    """Coordinatewise XOR."""
    return x ^ y


@dataclass(frozen=True)
class Gf2Matrix:
    """List of equal-length rows over F_2."""

    n: int
    rows: tuple

    @classmethod
    def from_rows(cls, rows: Iterable[BitVec], n: int | None = None) -> "Gf2Matrix":
        rows = tuple(rows)
        if n is None:
            if not rows:
                raise ValueError("cannot infer length from an empty matrix")
            n = rows[0].n
        for r in rows:
            if r.n != n:
                raise DimensionError(f"row length {r.n} != {n}")
        return cls(n, rows)

    @classmethod
    def from_ints(cls, values: Iterable[int], n: int) -> "Gf2Matrix":
        return cls(n, tuple(BitVec(n, v) for v in values))

    def row_values(self) -> List[int]:
        return [r.value for r in self.rows]


def _echelon(values: Sequence[int], n: int) -> List[int]:
    """Row echelon basis with deterministic pivoting, lowest bit index first."""
    basis: List[int] = []  # basis[k] has pivot at pivots[k]
    pivots: List[int] = []
    for v in values:
        for piv, row in zip(pivots, basis):
            if (v >> piv) & 1:
                v ^= row
        if v:
            piv = (v & -v).bit_length() - 1
            # insert keeping pivots sorted ascending
            k = 0
            while k < len(pivots) and pivots[k] < piv:
                k += 1
            pivots.insert(k, piv)
            basis.insert(k, v)
    # back-substitute so each pivot column is cleared in the other rows
    for k in range(len(basis)):
        for j in range(len(basis)):
            if j != k and (basis[j] >> pivots[k]) & 1:
                basis[j] ^= basis[k]
    return basis


def rank_ints(values: Sequence[int], n: int) -> int:
    return len(_echelon(values, n))


def rank(m: Gf2Matrix) -> int:
    """Gaussian-elimination rank."""
    return rank_ints(m.row_values(), m.n)


def in_span_ints(values: Sequence[int], y: int, n: int) -> bool:
    basis = _echelon(values, n)
    for row in basis:
        piv = (row & -row).bit_length() - 1
        if (y >> piv) & 1:
            y ^= row
    return y == 0


def in_span(m: Gf2Matrix, y: BitVec) -> bool:
    """True iff y lies in the row span (rank unchanged after appending y)."""
    if y.n != m.n:
        raise DimensionError(f"length mismatch: {y.n} vs {m.n}")
    return in_span_ints(m.row_values(), y.value, m.n)


def nullspace_ints(values: Sequence[int], n: int) -> List[int]:
    """Basis of {x : <x, row> = 0 for all rows}, one vector per free column."""
    basis = _echelon(values, n)
    pivots = [(row & -row).bit_length() - 1 for row in basis]
    pivot_set = set(pivots)
    out = []
    for j in range(n):
        if j in pivot_set:
            continue
        x = 1 << j
        for piv, row in zip(pivots, basis):
            if (row >> j) & 1:
                x |= 1 << piv
        out.append(x)
    return out


def nullspace_period(m: Gf2Matrix) -> BitVec:
    """The unique nonzero s orthogonal to all rows.

    Requires rank n-1 so the nullspace is one-dimensional.
    """
    r = rank(m)
    if r != m.n - 1:
        raise RankError(f"rank {r} != n-1 = {m.n - 1}: nullspace is not 1-dimensional")
    (s,) = nullspace_ints(m.row_values(), m.n)
    return BitVec(m.n, s)


def orthogonal_basis(s: BitVec) -> Gf2Matrix:
    """n-1 independent vectors spanning the subspace orthogonal to s."""
    if s.value == 0:
        raise ValueError("s must be nonzero")
    n = s.n
    i0 = (s.value & -s.value).bit_length() - 1  # lowest set coordinate
    rows = []
    for j in range(n):
        if j == i0:
            continue
        v = 1 << j
        if (s.value >> j) & 1:
            v |= 1 << i0
        rows.append(v)
    return Gf2Matrix.from_ints(rows, n)
