"""Boolean and integer square-matrix algebra.

A :class:`BinaryMatrix` keeps each row as a Python ``int`` bitset (bit ``j`` of
row ``i`` is the entry ``(i, j)``), which makes boolean products a handful of
ORs.  :class:`CountMatrix` is a thin integer wrapper used only where walk counts
matter, e.g. to reproduce integer product tables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterator, Sequence, Union

import numpy as np

from .verdict import Verdict

# Exponent certificates are computed by successive powering; skip beyond this size.
EXPONENT_CERTIFICATE_MAX_N = 64


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class BinaryMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("matrix dimension must be positive")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row bitset out of range")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> BinaryMatrix:
        n = len(rows)
        packed = []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"matrix is not square: row {i} has {len(row)} entries, expected {n}")
            bits = 0
            for j, v in enumerate(row):
                if v not in (0, 1) or isinstance(v, float):
                    raise ValueError(f"entry ({i}, {j}) is {v!r}, expected 0 or 1")
                if v:
                    bits |= 1 << j
            packed.append(bits)
        return cls(n, tuple(packed))

    @classmethod
    def from_array(cls, arr) -> BinaryMatrix:
        a = np.asarray(arr)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square 2-d array, got shape {a.shape}")
        a = a != 0
        n = a.shape[0]
        packed = np.packbits(a, axis=1, bitorder="little")
        rows = tuple(int.from_bytes(packed[i].tobytes(), "little") for i in range(n))
        return cls(n, rows)

    @classmethod
    def identity(cls, n: int) -> BinaryMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> BinaryMatrix:
        return cls(n, (0,) * n)

    @classmethod
    def full(cls, n: int) -> BinaryMatrix:
        return cls(n, ((1 << n) - 1,) * n)

    # -- accessors --------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> list[int]:
        return list(iter_bits(self.rows[i]))

    def to_list(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_list(), dtype=np.int64)

    @property
    def T(self) -> BinaryMatrix:
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in iter_bits(r):
                cols[j] |= 1 << i
        return BinaryMatrix(self.n, tuple(cols))

    def transpose(self) -> BinaryMatrix:
        return self.T

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_full(self) -> bool:
        full = (1 << self.n) - 1
        return all(r == full for r in self.rows)

    def __or__(self, other: BinaryMatrix) -> BinaryMatrix:
        _check_dims(self, other)
        return BinaryMatrix(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: BinaryMatrix) -> BinaryMatrix:
        _check_dims(self, other)
        return BinaryMatrix(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def induced(self, vertices: Sequence[int]) -> BinaryMatrix:
        """Submatrix on ``vertices`` (in the given order)."""
        return BinaryMatrix.from_rows([[self[i, j] for j in vertices] for i in vertices])

    def permuted(self, order: Sequence[int]) -> BinaryMatrix:
        """Matrix re-indexed so that new index ``p`` is old vertex ``order[p]``."""
        if sorted(order) != list(range(self.n)):
            raise ValueError("order must be a permutation of the vertex indices")
        return self.induced(order)

    def __repr__(self) -> str:
        body = "; ".join("".join(str(v) for v in row) for row in self.to_list())
        return f"BinaryMatrix({body})"


@dataclass(frozen=True)
class CountMatrix:
    """Square matrix of non-negative integers (walk counts)."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise ValueError("count matrix must be square")
        if any(v < 0 for r in self.entries for v in r):
            raise ValueError("count matrix entries must be non-negative")

    @classmethod
    def from_array(cls, arr) -> CountMatrix:
        a = np.asarray(arr, dtype=object)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square 2-d array, got shape {a.shape}")
        return cls(a.shape[0], tuple(tuple(int(v) for v in row) for row in a))

    @classmethod
    def of(cls, m: Union[BinaryMatrix, CountMatrix]) -> CountMatrix:
        if isinstance(m, CountMatrix):
            return m
        return cls(m.n, tuple(tuple(row) for row in m.to_list()))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=object)

    def support(self) -> BinaryMatrix:
        return BinaryMatrix.from_rows([[1 if v else 0 for v in row] for row in self.entries])

    @property
    def T(self) -> CountMatrix:
        return CountMatrix(self.n, tuple(zip(*self.entries)))


AnyMatrix = Union[BinaryMatrix, CountMatrix]


def _check_dims(a, b) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def support(m: AnyMatrix) -> BinaryMatrix:
    return m if isinstance(m, BinaryMatrix) else m.support()


# -- products and powers --------------------------------------------------


def bool_product(a: BinaryMatrix, b: BinaryMatrix) -> BinaryMatrix:
    """Support of the matrix product ``a @ b``."""
    _check_dims(a, b)
    out = []
    for r in a.rows:
        acc = 0
        for k in iter_bits(r):
            acc |= b.rows[k]
        out.append(acc)
    return BinaryMatrix(a.n, tuple(out))


def int_product(a: AnyMatrix, b: AnyMatrix) -> CountMatrix:
    _check_dims(a, b)
    x, y = CountMatrix.of(a), CountMatrix.of(b)
    n = x.n
    cols = list(zip(*y.entries))
    return CountMatrix(
        n, tuple(tuple(sum(p * q for p, q in zip(x.entries[i], cols[j])) for j in range(n)) for i in range(n))
    )


def int_power(a: AnyMatrix, k: int) -> CountMatrix:
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = CountMatrix.of(BinaryMatrix.identity(a.n))
    base = CountMatrix.of(a)
    while k:
        if k & 1:
            result = int_product(result, base)
        k >>= 1
        if k:
            base = int_product(base, base)
    return result


def bool_power(a: BinaryMatrix, k: int) -> BinaryMatrix:
    """Support of ``a**k`` by repeated squaring; ``a**0`` is the identity."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = BinaryMatrix.identity(a.n)
    base = a
    while k:
        if k & 1:
            result = bool_product(result, base)
        k >>= 1
        if k:
            base = bool_product(base, base)
    return result


def closure(a: BinaryMatrix, reflexive: bool = False) -> BinaryMatrix:
    """Transitive closure (walks of length >= 1); with ``reflexive`` also length 0."""
    rows = list(a.rows)
    for k in range(a.n):
        bit = 1 << k
        rk = rows[k]
        for i in range(a.n):
            if rows[i] & bit:
                rows[i] |= rk
    out = BinaryMatrix(a.n, tuple(rows))
    if reflexive:
        out = out | BinaryMatrix.identity(a.n)
    return out


# -- predicates -----------------------------------------------------------


def is_permutation(a: BinaryMatrix) -> bool:
    if any(r == 0 or r & (r - 1) for r in a.rows):
        return False
    return reduce(lambda x, y: x | y, a.rows, 0) == (1 << a.n) - 1


def commutes(a: AnyMatrix, b: AnyMatrix) -> bool:
    """Exact (integer) commutation ``ab == ba``."""
    _check_dims(a, b)
    return int_product(a, b) == int_product(b, a)


def _reach(rows: Sequence[int], start: int) -> int:
    """Bitset of vertices reachable from ``start`` by walks of length >= 0."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def is_irreducible(a: BinaryMatrix) -> Verdict:
    """Every ordered pair (i, j) is joined by a walk of length >= 1.

    On failure the certificate holds a witness ``pair`` with no walk.
    """
    n = a.n
    if n == 1:
        if a.rows[0] & 1:
            return Verdict.yes()
        return Verdict.no("no walk of positive length", pair=[0, 0])
    full = (1 << n) - 1
    fwd = _reach(a.rows, 0)
    if fwd != full:
        j = next(iter_bits(full & ~fwd))
        return Verdict.no("vertex not reachable", pair=[0, j])
    back = _reach(a.T.rows, 0)
    if back != full:
        i = next(iter_bits(full & ~back))
        return Verdict.no("vertex cannot reach", pair=[i, 0])
    return Verdict.yes()


def period(a: BinaryMatrix) -> int:
    """Period (gcd of cycle lengths) of an irreducible matrix."""
    level = [-1] * a.n
    level[0] = 0
    queue = deque([0])
    g = 0
    while queue:
        u = queue.popleft()
        for v in iter_bits(a.rows[u]):
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
            else:
                g = gcd(g, level[u] + 1 - level[v])
    return g


def primitivity_exponent(a: BinaryMatrix) -> int | None:
    """Least k with ``a**k`` all-positive, searched up to the Wielandt bound."""
    n = a.n
    bound = n * n - 2 * n + 2
    p = a
    for k in range(1, bound + 1):
        if p.is_full():
            return k
        p = bool_product(p, a)
    return None


def is_primitive(a: BinaryMatrix) -> Verdict:
    """Irreducible with aperiodic cycle structure (cycle-length gcd 1)."""
    irr = is_irreducible(a)
    if not irr.is_yes:
        return Verdict.no("not irreducible", **irr.certificate)
    d = period(a)
    if d != 1:
        return Verdict.no("cycle lengths share a common divisor", period=d)
    if a.n <= EXPONENT_CERTIFICATE_MAX_N:
        return Verdict.yes(period=1, exponent=primitivity_exponent(a))
    return Verdict.yes(period=1)


def first_difference(a: BinaryMatrix, b: BinaryMatrix) -> tuple[int, int] | None:
    _check_dims(a, b)
    for i, (x, y) in enumerate(zip(a.rows, b.rows)):
        diff = x ^ y
        if diff:
            return i, next(iter_bits(diff))
    return None
