"""Tensor and Cartesian graph products, and recognizing a graph as one.

Vertex ``(a, b)`` of a product is placed at index ``a * r2 + b``.  A
factorization assigns every vertex of the input to a cell ``(outer, inner)`` of
an ``r1 x r2`` grid; the outer and inner factor entries are then forced by the
edges, and the search backtracks as soon as two edges disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .budget import BudgetExceeded, Counter, default_budget
from .graph import Graph2D, SymbolSet
from .matrices import BinaryMatrix

TENSOR = "tensor"
CARTESIAN = "cartesian"
MODES = (TENSOR, CARTESIAN)


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def tensor_product(a1: BinaryMatrix, a2: BinaryMatrix) -> BinaryMatrix:
    return BinaryMatrix.from_array(np.kron(a1.to_array(), a2.to_array()))


def cartesian_product(a1: BinaryMatrix, a2: BinaryMatrix) -> BinaryMatrix:
    i1, i2 = np.eye(a1.n, dtype=np.int64), np.eye(a2.n, dtype=np.int64)
    return BinaryMatrix.from_array(np.kron(i1, a2.to_array()) + np.kron(a1.to_array(), i2))


def product(a1: BinaryMatrix, a2: BinaryMatrix, mode: str) -> BinaryMatrix:
    _check_mode(mode)
    return tensor_product(a1, a2) if mode == TENSOR else cartesian_product(a1, a2)


def product_2d(g1: Graph2D, g2: Graph2D, mode: str) -> Graph2D:
    """Componentwise product; the symbol of vertex (a, b) is labelled ``(a,b)``."""
    labels = tuple(f"({a},{b})" for a in g1.symbols.names for b in g2.symbols.names)
    return Graph2D(SymbolSet(labels), product(g1.H, g2.H, mode), product(g1.V, g2.V, mode))


@dataclass(frozen=True)
class FactorizationResult:
    """``A`` reordered by ``permutation`` equals ``product(outer, inner)``.

    ``permutation[p]`` is the original vertex placed at product index ``p``.
    """

    mode: str
    r1: int
    r2: int
    permutation: tuple[int, ...]
    outer: BinaryMatrix
    inner: BinaryMatrix
    trivial: bool = False

    def recompose(self) -> BinaryMatrix:
        return product(self.outer, self.inner, self.mode)

    def reproduces(self, a: BinaryMatrix) -> bool:
        return a.permuted(self.permutation) == self.recompose()

    def cell(self, vertex: int) -> tuple[int, int]:
        p = self.permutation.index(vertex)
        return divmod(p, self.r2)

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "r1": self.r1,
            "r2": self.r2,
            "permutation": list(self.permutation),
            "outer": self.outer.to_list(),
            "inner": self.inner.to_list(),
            "trivial": self.trivial,
        }


@dataclass(frozen=True)
class FactorizationList:
    results: tuple
    budget_exceeded: bool = False

    def __iter__(self):
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def __getitem__(self, i):
        return self.results[i]

    def nontrivial(self) -> list:
        return [r for r in self.results if not _first(r).trivial]


def _first(r):
    return r[0] if isinstance(r, tuple) else r


def trivial_factorization(a: BinaryMatrix, mode: str) -> FactorizationResult:
    inner = BinaryMatrix.full(1) if mode == TENSOR else BinaryMatrix.zeros(1)
    return FactorizationResult(mode, a.n, 1, tuple(range(a.n)), a, inner, trivial=True)


class _Conflict(Exception):
    pass


class _FactorState:
    """Tri-state outer/inner entries (-1 unknown) forced by one matrix's edges."""

    def __init__(self, a: BinaryMatrix, r1: int, r2: int, mode: str):
        self.a = a
        self.mode = mode
        self.O = [[-1] * r1 for _ in range(r1)]
        self.B = [[-1] * r2 for _ in range(r2)]
        self.pending: list[tuple[tuple[int, int], tuple[int, int]]] = []  # tensor: not both 1 / cartesian loops: at least one 1

    def snapshot(self):
        return [r[:] for r in self.O], [r[:] for r in self.B], len(self.pending)

    def restore(self, snap) -> None:
        o, b, k = snap
        self.O, self.B = o, b
        del self.pending[k:]

    @staticmethod
    def _set(m, i, j, val) -> bool:
        cur = m[i][j]
        if cur == val:
            return False
        if cur != -1:
            raise _Conflict
        m[i][j] = val
        return True

    def add_pair(self, v: int, cv: tuple[int, int], w: int, cw: tuple[int, int]) -> None:
        val = self.a[v, w]
        (ov, iv), (ow, iw) = cv, cw
        if self.mode == TENSOR:
            if val:
                self._set(self.O, ov, ow, 1)
                self._set(self.B, iv, iw, 1)
            else:
                self.pending.append(((ov, ow), (iv, iw)))
            return
        if ov != ow and iv != iw:
            if val:
                raise _Conflict
        elif ov == ow and iv != iw:
            self._set(self.B, iv, iw, val)
        elif ov != ow:
            self._set(self.O, ov, ow, val)
        elif not val:
            self._set(self.O, ov, ov, 0)
            self._set(self.B, iv, iv, 0)
        else:
            self.pending.append(((ov, ov), (iv, iv)))

    def propagate(self) -> None:
        changed = True
        while changed:
            changed = False
            for (oi, oj), (bi, bj) in self.pending:
                o, b = self.O[oi][oj], self.B[bi][bj]
                if self.mode == TENSOR:
                    if o == 1 and b == 1:
                        raise _Conflict
                    if o == 1 and b == -1:
                        changed |= self._set(self.B, bi, bj, 0)
                    elif b == 1 and o == -1:
                        changed |= self._set(self.O, oi, oj, 0)
                else:
                    if o == 0 and b == 0:
                        raise _Conflict
                    if o == 0 and b == -1:
                        changed |= self._set(self.B, bi, bj, 1)
                    elif b == 0 and o == -1:
                        changed |= self._set(self.O, oi, oj, 1)

    def finish(self) -> tuple[BinaryMatrix, BinaryMatrix]:
        """Resolve leftover unknowns; inner loops win when every copy is looped."""
        if self.mode == CARTESIAN:
            for i in range(len(self.B)):
                if self.B[i][i] == -1:
                    self.B[i][i] = 1
        o = BinaryMatrix.from_rows([[max(x, 0) for x in r] for r in self.O])
        b = BinaryMatrix.from_rows([[max(x, 0) for x in r] for r in self.B])
        return o, b


def _search_split(
    mats: Sequence[BinaryMatrix],
    r1: int,
    r2: int,
    mode: str,
    counter: Counter,
    fixed: Sequence[int] | None,
) -> list[tuple[FactorizationResult, ...]]:
    n = r1 * r2
    states = [_FactorState(a, r1, r2, mode) for a in mats]
    cell_of: list[tuple[int, int] | None] = [None] * n
    used: set[tuple[int, int]] = set()
    found = []

    if fixed is not None:
        forced = {v: divmod(p, r2) for p, v in enumerate(fixed)}

    def place(v: int, c: tuple[int, int]) -> bool:
        cell_of[v] = c
        try:
            for st in states:
                for w in range(v + 1):
                    cw = cell_of[w]
                    st.add_pair(v, c, w, cw)
                    if w != v:
                        st.add_pair(w, cw, v, c)
                st.propagate()
        except _Conflict:
            return False
        return True

    def emit() -> None:
        perm = [0] * n
        for v, (o, i) in enumerate(cell_of):
            perm[o * r2 + i] = v
        out = []
        for st, a in zip(states, mats):
            outer, inner = st.finish()
            if mode == TENSOR and (inner.is_zero() or outer.is_zero()):
                return
            res = FactorizationResult(mode, r1, r2, tuple(perm), outer, inner)
            if not res.reproduces(a):
                return
            out.append(res)
        found.append(tuple(out))

    def rec(v: int, max_o: int, max_i: int) -> None:
        if v == n:
            emit()
            return
        if fixed is not None:
            choices = [forced[v]]
        else:
            choices = [
                (o, i)
                for o in range(min(max_o + 2, r1))
                for i in range(min(max_i + 2, r2))
                if (o, i) not in used
            ]
        for c in choices:
            counter.tick()
            snaps = [st.snapshot() for st in states]
            if place(v, c):
                used.add(c)
                rec(v + 1, max(max_o, c[0]), max(max_i, c[1]))
                used.discard(c)
            cell_of[v] = None
            for st, s in zip(states, snaps):
                st.restore(s)

    rec(0, -1, -1)
    return found


def _factorize(mats: Sequence[BinaryMatrix], mode: str, fixed: Sequence[int] | None, budget: int | None):
    _check_mode(mode)
    n = mats[0].n
    if fixed is not None and sorted(fixed) != list(range(n)):
        raise ValueError("fixed permutation must be a permutation of the vertex indices")
    counter = Counter(default_budget() if budget is None else budget, "factorization search")
    results = []
    exceeded = False
    skip = mode == TENSOR and any(a.is_zero() for a in mats)
    for r1 in range(2, n):
        if n % r1 or skip:
            continue
        try:
            results.extend(_search_split(mats, r1, n // r1, mode, counter, fixed))
        except BudgetExceeded:
            exceeded = True
            break
    results.sort(key=lambda r: (r[0].r1, r[0].permutation))
    results.append(tuple(trivial_factorization(a, mode) for a in mats))
    return results, exceeded


def tensor_factorize(
    a: BinaryMatrix, constraints: Sequence[int] | None = None, budget: int | None = None
) -> FactorizationList:
    """All ways to write ``a`` (after reordering) as a tensor product.

    Every split ``n = r1 * r2`` is searched; each distinct grid arrangement of
    the vertices is reported once.  ``constraints`` pins the vertex order.
    The trivial factorization with inner factor ``[1]`` comes last.
    """
    res, exceeded = _factorize([a], TENSOR, constraints, budget)
    return FactorizationList(tuple(r[0] for r in res), exceeded)


def cartesian_factorize(
    a: BinaryMatrix, constraints: Sequence[int] | None = None, budget: int | None = None
) -> FactorizationList:
    """As :func:`tensor_factorize`, for the Cartesian product (trivial inner factor ``[0]``)."""
    res, exceeded = _factorize([a], CARTESIAN, constraints, budget)
    return FactorizationList(tuple(r[0] for r in res), exceeded)


def factorize(a: BinaryMatrix, mode: str, **kw) -> FactorizationList:
    _check_mode(mode)
    return tensor_factorize(a, **kw) if mode == TENSOR else cartesian_factorize(a, **kw)


def factorize_2d(
    g: Graph2D, mode: str, constraints: Sequence[int] | None = None, budget: int | None = None
) -> FactorizationList:
    """Factorizations sharing one vertex order and split for both H and V."""
    res, exceeded = _factorize([g.H, g.V], mode, constraints, budget)
    return FactorizationList(tuple(res), exceeded)
