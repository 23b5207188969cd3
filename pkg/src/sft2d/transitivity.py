"""Transitivity of one-dimensional graph shifts.

A graph shift is transitive exactly when its adjacency matrix is irreducible,
or when the graph consists of two simple cycles joined by a single walk that
passes through every remaining vertex once.  The second case comes with a
:class:`BlockCertificate`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .matrices import BinaryMatrix, is_irreducible, is_permutation, iter_bits
from .verdict import Verdict

A1_TO_A2 = "a1_to_a2"
A2_TO_A1 = "a2_to_a1"


def scc_decompose(a: BinaryMatrix) -> list[list[int]]:
    """Strongly connected components, sources of the condensation first.

    Iterative Tarjan; vertices and neighbours are visited in increasing order so
    the output is deterministic.  Each component is returned sorted.
    """
    n = a.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    succ = [list(iter_bits(r)) for r in a.rows]

    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            descended = False
            nbrs = succ[v]
            while pos < len(nbrs):
                w = nbrs[pos]
                pos += 1
                if index[w] < 0:
                    work.append((v, pos))
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    out.reverse()
    return out


@dataclass(frozen=True)
class BlockCertificate:
    """Two simple cycles and the unique walk joining them.

    ``bridge`` starts at the exit vertex of the source cycle, ends at the entry
    vertex of the sink cycle, and lists every other vertex in between.
    """

    a1: tuple[int, ...]
    a2: tuple[int, ...]
    bridge: tuple[int, ...]
    orientation: str

    @property
    def source(self) -> tuple[int, ...]:
        return self.a1 if self.orientation == A1_TO_A2 else self.a2

    @property
    def sink(self) -> tuple[int, ...]:
        return self.a2 if self.orientation == A1_TO_A2 else self.a1

    def to_dict(self) -> dict[str, Any]:
        return {
            "a1": list(self.a1),
            "a2": list(self.a2),
            "bridge": list(self.bridge),
            "orientation": self.orientation,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> BlockCertificate:
        return cls(tuple(d["a1"]), tuple(d["a2"]), tuple(d["bridge"]), d["orientation"])

    def validate(self, a: BinaryMatrix) -> list[str]:
        """Re-check every structural claim against ``a``; returns the violations."""
        problems = []
        s1, s2 = set(self.a1), set(self.a2)
        if not s1 or not s2:
            problems.append("empty cycle set")
        if s1 & s2:
            problems.append("cycle sets overlap")
        for name, cyc in (("a1", self.a1), ("a2", self.a2)):
            if cyc:
                sub = a.induced(list(cyc))
                if not (is_permutation(sub) and is_irreducible(sub).is_yes):
                    problems.append(f"{name} is not a single cycle")
        rest = set(range(a.n)) - s1 - s2
        inner = list(self.bridge[1:-1])
        if len(self.bridge) < 2:
            problems.append("bridge must contain at least the exit and entry vertices")
        else:
            if self.bridge[0] not in set(self.source) or self.bridge[-1] not in set(self.sink):
                problems.append("bridge does not run from source cycle to sink cycle")
            if sorted(inner) != sorted(rest) or len(set(inner)) != len(inner):
                problems.append("bridge does not visit every remaining vertex exactly once")
            for u, v in zip(self.bridge, self.bridge[1:]):
                if not a[u, v]:
                    problems.append(f"bridge step {u}->{v} is not an edge")
        if not problems and count_connecting_walks(a, self.source, self.sink, rest) != 1:
            problems.append("connecting walk is not unique")
        return problems


def _is_cycle_component(a: BinaryMatrix, comp: Sequence[int]) -> bool:
    sub = a.induced(list(comp))
    return is_permutation(sub) and is_irreducible(sub).is_yes


def _has_internal_edge(a: BinaryMatrix, comp: Sequence[int]) -> bool:
    return len(comp) > 1 or bool(a[comp[0], comp[0]])


def count_connecting_walks(a, src, snk, middle, cap: int = 2) -> int:
    """Number of walks leaving ``src`` and first entering ``snk`` through ``middle``.

    Walks may only pass through ``middle`` vertices.  Counts saturate at ``cap``.
    """
    src_mask = sum(1 << v for v in src)
    snk_mask = sum(1 << v for v in snk)
    mid = set(middle)
    # walks ending at each middle vertex; middle vertices form a DAG, relax to fixpoint
    ends: dict[int, int] = {}
    order = _topo_order(a, mid)
    total = 0
    for u in src:
        row = a.rows[u]
        total += (row & snk_mask).bit_count()
    for t in order:
        c = sum(1 for u in src if a[u, t])
        c += sum(ends[p] for p in order if p in ends and a[p, t])
        ends[t] = min(c, cap)
        total += ends[t] * (a.rows[t] & snk_mask).bit_count()
    return min(total, cap)


def _topo_order(a: BinaryMatrix, vertices: set[int]) -> list[int]:
    """Topological order of an acyclic vertex subset (Kahn, smallest index first)."""
    indeg = {v: 0 for v in vertices}
    for u in vertices:
        for v in iter_bits(a.rows[u]):
            if v in indeg and v != u:
                indeg[v] += 1
    ready = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    while ready:
        u = ready.pop(0)
        order.append(u)
        for v in iter_bits(a.rows[u]):
            if v in indeg and v != u:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
                    ready.sort()
    return order


def _unique_walk(a: BinaryMatrix, src, snk, middle) -> tuple[int, ...]:
    """Reconstruct the connecting walk; assumes there is exactly one."""
    mid = set(middle)
    snk_set = set(snk)

    def extend(walk: list[int]) -> list[int] | None:
        for w in iter_bits(a.rows[walk[-1]]):
            if w in snk_set:
                return walk + [w]
            if w in mid and w not in walk:
                found = extend(walk + [w])
                if found:
                    return found
        return None

    for u in src:
        found = extend([u])
        if found:
            return tuple(found)
    raise AssertionError("no connecting walk")


def is_transitive_1d(a: BinaryMatrix) -> Verdict:
    """Decide transitivity of the one-dimensional shift of walks on ``a``.

    Certificate keys: ``branch`` is ``"irreducible"`` or ``"block"``; the block
    branch adds ``a1``, ``a2``, ``bridge`` and ``orientation``.
    """
    if is_irreducible(a).is_yes:
        return Verdict.yes(branch="irreducible")

    comps = scc_decompose(a)
    cyclic = [c for c in comps if _has_internal_edge(a, c)]
    trivial = [c[0] for c in comps if not _has_internal_edge(a, c)]
    if len(cyclic) != 2:
        return Verdict.no(f"reducible with {len(cyclic)} cyclic components (need 2)", components=comps)
    for c in cyclic:
        if not _is_cycle_component(a, c):
            return Verdict.no("a cyclic component is not a single cycle", component=c)

    a1, a2 = sorted(cyclic, key=min)
    fwd = count_connecting_walks(a, a1, a2, trivial)
    back = count_connecting_walks(a, a2, a1, trivial)
    if fwd + back == 0:
        return Verdict.no("the two cycles are not connected", a1=a1, a2=a2)
    if fwd > 1 or back > 1:
        return Verdict.no("connecting walk is not unique", a1=a1, a2=a2)
    orientation = A1_TO_A2 if fwd == 1 else A2_TO_A1
    src, snk = (a1, a2) if fwd == 1 else (a2, a1)
    bridge = _unique_walk(a, src, snk, trivial)
    if sorted(bridge[1:-1]) != sorted(trivial):
        missed = sorted(set(trivial) - set(bridge))
        return Verdict.no("some vertices lie off the connecting walk", a1=a1, a2=a2, off_walk=missed)
    cert = BlockCertificate(tuple(a1), tuple(a2), bridge, orientation)
    return Verdict.yes(branch="block", **cert.to_dict())
