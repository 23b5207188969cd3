"""Two-dimensional verdicts computed from the matrix pair (H, V).

Most criteria here are sufficient only: when they do not apply the answer is
``unknown`` and the brute-force oracle is the place to look for a ``no``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .graph import Direction, Graph2D, swap_condition
from .matrices import (
    BinaryMatrix,
    CountMatrix,
    bool_power,
    bool_product,
    closure,
    commutes,
    int_power,
    int_product,
    is_irreducible,
    is_permutation,
    is_primitive,
    iter_bits,
)
from .oracle import Pattern, PeriodicOrbit, canonical_domain
from .strips import (
    DEFAULT_K_MAX,
    StripCapError,
    horizontal_doubly_transitive_upto,
    horizontal_transitive_upto,
    strip_summary,
    vertical_doubly_transitive_upto,
    vertical_transitive_upto,
    vertical_weak_mixing_check,
)
from .transitivity import is_transitive_1d
from .verdict import Verdict

HV = "hv"  # M_H(r) . M_V(s)
VH = "vh"  # M_V(s) . M_H(r)

COVERING_WALK_MAX_N = 16


class EmptyShiftError(ValueError):
    """No closed walk exists where one is required, so the shift is empty."""


# -- connectedness and the single-orbit case --------------------------------


def is_connected_2d(g: Graph2D) -> Verdict:
    """Every ordered pair is joined by some H^r V^s walk with (r, s) != (0, 0)."""
    reach = bool_product(closure(g.H), closure(g.V, reflexive=True)) | closure(g.V)
    full = (1 << g.n) - 1
    for i, row in enumerate(reach.rows):
        if row != full:
            j = next(iter_bits(full & ~row))
            return Verdict.no("no H^r V^s walk joins the pair", pair=[i, j])
    return Verdict.yes()


def _permutation_map(m: BinaryMatrix) -> list[int]:
    return [next(iter_bits(r)) for r in m.rows]


def _cycle_length(perm: Sequence[int], start: int) -> int:
    k, x = 1, perm[start]
    while x != start:
        x = perm[x]
        k += 1
    return k


def single_orbit(g: Graph2D, seed: int = 0) -> PeriodicOrbit:
    """The configuration forced by commuting permutation matrices from ``seed``.

    Cell (a, b) holds ``pi_H^a pi_V^b (seed)``; the minimal periods are the cycle
    lengths of the seed under each permutation.
    """
    ph, pv = _permutation_map(g.H), _permutation_map(g.V)
    p, q = _cycle_length(ph, seed), _cycle_length(pv, seed)
    rows = []
    col0 = seed
    for _ in range(q):
        row, x = [], col0
        for _ in range(p):
            row.append(x)
            x = ph[x]
        rows.append(row)
        col0 = pv[col0]
    domain = canonical_domain(rows)
    return PeriodicOrbit(len(domain[0]), len(domain), Pattern(domain))


def _permutation_pair(g: Graph2D) -> Verdict:
    if not is_permutation(g.H):
        return Verdict.no("H is not a permutation matrix")
    if not is_permutation(g.V):
        return Verdict.no("V is not a permutation matrix")
    if not commutes(g.H, g.V):
        return Verdict.no("H and V do not commute")
    return Verdict.yes()


def single_orbit_check(g: Graph2D) -> Verdict:
    """Commuting permutations with one of them irreducible: a single periodic orbit.

    On ``yes`` the certificate carries the fundamental domain (top row first,
    symbol indices) and its horizontal and vertical periods.
    """
    base = _permutation_pair(g)
    if not base.is_yes:
        return base
    if not (is_irreducible(g.H).is_yes or is_irreducible(g.V).is_yes):
        return Verdict.no("neither H nor V is irreducible")
    orbit = single_orbit(g)
    return Verdict.yes(
        "single periodic orbit",
        horizontal_period=orbit.horizontal_period,
        vertical_period=orbit.vertical_period,
        domain=orbit.domain.top_rows(),
    )


def _symbol_orbits(g: Graph2D) -> list[list[int]]:
    """Orbits of the symbol set under the group generated by two permutations."""
    ph, pv = _permutation_map(g.H), _permutation_map(g.V)
    seen: set[int] = set()
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        orbit, stack = {s}, [s]
        while stack:
            x = stack.pop()
            for y in (ph[x], pv[x]):
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        seen |= orbit
        out.append(sorted(orbit))
    return out


def is_transitive_2d(g: Graph2D) -> Verdict:
    """Sufficient criteria for transitivity, plus one exact negative case.

    The negative case is a pair of commuting permutations whose symbols split
    into several orbits: the shift is then a finite union of periodic orbits,
    each clopen, so it cannot be transitive.
    """
    sw = swap_condition(g)
    if sw.is_yes:
        if is_irreducible(g.H).is_yes:
            return Verdict.yes("H is irreducible and the swap condition holds", branch="H irreducible")
        if is_irreducible(g.V).is_yes:
            return Verdict.yes("V is irreducible and the swap condition holds", branch="V irreducible")
        if is_connected_2d(g).is_yes:
            return Verdict.yes("connected and the swap condition holds", branch="connected")
    if _permutation_pair(g).is_yes:
        orbits = _symbol_orbits(g)
        if len(orbits) > 1:
            return Verdict.no(
                "finitely many configurations forming several orbits",
                orbit_alphabets=orbits,
                configurations=[single_orbit(g, o[0]).domain.top_rows() for o in orbits],
            )
    return Verdict.unknown("criteria are sufficient only", swap_condition=sw.answer.value)


# -- directional products ---------------------------------------------------


@dataclass(frozen=True)
class DirectionalProduct:
    direction: Direction
    matrix: CountMatrix
    ordering: str

    def to_dict(self) -> dict[str, Any]:
        return {"direction": self.direction.as_list(), "ordering": self.ordering, "matrix": self.matrix.to_list()}


def _signed_power(m: BinaryMatrix, e: int) -> CountMatrix:
    return int_power(m if e >= 0 else m.T, abs(e))


def directional_product(g: Graph2D, d: Direction, ordering: str = HV) -> DirectionalProduct:
    """``M_H(r) M_V(s)`` (ordering "hv") or ``M_V(s) M_H(r)`` (ordering "vh").

    Negative exponents use the transpose.
    """
    if ordering not in (HV, VH):
        raise ValueError(f"ordering must be {HV!r} or {VH!r}")
    mh, mv = _signed_power(g.H, d.r), _signed_power(g.V, d.s)
    mat = int_product(mh, mv) if ordering == HV else int_product(mv, mh)
    return DirectionalProduct(d, mat, ordering)


def _abs_support(g: Graph2D, d: Direction) -> BinaryMatrix:
    return bool_product(bool_power(g.H, abs(d.r)), bool_power(g.V, abs(d.s)))


def _same_sign_pre(g: Graph2D, d: Direction) -> Verdict | None:
    if d.r * d.s <= 0:
        return Verdict.unknown("direction must have r*s > 0", direction=d.as_list())
    sw = swap_condition(g)
    if not sw.is_yes:
        return Verdict.unknown("swap condition fails", swap_pair=sw.certificate["pair"])
    return None


def is_doubly_transitive_dir(g: Graph2D, d: Direction) -> Verdict:
    pre = _same_sign_pre(g, d)
    if pre:
        return pre
    v = is_irreducible(_abs_support(g, d))
    if v.is_yes:
        return Verdict.yes("H^|r| V^|s| is irreducible", direction=d.as_list())
    return Verdict.no("H^|r| V^|s| is reducible", direction=d.as_list(), **v.certificate)


def is_weak_mixing_dir(g: Graph2D, d: Direction) -> Verdict:
    pre = _same_sign_pre(g, d)
    if pre:
        return pre
    v = is_primitive(_abs_support(g, d))
    if v.is_yes:
        return Verdict.yes("H^|r| V^|s| is primitive", direction=d.as_list(), **v.certificate)
    return Verdict.no("H^|r| V^|s| is not primitive", direction=d.as_list(), **v.certificate)


def is_transitive_dir(g: Graph2D, d: Direction) -> Verdict:
    if d.r < 0 or d.s < 0:
        return Verdict.unknown("direction must have r, s >= 0", direction=d.as_list())
    sw = swap_condition(g)
    if not sw.is_yes:
        return Verdict.unknown("swap condition fails", swap_pair=sw.certificate["pair"])
    v = is_transitive_1d(_abs_support(g, d))
    return Verdict(v.answer, v.reason, {"direction": d.as_list(), **v.certificate})


def anisotropy_check(g: Graph2D, d: Direction) -> dict[str, Any]:
    """Compare both orderings of a directional product (meaningful for r*s < 0)."""
    lhs = directional_product(g, d, HV).matrix
    rhs = directional_product(g, d, VH).matrix
    return {"direction": d.as_list(), "equal": lhs == rhs, "lhs": lhs, "rhs": rhs}


# -- direction discovery ----------------------------------------------------


def _shortest_cycle_through(m: BinaryMatrix, v: int) -> int | None:
    dist = {v: 0}
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for w in iter_bits(m.rows[u]):
                if w == v:
                    return dist[u] + 1
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return None


def shortest_covering_closed_walk(m: BinaryMatrix, start: int) -> int | None:
    """Length of the shortest closed walk at ``start`` visiting every vertex.

    Breadth-first search over (vertex, visited-set) states.
    """
    n = m.n
    if n > COVERING_WALK_MAX_N:
        raise ValueError(f"covering walk search supports at most {COVERING_WALK_MAX_N} symbols, got {n}")
    full = (1 << n) - 1
    seen = bytearray(n << n)
    frontier = [(start, 1 << start)]
    seen[(1 << start) * n + start] = 1
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for u, mask in frontier:
            for w in iter_bits(m.rows[u]):
                nm = mask | (1 << w)
                if w == start and nm == full:
                    return depth
                key = nm * n + w
                if not seen[key]:
                    seen[key] = 1
                    nxt.append((w, nm))
        frontier = nxt
    return None


def find_transitive_direction(g: Graph2D) -> tuple[Direction | None, Verdict]:
    """Construct a direction (r, s) with ``H^r V^s`` irreducible.

    Take the shortest closed V-walk length ``m`` at some symbol ``i`` and the
    shortest closed H-walk ``L`` at ``i`` covering all symbols; then check the
    candidates (L, m) and (L + 1, m).  Roles of H and V are exchanged when only
    V is irreducible.
    """
    sw = swap_condition(g)
    if not sw.is_yes:
        return None, Verdict.unknown("swap condition fails", swap_pair=sw.certificate["pair"])
    if is_irreducible(g.H).is_yes:
        walker, cycler, swapped = g.H, g.V, False
    elif is_irreducible(g.V).is_yes:
        walker, cycler, swapped = g.V, g.H, True
    else:
        return None, Verdict.unknown("neither H nor V is irreducible")

    best: tuple[int, int] | None = None
    for i in range(g.n):
        c = _shortest_cycle_through(cycler, i)
        if c is not None and (best is None or c < best[0]):
            best = (c, i)
    if best is None:
        raise EmptyShiftError("horizontal shift empty" if swapped else "vertical shift empty")
    m, i = best
    walk = shortest_covering_closed_walk(walker, i)
    assert walk is not None, "irreducible matrices have covering closed walks"

    tried = []
    for length in (walk, walk + 1):
        d = Direction(m, length) if swapped else Direction(length, m)
        ok = is_irreducible(_abs_support(g, d)).is_yes
        tried.append({"direction": d.as_list(), "irreducible": ok})
        if ok:
            return d, Verdict.yes(
                "H^r V^s verified irreducible",
                direction=d.as_list(),
                symbol=i,
                cycle_length=m,
                covering_walk_length=walk,
                tried=tried,
            )
    return None, Verdict.unknown("no candidate verified", symbol=i, tried=tried)


# -- full report ------------------------------------------------------------

CITATIONS = {
    "swap_condition": "swap condition: support(HV) = support(VH)",
    "irreducible_H": "H irreducible",
    "irreducible_V": "V irreducible",
    "primitive_H": "H primitive",
    "primitive_V": "V primitive",
    "permutation_H": "H is a permutation matrix",
    "permutation_V": "V is a permutation matrix",
    "commutes": "HV = VH as integer matrices",
    "connected": "connectedness: every pair joined by some H^r V^s walk",
    "single_orbit": "commuting permutations with one irreducible give a single periodic orbit",
    "transitive": "swap condition with H or V irreducible, or a connected graph, implies transitivity",
    "doubly_transitive": "doubly (r,s)-transitive iff H^r V^s irreducible (swap condition, rs > 0)",
    "weak_mixing": "(r,s)-weak mixing iff H^r V^s primitive (swap condition, rs > 0)",
    "transitive_dir": "(r,s)-transitive iff the one-dimensional shift of H^r V^s is transitive",
    "anisotropy": "mixed-sign direction: compares M_H(r) M_V(s) with M_V(s) M_H(r); diagnostic only",
    "find_direction": "an irreducible H (or V) yields a doubly transitive direction",
    "strips_h_doubly": "horizontally doubly transitive iff every H_k irreducible (checked up to k_max)",
    "strips_h_transitive": "horizontally transitive iff every H_k passes the one-dimensional criterion, uniformly",
    "strips_v_doubly": "vertically doubly transitive iff every V_k irreducible (checked up to k_max)",
    "strips_v_transitive": "vertically transitive iff every V_k passes the one-dimensional criterion, uniformly",
    "strips_v_weak_mixing": "with H primitive, vertical weak mixing equals vertical double transitivity",
}


@dataclass(frozen=True)
class CheckRecord:
    name: str
    verdict: Verdict
    citation: str

    def to_dict(self) -> dict[str, Any]:
        d = self.verdict.to_dict()
        return {"name": self.name, "citation": self.citation, **d}


@dataclass
class AnalysisReport:
    symbols: list[str]
    checks: list[CheckRecord] = field(default_factory=list)
    strips: list[dict[str, Any]] = field(default_factory=list)

    def add(self, name: str, verdict: Verdict, citation_key: str) -> None:
        if any(c.name == name for c in self.checks):
            raise ValueError(f"duplicate check {name!r}")
        self.checks.append(CheckRecord(name, verdict, CITATIONS[citation_key]))

    def get(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {"symbols": self.symbols, "checks": [c.to_dict() for c in self.checks], "strips": self.strips}

    def to_text(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"{c.name.ljust(width)}  {c.verdict.answer.value:<7}  {c.verdict.reason}".rstrip() for c in self.checks]
        for s in self.strips:
            state = {True: "irreducible", False: "reducible", None: s.get("error", "")}[s["irreducible"]]
            lines.append(f"strip {s['kind']}_{s['k']}: {state}")
        return "\n".join(lines)


def _flag(ok: bool, what: str) -> Verdict:
    return Verdict.yes() if ok else Verdict.no(f"not {what}")


def _bounded(fn, g: Graph2D, k_max: int) -> Verdict:
    try:
        return fn(g, k_max)
    except StripCapError as exc:
        return Verdict.unknown(str(exc), bound=k_max)


def analyze(g: Graph2D, directions: Sequence[Direction] = (), k_max: int = DEFAULT_K_MAX) -> AnalysisReport:
    """Run every matrix-level check and collect the results in one report."""
    rep = AnalysisReport(list(g.symbols.names))
    rep.add("swap_condition", swap_condition(g), "swap_condition")
    for name, m in (("H", g.H), ("V", g.V)):
        rep.add(f"irreducible_{name}", is_irreducible(m), f"irreducible_{name}")
        rep.add(f"primitive_{name}", is_primitive(m), f"primitive_{name}")
        rep.add(f"permutation_{name}", _flag(is_permutation(m), "a permutation matrix"), f"permutation_{name}")
    rep.add("commutes", _flag(commutes(g.H, g.V), "commuting"), "commutes")
    rep.add("connected", is_connected_2d(g), "connected")
    rep.add("single_orbit", single_orbit_check(g), "single_orbit")
    rep.add("transitive", is_transitive_2d(g), "transitive")

    for d in dict.fromkeys(directions):
        tag = f"({d})"
        if d.r * d.s > 0:
            rep.add(f"doubly_transitive{tag}", is_doubly_transitive_dir(g, d), "doubly_transitive")
            rep.add(f"weak_mixing{tag}", is_weak_mixing_dir(g, d), "weak_mixing")
        if d.r >= 0 and d.s >= 0:
            rep.add(f"transitive{tag}", is_transitive_dir(g, d), "transitive_dir")
        if d.r * d.s < 0:
            a = anisotropy_check(g, d)
            diag = Verdict.unknown(
                "diagnostic only",
                equal=a["equal"],
                lhs=a["lhs"].to_list(),
                rhs=a["rhs"].to_list(),
            )
            rep.add(f"anisotropy{tag}", diag, "anisotropy")

    try:
        _, found = find_transitive_direction(g)
    except (EmptyShiftError, ValueError) as exc:
        found = Verdict.unknown(str(exc))
    rep.add("doubly_transitive_direction", found, "find_direction")

    rep.add("horizontal_doubly_transitive", _bounded(horizontal_doubly_transitive_upto, g, k_max), "strips_h_doubly")
    rep.add("horizontal_transitive", _bounded(horizontal_transitive_upto, g, k_max), "strips_h_transitive")
    rep.add("vertical_doubly_transitive", _bounded(vertical_doubly_transitive_upto, g, k_max), "strips_v_doubly")
    rep.add("vertical_transitive", _bounded(vertical_transitive_upto, g, k_max), "strips_v_transitive")
    rep.add("vertical_weak_mixing", _bounded(vertical_weak_mixing_check, g, k_max), "strips_v_weak_mixing")
    rep.strips = strip_summary(g, k_max)
    return rep
