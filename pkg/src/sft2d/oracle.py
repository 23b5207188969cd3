"""Brute-force ground truth for the matrix criteria.

Everything here works on explicit finite patterns.  "Admissible with margin m"
means the pattern sits in the middle of a locally admissible rectangle that is
``m`` cells larger on every side; the oracle never claims more than that.

Coordinates: ``cells[y][x]`` with row 0 at the bottom, x growing to the right.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from .budget import BudgetExceeded, Counter
from .graph import Direction, Graph2D, InputError
from .matrices import BinaryMatrix, bool_power, bool_product, iter_bits

# -- patterns -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Pattern:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise ValueError("pattern must be at least 1x1")
        w = len(self.cells[0])
        if any(len(r) != w for r in self.cells):
            raise ValueError("pattern rows must have equal length")

    @property
    def width(self) -> int:
        return len(self.cells[0])

    @property
    def height(self) -> int:
        return len(self.cells)

    def __getitem__(self, xy: tuple[int, int]) -> int:
        x, y = xy
        return self.cells[y][x]

    @classmethod
    def from_bottom_rows(cls, rows: Iterable[Iterable[int]]) -> Pattern:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_top_rows(cls, rows: Sequence[Sequence[int]]) -> Pattern:
        return cls(tuple(tuple(r) for r in reversed(rows)))

    @classmethod
    def single(cls, symbol: int) -> Pattern:
        return cls(((symbol,),))

    def top_rows(self) -> list[list[int]]:
        return [list(r) for r in reversed(self.cells)]

    def labels(self, g: Graph2D) -> list[list[str]]:
        """Rows of symbol labels, top row first."""
        return [[g.symbols.label(c) for c in row] for row in self.top_rows()]

    def to_text(self, g: Graph2D) -> str:
        return "\n".join(" ".join(row) for row in self.labels(g))

    def to_json(self, g: Graph2D) -> dict[str, Any]:
        return {"rows": self.labels(g)}

    def symbols_used(self) -> set[int]:
        return {c for row in self.cells for c in row}


def parse_pattern(text: str, g: Graph2D) -> Pattern:
    """Read a pattern from its text form (top row first) or JSON ``{"rows": ...}``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed pattern JSON: {exc.msg}") from None
        rows = data.get("rows") if isinstance(data, dict) else None
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise InputError("pattern JSON needs a non-empty 'rows' array of arrays")
    else:
        rows = [line.split() for line in stripped.splitlines() if line.strip()]
        if not rows:
            raise InputError("empty pattern")
    idx = [[g.symbols.index(str(lab)) for lab in row] for row in rows]
    try:
        return Pattern.from_top_rows(idx)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def load_pattern(path, g: Graph2D) -> Pattern:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_pattern(fh.read(), g)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def is_locally_admissible(g: Graph2D, p: Pattern) -> bool:
    n = g.n
    for row in p.cells:
        if any(c < 0 or c >= n for c in row):
            return False
    for row in p.cells:
        for x in range(p.width - 1):
            if not g.H[row[x], row[x + 1]]:
                return False
    for lower, upper in zip(p.cells, p.cells[1:]):
        for x in range(p.width):
            if not g.V[lower[x], upper[x]]:
                return False
    return True


# -- row transfer ---------------------------------------------------------


def valid_rows(m: BinaryMatrix, length: int, counter: Counter | None = None) -> list[tuple[int, ...]]:
    """All words of ``length`` whose consecutive symbols are joined by ``m``, lexicographic."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int]) -> None:
        if counter:
            counter.tick()
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        cand = m.rows[prefix[-1]] if prefix else (1 << m.n) - 1
        for s in iter_bits(cand):
            prefix.append(s)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


class _RowGraph:
    """Rows of a fixed width and their vertical successors, built lazily."""

    def __init__(self, g: Graph2D, width: int, counter: Counter):
        self.g = g
        self.width = width
        self.counter = counter
        self.rows = valid_rows(g.H, width, counter)
        self.index = {r: i for i, r in enumerate(self.rows)}
        self._succ: dict[int, list[int]] = {}

    def successors(self, i: int) -> list[int]:
        if i in self._succ:
            return self._succ[i]
        lower = self.rows[i]
        H, V = self.g.H, self.g.V
        found: list[int] = []
        upper: list[int] = []

        def rec(x: int) -> None:
            self.counter.tick()
            if x == self.width:
                found.append(self.index[tuple(upper)])
                return
            cand = V.rows[lower[x]]
            if x:
                cand &= H.rows[upper[-1]]
            for s in iter_bits(cand):
                upper.append(s)
                rec(x + 1)
                upper.pop()

        rec(0)
        self._succ[i] = found
        return found

    def predecessors_map(self) -> list[list[int]]:
        preds: list[list[int]] = [[] for _ in self.rows]
        for i in range(len(self.rows)):
            for j in self.successors(i):
                preds[j].append(i)
        return preds


def enumerate_patterns(g: Graph2D, w: int, h: int, margin: int = 0, budget: int | None = None) -> list[Pattern]:
    """All w x h patterns admissible with the given margin, in lexicographic order.

    Rows of the enlarged rectangle are handled as states of a transfer graph;
    a central row chain is kept when it has ``margin`` rows of support below and
    above.  Raises :class:`BudgetExceeded` when the work allowance runs out.
    """
    if w < 1 or h < 1 or margin < 0:
        raise ValueError("need w, h >= 1 and margin >= 0")
    counter = Counter(budget, "pattern enumeration")
    W = w + 2 * margin
    rg = _RowGraph(g, W, counter)
    nrows = len(rg.rows)
    everything = set(range(nrows))

    preds = rg.predecessors_map() if margin else None
    below = set(everything)
    above = set(everything)
    for _ in range(margin):
        below = {j for i in below for j in rg.successors(i)}
        above = {i for j in above for i in preds[j]}

    def proj(i: int) -> tuple[int, ...]:
        return rg.rows[i][margin : margin + w]

    states: dict[int, set[tuple[tuple[int, ...], ...]]] = {i: {(proj(i),)} for i in sorted(below)}
    for _ in range(h - 1):
        nxt: dict[int, set] = {}
        for i, prefixes in states.items():
            for j in rg.successors(i):
                counter.tick(len(prefixes))
                bucket = nxt.setdefault(j, set())
                pj = proj(j)
                for pre in prefixes:
                    bucket.add(pre + (pj,))
        states = nxt
    found: set[tuple[tuple[int, ...], ...]] = set()
    for i, prefixes in states.items():
        if i in above:
            found |= prefixes
    return [Pattern(c) for c in sorted(found)]


# -- gluing ---------------------------------------------------------------


class _GridCSP:
    """Locally admissible fillings of a rectangle with some cells fixed.

    Arc consistency on bitmask domains plus smallest-domain-first backtracking.
    """

    def __init__(self, g: Graph2D, width: int, height: int, counter: Counter):
        self.g = g
        self.W = width
        self.Hh = height
        self.counter = counter
        n = g.n
        self.full = (1 << n) - 1
        self._cache: dict[tuple[int, int], int] = {}
        self._mats = (g.H, g.H.T, g.V, g.V.T)

    def _image(self, which: int, dom: int) -> int:
        key = (which, dom)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        rows = self._mats[which].rows
        acc = 0
        for s in iter_bits(dom):
            acc |= rows[s]
        self._cache[key] = acc
        return acc

    def _neighbours(self, c: int) -> Iterator[tuple[int, int]]:
        """(neighbour cell, matrix id mapping this cell's domain onto it)."""
        x, y = c % self.W, c // self.W
        if x + 1 < self.W:
            yield c + 1, 0
        if x > 0:
            yield c - 1, 1
        if y + 1 < self.Hh:
            yield c + self.W, 2
        if y > 0:
            yield c - self.W, 3

    def _propagate(self, doms: list[int], queue: list[int]) -> bool:
        pending = set(queue)
        while queue:
            c = queue.pop()
            pending.discard(c)
            self.counter.tick()
            dc = doms[c]
            for nb, which in self._neighbours(c):
                new = doms[nb] & self._image(which, dc)
                if new != doms[nb]:
                    if not new:
                        return False
                    doms[nb] = new
                    if nb not in pending:
                        pending.add(nb)
                        queue.append(nb)
        return True

    def solve(self, fixed: dict[int, int]) -> list[int] | None:
        doms = [self.full] * (self.W * self.Hh)
        for c, s in fixed.items():
            doms[c] = 1 << s
        if not self._propagate(doms, list(range(len(doms)))):
            return None
        return self._search(doms)

    def _search(self, doms: list[int]) -> list[int] | None:
        best, best_size = -1, None
        for c, d in enumerate(doms):
            size = d.bit_count()
            if size > 1 and (best_size is None or size < best_size):
                best, best_size = c, size
                if size == 2:
                    break
        if best < 0:
            return [d.bit_length() - 1 for d in doms]
        for s in iter_bits(doms[best]):
            self.counter.tick()
            trial = list(doms)
            trial[best] = 1 << s
            if self._propagate(trial, [best]):
                result = self._search(trial)
                if result is not None:
                    return result
        return None


def _place(p: Pattern, q: Pattern, dx: int, dy: int):
    """Bounding box of p at (0,0) and q at (dx,dy); None if they clash on overlap."""
    x0, y0 = min(0, dx), min(0, dy)
    x1 = max(p.width, dx + q.width)
    y1 = max(p.height, dy + q.height)
    fixed: dict[tuple[int, int], int] = {}
    for pat, ox, oy in ((p, 0, 0), (q, dx, dy)):
        for y, row in enumerate(pat.cells):
            for x, s in enumerate(row):
                key = (x + ox - x0, y + oy - y0)
                if fixed.get(key, s) != s:
                    return None
                fixed[key] = s
    return x1 - x0, y1 - y0, fixed


def solve_rectangle(
    g: Graph2D,
    width: int,
    height: int,
    fixed: dict[tuple[int, int], int],
    margin: int = 0,
    counter: Counter | None = None,
) -> Pattern | None:
    """A width x height pattern honouring ``fixed`` that is admissible with ``margin``.

    Returns the central rectangle (margin stripped) or None when none exists.
    """
    counter = counter or Counter(None, "rectangle search")
    W, Hh = width + 2 * margin, height + 2 * margin
    csp = _GridCSP(g, W, Hh, counter)
    cells = {(y + margin) * W + (x + margin): s for (x, y), s in fixed.items()}
    sol = csp.solve(cells)
    if sol is None:
        return None
    rows = [tuple(sol[(y + margin) * W + margin : (y + margin) * W + margin + width]) for y in range(height)]
    return Pattern(tuple(rows))


@dataclass(frozen=True)
class GlueResult:
    found: bool
    offset: Direction | None = None
    filler: Pattern | None = None
    exhausted: bool = False
    bounds: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, g: Graph2D) -> dict[str, Any]:
        return {
            "found": self.found,
            "offset": self.offset.as_list() if self.offset else None,
            "filler": self.filler.to_json(g) if self.filler else None,
            "exhausted": self.exhausted,
            "bounds": self.bounds,
        }


def glue_offsets(max_offset: int, direction_filter: Direction | None = None) -> list[tuple[int, int]]:
    if direction_filter is not None:
        r, s = direction_filter.r, direction_filter.s
        out = []
        k = 1
        while max(abs(k * r), abs(k * s)) <= max_offset:
            out.append((k * r, k * s))
            k += 1
        return out
    offs = [
        (dx, dy)
        for dx in range(-max_offset, max_offset + 1)
        for dy in range(-max_offset, max_offset + 1)
        if (dx, dy) != (0, 0)
    ]
    offs.sort(key=lambda o: (max(abs(o[0]), abs(o[1])), abs(o[0]) + abs(o[1]), -o[0], -o[1]))
    return offs


DEFAULT_GLUE_MARGIN = 2


def glue(
    g: Graph2D,
    p: Pattern,
    q: Pattern,
    max_offset: int,
    direction_filter: Direction | None = None,
    margin: int = DEFAULT_GLUE_MARGIN,
    budget: int | None = None,
) -> GlueResult:
    """Search for an offset placing ``q`` relative to ``p`` inside one admissible rectangle.

    Offsets are measured between bottom-left corners.  With ``direction_filter``
    only positive multiples of that vector are tried.  The search is exhaustive
    within the bounds unless the budget runs out, in which case ``exhausted``
    is set and ``found`` is False without proving absence.
    """
    if max_offset < 1:
        raise ValueError("max_offset must be positive")
    counter = Counter(budget, "glue search")
    offsets = glue_offsets(max_offset, direction_filter)
    bounds = {
        "max_offset": max_offset,
        "margin": margin,
        "direction_filter": direction_filter.as_list() if direction_filter else None,
        "offsets_total": len(offsets),
    }
    tried = 0
    try:
        for dx, dy in offsets:
            placed = _place(p, q, dx, dy)
            tried += 1
            if placed is None:
                continue
            width, height, fixed = placed
            filler = solve_rectangle(g, width, height, fixed, margin, counter)
            if filler is not None:
                return GlueResult(True, Direction(dx, dy), filler, False, {**bounds, "offsets_tried": tried})
    except BudgetExceeded:
        return GlueResult(False, None, None, True, {**bounds, "offsets_tried": tried, "budget": counter.limit})
    return GlueResult(False, None, None, False, {**bounds, "offsets_tried": tried})


# -- periodic configurations ----------------------------------------------


def _cyclic_rows(m: BinaryMatrix, p: int, counter: Counter) -> list[tuple[int, ...]]:
    return [r for r in valid_rows(m, p, counter) if m[r[-1], r[0]]]


def _minimal_period(seq: Sequence, p: int) -> int:
    for d in range(1, p + 1):
        if p % d == 0 and all(seq[i] == seq[i % d] for i in range(p)):
            return d
    return p


def canonical_domain(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Reduce a doubly periodic block to minimal periods, then its least translate."""
    q = len(rows)
    p = len(rows[0])
    cols = [tuple(rows[y][x] for y in range(q)) for x in range(p)]
    pp = _minimal_period(cols, p)
    qq = _minimal_period([tuple(r) for r in rows], q)
    block = [tuple(rows[y][:pp]) for y in range(qq)]
    best = None
    for dy in range(qq):
        for dx in range(pp):
            cand = tuple(tuple(block[(y + dy) % qq][(x + dx) % pp] for x in range(pp)) for y in range(qq))
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class PeriodicOrbit:
    horizontal_period: int
    vertical_period: int
    domain: Pattern

    def translates(self) -> set[tuple[tuple[int, ...], ...]]:
        p, q = self.horizontal_period, self.vertical_period
        rows = self.domain.cells
        return {
            tuple(tuple(rows[(y + dy) % q][(x + dx) % p] for x in range(p)) for y in range(q))
            for dy in range(q)
            for dx in range(p)
        }


def periodic_search(g: Graph2D, max_period: int, budget: int | None = None) -> list[PeriodicOrbit]:
    """All doubly periodic configurations with periods up to ``max_period``.

    Each orbit is reported once, by its minimal rectangular periods and the
    lexicographically least translate of its fundamental block.
    """
    if max_period < 1:
        raise ValueError("max_period must be positive")
    counter = Counter(budget, "periodic search")
    seen: set[tuple[tuple[int, ...], ...]] = set()
    for p in range(1, max_period + 1):
        rows = _cyclic_rows(g.H, p, counter)
        succ: list[list[int]] = []
        for lower in rows:
            succ.append(
                [j for j, upper in enumerate(rows) if all(g.V[a, b] for a, b in zip(lower, upper))]
            )
            counter.tick(len(rows))
        for q in range(1, max_period + 1):
            for start in range(len(rows)):
                stack = [(start, [start])]
                while stack:
                    cur, path = stack.pop()
                    counter.tick()
                    if len(path) == q:
                        if start in succ[cur]:
                            seen.add(canonical_domain([rows[i] for i in path]))
                        continue
                    for j in succ[cur]:
                        stack.append((j, path + [j]))
    orbits = [PeriodicOrbit(len(d[0]), len(d), Pattern(d)) for d in seen]
    orbits.sort(key=lambda o: (o.horizontal_period * o.vertical_period, o.vertical_period, o.domain.cells))
    return orbits


# -- one-dimensional word gluing ------------------------------------------


def walks(a: BinaryMatrix, length: int) -> list[tuple[int, ...]]:
    return valid_rows(a, length)


class WordOracle:
    """Brute-force transitivity check for the shift of walks on one matrix.

    A word is usable when it extends by ``margin`` symbols on both sides; two
    words glue when some placement (either order, overlaps allowed when they
    agree) fits into one walk that still extends by ``margin`` both ways, with
    at most ``max_gap`` symbols between them.
    """

    def __init__(self, a: BinaryMatrix, max_gap: int | None = None, margin: int | None = None):
        self.a = a
        n = a.n
        self.max_gap = 2 * n * n if max_gap is None else max_gap
        self.margin = n if margin is None else margin
        pm = bool_power(a, self.margin)
        self.right_ok = [bool(pm.rows[v]) for v in range(n)]
        pmT = pm.T
        self.left_ok = [bool(pmT.rows[v]) for v in range(n)]
        # powers[k] = support of a^k, k = 1 .. max_gap + 1
        powers = [None, a]
        for _ in range(self.max_gap):
            powers.append(bool_product(powers[-1], a))
        self.powers = powers
        within = [0] * n
        for m in powers[1:]:
            within = [x | y for x, y in zip(within, m.rows)]
        self.within = within

    def _joinable(self, left: Sequence[int], right: Sequence[int], gap: int) -> bool:
        return bool((self.powers[gap + 1].rows[left[-1]] >> right[0]) & 1)

    def glue(self, u: Sequence[int], v: Sequence[int]) -> int | None:
        """Offset of ``v`` relative to ``u`` in some common walk, or None."""
        lu, lv = len(u), len(v)
        for t in sorted(range(-(lv + self.max_gap), lu + self.max_gap + 1), key=lambda t: (abs(t), -t)):
            if self._fits(u, v, t):
                return t
        return None

    def _fits(self, u, v, t) -> bool:
        lu, lv = len(u), len(v)
        if t >= lu:
            left, right, gap = u, v, t - lu
        elif t + lv <= 0:
            left, right, gap = v, u, -t - lv
        else:
            lo, hi = min(0, t), max(lu, t + lv)
            merged = []
            for pos in range(lo, hi):
                a = u[pos] if 0 <= pos < lu else None
                b = v[pos - t] if 0 <= pos - t < lv else None
                if a is not None and b is not None and a != b:
                    return False
                merged.append(a if a is not None else b)
            return self.left_ok[merged[0]] and self.right_ok[merged[-1]]
        if gap > self.max_gap:
            return False
        return self.left_ok[left[0]] and self.right_ok[right[-1]] and self._joinable(left, right, gap)

    def check(self, max_len: int) -> tuple[bool, tuple | None]:
        """Try every ordered pair of walks of length 1..max_len.

        Returns (True, None) or (False, failing pair).
        """
        words = [w for k in range(1, max_len + 1) for w in walks(self.a, k)]
        groups: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for w in words:
            groups.setdefault((w[0], w[-1]), []).append(w)
        keys = sorted(groups)
        for k1, k2 in itertools.product(keys, repeat=2):
            (f1, l1), (f2, l2) = k1, k2
            forward = self.left_ok[f1] and self.right_ok[l2] and (self.within[l1] >> f2) & 1
            backward = self.left_ok[f2] and self.right_ok[l1] and (self.within[l2] >> f1) & 1
            if forward or backward:
                continue
            for u in groups[k1]:
                for v in groups[k2]:
                    if self.glue(u, v) is None:
                        return False, (u, v)
        return True, None
