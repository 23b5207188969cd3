"""Strip matrices and the horizontal/vertical verdicts built on them.

``H_k`` acts on valid k x 1 columns and records which columns may stand side by
side; ``V_k`` acts on valid 1 x k rows and records which rows may be stacked.
Every verdict here only covers strip widths up to ``k_max``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .graph import Graph2D, swap_condition
from .matrices import BinaryMatrix, is_irreducible, is_primitive, iter_bits
from .transitivity import is_transitive_1d
from .verdict import Verdict

DEFAULT_K_MAX = 4
DEFAULT_STATE_CAP = 4096

COLUMN = "column"  # Q_k: k x 1, consecutive cells joined by V
ROW = "row"  # P_k: 1 x k, consecutive cells joined by H


class StripCapError(ValueError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"strip has more than {cap} states (state cap {cap}); at least {count} found")
        self.cap = cap


class EmptyStripError(ValueError):
    """No valid strip of the requested width exists, so the shift is empty."""


@dataclass(frozen=True)
class StripStates:
    k: int
    orientation: str
    states: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.states)

    def labels(self, g: Graph2D) -> list[list[str]]:
        return [[g.symbols.label(s) for s in st] for st in self.states]


@dataclass(frozen=True)
class StripMatrix:
    k: int
    kind: str  # "H" (columns side by side) or "V" (rows stacked)
    states: StripStates
    matrix: BinaryMatrix


def _chains(m: BinaryMatrix, k: int, cap: int) -> list[tuple[int, ...]]:
    layer = [(s,) for s in range(m.n)]
    for _ in range(k - 1):
        layer = [w + (t,) for w in layer for t in iter_bits(m.rows[w[-1]])]
        if len(layer) > cap:
            raise StripCapError(len(layer), cap)
    if len(layer) > cap:
        raise StripCapError(len(layer), cap)
    return sorted(layer)


def strip_states(g: Graph2D, k: int, orientation: str, cap: int = DEFAULT_STATE_CAP) -> StripStates:
    if k < 1:
        raise ValueError("strip width must be at least 1")
    inner = g.V if orientation == COLUMN else g.H
    return StripStates(k, orientation, tuple(_chains(inner, k, cap)))


def _normalize_kind(kind: str) -> str:
    k = kind.upper().replace("_K", "")
    if k not in ("H", "V"):
        raise ValueError(f"strip kind must be 'H' or 'V', got {kind!r}")
    return k


def build_strip_matrix(g: Graph2D, k: int, kind: str, cap: int = DEFAULT_STATE_CAP) -> StripMatrix:
    """``H_k`` (kind "H") over k x 1 columns or ``V_k`` (kind "V") over 1 x k rows."""
    kind = _normalize_kind(kind)
    if kind == "H":
        states = strip_states(g, k, COLUMN, cap)
        link = g.H.to_array().astype(bool)
    else:
        states = strip_states(g, k, ROW, cap)
        link = g.V.to_array().astype(bool)
    if not states.states:
        raise EmptyStripError(f"no valid strips of width {k}")
    arr = np.array(states.states, dtype=np.intp).reshape(len(states), k)
    ok = np.ones((len(states), len(states)), dtype=bool)
    for t in range(k):
        col = arr[:, t]
        ok &= link[np.ix_(col, col)]
    return StripMatrix(k, kind, states, BinaryMatrix.from_array(ok))


def _needs_swap(g: Graph2D) -> Verdict | None:
    sw = swap_condition(g)
    if sw.is_yes:
        return None
    return Verdict.unknown("swap condition fails", swap_pair=sw.certificate.get("pair"))


def _doubly_upto(g: Graph2D, k_max: int, kind: str, cap: int) -> Verdict:
    per_k: list[dict[str, Any]] = []
    for k in range(1, k_max + 1):
        try:
            sm = build_strip_matrix(g, k, kind, cap)
        except EmptyStripError as exc:
            per_k.append({"k": k, "kind": kind, "states": 0, "irreducible": False})
            return Verdict.no(str(exc), k=k, bound=k_max, per_k=per_k)
        v = is_irreducible(sm.matrix)
        per_k.append({"k": k, "kind": kind, "states": len(sm.states), "irreducible": v.is_yes})
        if not v.is_yes:
            return Verdict.no(f"{kind}_{k} is reducible", k=k, bound=k_max, per_k=per_k, pair=v.certificate["pair"])
    return Verdict.yes(f"{kind}_k irreducible for every k <= {k_max}", bound=k_max, per_k=per_k)


def _transitive_upto(g: Graph2D, k_max: int, kind: str, cap: int) -> Verdict:
    per_k: list[dict[str, Any]] = []
    for k in range(1, k_max + 1):
        try:
            sm = build_strip_matrix(g, k, kind, cap)
        except EmptyStripError as exc:
            per_k.append({"k": k, "kind": kind, "states": 0, "transitive": False})
            return Verdict.no(str(exc), k=k, bound=k_max, per_k=per_k)
        v = is_transitive_1d(sm.matrix)
        entry: dict[str, Any] = {"k": k, "kind": kind, "states": len(sm.states), "transitive": v.is_yes}
        if v.is_yes:
            entry["branch"] = v.certificate["branch"]
        per_k.append(entry)
        if not v.is_yes:
            return Verdict.no(f"{kind}_{k} fails the one-dimensional criterion", k=k, bound=k_max, per_k=per_k)
    branches = {e["branch"] for e in per_k}
    if len(branches) > 1:
        return Verdict.unknown("branches differ across k", bound=k_max, per_k=per_k)
    return Verdict.yes(f"uniform {branches.pop()} branch for every k <= {k_max}", bound=k_max, per_k=per_k)


def horizontal_doubly_transitive_upto(g: Graph2D, k_max: int = DEFAULT_K_MAX, cap: int = DEFAULT_STATE_CAP) -> Verdict:
    return _needs_swap(g) or _doubly_upto(g, k_max, "H", cap)


def vertical_doubly_transitive_upto(g: Graph2D, k_max: int = DEFAULT_K_MAX, cap: int = DEFAULT_STATE_CAP) -> Verdict:
    return _needs_swap(g) or _doubly_upto(g, k_max, "V", cap)


def horizontal_transitive_upto(g: Graph2D, k_max: int = DEFAULT_K_MAX, cap: int = DEFAULT_STATE_CAP) -> Verdict:
    return _needs_swap(g) or _transitive_upto(g, k_max, "H", cap)


def vertical_transitive_upto(g: Graph2D, k_max: int = DEFAULT_K_MAX, cap: int = DEFAULT_STATE_CAP) -> Verdict:
    return _needs_swap(g) or _transitive_upto(g, k_max, "V", cap)


def vertical_weak_mixing_check(g: Graph2D, k_max: int = DEFAULT_K_MAX, cap: int = DEFAULT_STATE_CAP) -> Verdict:
    """Vertical weak mixing up to ``k_max``, valid when H is primitive.

    Under that hypothesis vertical weak mixing coincides with vertical double
    transitivity, which is read off the ``V_k``.
    """
    pending = _needs_swap(g)
    if pending:
        return pending
    if not is_primitive(g.H).is_yes:
        return Verdict.unknown("H is not primitive, so the equivalence does not apply")
    return _doubly_upto(g, k_max, "V", cap)


def strip_summary(g: Graph2D, k_max: int = DEFAULT_K_MAX, cap: int = DEFAULT_STATE_CAP) -> list[dict[str, Any]]:
    """Irreducibility of every ``H_k`` and ``V_k`` up to ``k_max``, for reports."""
    out = []
    for k in range(1, k_max + 1):
        for kind in ("H", "V"):
            try:
                sm = build_strip_matrix(g, k, kind, cap)
            except StripCapError as exc:
                out.append({"k": k, "kind": kind, "irreducible": None, "error": str(exc)})
                continue
            except EmptyStripError:
                out.append({"k": k, "kind": kind, "states": 0, "irreducible": False})
                continue
            out.append(
                {"k": k, "kind": kind, "states": len(sm.states), "irreducible": is_irreducible(sm.matrix).is_yes}
            )
    return out
