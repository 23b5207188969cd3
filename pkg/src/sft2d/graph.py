"""Symbol sets, two-dimensional graphs and their JSON form."""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from typing import Any, Sequence

from .matrices import BinaryMatrix, bool_product, first_difference
from .verdict import Verdict


class InputError(ValueError):
    """Malformed user input (bad JSON, shapes, labels, directions)."""


@dataclass(frozen=True)
class SymbolSet:
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise InputError("symbol list is empty")
        for name in self.names:
            if not isinstance(name, str) or not name:
                raise InputError(f"symbol labels must be non-empty strings, got {name!r}")
        if len(set(self.names)) != len(self.names):
            raise InputError("symbol labels must be distinct")

    @property
    def size(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise InputError(f"unknown symbol {label!r}") from None

    def label(self, i: int) -> str:
        return self.names[i]


@dataclass(frozen=True)
class Graph2D:
    """A pair (H, V) on one symbol set.

    ``H[i, j] == 1`` lets ``j`` sit immediately right of ``i``;
    ``V[i, j] == 1`` lets ``j`` sit immediately above ``i``.
    """

    symbols: SymbolSet
    H: BinaryMatrix
    V: BinaryMatrix

    def __post_init__(self):
        n = self.symbols.size
        if self.H.n != n or self.V.n != n:
            raise InputError(f"matrix dimensions ({self.H.n}, {self.V.n}) do not match {n} symbols")

    @property
    def n(self) -> int:
        return self.symbols.size

    @classmethod
    def from_matrices(cls, H, V, symbols: Sequence[str] | None = None) -> Graph2D:
        Hm = H if isinstance(H, BinaryMatrix) else BinaryMatrix.from_rows(H)
        Vm = V if isinstance(V, BinaryMatrix) else BinaryMatrix.from_rows(V)
        if symbols is None:
            symbols = [str(i) for i in range(Hm.n)]
        return cls(SymbolSet(tuple(symbols)), Hm, Vm)

    @classmethod
    def from_dict(cls, data: Any) -> Graph2D:
        if not isinstance(data, dict):
            raise InputError("graph JSON must be an object")
        for key in ("symbols", "H", "V"):
            if key not in data:
                raise InputError(f"graph JSON is missing {key!r}")
        symbols = data["symbols"]
        if not isinstance(symbols, list):
            raise InputError("'symbols' must be an array of strings")
        syms = SymbolSet(tuple(symbols))
        mats = []
        for key in ("H", "V"):
            rows = data[key]
            if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
                raise InputError(f"{key!r} must be an array of arrays")
            if len(rows) != syms.size:
                raise InputError(f"{key!r} has {len(rows)} rows but there are {syms.size} symbols")
            if any(not isinstance(v, int) or isinstance(v, bool) for r in rows for v in r):
                raise InputError(f"{key!r} entries must be the integers 0 or 1")
            try:
                mats.append(BinaryMatrix.from_rows(rows))
            except ValueError as exc:
                raise InputError(f"{key}: {exc}") from None
        return cls(syms, mats[0], mats[1])

    def to_dict(self) -> dict[str, Any]:
        return {"symbols": list(self.symbols.names), "H": self.H.to_list(), "V": self.V.to_list()}

    def transposed_roles(self) -> Graph2D:
        """The same shift seen with the axes exchanged (H and V swapped)."""
        return Graph2D(self.symbols, self.V, self.H)


def load_graph(path: str | os.PathLike) -> Graph2D:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
    return Graph2D.from_dict(data)


def dump_graph(g: Graph2D) -> str:
    return json.dumps(g.to_dict())


@dataclass(frozen=True)
class Direction:
    r: int
    s: int

    def __post_init__(self):
        if self.r == 0 and self.s == 0:
            raise InputError("direction (0, 0) is not allowed")

    @classmethod
    def parse(cls, text: str) -> Direction:
        m = re.fullmatch(r"\s*(-?\d+)\s*,\s*(-?\d+)\s*", text)
        if not m:
            raise InputError(f"direction must look like 'r,s', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.r},{self.s}"

    def as_list(self) -> list[int]:
        return [self.r, self.s]


def swap_condition(g: Graph2D) -> Verdict:
    """support(HV) == support(VH); on failure a pair lying in exactly one support."""
    hv = bool_product(g.H, g.V)
    vh = bool_product(g.V, g.H)
    diff = first_difference(hv, vh)
    if diff is None:
        return Verdict.yes()
    i, j = diff
    return Verdict.no(
        "supports of HV and VH differ",
        pair=[i, j],
        hv=hv[i, j],
        vh=vh[i, j],
    )
