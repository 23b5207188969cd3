import pytest
from hypothesis import given

from brute import locally_ok
from conftest import FIXTURE_NAMES, graphs
from sft2d.graph import Graph2D
from sft2d.matrices import BinaryMatrix
from sft2d.oracle import enumerate_patterns
from sft2d.strips import (
    COLUMN,
    EmptyStripError,
    ROW,
    StripCapError,
    build_strip_matrix,
    horizontal_doubly_transitive_upto,
    horizontal_transitive_upto,
    strip_states,
    vertical_doubly_transitive_upto,
    vertical_transitive_upto,
    vertical_weak_mixing_check,
)
from sft2d.transitivity import is_transitive_1d

FULL2 = Graph2D.from_matrices([[1, 1], [1, 1]], [[1, 1], [1, 1]])


def test_width_one_strips_are_the_graph(fx):
    for name in FIXTURE_NAMES:
        g = fx[name]
        assert build_strip_matrix(g, 1, "H").matrix == g.H
        assert build_strip_matrix(g, 1, "V_k").matrix == g.V


def test_states_match_oracle_enumeration(fx):
    for name in FIXTURE_NAMES:
        g = fx[name]
        for k in range(1, 5):
            cols = {tuple(p[0, y] for y in range(k)) for p in enumerate_patterns(g, 1, k)}
            assert set(strip_states(g, k, COLUMN).states) == cols
            rows = {p.cells[0] for p in enumerate_patterns(g, k, 1)}
            assert set(strip_states(g, k, ROW).states) == rows


@given(graphs(max_n=3))
def test_strip_edges_are_admissible_pairs(g):
    H, V = g.H.to_list(), g.V.to_list()
    for k in (1, 2, 3):
        if not strip_states(g, k, COLUMN).states or not strip_states(g, k, ROW).states:
            with pytest.raises(EmptyStripError):
                build_strip_matrix(g, k, "H" if not strip_states(g, k, COLUMN).states else "V")
            continue
        sm = build_strip_matrix(g, k, "H")
        st = sm.states.states
        for a, p in enumerate(st):
            for b, q in enumerate(st):
                cells = [(p[y], q[y]) for y in range(k)]
                assert sm.matrix[a, b] == locally_ok(H, V, cells)
        vm = build_strip_matrix(g, k, "V")
        st = vm.states.states
        for a, p in enumerate(st):
            for b, q in enumerate(st):
                assert vm.matrix[a, b] == locally_ok(H, V, [p, q])


@given(graphs(max_n=3))
def test_states_sorted_and_restrict(g):
    for k in (2, 3):
        states = strip_states(g, k, COLUMN).states
        assert list(states) == sorted(set(states))
        shorter = set(strip_states(g, k - 1, COLUMN).states)
        assert all(s[:-1] in shorter for s in states)


def test_full_shift_strip():
    sm = build_strip_matrix(FULL2, 2, "H")
    assert len(sm.states) == 4 and sm.matrix.is_full()
    for fn in (
        horizontal_doubly_transitive_upto,
        horizontal_transitive_upto,
        vertical_doubly_transitive_upto,
        vertical_transitive_upto,
        vertical_weak_mixing_check,
    ):
        v = fn(FULL2, 3)
        assert v.is_yes and v.certificate["bound"] == 3


def test_cap():
    g = Graph2D.from_matrices(BinaryMatrix.full(9).to_list(), BinaryMatrix.full(9).to_list())
    with pytest.raises(StripCapError, match="4096"):
        build_strip_matrix(g, 4, "H")
    with pytest.raises(StripCapError, match="10"):
        build_strip_matrix(g, 2, "V", cap=10)


def test_ex4_identity_vertical(fx):
    g = fx["ex4"]
    base = is_transitive_1d(g.H)
    for k in range(1, 5):
        sm = build_strip_matrix(g, k, "H")
        assert len(sm.states) == g.n
        assert is_transitive_1d(sm.matrix).answer == base.answer
    assert horizontal_transitive_upto(g, 4).is_yes


def test_ex6_reports_first_failure(fx):
    v = horizontal_doubly_transitive_upto(fx["ex6"], 3)
    assert v.is_no and v.certificate["k"] == 1
    assert v.certificate["per_k"][-1]["irreducible"] is False


def test_preconditions(fx):
    assert horizontal_doubly_transitive_upto(fx["ex2"], 2).is_unknown
    assert vertical_weak_mixing_check(fx["ex1"], 2).is_unknown
    v = vertical_weak_mixing_check(fx["ex5"], 2)
    assert v.is_yes == all(e["irreducible"] for e in v.certificate["per_k"])


def test_mixed_branches_are_unknown(monkeypatch):
    # no small graph with mixed branches turned up, so stub the one-dimensional verdict
    import sft2d.strips as strips
    from sft2d.verdict import Verdict

    def fake(m):
        return Verdict.yes(branch="irreducible" if m.n == 2 else "block")

    monkeypatch.setattr(strips, "is_transitive_1d", fake)
    v = horizontal_transitive_upto(FULL2, 2)
    assert v.is_unknown
    assert [e["branch"] for e in v.certificate["per_k"]] == ["irreducible", "block"]


def test_empty_strips_give_no():
    g = Graph2D.from_matrices([[1, 1], [1, 1]], [[0, 0], [0, 0]])
    v = horizontal_doubly_transitive_upto(g, 3)
    assert v.is_no and v.certificate["k"] == 2
