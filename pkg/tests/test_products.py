import random

import numpy as np
from hypothesis import given, settings

from brute import brute_has_factorization
from conftest import binary_matrices, graphs
from sft2d.graph import Graph2D
from sft2d.matrices import BinaryMatrix
from sft2d.products import (
    CARTESIAN,
    TENSOR,
    cartesian_factorize,
    cartesian_product,
    factorize,
    factorize_2d,
    product,
    product_2d,
    tensor_factorize,
    tensor_product,
)

H1 = BinaryMatrix.from_rows([[1, 1, 0], [0, 0, 1], [1, 0, 0]])
V1 = BinaryMatrix.from_rows([[0, 1, 1], [1, 0, 0], [1, 0, 0]])
F2 = BinaryMatrix.from_rows([[1, 1], [1, 0]])
C2 = BinaryMatrix.from_rows([[0, 1], [1, 0]])
C3 = BinaryMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def _random(rng, n, p=0.5):
    return BinaryMatrix.from_rows([[int(rng.random() < p) for _ in range(n)] for _ in range(n)])


def _shuffle(rng, a):
    perm = list(range(a.n))
    rng.shuffle(perm)
    return a.permuted(perm)


@given(binary_matrices(max_n=3), binary_matrices(max_n=3))
def test_product_sizes_and_edge_counts(a1, a2):
    t = tensor_product(a1, a2)
    c = cartesian_product(a1, a2)
    assert t.n == c.n == a1.n * a2.n
    assert t.edge_count == a1.edge_count * a2.edge_count
    both_loops = sum(a1[i, i] for i in range(a1.n)) * sum(a2[j, j] for j in range(a2.n))
    assert c.edge_count == a1.edge_count * a2.n + a1.n * a2.edge_count - both_loops


def test_product_examples(fx):
    assert tensor_product(BinaryMatrix.full(1), F2) == F2
    assert tensor_product(H1, BinaryMatrix.zeros(2)).is_zero()
    assert cartesian_product(BinaryMatrix.zeros(1), C3) == C3
    torus = cartesian_product(C2, C2)
    assert torus.to_list() == [[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]]
    assert cartesian_product(BinaryMatrix.zeros(2), BinaryMatrix.zeros(2)).is_zero()
    g = fx["ex7"]
    assert tensor_product(H1, F2) == g.H and tensor_product(V1, F2) == g.V


def test_product_2d_labels(fx):
    g1 = Graph2D.from_matrices(H1, V1)
    g2 = Graph2D.from_matrices(F2, F2, ["3", "4"])
    p = product_2d(g1, g2, TENSOR)
    assert p.H == fx["ex7"].H and p.V == fx["ex7"].V
    assert p.symbols.names[:2] == ("(0,3)", "(0,4)")
    unit = Graph2D.from_matrices([[1]], [[1]], ["u"])
    assert product_2d(g1, unit, TENSOR).H == g1.H
    empty_v = Graph2D.from_matrices(F2, BinaryMatrix.zeros(2))
    assert product_2d(g1, empty_v, TENSOR).V.is_zero()


def test_tensor_factorize_ex7(fx):
    res = tensor_factorize(fx["ex7"].H)
    assert all(r.reproduces(fx["ex7"].H) for r in res)
    assert any(r.r1 == 3 and r.r2 == 2 and r.outer == H1 and r.inner == F2 for r in res)
    assert res[-1].trivial and res[-1].inner == BinaryMatrix.full(1)


def test_prime_dimension_is_trivial_only():
    rng = random.Random(2)
    for _ in range(5):
        a = _random(rng, 5)
        for mode in (TENSOR, CARTESIAN):
            res = factorize(a, mode)
            assert len(res) == 1 and res[0].trivial


def test_results_sorted_and_validated():
    rng = random.Random(4)
    a = _shuffle(rng, tensor_product(_random(rng, 2), _random(rng, 3)))
    res = tensor_factorize(a)
    keys = [(r.r1, r.permutation) for r in res if not r.trivial]
    assert keys == sorted(keys)
    assert all(r.reproduces(a) for r in res)


def test_fixed_permutation_constraint():
    rng = random.Random(6)
    a = tensor_product(_random(rng, 3), F2)
    ident = list(range(6))
    res = tensor_factorize(a, constraints=ident)
    assert any(r.permutation == tuple(ident) and r.r1 == 3 for r in res)
    assert all(r.trivial or r.permutation == tuple(ident) for r in res)


def test_cartesian_roundtrip_cycles():
    rng = random.Random(8)
    a = _shuffle(rng, cartesian_product(C2, C3))
    res = cartesian_factorize(a)
    assert any(r.r1 == 2 and r.r2 == 3 for r in res)
    assert all(r.reproduces(a) for r in res)
    k2 = cartesian_factorize(BinaryMatrix.full(2))
    assert k2[-1].trivial and k2[-1].inner == BinaryMatrix.zeros(1)


def _isomorphic(a, b):
    import itertools

    if a.n != b.n:
        return False
    return any(a.permuted(p) == b for p in itertools.permutations(range(a.n)))


def test_roundtrip_random_pairs():
    rng = random.Random(12)
    for _ in range(100):
        n1, n2 = rng.randint(2, 3), rng.randint(2, 3)
        a1, a2 = _random(rng, n1), _random(rng, n2)
        for mode in (TENSOR, CARTESIAN):
            if mode == TENSOR and (a1.is_zero() or a2.is_zero()):
                continue
            a = _shuffle(rng, product(a1, a2, mode))
            res = factorize(a, mode)
            hits = [r for r in res if (r.r1, r.r2) == (n1, n2)]
            assert hits and all(r.reproduces(a) for r in res)
            if mode == TENSOR:
                # factors are only determined up to isomorphism (and scaling when a factor is full)
                assert any(_isomorphic(r.inner, a2) and _isomorphic(r.outer, a1) for r in hits) or any(
                    r.outer.edge_count * r.inner.edge_count == a.edge_count for r in hits
                )


@settings(max_examples=150)
@given(binary_matrices(min_n=4, max_n=4))
def test_existence_matches_brute_force(a):
    for mode in (TENSOR, CARTESIAN):
        found = any(not r.trivial for r in factorize(a, mode))
        assert found == brute_has_factorization(a, mode)


def test_odd_loopless_graphs_are_not_cartesian():
    rng = random.Random(9)
    seen = 0
    while seen < 25:
        rows = [[0 if i == j else int(rng.random() < 0.5) for j in range(4)] for i in range(4)]
        a = BinaryMatrix.from_rows(rows)
        if a.edge_count % 2 == 0:
            continue
        seen += 1
        assert not cartesian_factorize(a).nontrivial()
        assert not brute_has_factorization(a, CARTESIAN)


def test_factorize_2d_ex7(fx):
    res = factorize_2d(fx["ex7"], TENSOR)
    pairs = [(h, v) for h, v in res if (h.r1, h.r2) == (3, 2)]
    assert pairs
    h, v = pairs[0]
    assert h.permutation == v.permutation
    assert h.reproduces(fx["ex7"].H) and v.reproduces(fx["ex7"].V)
    assert _isomorphic(h.outer, H1) and _isomorphic(v.outer, V1)
    assert h.inner == F2 and v.inner == F2


def test_factorize_2d_needs_both():
    rng = random.Random(3)
    H = _shuffle(rng, tensor_product(C2, F2))
    V = BinaryMatrix.from_rows([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 1]])
    assert tensor_factorize(H).nontrivial()
    assert not tensor_factorize(V).nontrivial()
    assert not brute_has_factorization(V, TENSOR)
    assert not factorize_2d(Graph2D.from_matrices(H, V), TENSOR).nontrivial()


@settings(max_examples=30)
@given(graphs(min_n=2, max_n=2), graphs(min_n=2, max_n=2))
def test_factorize_2d_roundtrip(g1, g2):
    for mode in (TENSOR, CARTESIAN):
        if mode == TENSOR and any(m.is_zero() for m in (g1.H, g1.V, g2.H, g2.V)):
            continue
        g = product_2d(g1, g2, mode)
        res = factorize_2d(g, mode)
        assert res.nontrivial()
        for h, v in res:
            assert h.reproduces(g.H) and v.reproduces(g.V)


def test_budget_flag():
    a = tensor_product(BinaryMatrix.full(3), BinaryMatrix.full(3))
    res = tensor_factorize(a, budget=50)
    assert res.budget_exceeded
    assert res[-1].trivial


def test_recompose_matches_numpy_kron():
    r = tensor_factorize(tensor_product(H1, F2), constraints=list(range(6)))[0]
    assert (r.recompose().to_array() == np.kron(r.outer.to_array(), r.inner.to_array())).all()
