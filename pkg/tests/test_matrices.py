import random

import numpy as np
import pytest
from hypothesis import given

from brute import reach_power_irreducible, wielandt_primitive
from conftest import binary_matrices
from sft2d.matrices import (
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
    period,
)


def test_from_rows_rejects_bad_shapes_and_entries():
    with pytest.raises(ValueError, match="not square"):
        BinaryMatrix.from_rows([[1, 0], [1]])
    with pytest.raises(ValueError, match="expected 0 or 1"):
        BinaryMatrix.from_rows([[2]])


def test_array_roundtrip():
    rng = np.random.default_rng(3)
    for n in (1, 5, 9, 70):
        arr = rng.integers(0, 2, size=(n, n))
        m = BinaryMatrix.from_array(arr)
        assert (m.to_array() == arr).all()
        assert m.T.to_list() == arr.T.tolist()


@given(binary_matrices(), binary_matrices())
def test_bool_product_matches_numpy(a, b):
    if a.n != b.n:
        return
    expect = (a.to_array() @ b.to_array()) > 0
    assert bool_product(a, b).to_list() == expect.astype(int).tolist()


@given(binary_matrices(max_n=4))
def test_powers_agree(a):
    for k in range(5):
        assert bool_power(a, k) == int_power(a, k).support()


def test_int_power_counts_walks():
    a = BinaryMatrix.from_rows([[1, 1], [1, 0]])
    assert int_power(a, 5).to_list() == [[8, 5], [5, 3]]


@given(binary_matrices())
def test_closure_is_union_of_powers(a):
    acc = BinaryMatrix.zeros(a.n)
    for k in range(1, a.n + 1):
        acc = acc | bool_power(a, k)
    assert closure(a) == acc
    assert closure(a, reflexive=True) == acc | BinaryMatrix.identity(a.n)


def test_irreducible_one_by_one_needs_loop():
    assert is_irreducible(BinaryMatrix.from_rows([[1]])).is_yes
    v = is_irreducible(BinaryMatrix.from_rows([[0]]))
    assert v.is_no and v.certificate["pair"] == [0, 0]


@given(binary_matrices(min_n=2, max_n=6))
def test_irreducible_matches_reachability_power(a):
    assert is_irreducible(a).is_yes == reach_power_irreducible(a)


@given(binary_matrices(max_n=6))
def test_irreducible_witness_pair_has_no_walk(a):
    v = is_irreducible(a)
    if v.is_no:
        i, j = v.certificate["pair"]
        assert not closure(a)[i, j]


@given(binary_matrices(max_n=6))
def test_transpose_invariance(a):
    assert is_irreducible(a).answer == is_irreducible(a.T).answer
    assert is_primitive(a).answer == is_primitive(a.T).answer


@given(binary_matrices(max_n=6))
def test_primitive_matches_wielandt(a):
    v = is_primitive(a)
    assert v.is_yes == wielandt_primitive(a)
    if v.is_yes:
        k = v.certificate["exponent"]
        assert bool_power(a, k).is_full()
        assert k == 1 or not bool_power(a, k - 1).is_full()


def test_period_of_cycle():
    c = BinaryMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert period(c) == 3
    assert is_primitive(c).certificate == {"period": 3}


def test_permutation_and_commutation():
    p = BinaryMatrix.from_rows([[0, 1], [1, 0]])
    assert is_permutation(p)
    assert not is_permutation(BinaryMatrix.from_rows([[1, 1], [0, 1]]))
    assert commutes(p, BinaryMatrix.identity(2))
    a = BinaryMatrix.from_rows([[1, 1], [0, 0]])
    assert not commutes(p, a)


def test_int_product_is_exact():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(1, 5)
        a = CountMatrix.from_array([[rng.randint(0, 3) for _ in range(n)] for _ in range(n)])
        b = CountMatrix.from_array([[rng.randint(0, 3) for _ in range(n)] for _ in range(n)])
        expect = np.array(a.to_list()) @ np.array(b.to_list())
        assert int_product(a, b).to_list() == expect.tolist()
