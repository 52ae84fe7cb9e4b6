import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfrg.arith import (PositiveIntegers, SymmetricAlgebra, big_omega, factorize,
                          int_antipode, int_product, int_reduced_coproduct,
                          sym_reduced_coproduct)
from hopfrg.hopf import Element, TensorElement, antipode_squared_witness, check_hopf_axioms


def test_integer_coproduct_examples():
    assert int_reduced_coproduct(6) == TensorElement({(2, 3): 1, (3, 2): 1})
    assert int_reduced_coproduct(4) == TensorElement({(2, 2): 2})
    assert not int_reduced_coproduct(5)
    assert not int_reduced_coproduct(1)
    with pytest.raises(ValueError):
        int_reduced_coproduct(0)


def test_integer_product_examples():
    assert int_product(2, 3) == 6
    assert int_product(1, 7) == 7
    assert int_product(2, 2) == 4


def test_integer_antipode_examples():
    assert int_antipode(6) == Element({6: 1})
    assert int_antipode(2) == Element({2: -1})
    assert int_antipode(1) == Element({1: 1})


def test_closed_form_antipode_matches_recursion(integers):
    for n in range(1, 65):
        assert integers.antipode_basis(n) == int_antipode(n), n


def test_integers_are_cocommutative(integers):
    for n in range(2, 65):
        d = int_reduced_coproduct(n)
        assert integers.swap(d) == d


def test_degree_is_big_omega(integers):
    assert [integers.degree(n) for n in (1, 2, 4, 12, 64)] == [0, 1, 2, 3, 6]
    assert big_omega(360) == 6


@given(st.integers(1, 10 ** 6))
def test_factorize(n):
    fs = factorize(n)
    prod = 1
    for p in fs:
        prod *= p
    assert prod == n and fs == sorted(fs)


@given(st.integers(2, 2000))
def test_coproduct_counts_ordered_bipartitions(n):
    # sum of coefficients = 2^k - 2 with k = number of prime factors
    total = sum(c for _, c in int_reduced_coproduct(n).items())
    assert total == 2 ** big_omega(n) - 2


def test_sym_coproduct_examples():
    assert not sym_reduced_coproduct((1,))
    assert sym_reduced_coproduct((1, 1)) == TensorElement({((1,), (1,)): 2})
    assert sym_reduced_coproduct((1, 2)) == TensorElement({((1,), (2,)): 1, ((2,), (1,)): 1})


def test_sym_antipode_squared(symmetric):
    assert antipode_squared_witness(symmetric, symmetric.basis_upto(6)) is None


def test_sym_literals(symmetric):
    m = symmetric.parse_basis("x1^2 x2")
    assert symmetric.format_basis(m) == "x1^2 x2"
    assert symmetric.degree(m) == 3  # default table: x1, x2 of degree 1, x3 of degree 2
    assert symmetric.degree(symmetric.parse_basis("x3")) == 2


def test_integer_literals(integers):
    assert integers.parse_basis("e12") == 12
    assert integers.format_basis(1) == "e1"


@pytest.mark.parametrize("H", [PositiveIntegers(), SymmetricAlgebra()])
def test_axioms(H):
    assert check_hopf_axioms(H, 5).passed


@given(st.integers(2, 5000), st.randoms(use_true_random=False))
def test_coproduct_matches_bipartition_oracle(n, rnd):
    # enumerate index subsets of a shuffled factor list; order must not matter
    primes = factorize(n)
    rnd.shuffle(primes)
    expected: dict = {}
    k = len(primes)
    for r in range(1, k):
        for idx in itertools.combinations(range(k), r):
            left = 1
            for i in idx:
                left *= primes[i]
            key = (left, n // left)
            expected[key] = expected.get(key, 0) + 1
    assert int_reduced_coproduct(n) == TensorElement(expected)
