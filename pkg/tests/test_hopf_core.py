import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfrg.hopf import (CorruptedAlgebra, Element, TensorElement, antipode_formulas_agree,
                         check_hopf_axioms, iter_pairs_upto)
from hopfrg.trees import ladder


def F(T, *trees):
    return T.forest(*trees)


def test_coproduct_of_unit(trees):
    assert trees.coproduct(trees.one()) == TensorElement({((), ()): 1})


def test_single_vertex_is_primitive(trees):
    v = F(trees, ladder(1))
    assert trees.coproduct_basis(v) == TensorElement({(v, ()): 1, ((), v): 1})


def test_ladder_two_coproduct(trees):
    l2, v = F(trees, ladder(2)), F(trees, ladder(1))
    assert trees.coproduct_basis(l2) == TensorElement({(l2, ()): 1, ((), l2): 1, (v, v): 1})


def test_iterated_reduced_coproduct(trees):
    v = F(trees, ladder(1))
    assert not trees.iterated_reduced_coproduct(trees.element(v), 1)
    assert (trees.iterated_reduced_coproduct(trees.element(F(trees, ladder(2))), 1)
            == TensorElement({(v, v): 1}))
    assert (trees.iterated_reduced_coproduct(trees.element(F(trees, ladder(3))), 2)
            == TensorElement({(v, v, v): 1}))


def test_iterated_reduced_coproduct_rejects_unit_component(trees):
    with pytest.raises(ValueError):
        trees.iterated_reduced_coproduct(trees.one(), 1)


def test_iterated_reduced_coproduct_vanishes_beyond_degree(trees):
    for b in trees.basis_upto(5):
        if b == trees.unit:
            continue
        n = trees.degree(b)
        assert not trees.iterated_reduced_coproduct(trees.element(b), n)


def test_counit(trees):
    v = F(trees, ladder(1))
    assert trees.counit(trees.one()) == 1
    assert trees.counit(trees.element(v)) == 0
    assert trees.counit(2 * trees.one() + 3 * trees.element(v)) == 2


def test_antipode_examples(trees):
    v, l2 = F(trees, ladder(1)), F(trees, ladder(2))
    assert trees.antipode_basis(v) == Element({v: -1})
    assert trees.antipode_basis(l2) == Element({l2: -1, trees.product_basis(v, v): 1})
    assert trees.antipode(trees.one()) == trees.one()


def test_antipode_convolution_identity(trees):
    assert trees.antipode_convolution_identity(trees.element(F(trees, ladder(2))))
    assert trees.antipode_convolution_identity(trees.one())


@pytest.mark.parametrize("name", ["trees", "planar", "integers", "symmetric"])
def test_antipode_identity_exhaustive(name, request):
    H = request.getfixturevalue(name)
    for b in H.basis_upto(5):
        assert H.antipode_convolution_identity(Element.basis(b)), b


def test_axioms_pass_on_trees(trees):
    report = check_hopf_axioms(trees, 5)
    assert report.passed, report.summary()
    assert report.checked["coassociativity"] == len(trees.basis_upto(5))


def test_axioms_pass_on_integers(integers):
    assert check_hopf_axioms(integers, 5).passed


def test_corrupted_instance_fails_with_witness(trees):
    bad = CorruptedAlgebra(trees)
    report = check_hopf_axioms(bad, 4)
    assert not report.passed
    assert report.failure.element is not None
    assert report.failure.check in {"coassociativity", "antipode", "compatibility", "counit"}
    assert "FAIL" in report.summary() or "fail" in report.summary().lower()


@pytest.mark.parametrize("name", ["trees", "planar", "integers", "symmetric"])
def test_antipode_preserves_degree(name, request):
    H = request.getfixturevalue(name)
    for b in H.basis_upto(5):
        s = H.antipode_basis(b)
        assert all(H.degree(k) == H.degree(b) for k in s.keys())


@pytest.mark.parametrize("name", ["trees", "planar", "integers", "symmetric"])
def test_left_and_right_antipodes_agree(name, request):
    H = request.getfixturevalue(name)
    assert antipode_formulas_agree(H, H.basis_upto(5)) is None


@pytest.mark.parametrize("name", ["trees", "planar", "integers", "symmetric"])
def test_antipode_is_antimorphism(name, request):
    H = request.getfixturevalue(name)
    for a, c in iter_pairs_upto(H, 5):
        lhs = H.antipode_basis(H.product_basis(a, c))
        rhs = H.mul(H.antipode_basis(c), H.antipode_basis(a))
        assert lhs == rhs, (a, c)


@given(st.dictionaries(st.integers(0, 8), st.fractions(max_denominator=5), max_size=4),
       st.dictionaries(st.integers(0, 8), st.fractions(max_denominator=5), max_size=4))
def test_element_linear_ops(a, b):
    x, y = Element(a), Element(b)
    assert x + y == y + x
    assert (x - x) == Element()
    assert all(c != 0 for _, c in (x + y).items())
    assert (2 * x) == x + x
