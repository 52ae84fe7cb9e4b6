import pytest

from hopfrg.birkhoff import (bch_chi, birkhoff_decompose, birkhoff_via_bch, bogoliubov,
                             compare_routes, containment_witness, is_decomposed,
                             reconstruction_witness, renormalized_value)
from hopfrg.convolution import (ConvContext, character, conv_inverse, conv_log, conv_unit,
                                convolve, first_difference, is_cocycle_on, maps_agree,
                                multiplicativity_witness, pole_projection, valuation,
                                zero_map)
from hopfrg.hopf import Element, iter_pairs_upto
from hopfrg.arith import PositiveIntegers, SymmetricAlgebra
from hopfrg.sampling import (random_character, random_general, random_holomorphic_character,
                             random_laurent)
from hopfrg.scalars import MINIMAL_SUBTRACTION, parse_series, rota_baxter_check
from hopfrg.trees import PlanarRootedTrees, ladder


def toy(tctx, c=0):
    H = tctx.hopf
    return character(tctx, {H.forest(ladder(1)): parse_series(f"z^-1 + {c}"),
                            H.forest(ladder(2)): parse_series("z^-2")})


def test_bogoliubov_examples(tctx):
    H = tctx.hopf
    phi = toy(tctx)
    b = bogoliubov(phi)
    v, l2 = H.forest(ladder(1)), H.forest(ladder(2))
    assert b.value(v) == phi.value(v)
    assert b.value(l2).is_zero()
    e_prep = bogoliubov(conv_unit(tctx))
    assert all(e_prep.value(x).is_zero() for x in H.basis_upto(4) if x != H.unit)


def test_degree_one_split(tctx):
    H = tctx.hopf
    v = H.forest(ladder(1))
    res = birkhoff_decompose(toy(tctx, 7))
    assert res.phi_minus.value(v) == parse_series("-z^-1")
    assert res.phi_plus.value(v) == parse_series("7")
    assert renormalized_value(toy(tctx, 7), Element.basis(v)) == 7


def test_holomorphic_character_is_already_decomposed(tctx, rng):
    phi = random_holomorphic_character(tctx, 4, rng)
    assert is_decomposed(phi, 4)
    res = birkhoff_decompose(phi)
    assert maps_agree(res.phi_minus, conv_unit(tctx), 4)
    assert maps_agree(res.phi_plus, phi, 4)
    x = tctx.hopf.forest(ladder(3))
    assert res.renormalized_value(x) == phi.value(x)[0]
    bch = birkhoff_via_bch(phi, 4)
    assert maps_agree(bch.phi_minus, conv_unit(tctx), 4)


def test_decomposition_properties(tctx, rng):
    H = tctx.hopf
    for _ in range(3):
        phi = random_character(tctx, 5, rng)
        res = birkhoff_decompose(phi)
        assert containment_witness(res, 5) is None
        assert reconstruction_witness(phi, res, 5) is None
        # the stated form phi = phi_-^{*-1} * phi_+
        assert maps_agree(convolve(conv_inverse(res.phi_minus), res.phi_plus), phi, 5)
        pairs = list(iter_pairs_upto(H, 5))
        assert multiplicativity_witness(res.phi_minus, pairs) is None
        assert multiplicativity_witness(res.phi_plus, pairs) is None


def test_renormalized_values_form_a_character(tctx, rng):
    phi = random_character(tctx, 4, rng)
    res = birkhoff_decompose(phi)
    for a, b in iter_pairs_upto(tctx.hopf, 4):
        ab = tctx.hopf.product_basis(a, b)
        assert res.renormalized_value(ab) == res.renormalized_value(a) * res.renormalized_value(b)


def test_uniqueness_oracle(tctx, rng):
    # an independent pair (h_-, h_+) with the right containments determines phi;
    # the recursion must recover exactly that pair
    H = tctx.hopf
    gens = [g for d in range(1, 5) for g in H.generators(d)]
    minus = character(tctx, {g: random_laurent(rng, -3, -1) for g in gens}, "m")
    plus = character(tctx, {g: random_laurent(rng, 0, 2) for g in gens}, "p")
    phi = convolve(conv_inverse(minus), plus)
    res = birkhoff_decompose(phi)
    assert maps_agree(res.phi_minus, minus, 4)
    assert maps_agree(res.phi_plus, plus, 4)


def test_cocycle_preservation_on_planar_trees(rng):
    ctx = ConvContext(PlanarRootedTrees(decorations=(0, 1)), 12)
    phi = random_general(ctx, rng, key=lambda b: tuple(sorted(b)))
    pairs = [(Element.basis(a), Element.basis(b)) for a, b in iter_pairs_upto(ctx.hopf, 4)]
    assert is_cocycle_on(phi, pairs)
    res = birkhoff_decompose(phi)
    assert is_cocycle_on(res.phi_minus, pairs)
    assert is_cocycle_on(res.phi_plus, pairs)
    assert reconstruction_witness(phi, res, 4) is None


def test_routes_agree_on_trees(tctx, rng):
    phi = random_character(tctx, 4, rng)
    assert compare_routes(phi, 4) is None


@pytest.mark.parametrize("H", [PositiveIntegers(), SymmetricAlgebra()])
def test_bch_is_identity_on_cocommutative(H, rng):
    ctx = ConvContext(H, 12)
    phi = random_character(ctx, 4, rng)
    X = conv_log(phi)
    state = bch_chi(X, 4)
    assert first_difference(state.chi, X, 4) is None
    assert compare_routes(phi, 4) is None


def test_bch_of_zero(tctx):
    state = bch_chi(zero_map(tctx), 4)
    assert valuation(state.chi, 4) == 5


def test_bch_correction_doubles_valuation(tctx, rng):
    phi = random_character(tctx, 4, rng)
    X = conv_log(phi)
    state = bch_chi(X, 4)
    assert valuation(state.chi - X, 4) >= 2 * valuation(X, 4)
    # X in g_2: the correction starts no lower than degree 4
    H = tctx.hopf
    v = H.forest(ladder(1))
    gens = {g: random_laurent(rng) for d in range(2, 5) for g in H.generators(d)}
    gens[v] = 0
    X2 = conv_log(character(tctx, gens))
    assert valuation(X2, 4) == 2
    assert valuation(bch_chi(X2, 4).chi - X2, 4) >= 4


def test_bch_iteration_count(tctx, rng):
    phi = random_character(tctx, 4, rng)
    state = birkhoff_via_bch(phi, 4).bch
    assert state.iterations <= 4 + 2
    assert state.trace[-1] > 4


def test_operator_rota_baxter(tctx, rng):
    # R(a)R(b) = R(R(a)b + aR(b) - ab), pointwise on the values of two maps
    a, b = random_general(tctx, rng), random_general(tctx, rng)
    Ra, Rb = pole_projection(a), pole_projection(b)
    for x in tctx.hopf.basis_upto(3):
        ra, rb = Ra.value(x), Rb.value(x)
        inner = ra * b.value(x) + a.value(x) * rb - a.value(x) * b.value(x)
        assert ra * rb == MINIMAL_SUBTRACTION.pole_part(inner)
        assert rota_baxter_check(a.value(x), b.value(x))
