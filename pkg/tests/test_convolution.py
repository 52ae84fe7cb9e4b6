from fractions import Fraction
from math import factorial

import pytest

from hopfrg.convolution import (CHARACTER, INFINITESIMAL, ConvContext, MissingGeneratorError,
                                NormalizationError, bracket, character, conv_exp, conv_inverse,
                                conv_log, conv_power, conv_unit, convolve, derivation_witness,
                                distance, first_difference, format_character, general_map,
                                infinitesimal_character, is_cocycle_on, cocycle_witness,
                                maps_agree, multiplicativity_witness, parse_character_text,
                                tabulate, valuation, zero_map)
from hopfrg.hopf import Element, iter_pairs_upto
from hopfrg.sampling import (random_character, random_general, random_infinitesimal,
                             random_laurent)
from hopfrg.scalars import LaurentSeries, PrecisionError
from hopfrg.trees import PlanarRootedTrees, ladder

DEG = 4


def oracle_convolve(phi, psi, b):
    # independent evaluation through the full coproduct
    H = phi.hopf
    acc = LaurentSeries.zero()
    for (p, q), c in H.coproduct_basis(b).items():
        acc = acc + (phi.value(p) * psi.value(q)).scale(c)
    return acc


def oracle_apply_antipode(chi, b):
    return chi.on(chi.hopf.antipode_basis(b))


@pytest.fixture
def maps(tctx, rng):
    return [random_general(tctx, rng, name=f"f{i}") for i in range(3)]


def test_convolution_matches_full_coproduct(tctx, maps):
    f, g, _ = maps
    fg = convolve(f, g)
    for b in tctx.hopf.basis_upto(DEG):
        assert fg.value(b) == oracle_convolve(f, g, b)


def test_unit_examples(tctx, maps):
    e = conv_unit(tctx)
    H = tctx.hopf
    assert e.unit_value() == LaurentSeries.one()
    assert e.value(H.forest(ladder(1))).is_zero()
    assert maps_agree(convolve(e, e), e, DEG)
    for f in maps:
        assert maps_agree(convolve(e, f), f, DEG)
        assert maps_agree(convolve(f, e), f, DEG)


def test_group_axioms(tctx, maps):
    f, g, h = maps
    assert maps_agree(convolve(convolve(f, g), h), convolve(f, convolve(g, h)), DEG)
    e = conv_unit(tctx)
    for x in maps:
        inv = conv_inverse(x)
        assert maps_agree(convolve(x, inv), e, DEG)
        assert maps_agree(convolve(inv, x), e, DEG)


def test_primitive_values(tctx, maps):
    f, g, _ = maps
    v = tctx.hopf.forest(ladder(1))
    assert convolve(f, g).value(v) == f.value(v) + g.value(v)
    assert conv_inverse(f).value(v) == -f.value(v)
    assert conv_log(f).value(v) == f.value(v)
    alpha = f - conv_unit(tctx)
    assert conv_exp(alpha).value(v) == f.value(v)


def test_inverse_of_unit(tctx):
    assert maps_agree(conv_inverse(conv_unit(tctx)), conv_unit(tctx), DEG)


def test_inverse_of_character_is_composition_with_antipode(tctx, rng):
    chi = random_character(tctx, DEG, rng)
    inv = conv_inverse(chi)
    for b in tctx.hopf.basis_upto(DEG):
        assert inv.value(b) == oracle_apply_antipode(chi, b)


def test_inverse_requires_normalization(tctx):
    bad = general_map(tctx, lambda b: 2)
    with pytest.raises(NormalizationError):
        conv_inverse(bad)
    with pytest.raises(NormalizationError):
        conv_log(bad)
    with pytest.raises(NormalizationError):
        conv_exp(conv_unit(tctx))


def test_exp_of_zero_and_log_of_unit(tctx):
    assert maps_agree(conv_exp(zero_map(tctx)), conv_unit(tctx), DEG)
    assert maps_agree(conv_log(conv_unit(tctx)), zero_map(tctx), DEG)


def test_exp_matches_power_series(tctx, rng):
    alpha = random_infinitesimal(tctx, DEG, rng)
    ex = conv_exp(alpha)
    for b in tctx.hopf.basis_upto(DEG):
        n = tctx.hopf.degree(b)
        direct = sum((conv_power(alpha, k).value(b).scale(Fraction(1, factorial(k)))
                      for k in range(n + 1)), LaurentSeries.zero())
        assert ex.value(b) == direct


def test_exp_log_round_trip(tctx, rng):
    for _ in range(3):
        alpha = random_general(tctx, rng, unit_value=0)
        assert maps_agree(conv_log(conv_exp(alpha)), alpha, 6)
        phi = random_general(tctx, rng)
        assert maps_agree(conv_exp(conv_log(phi)), phi, 5)


def test_exp_of_infinitesimal_character_is_character(tctx, rng):
    alpha = random_infinitesimal(tctx, 5, rng)
    assert multiplicativity_witness(conv_exp(alpha), iter_pairs_upto(tctx.hopf, 5)) is None


def test_convolution_of_characters_is_multiplicative(tctx, rng):
    f, g = random_character(tctx, DEG, rng), random_character(tctx, DEG, rng)
    fg = convolve(f, g)
    assert fg.kind == CHARACTER
    assert multiplicativity_witness(fg, iter_pairs_upto(tctx.hopf, DEG)) is None


def test_truncation_bounds(tctx, rng):
    phi = random_character(tctx, DEG, rng)
    alpha = random_infinitesimal(tctx, DEG, rng)
    diff = conv_unit(tctx) - phi
    for b in tctx.hopf.basis_upto(DEG):
        n = tctx.hopf.degree(b)
        assert conv_power(diff, n + 1).value(b).is_zero()
        assert conv_power(alpha, n + 1).value(b).is_zero()


def test_valuation_examples(tctx, rng, maps):
    e = conv_unit(tctx)
    assert valuation(e - e, DEG) == DEG + 1
    alpha = infinitesimal_character(tctx, {tctx.hopf.forest(ladder(1)): 1})
    assert valuation(alpha, DEG) == 1
    assert distance(alpha, zero_map(tctx), DEG) == Fraction(1, 2)
    f, g, _ = maps
    a, b = f - e, g - e
    # L^p * L^q is inside L^{p+q}
    a2, b2 = convolve(a, a), convolve(b, b)
    assert valuation(convolve(a2, b2), DEG) >= valuation(a2, DEG) + valuation(b2, DEG)


def test_bracket_of_infinitesimal_characters(tctx, rng):
    a, b = random_infinitesimal(tctx, 5, rng), random_infinitesimal(tctx, 5, rng)
    c = bracket(a, b)
    assert c.unit_value().is_zero()
    assert derivation_witness(c, iter_pairs_upto(tctx.hopf, 5)) is None
    assert not all(c.value(x).is_zero() for x in tctx.hopf.basis_upto(3))


@pytest.fixture
def planar_ctx():
    return ConvContext(PlanarRootedTrees(decorations=(0, 1)), 12)


def planar_pairs(ctx, d):
    H = ctx.hopf
    return [(Element.basis(a), Element.basis(b)) for a, b in iter_pairs_upto(H, d)]


def cocycle(ctx, rng, unit_value=1):
    # values depend only on the multiset of trees, so phi(xy) = phi(yx)
    return random_general(ctx, rng, unit_value=unit_value, key=lambda b: tuple(sorted(b)))


def test_cocycles_on_commutative_trees(tctx, maps):
    pairs = [(Element.basis(a), Element.basis(b)) for a, b in iter_pairs_upto(tctx.hopf, 4)]
    assert all(is_cocycle_on(f, pairs) for f in maps)


def test_planar_character_is_cocycle(planar_ctx, rng):
    chi = random_character(planar_ctx, 4, rng)
    assert is_cocycle_on(chi, planar_pairs(planar_ctx, 4))


def test_generic_planar_map_is_not_cocycle(planar_ctx, rng):
    f = random_general(planar_ctx, rng)
    witness = cocycle_witness(f, planar_pairs(planar_ctx, 2))
    assert witness is not None
    x, y = witness
    H = planar_ctx.hopf
    assert H.mul(x, y) != H.mul(y, x)


def test_cocycles_form_a_group(planar_ctx, rng):
    pairs = planar_pairs(planar_ctx, 4)
    f, g = cocycle(planar_ctx, rng), cocycle(planar_ctx, rng)
    assert is_cocycle_on(f, pairs) and is_cocycle_on(g, pairs)
    assert is_cocycle_on(convolve(f, g), pairs)
    assert is_cocycle_on(conv_inverse(f), pairs)


def test_missing_generator(tctx):
    chi = character(tctx, {tctx.hopf.forest(ladder(1)): 1})
    with pytest.raises(MissingGeneratorError):
        chi.value(tctx.hopf.forest(ladder(2)))


def test_character_rejects_non_generator(tctx):
    v = ladder(1)
    with pytest.raises(ValueError):
        character(tctx, {tctx.hopf.forest(v, v): 1})


def test_tabulated_map_refuses_higher_degrees(tctx, rng):
    t = tabulate(random_character(tctx, 3, rng), 2)
    with pytest.raises(PrecisionError):
        t.value(tctx.hopf.forest(ladder(3)))


def test_first_difference_refuses_vacuous_windows(tctx):
    a = general_map(tctx, lambda b: LaurentSeries({-1: 1}, -1))
    with pytest.raises(PrecisionError):
        first_difference(a, a, 1, min_window=0)


def test_character_file_round_trip(tctx, rng):
    gens = {g: random_laurent(rng) for d in range(1, 4) for g in tctx.hopf.generators(d)}
    text = format_character(gens, tctx.hopf)
    chi = parse_character_text(text, tctx)
    assert chi.kind == CHARACTER
    for g, v in gens.items():
        assert chi.value(g) == v
    inf = parse_character_text("kind: infinitesimal\ngen [0] = 1\n", tctx)
    assert inf.kind == INFINITESIMAL
    assert inf.value(tctx.hopf.forest(ladder(2))).is_zero()


def test_character_file_errors(tctx):
    with pytest.raises(ValueError):
        parse_character_text("gen [0] = 1\n", tctx)
    with pytest.raises(ValueError):
        parse_character_text("kind: character\ngen [0] [0] = 1\n", tctx)
    with pytest.raises(ValueError):
        parse_character_text("kind: character\nnonsense\n", tctx)
