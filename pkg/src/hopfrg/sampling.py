"""Seeded random test data: Laurent polynomials, characters, cocycles."""

from __future__ import annotations

import random
from fractions import Fraction

from .convolution import (ConvContext, HopfMap, character, general_map,
                          infinitesimal_character)
from .scalars import EXACT, LaurentSeries


def random_laurent(rng: random.Random, low: int = -3, high: int = 2,
                   span: int = 3, precision: int = EXACT) -> LaurentSeries:
    """A Laurent polynomial with small rational coefficients on ``z^low .. z^high``."""
    coeffs = {}
    for n in range(low, high + 1):
        if rng.random() < 0.7:
            coeffs[n] = Fraction(rng.randint(-span, span), rng.randint(1, 3))
    return LaurentSeries(coeffs, precision)


def generators_upto(H, max_degree: int) -> list:
    return [g for d in range(1, max_degree + 1) for g in H.generators(d)]


def random_character(ctx: ConvContext, max_degree: int, rng: random.Random,
                     max_pole: int = 2, name: str = "phi") -> HopfMap:
    gens = generators_upto(ctx.hopf, max_degree)
    return character(ctx, {g: random_laurent(rng, -max_pole, 1) for g in gens}, name)


def random_holomorphic_character(ctx: ConvContext, max_degree: int,
                                 rng: random.Random, name: str = "h") -> HopfMap:
    gens = generators_upto(ctx.hopf, max_degree)
    return character(ctx, {g: random_laurent(rng, 0, 2) for g in gens}, name)


def random_infinitesimal(ctx: ConvContext, max_degree: int, rng: random.Random,
                         max_pole: int = 1, name: str = "alpha") -> HopfMap:
    gens = generators_upto(ctx.hopf, max_degree)
    return infinitesimal_character(ctx, {g: random_laurent(rng, -max_pole, 1) for g in gens},
                                   name)


def random_constant_infinitesimal(ctx: ConvContext, max_degree: int,
                                  rng: random.Random, name: str = "beta0") -> HopfMap:
    gens = generators_upto(ctx.hopf, max_degree)
    vals = {}
    for g in gens:
        vals[g] = LaurentSeries.constant(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), EXACT)
    if all(v.is_zero() for v in vals.values()) and gens:
        vals[gens[0]] = LaurentSeries.constant(1, EXACT)
    return infinitesimal_character(ctx, vals, name)


def random_general(ctx: ConvContext, rng: random.Random, unit_value: int = 1,
                   max_pole: int = 2, key=None, name: str = "f") -> HopfMap:
    """A map with independent random values per basis element.

    ``key`` maps a basis element to the label its value depends on; a key
    that forgets factor order (e.g. sorting the factors) yields a cocycle.
    """
    H = ctx.hopf
    seed = rng.getrandbits(64)
    key = key or (lambda b: b)

    def fn(b):
        if b == H.unit:
            return unit_value
        local = random.Random(f"{seed}:{key(b)!r}")
        return random_laurent(local, -max_pole, 1)

    return general_map(ctx, fn, name)
