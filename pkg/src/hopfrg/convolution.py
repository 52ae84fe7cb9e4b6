"""The convolution algebra of linear maps from a Hopf algebra to Laurent series.

A :class:`HopfMap` is lazy: it stores a recipe (a function on basis keys)
and memoizes the values it has produced.  Composite maps such as
convolutions, inverses, exponentials and logarithms only ever evaluate the
finitely many basis elements they are asked about.

Maps are tagged with a ``kind``:

* ``"character"``  -- value 1 on the unit, multiplicative on products;
* ``"infinitesimal"`` -- value 0 on the unit and on nontrivial products;
* ``"general"`` -- no constraint beyond the unit value.

The tag is informational.  Values are always computed from the recipe, so
property tests about multiplicativity are checks and not tautologies.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .hopf import Element, HopfAlgebra, Key
from .scalars import (DEFAULT_PRECISION, EXACT, MINIMAL_SUBTRACTION, LaurentSeries,
                      PrecisionError, as_rational, format_series, parse_series)

GENERAL = "general"
CHARACTER = "character"
INFINITESIMAL = "infinitesimal"
KINDS = (GENERAL, CHARACTER, INFINITESIMAL)

ONE = LaurentSeries.one(EXACT)
ZERO = LaurentSeries.zero(EXACT)


class NormalizationError(ValueError):
    """A map has the wrong value on the unit for the requested operation."""


class MissingGeneratorError(KeyError):
    """A character was evaluated on a generator it does not define."""

    def __str__(self):
        return self.args[0] if self.args else "missing generator"


@dataclass(frozen=True)
class ConvContext:
    """Hopf algebra plus the precision bound shared by all maps of a computation."""

    hopf: HopfAlgebra
    precision: int = DEFAULT_PRECISION

    def series(self, value) -> LaurentSeries:
        """Coerce a rational, a literal or a series into a Laurent series."""
        if isinstance(value, LaurentSeries):
            return value
        if isinstance(value, str):
            return parse_series(value, self.precision)
        return LaurentSeries.constant(as_rational(value), EXACT)


class HopfMap:
    """A linear map ``H -> A`` given by a recipe on basis keys, memoized."""

    def __init__(self, ctx: ConvContext, recipe: Callable[[Key], LaurentSeries],
                 kind: str = GENERAL, name: str = "map"):
        if kind not in KINDS:
            raise ValueError(f"unknown map kind {kind!r}")
        self.ctx = ctx
        self.kind = kind
        self.name = name
        self._recipe = recipe
        self._cache: dict = {}

    @property
    def hopf(self) -> HopfAlgebra:
        return self.ctx.hopf

    def value(self, b: Key) -> LaurentSeries:
        try:
            return self._cache[b]
        except KeyError:
            pass
        v = self._recipe(b)
        self._cache[b] = v
        return v

    def on(self, x: Element) -> LaurentSeries:
        """Linear extension to a combination of basis elements."""
        acc = ZERO
        for b, c in x.items():
            acc = acc + self.value(b).scale(c)
        return acc

    def __call__(self, x) -> LaurentSeries:
        return self.on(x) if isinstance(x, Element) else self.value(x)

    def unit_value(self) -> LaurentSeries:
        return self.value(self.hopf.unit)

    def table(self, max_degree: int) -> dict:
        return {b: self.value(b) for b in self.hopf.basis_upto(max_degree)}

    # linear structure

    def _check(self, other: "HopfMap"):
        if other.ctx.hopf is not self.ctx.hopf:
            raise ValueError("maps live on different Hopf algebras")

    def __add__(self, other: "HopfMap") -> "HopfMap":
        self._check(other)
        kind = INFINITESIMAL if self.kind == other.kind == INFINITESIMAL else GENERAL
        return HopfMap(self.ctx, lambda b: self.value(b) + other.value(b), kind,
                       f"({self.name} + {other.name})")

    def __sub__(self, other: "HopfMap") -> "HopfMap":
        self._check(other)
        kind = INFINITESIMAL if self.kind == other.kind == INFINITESIMAL else GENERAL
        return HopfMap(self.ctx, lambda b: self.value(b) - other.value(b), kind,
                       f"({self.name} - {other.name})")

    def __neg__(self) -> "HopfMap":
        kind = INFINITESIMAL if self.kind == INFINITESIMAL else GENERAL
        return HopfMap(self.ctx, lambda b: -self.value(b), kind, f"-{self.name}")

    def scale(self, c) -> "HopfMap":
        c = as_rational(c)
        kind = INFINITESIMAL if self.kind == INFINITESIMAL else GENERAL
        return HopfMap(self.ctx, lambda b: self.value(b).scale(c), kind, f"{c}*{self.name}")

    def __rmul__(self, c) -> "HopfMap":
        return self.scale(c)

    def __mul__(self, other: "HopfMap") -> "HopfMap":
        return convolve(self, other)

    def map_values(self, fn: Callable[[LaurentSeries], LaurentSeries],
                   name: str = "f", kind: str = GENERAL) -> "HopfMap":
        """Pointwise post-composition with a map ``A -> A``."""
        return HopfMap(self.ctx, lambda b: fn(self.value(b)), kind, f"{name}({self.name})")

    def shift(self, k: int) -> "HopfMap":
        """Multiply every value by ``z**k``."""
        return self.map_values(lambda s: s.shift(k), f"z^{k}", self.kind)

    def __repr__(self):
        return f"HopfMap({self.name}, kind={self.kind}, on {self.hopf.name})"


# ---------------------------------------------------------------------------
# factories


def conv_unit(ctx: ConvContext) -> HopfMap:
    """The unit ``e = u o counit``."""
    unit = ctx.hopf.unit
    return HopfMap(ctx, lambda b: ONE if b == unit else ZERO, CHARACTER, "e")


def zero_map(ctx: ConvContext) -> HopfMap:
    return HopfMap(ctx, lambda b: ZERO, INFINITESIMAL, "0")


def table_map(ctx: ConvContext, values: Mapping) -> HopfMap:
    """General map given by a finite table; unlisted basis elements map to 0."""
    table = {b: ctx.series(v) for b, v in values.items()}
    return HopfMap(ctx, lambda b: table.get(b, ZERO), GENERAL, "table")


def general_map(ctx: ConvContext, fn: Callable[[Key], object],
                name: str = "phi") -> HopfMap:
    return HopfMap(ctx, lambda b: ctx.series(fn(b)), GENERAL, name)


def character(ctx: ConvContext, generator_values: Mapping, name: str = "phi") -> HopfMap:
    """Character fixed by its values on algebra generators, extended multiplicatively."""
    H = ctx.hopf
    table = {g: ctx.series(v) for g, v in generator_values.items()}
    for g in table:
        if not H.is_generator(g):
            raise ValueError(f"{H.format_basis(g)} is not an algebra generator")

    def recipe(b):
        if b == H.unit:
            return ONE
        acc = ONE
        for g in H.factors(b):
            if g not in table:
                raise MissingGeneratorError(
                    f"character {name} has no value on generator {H.format_basis(g)}")
            acc = acc * table[g]
        return acc

    return HopfMap(ctx, recipe, CHARACTER, name)


def infinitesimal_character(ctx: ConvContext, generator_values: Mapping,
                            name: str = "alpha") -> HopfMap:
    """Infinitesimal character: given on generators, zero on the unit and on products."""
    H = ctx.hopf
    table = {g: ctx.series(v) for g, v in generator_values.items()}
    for g in table:
        if not H.is_generator(g):
            raise ValueError(f"{H.format_basis(g)} is not an algebra generator")

    def recipe(b):
        if b == H.unit or not H.is_generator(b):
            return ZERO
        return table.get(b, ZERO)

    return HopfMap(ctx, recipe, INFINITESIMAL, name)


def tabulate(phi: HopfMap, max_degree: int) -> HopfMap:
    """Freeze the values of ``phi`` up to ``max_degree``; higher degrees raise."""
    table = phi.table(max_degree)

    def recipe(b):
        try:
            return table[b]
        except KeyError:
            raise PrecisionError(
                f"{phi.name} was tabulated up to degree {max_degree} only") from None

    return HopfMap(phi.ctx, recipe, phi.kind, phi.name)


# ---------------------------------------------------------------------------
# convolution and the group G


def convolve(phi: HopfMap, psi: HopfMap) -> HopfMap:
    """``(phi * psi)(x) = sum phi(x1) psi(x2)`` over the full coproduct."""
    phi._check(psi)
    H = phi.hopf
    unit = H.unit

    def recipe(b):
        if b == unit:
            return phi.value(unit) * psi.value(unit)
        acc = phi.value(b) * psi.value(unit) + phi.value(unit) * psi.value(b)
        for (p, q), c in H.reduced_coproduct_basis(b).items():
            acc = acc + (phi.value(p) * psi.value(q)).scale(c)
        return acc

    kind = CHARACTER if phi.kind == psi.kind == CHARACTER else GENERAL
    return HopfMap(phi.ctx, recipe, kind, f"({phi.name} * {psi.name})")


def conv_power(alpha: HopfMap, k: int) -> HopfMap:
    out = conv_unit(alpha.ctx)
    for _ in range(k):
        out = convolve(out, alpha)
    return out


class _PowerSeries:
    """Lazily built convolution powers ``alpha^{*k}``, shared by exp, log and inverses."""

    def __init__(self, alpha: HopfMap):
        self.alpha = alpha
        self.powers = [conv_unit(alpha.ctx)]

    def __getitem__(self, k: int) -> HopfMap:
        while len(self.powers) <= k:
            self.powers.append(convolve(self.powers[-1], self.alpha))
        return self.powers[k]


def require_unit(phi: HopfMap, expected: int, op: str):
    u = phi.unit_value()
    if u.precision < 0 or not u.agrees_with(expected):
        want = "1" if expected else "0"
        raise NormalizationError(f"{op} needs value {want} on the unit, got {u}")


def conv_inverse(phi: HopfMap) -> HopfMap:
    """``phi^{*-1} = sum_k (e - phi)^{*k}``; the sum stops at ``k = |x|``."""
    require_unit(phi, 1, "conv_inverse")
    H = phi.hopf
    powers = _PowerSeries(conv_unit(phi.ctx) - phi)

    def recipe(b):
        acc = ZERO
        for k in range(H.degree(b) + 1):
            acc = acc + powers[k].value(b)
        return acc

    kind = CHARACTER if phi.kind == CHARACTER else GENERAL
    return HopfMap(phi.ctx, recipe, kind, f"{phi.name}^-1")


def conv_exp(alpha: HopfMap) -> HopfMap:
    """``exp*(alpha) = sum alpha^{*k}/k!``, finite on each basis element."""
    require_unit(alpha, 0, "conv_exp")
    H = alpha.hopf
    powers = _PowerSeries(alpha)

    def recipe(b):
        acc = ZERO
        for k in range(H.degree(b) + 1):
            acc = acc + powers[k].value(b).scale(Fraction(1, math.factorial(k)))
        return acc

    kind = CHARACTER if alpha.kind == INFINITESIMAL else GENERAL
    return HopfMap(alpha.ctx, recipe, kind, f"exp({alpha.name})")


def conv_log(phi: HopfMap) -> HopfMap:
    """``log*(phi) = sum_{k>=1} (-1)^{k-1}/k (phi - e)^{*k}``."""
    require_unit(phi, 1, "conv_log")
    H = phi.hopf
    powers = _PowerSeries(phi - conv_unit(phi.ctx))

    def recipe(b):
        acc = ZERO
        for k in range(1, H.degree(b) + 1):
            acc = acc + powers[k].value(b).scale(Fraction((-1) ** (k - 1), k))
        return acc

    kind = INFINITESIMAL if phi.kind == CHARACTER else GENERAL
    return HopfMap(phi.ctx, recipe, kind, f"log({phi.name})")


def bracket(alpha: HopfMap, beta: HopfMap) -> HopfMap:
    out = convolve(alpha, beta) - convolve(beta, alpha)
    if alpha.kind == beta.kind == INFINITESIMAL:
        out.kind = INFINITESIMAL
    out.name = f"[{alpha.name}, {beta.name}]"
    return out


def pole_projection(phi: HopfMap) -> HopfMap:
    """``R(phi) = pi o phi`` with the minimal-subtraction projector."""
    return phi.map_values(MINIMAL_SUBTRACTION.pole_part, "R")


def regular_projection(phi: HopfMap) -> HopfMap:
    """``(Id - R)(phi)``."""
    return phi.map_values(MINIMAL_SUBTRACTION.regular_part, "Rt")


# ---------------------------------------------------------------------------
# comparisons and filtration


def valuation(phi: HopfMap, probe_degree: int) -> int:
    """Largest ``n <= probe_degree + 1`` with ``phi`` zero below degree ``n``."""
    H = phi.hopf
    for d in range(probe_degree + 1):
        if any(not phi.value(b).is_zero() for b in H.basis(d)):
            return d
    return probe_degree + 1


def distance(phi: HopfMap, psi: HopfMap, probe_degree: int) -> Fraction:
    """The ultrametric ``2**-val(phi - psi)``, seen through the probe."""
    return Fraction(1, 2 ** valuation(phi - psi, probe_degree))


def first_difference(phi: HopfMap, psi: HopfMap, max_degree: int,
                     min_window: int | None = None):
    """First basis element (by degree) where the two maps disagree, else None.

    Values are compared on their common precision window.  With
    ``min_window`` a window below that bound raises :class:`PrecisionError`
    instead of passing vacuously.
    """
    phi._check(psi)
    for b in phi.hopf.basis_upto(max_degree):
        u, v = phi.value(b), psi.value(b)
        if min_window is not None and min(u.precision, v.precision) < min_window:
            raise PrecisionError(
                f"values on {phi.hopf.format_basis(b)} known only up to "
                f"z^{min(u.precision, v.precision)}")
        if not u.agrees_with(v):
            return b
    return None


def maps_agree(phi: HopfMap, psi: HopfMap, max_degree: int,
               min_window: int | None = None) -> bool:
    return first_difference(phi, psi, max_degree, min_window) is None


def cocycle_witness(phi: HopfMap, pairs: Iterable[tuple[Element, Element]]):
    """First pair ``(x, y)`` with ``phi(xy) != phi(yx)``, or None."""
    H = phi.hopf
    for x, y in pairs:
        if not phi.on(H.mul(x, y)).agrees_with(phi.on(H.mul(y, x))):
            return (x, y)
    return None


def is_cocycle_on(phi: HopfMap, pairs: Iterable[tuple[Element, Element]]) -> bool:
    return cocycle_witness(phi, pairs) is None


def multiplicativity_witness(phi: HopfMap, pairs: Iterable[tuple[Key, Key]]):
    """First basis pair with ``phi(ab) != phi(a) phi(b)``, or None."""
    H = phi.hopf
    for a, b in pairs:
        if not phi.value(H.product_basis(a, b)).agrees_with(phi.value(a) * phi.value(b)):
            return (a, b)
    return None


def derivation_witness(alpha: HopfMap, pairs: Iterable[tuple[Key, Key]]):
    """First pair of Ker(counit) basis elements with ``alpha(ab) != 0``, or None."""
    H = alpha.hopf
    for a, b in pairs:
        if not alpha.value(H.product_basis(a, b)).is_zero():
            return (a, b)
    return None


# ---------------------------------------------------------------------------
# character files:  kind: character|infinitesimal  /  gen <literal> = <series>


_GEN_LINE = re.compile(r"gen\s+(.+?)\s*=\s*(.+)")


def parse_character_text(text: str, ctx: ConvContext, name: str = "phi") -> HopfMap:
    kind = None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("kind:"):
            kind = line.split(":", 1)[1].strip()
            if kind not in (CHARACTER, INFINITESIMAL):
                raise ValueError(f"line {lineno}: kind must be character or infinitesimal")
            continue
        m = _GEN_LINE.fullmatch(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'gen <generator> = <series>'")
        try:
            g = ctx.hopf.parse_basis(m.group(1))
            v = parse_series(m.group(2), ctx.precision)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if not ctx.hopf.is_generator(g):
            raise ValueError(f"line {lineno}: {m.group(1)!r} is not a generator")
        values[g] = v
    if kind is None:
        raise ValueError("character file needs a 'kind:' header")
    if kind == CHARACTER:
        return character(ctx, values, name)
    return infinitesimal_character(ctx, values, name)


def read_character_file(path, ctx: ConvContext) -> HopfMap:
    p = Path(path)
    return parse_character_text(p.read_text(), ctx, p.stem)


def format_character(phi_values: Mapping, H: HopfAlgebra, kind: str = CHARACTER) -> str:
    lines = [f"kind: {kind}"]
    for g in sorted(phi_values, key=lambda g: (H.degree(g), H.format_basis(g))):
        lines.append(f"gen {H.format_basis(g)} = {format_series(phi_values[g])}")
    return "\n".join(lines) + "\n"
