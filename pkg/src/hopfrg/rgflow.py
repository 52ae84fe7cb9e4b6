"""Grading operators, the renormalization map and the beta-function.

Notation: ``Y`` is the grading derivation ``x -> |x| x`` and ``phi o Y`` the
map ``x -> |x| phi(x)``.  The renormalization map sends ``phi`` in the group
to the unique ``gamma`` with ``phi o Y = phi * gamma``; its inverse (the
scattering map) is the series ``sum I_n`` with ``I_0 = e`` and
``I_n = (I_{n-1} * gamma) o Y^-1``.

Everything stays exact: the twist ``psi^t(x) = exp(t z |x|) psi(x)`` only
uses the truncated series of ``exp(c z)`` with rational ``c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .birkhoff import birkhoff_decompose
from .convolution import (CHARACTER, GENERAL, INFINITESIMAL, ZERO, HopfMap,
                          conv_inverse, conv_unit, convolve, first_difference,
                          infinitesimal_character, require_unit)
from .scalars import EXACT, LaurentSeries, PrecisionError, exp_linear, residue


class NotInGPhiMinus(ValueError):
    """The map is not polar-valued with t-independent counterterms."""


# ---------------------------------------------------------------------------
# grading operators


def compose_Y(phi: HopfMap) -> HopfMap:
    """``phi o Y``: multiply the value on a degree-n basis element by n."""
    H = phi.hopf
    kind = INFINITESIMAL if phi.kind == INFINITESIMAL else GENERAL
    return HopfMap(phi.ctx, lambda b: phi.value(b).scale(H.degree(b)), kind,
                   f"{phi.name}oY")


def compose_Yinv(phi: HopfMap) -> HopfMap:
    """``phi o Y^-1``: divide by the degree; zero on the unit."""
    H = phi.hopf

    def recipe(b):
        d = H.degree(b)
        return ZERO if d == 0 else phi.value(b).scale(Fraction(1, d))

    kind = INFINITESIMAL if phi.kind == INFINITESIMAL else GENERAL
    return HopfMap(phi.ctx, recipe, kind, f"{phi.name}oY^-1")


def compose_Y_power(phi: HopfMap, n: int) -> HopfMap:
    H = phi.hopf
    return HopfMap(phi.ctx, lambda b: phi.value(b).scale(H.degree(b) ** n), GENERAL,
                   f"{phi.name}oY^{n}")


# ---------------------------------------------------------------------------
# renormalization map and its inverse


def renorm_map(phi: HopfMap) -> HopfMap:
    """``gamma`` with ``phi o Y = phi * gamma``, by recursion on the degree.

    ``gamma(x) = |x| phi(x) - sum phi(x') gamma(x'')`` over the reduced coproduct.
    """
    require_unit(phi, 1, "renorm_map")
    H = phi.hopf
    unit = H.unit
    gamma = None

    def recipe(b):
        if b == unit:
            return ZERO
        acc = phi.value(b).scale(H.degree(b))
        for (p, q), c in H.reduced_coproduct_basis(b).items():
            acc = acc - (phi.value(p) * gamma.value(q)).scale(c)
        return acc

    kind = INFINITESIMAL if phi.kind == CHARACTER else GENERAL
    gamma = HopfMap(phi.ctx, recipe, kind, f"Rt({phi.name})")
    return gamma


def renorm_map_explicit(phi: HopfMap) -> HopfMap:
    """``phi^{*-1} * (phi o Y)``."""
    out = convolve(conv_inverse(phi), compose_Y(phi))
    out.name = f"Rt({phi.name})"
    return out


def integrand_coefficients(alpha: HopfMap, b) -> dict[int, LaurentSeries]:
    """Coefficients of ``s**m`` in ``exp(-s alpha) * (alpha o Y) * exp(s alpha)`` at ``b``.

    Expanding both exponentials gives
    ``sum_{j,k} (-1)^j s^{j+k} / (j! k!) alpha^{*j} * (alpha o Y) * alpha^{*k}``,
    and every term with ``j + k >= |b|`` vanishes on ``b``.
    """
    require_unit(alpha, 0, "renorm_map_integral")
    H = alpha.hopf
    n = H.degree(b)
    powers = [conv_unit(alpha.ctx)]
    for _ in range(n):
        powers.append(convolve(powers[-1], alpha))
    aY = compose_Y(alpha)
    out: dict[int, LaurentSeries] = {}
    for j in range(n):
        left = convolve(powers[j], aY)
        for k in range(n - j):
            term = convolve(left, powers[k]).value(b)
            if term.is_zero():
                continue
            c = Fraction((-1) ** j, math.factorial(j) * math.factorial(k))
            out[j + k] = out.get(j + k, ZERO) + term.scale(c)
    return out


def renorm_map_integral(alpha: HopfMap, probe_degree: int | None = None) -> HopfMap:
    """``int_0^1 exp(-s alpha) * (alpha o Y) * exp(s alpha) ds``, integrated exactly.

    Equals ``renorm_map(conv_exp(alpha))``.  ``probe_degree`` optionally caps
    the degrees the map may be evaluated on.
    """
    require_unit(alpha, 0, "renorm_map_integral")
    H = alpha.hopf

    def recipe(b):
        if probe_degree is not None and H.degree(b) > probe_degree:
            raise PrecisionError(f"evaluation above probe degree {probe_degree}")
        acc = ZERO
        for m, coeff in integrand_coefficients(alpha, b).items():
            acc = acc + coeff.scale(Fraction(1, m + 1))
        return acc

    return HopfMap(alpha.ctx, recipe, GENERAL, f"Rint({alpha.name})")


def scattering_inverse(gamma: HopfMap, probe_degree: int | None = None) -> HopfMap:
    """The map ``phi`` with ``renorm_map(phi) = gamma``, as ``sum_n I_n``.

    ``I_n`` vanishes on elements of degree below ``n``, so the sum at a
    basis element stops at its degree.
    """
    require_unit(gamma, 0, "scattering_inverse")
    H = gamma.hopf
    terms = [conv_unit(gamma.ctx)]

    def I(n):
        while len(terms) <= n:
            terms.append(compose_Yinv(convolve(terms[-1], gamma)))
        return terms[n]

    def recipe(b):
        d = H.degree(b)
        if probe_degree is not None and d > probe_degree:
            raise PrecisionError(f"evaluation above probe degree {probe_degree}")
        acc = ZERO
        for n in range(d + 1):
            acc = acc + I(n).value(b)
        return acc

    kind = CHARACTER if gamma.kind == INFINITESIMAL else GENERAL
    return HopfMap(gamma.ctx, recipe, kind, f"Rt^-1({gamma.name})")


# ---------------------------------------------------------------------------
# residues and twists


def residue_functional(psi: HopfMap, x) -> Fraction:
    """Coefficient of ``z^-1`` in ``psi(x)``."""
    return residue(psi(x))


def residue_map(psi: HopfMap) -> HopfMap:
    """``Res psi`` as a map with constant values."""
    return HopfMap(psi.ctx, lambda b: LaurentSeries.constant(residue(psi.value(b)), EXACT),
                   GENERAL, f"Res({psi.name})")


def twist(psi: HopfMap, t) -> HopfMap:
    """``psi^t(x)(z) = exp(t z |x|) psi(x)(z)``."""
    t = Fraction(t)
    H = psi.hopf
    K = psi.ctx.precision

    def recipe(b):
        v = psi.value(b)
        c = t * H.degree(b)
        if c == 0:
            return v
        window = min(v.precision, K) + max(0, -v.valuation)
        return exp_linear(c, window) * v

    return HopfMap(psi.ctx, recipe, psi.kind, f"{psi.name}^{t}")


def max_pole_order(psi: HopfMap, probe_degree: int) -> int:
    return max((psi.value(b).pole_order() for b in psi.hopf.basis_upto(probe_degree)),
               default=0)


def phi_sample_count(psi: HopfMap, probe_degree: int) -> int:
    """Distinct t-values that certify t-independence of the counterterms.

    Each polar coefficient of the twisted decomposition is a polynomial in t of
    degree at most ``probe_degree * max pole order``.
    """
    return probe_degree * max_pole_order(psi, probe_degree) + 1


def property_phi_witness(psi: HopfMap, probe_degree: int,
                         t_samples: Sequence | None = None):
    """First ``(t, basis element)`` where ``(psi^t)_-`` differs from ``psi_-``, or None."""
    require_unit(psi, 1, "has_property_phi")
    need = phi_sample_count(psi, probe_degree)
    if t_samples is None:
        t_samples = range(1, need + 1)
    samples = sorted({Fraction(t) for t in t_samples} - {Fraction(0)})
    if len(samples) < need:
        raise ValueError(f"property Phi needs {need} distinct nonzero t samples, "
                         f"got {len(samples)}")
    base = birkhoff_decompose(psi).phi_minus
    for t in samples:
        moved = birkhoff_decompose(twist(psi, t)).phi_minus
        diff = first_difference(base, moved, probe_degree)
        if diff is not None:
            return (t, diff)
    return None


def has_property_phi(psi: HopfMap, probe_degree: int,
                     t_samples: Sequence | None = None) -> bool:
    return property_phi_witness(psi, probe_degree, t_samples) is None


# ---------------------------------------------------------------------------
# beta-function


def polar_witness(psi: HopfMap, probe_degree: int):
    """First nonunit basis element whose value has a holomorphic term, or None."""
    H = psi.hopf
    for b in H.basis_upto(probe_degree):
        if b == H.unit:
            continue
        v = psi.value(b)
        if v.precision < 0:
            raise PrecisionError(f"value on {H.format_basis(b)} too imprecise to "
                                 "certify containment")
        if any(n >= 0 for n in v.coefficients()):
            return b
    return None


@dataclass
class BetaResult:
    beta: HopfMap              # z * Rt(psi)
    via_residue: HopfMap       # (Res psi) o Y
    probe_degree: int
    mismatch: object = None    # first basis element where the two differ
    nonconstant: object = None  # first basis element where beta is not constant

    @property
    def agree(self) -> bool:
        return self.mismatch is None

    @property
    def constant(self) -> bool:
        return self.nonconstant is None


def beta_function(psi: HopfMap, probe_degree: int) -> BetaResult:
    """``beta = z Rt(psi)`` for ``psi`` polar-valued with property Phi.

    Raises :class:`NotInGPhiMinus` when containment or property Phi fails up
    to ``probe_degree``.
    """
    require_unit(psi, 1, "beta_function")
    H = psi.hopf
    bad = polar_witness(psi, probe_degree)
    if bad is not None:
        raise NotInGPhiMinus(f"not in G^Phi_-: value on {H.format_basis(bad)} "
                             "is not purely polar")
    w = property_phi_witness(psi, probe_degree)
    if w is not None:
        t, b = w
        raise NotInGPhiMinus(f"not in G^Phi_-: counterterm on {H.format_basis(b)} "
                             f"changes under the twist t = {t}")
    beta = renorm_map(psi).shift(1)
    beta.name = f"beta({psi.name})"
    via = compose_Y(residue_map(psi))
    mismatch = first_difference(beta, via, probe_degree, 0)
    nonconstant = None
    for b in H.basis_upto(probe_degree):
        if not beta.value(b).is_constant():
            nonconstant = b
            break
    return BetaResult(beta, via, probe_degree, mismatch, nonconstant)


def u_beta_property_check(psi: HopfMap, n: int, probe_degree: int) -> bool:
    """``z^n psi o Y^n = psi * U^n(e)`` with ``U(A) = beta * A + z A o Y``."""
    require_unit(psi, 1, "u_beta_property_check")
    beta = renorm_map(psi).shift(1)
    A = conv_unit(psi.ctx)
    for _ in range(n):
        A = convolve(beta, A) + compose_Y(A).shift(1)
    lhs = compose_Y_power(psi, n).shift(n)
    return first_difference(lhs, convolve(psi, A), probe_degree, 0) is None


# ---------------------------------------------------------------------------
# first-order behaviour of the twisted decomposition


def _interpolate(ts: Sequence[Fraction], ys: Sequence[Fraction]) -> tuple:
    """Exact interpolating polynomial through the points, as a coefficient list."""
    n = len(ts)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # numerator polynomial prod_{j != i} (t - t_j)
        poly = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            poly = [Fraction(0)] + poly
            for k in range(len(poly) - 1):
                poly[k] -= ts[j] * poly[k + 1]
            denom *= ts[i] - ts[j]
        for k in range(n):
            coeffs[k] += ys[i] * poly[k] / denom
    return tuple(coeffs)


def _evaluate(coeffs: Sequence[Fraction], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def twisted_plus_derivative(psi: HopfMap, b, probe_degree: int, window: int = 2):
    """``d/dt (psi^t)_+(b)`` at ``t = 0`` on ``z^0 .. z^window``, by exact interpolation.

    Coefficients of ``(psi^t)_+(b)`` are polynomials in t; the degree bound
    ``window + probe_degree * max pole + 1`` fixes how many samples are used,
    and one extra sample checks that the bound was large enough.
    """
    deg = window + probe_degree * max_pole_order(psi, probe_degree) + 1
    ts = [Fraction(k) for k in range(deg + 2)]
    values = []
    for t in ts:
        v = birkhoff_decompose(twist(psi, t)).phi_plus.value(b)
        if v.precision < window:
            raise PrecisionError("twisted values lost too much precision; "
                                 "raise the context precision")
        values.append(v)
    out = {}
    for k in range(window + 1):
        ys = [v[k] for v in values]
        coeffs = _interpolate(ts[:-1], ys[:-1])
        if _evaluate(coeffs, ts[-1]) != ys[-1]:
            raise ArithmeticError("t-degree bound exceeded while interpolating")
        out[k] = coeffs[1] if len(coeffs) > 1 else Fraction(0)
    return out


def first_order_witness(psi: HopfMap, probe_degree: int, window: int = 2):
    """First basis element where ``d/dt (psi^t)_+ != Res(psi o Y)`` at t = 0, or None."""
    res = residue_map(compose_Y(psi))
    for b in psi.hopf.basis_upto(probe_degree):
        deriv = twisted_plus_derivative(psi, b, probe_degree, window)
        expected = res.value(b)
        if any(deriv[k] != expected[k] for k in deriv):
            return b
    return None


def constant_infinitesimal(ctx, generator_values) -> HopfMap:
    """Constant-valued infinitesimal character from rational generator values."""
    return infinitesimal_character(
        ctx, {g: LaurentSeries.constant(c, EXACT) for g, c in generator_values.items()},
        "beta0")


def scattering_of_beta(beta0: HopfMap) -> HopfMap:
    """``Rt^-1(beta0 / z)``."""
    return scattering_inverse(beta0.shift(-1))
