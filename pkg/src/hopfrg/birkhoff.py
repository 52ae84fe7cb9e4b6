"""Birkhoff decomposition ``phi = phi_-^{*-1} * phi_+`` for minimal subtraction.

Two independent routes are provided:

* :func:`birkhoff_decompose` -- the degree recursion through the Bogoliubov
  preparation map ``b(x) = phi(x) + sum phi_-(x') phi(x'')``;
* :func:`birkhoff_via_bch` -- the fixed point ``chi`` of
  ``Y -> X - delta(R(Y), (Id - R)(Y))`` with ``X = log(phi)``, followed by
  ``phi_- = exp(-R(chi))`` and ``phi_+ = exp((Id - R)(chi))``.

Both routes must give the same pair, since the decomposition is unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .convolution import (CHARACTER, GENERAL, ONE, HopfMap, require_unit, conv_exp,
                          conv_log, convolve, first_difference,
                          pole_projection, regular_projection, tabulate, valuation)
from .hopf import Element
from .scalars import MINIMAL_SUBTRACTION, MinimalSubtraction, ls_eval_at_zero

RECURSIVE = "recursive"
BCH = "bch"


@dataclass
class BirkhoffResult:
    phi_minus: HopfMap
    phi_plus: HopfMap
    method: str
    preparation: HopfMap | None = None
    bch: "BchState | None" = None

    def renormalized_value(self, x) -> Fraction:
        return ls_eval_at_zero(self.phi_plus(x))


class _Recursion:
    """Shared memo for the Bogoliubov map and the two components."""

    def __init__(self, phi: HopfMap, scheme: MinimalSubtraction):
        self.phi = phi
        self.scheme = scheme
        H = phi.hopf
        kind = CHARACTER if phi.kind == CHARACTER else GENERAL
        self.prep = HopfMap(phi.ctx, self._prep, GENERAL, f"b({phi.name})")
        self.minus = HopfMap(phi.ctx, self._minus, kind, f"{phi.name}_-")
        self.plus = HopfMap(phi.ctx, self._plus, kind, f"{phi.name}_+")
        self.unit = H.unit

    def _prep(self, b):
        if b == self.unit:
            return ONE
        H = self.phi.hopf
        acc = self.phi.value(b)
        for (p, q), c in H.reduced_coproduct_basis(b).items():
            acc = acc + (self.minus.value(p) * self.phi.value(q)).scale(c)
        return acc

    def _minus(self, b):
        if b == self.unit:
            return ONE
        return -self.scheme.pole_part(self.prep.value(b))

    def _plus(self, b):
        if b == self.unit:
            return self.phi.value(b)
        return self.scheme.regular_part(self.prep.value(b))


def bogoliubov(phi: HopfMap, scheme: MinimalSubtraction = MINIMAL_SUBTRACTION) -> HopfMap:
    """The preparation map ``b(phi)``; ``phi_- = -pi(b)`` and ``phi_+ = (I - pi)(b)``."""
    require_unit(phi, 1, "bogoliubov")
    return _Recursion(phi, scheme).prep


def birkhoff_decompose(phi: HopfMap,
                       scheme: MinimalSubtraction = MINIMAL_SUBTRACTION) -> BirkhoffResult:
    """Recursive Birkhoff decomposition (memoized over degree)."""
    require_unit(phi, 1, "birkhoff_decompose")
    rec = _Recursion(phi, scheme)
    return BirkhoffResult(rec.minus, rec.plus, RECURSIVE, preparation=rec.prep)


def renormalized_value(phi: HopfMap, x) -> Fraction:
    """``phi_+(x)`` evaluated at ``z = 0``."""
    return birkhoff_decompose(phi).renormalized_value(x)


# ---------------------------------------------------------------------------
# BCH route


def bch_delta(a: HopfMap, b: HopfMap) -> HopfMap:
    """``delta(A, B) = log(exp A * exp B) - A - B``."""
    return conv_log(convolve(conv_exp(a), conv_exp(b))) - a - b


@dataclass
class BchState:
    chi: HopfMap
    probe_degree: int
    iterations: int
    trace: list = field(default_factory=list)  # valuation of each update


def bch_chi(X: HopfMap, probe_degree: int) -> BchState:
    """Fixed point of ``F_X(Y) = X - delta(R(Y), (Id - R)(Y))`` up to ``probe_degree``.

    Starts from ``Y = X``; each update has strictly larger valuation, so at
    most ``probe_degree + 2`` iterations are needed.
    """
    require_unit(X, 0, "bch_chi")
    Y = tabulate(X, probe_degree)
    trace = []
    for it in range(1, probe_degree + 3):
        new = X - bch_delta(pole_projection(Y), regular_projection(Y))
        new = tabulate(new, probe_degree)
        v = valuation(new - Y, probe_degree)
        trace.append(v)
        Y = new
        if v > probe_degree:
            Y.name = f"chi({X.name})"
            return BchState(Y, probe_degree, it, trace)
    raise ArithmeticError("BCH fixed-point iteration did not settle; "
                          "values probably lost precision")


def birkhoff_via_bch(phi: HopfMap, probe_degree: int) -> BirkhoffResult:
    require_unit(phi, 1, "birkhoff_via_bch")
    X = tabulate(conv_log(phi), probe_degree)
    state = bch_chi(X, probe_degree)
    minus = conv_exp(-pole_projection(state.chi))
    plus = conv_exp(regular_projection(state.chi))
    minus.name, plus.name = f"{phi.name}_-", f"{phi.name}_+"
    return BirkhoffResult(minus, plus, BCH, bch=state)


def compare_routes(phi: HopfMap, probe_degree: int):
    """First basis element where the two routes disagree, or None."""
    rec = birkhoff_decompose(phi)
    bch = birkhoff_via_bch(phi, probe_degree)
    diff = first_difference(rec.phi_minus, bch.phi_minus, probe_degree, 0)
    if diff is None:
        diff = first_difference(rec.phi_plus, bch.phi_plus, probe_degree, 0)
    return diff


# ---------------------------------------------------------------------------
# checks


def containment_witness(result: BirkhoffResult, max_degree: int):
    """First basis element violating ``phi_-(Ker e) in A_-`` or ``phi_+ in A_+``."""
    H = result.phi_minus.hopf
    for b in H.basis_upto(max_degree):
        m, p = result.phi_minus.value(b), result.phi_plus.value(b)
        if b == H.unit:
            if not m.agrees_with(1):
                return b
        elif any(n >= 0 for n in m.coefficients()):
            return b
        if any(n < 0 for n in p.coefficients()):
            return b
    return None


def reconstruction_witness(phi: HopfMap, result: BirkhoffResult, max_degree: int):
    """First basis element where ``phi_- * phi != phi_+``, or None."""
    return first_difference(convolve(result.phi_minus, phi), result.phi_plus,
                            max_degree, 0)


def is_decomposed(phi: HopfMap, max_degree: int) -> bool:
    """True if ``phi`` is holomorphic, so that its decomposition is ``(e, phi)``."""
    H = phi.hopf
    return all(not any(n < 0 for n in phi.value(b).coefficients())
               for b in H.basis_upto(max_degree))


def renormalized_values(phi: HopfMap, elements) -> dict:
    res = birkhoff_decompose(phi)
    return {b: res.renormalized_value(Element.basis(b)) for b in elements}
