"""Exact rationals and truncated Laurent series in ``z`` around ``z = 0``.

A :class:`LaurentSeries` stores finitely many rational coefficients together
with a precision bound ``K``: every coefficient of ``z**n`` with ``n <= K`` is
known exactly, everything above ``K`` is unknown.  Arithmetic propagates the
bound the same way big-O terms do, and never reports a coefficient outside
the known window.

The minimal-subtraction splitting ``A = A_- (+) A_+`` is exposed as
:class:`MinimalSubtraction`; ``A_-`` holds strictly negative powers.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

DEFAULT_PRECISION = 8
# precision bound used for exact Laurent polynomials (pole parts, promoted scalars)
EXACT = 10**9

Number = Union[int, Fraction]


class PrecisionError(ArithmeticError):
    """Raised when a result would need coefficients beyond the known window."""


class PoleError(ValueError):
    """Raised when evaluating a series with a pole at ``z = 0``."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational literals (``"-1/2"``) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


class LaurentSeries:
    """Immutable truncated Laurent series ``sum c_n z**n`` known for ``n <= K``."""

    __slots__ = ("_coeffs", "_K", "_v")

    def __init__(self, coeffs: Mapping[int, Number] | None = None,
                 precision: int = DEFAULT_PRECISION):
        K = int(precision)
        clean = {}
        for n, c in (coeffs or {}).items():
            c = as_rational(c)
            if c and n <= K:
                clean[int(n)] = c
        self._coeffs = clean
        self._K = K
        self._v = min(clean) if clean else K + 1

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, c: Number, precision: int = DEFAULT_PRECISION) -> "LaurentSeries":
        return cls({0: c}, precision)

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION) -> "LaurentSeries":
        return cls({}, precision)

    @classmethod
    def one(cls, precision: int = DEFAULT_PRECISION) -> "LaurentSeries":
        return cls({0: 1}, precision)

    @classmethod
    def monomial(cls, n: int, c: Number = 1,
                 precision: int = DEFAULT_PRECISION) -> "LaurentSeries":
        return cls({n: c}, precision)

    @classmethod
    def parse(cls, text: str, precision: int = DEFAULT_PRECISION) -> "LaurentSeries":
        return parse_series(text, precision)

    # -- accessors --------------------------------------------------------

    @property
    def precision(self) -> int:
        return self._K

    @property
    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient, or ``K + 1`` if none is known."""
        return self._v

    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def __getitem__(self, n: int) -> Fraction:
        if n > self._K:
            raise PrecisionError(f"coefficient of z^{n} unknown (precision {self._K})")
        return self._coeffs.get(n, Fraction(0))

    def is_zero(self) -> bool:
        """True if the series vanishes on its whole known window."""
        return not self._coeffs

    def is_constant(self) -> bool:
        return all(n == 0 for n in self._coeffs)

    def pole_order(self) -> int:
        return max(0, -self._v) if self._coeffs else 0

    def truncate(self, precision: int) -> "LaurentSeries":
        if precision > self._K:
            raise PrecisionError(f"cannot raise precision {self._K} to {precision}")
        return LaurentSeries(self._coeffs, precision)

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentSeries({0: other}, EXACT)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        K = min(self._K, other._K)
        out = dict(self._coeffs)
        for n, c in other._coeffs.items():
            out[n] = out.get(n, 0) + c
        return LaurentSeries(out, K)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries({n: -c for n, c in self._coeffs.items()}, self._K)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Number) -> "LaurentSeries":
        c = as_rational(c)
        return LaurentSeries({n: c * a for n, a in self._coeffs.items()}, self._K)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``z**k``; the window shifts with the series."""
        return LaurentSeries({n + k: c for n, c in self._coeffs.items()}, self._K + k)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        K = min(self._K + other._v, other._K + self._v)
        out: dict[int, Fraction] = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                n = i + j
                if n <= K:
                    out[n] = out.get(n, 0) + a * b
        return LaurentSeries(out, K)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.inverse(self._K).__pow__(-k)
        out = LaurentSeries.one(EXACT)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self, target_precision: int | None = None) -> "LaurentSeries":
        if target_precision is None:
            target_precision = min(self._K, DEFAULT_PRECISION)
        return ls_inverse(self, target_precision)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(Fraction(1) / as_rational(other))
        return NotImplemented

    # -- comparison -------------------------------------------------------

    def agrees_with(self, other, window: int | None = None) -> bool:
        """Coefficient equality on the common known window (optionally capped)."""
        other = self._coerce(other)
        K = min(self._K, other._K)
        if window is not None:
            K = min(K, window)
        keys = {n for n in self._coeffs if n <= K} | {n for n in other._coeffs if n <= K}
        return all(self._coeffs.get(n, 0) == other._coeffs.get(n, 0) for n in keys)

    def __eq__(self, other):
        if isinstance(other, (LaurentSeries, int, Fraction)):
            return self.agrees_with(other)
        return NotImplemented

    __hash__ = None  # equality is window-relative

    def __repr__(self):
        return f"LaurentSeries({format_series(self)!r}, precision={self._K})"

    def __str__(self):
        return format_series(self)


# ---------------------------------------------------------------------------
# named operations


def ls_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def ls_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def ls_inverse(a: LaurentSeries, target_precision: int) -> LaurentSeries:
    """Multiplicative inverse known up to ``z**target_precision``.

    Writes ``a = c z^v (1 + u)`` with ``u`` of positive valuation and expands
    ``1/(1+u)`` geometrically.
    """
    if a.is_zero():
        raise ZeroDivisionError("series is indistinguishable from 0 in its window")
    v = a.valuation
    c = a[v]
    # u = a / (c z^v) - 1, known up to a.precision - v
    u = a.shift(-v).scale(1 / c) - 1
    need = target_precision + v  # precision required for 1/(1+u)
    if need > a.precision - v:
        raise PrecisionError(
            f"inverse to z^{target_precision} needs input known to z^{need + v}, "
            f"have z^{a.precision}")
    geo = LaurentSeries.one(need)
    power = LaurentSeries.one(need)
    for _ in range(max(need, 0)):
        power = power * (-u)
        if power.precision > need:
            power = power.truncate(need)
        geo = geo + power
    return geo.shift(-v).scale(1 / c)


def ls_exp(a: LaurentSeries, precision: int | None = None) -> LaurentSeries:
    """``exp(a)`` for ``a`` of strictly positive valuation."""
    if any(n <= 0 for n in a.coefficients()):
        raise ValueError("exp needs a series with only positive powers of z")
    K = a.precision
    if precision is not None:
        K = min(K, precision)
    elif K >= EXACT:
        K = DEFAULT_PRECISION
    if K < 0:
        raise PrecisionError("exp of a series with no known coefficients")
    out = LaurentSeries.one(K)
    term = LaurentSeries.one(K)
    for k in range(1, K + 1):
        term = (term * a).scale(Fraction(1, k))
        if term.precision > K:
            term = term.truncate(K)
        out = out + term
    return out


def exp_linear(c: Number, precision: int = DEFAULT_PRECISION) -> LaurentSeries:
    """The series of ``exp(c z)`` up to ``z**precision``."""
    c = as_rational(c)
    return LaurentSeries({k: c ** k / math.factorial(k) for k in range(precision + 1)},
                         precision)


def ms_project(a: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
    """Split ``a`` into its pole part (negative powers) and holomorphic part."""
    return MINIMAL_SUBTRACTION.split(a)


def rota_baxter_check(a: LaurentSeries, b: LaurentSeries,
                      scheme: "MinimalSubtraction | None" = None) -> bool:
    """Check pi(a)pi(b) == -pi(ab) + pi(pi(a) b) + pi(pi(b) a) on the common window."""
    pi = (scheme or MINIMAL_SUBTRACTION).pole_part
    lhs = pi(a) * pi(b)
    rhs = -pi(a * b) + pi(pi(a) * b) + pi(pi(b) * a)
    return lhs.agrees_with(rhs)


def ls_eval_at_zero(a: LaurentSeries) -> Fraction:
    if any(n < 0 for n in a.coefficients()):
        raise PoleError("pole at evaluation point")
    return a[0]


def residue(a: LaurentSeries) -> Fraction:
    """The coefficient of ``z**-1``."""
    return a[-1]


class MinimalSubtraction:
    """Projection onto pole parts parallel to the series holomorphic at 0.

    Subclasses may override :meth:`pole_part` to plug in another idempotent
    projector; the Birkhoff routines only call ``pole_part``.
    """

    name = "minimal-subtraction"

    def pole_part(self, a: LaurentSeries) -> LaurentSeries:
        if a.precision < -1:
            raise PrecisionError(
                f"pole part not fully known (precision {a.precision} < -1)")
        # pole parts are exact Laurent polynomials
        return LaurentSeries({n: c for n, c in a.coefficients().items() if n < 0}, EXACT)

    def regular_part(self, a: LaurentSeries) -> LaurentSeries:
        if a.precision < 0:
            raise PrecisionError(
                f"holomorphic part has no known coefficient (precision {a.precision})")
        return LaurentSeries({n: c for n, c in a.coefficients().items() if n >= 0},
                             a.precision)

    def split(self, a: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
        return self.pole_part(a), self.regular_part(a)


MINIMAL_SUBTRACTION = MinimalSubtraction()


# ---------------------------------------------------------------------------
# text syntax:  -1/2*z^-2 + 1 + 3*z

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<z1>z(?:\s*\^\s*(?P<e1>[+-]?\d+))?))?
        | (?P<z2>z(?:\s*\^\s*(?P<e2>[+-]?\d+))?)
        )\s*""", re.VERBOSE)


def parse_series(text: str, precision: int = DEFAULT_PRECISION) -> LaurentSeries:
    """Parse ``c*z^n`` sums such as ``-1/2*z^-2 + 1 + 3*z``."""
    src = text.strip()
    if not src:
        raise ValueError("empty series literal")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"bad series literal at offset {pos}: {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = Fraction(m.group("coef"))
            if m.group("z1"):
                n = int(m.group("e1") or 1)
            else:
                n = 0
        else:
            c = Fraction(1)
            n = int(m.group("e2") or 1)
        coeffs[n] = coeffs.get(n, 0) + sign * c
        pos = m.end()
        first = False
    return LaurentSeries(coeffs, precision)


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_series(a: LaurentSeries) -> str:
    """Render lowest exponent first, e.g. ``-1/2*z^-2 + 1 + 3*z``."""
    items = sorted(a.coefficients().items())
    if not items:
        return "0"
    parts = []
    for n, c in items:
        mag = abs(c)
        if n == 0:
            body = _fmt_rational(mag)
        else:
            zpart = "z" if n == 1 else f"z^{n}"
            body = zpart if mag == 1 else f"{_fmt_rational(mag)}*{zpart}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def series_from(values: Iterable[tuple[int, Number]],
                precision: int = DEFAULT_PRECISION) -> LaurentSeries:
    return LaurentSeries(dict(values), precision)
