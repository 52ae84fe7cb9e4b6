"""Two commutative and cocommutative instances.

* :class:`PositiveIntegers` -- basis ``e_n`` (``n >= 1``) with ``e_n e_m = e_{nm}``,
  primes primitive, graded by the number of prime factors with multiplicity.
* :class:`SymmetricAlgebra` -- polynomials in primitive generators ``x_i`` of
  user-chosen positive degrees.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from math import comb, prod

from .hopf import Element, HopfAlgebra, TensorElement


def factorize(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending (trial division)."""
    if n < 1:
        raise ValueError(f"e_n needs a positive integer, got {n}")
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def big_omega(n: int) -> int:
    return len(factorize(n))


def int_product(m: int, n: int) -> int:
    if m < 1 or n < 1:
        raise ValueError("e_n needs positive integers")
    return m * n


def _submultisets(counts: dict) -> list[tuple[dict, int]]:
    """Sub-multisets of ``counts`` with the number of index subsets realising each."""
    keys = sorted(counts)
    out = []
    for picks in itertools.product(*(range(counts[k] + 1) for k in keys)):
        sub = {k: p for k, p in zip(keys, picks) if p}
        mult = prod(comb(counts[k], p) for k, p in zip(keys, picks))
        out.append((sub, mult))
    return out


def int_reduced_coproduct(n: int) -> TensorElement:
    """Sum over ordered splits of the prime multiset into two nonempty halves."""
    if n < 1:
        raise ValueError(f"e_n needs a positive integer, got {n}")
    counts = Counter(factorize(n))
    out = {}
    for sub, mult in _submultisets(counts):
        d = prod(p ** k for p, k in sub.items())
        if d == 1 or d == n:
            continue
        out[(d, n // d)] = out.get((d, n // d), 0) + mult
    return TensorElement(out)


def int_antipode(n: int) -> Element:
    return Element.basis(n, (-1) ** big_omega(n))


class PositiveIntegers(HopfAlgebra):
    """The Hopf algebra of the multiplicative monoid of positive integers.

    Basis enumeration is limited to ``n <= max_n``.
    """

    name = "integers"
    unit = 1
    commutative = True
    cocommutative = True

    def __init__(self, max_n: int = 64):
        self.max_n = max_n
        super().__init__()

    def degree(self, n: int) -> int:
        return big_omega(n)

    def product_basis(self, a: int, b: int) -> int:
        return int_product(a, b)

    def _reduced_coproduct(self, n: int) -> TensorElement:
        return int_reduced_coproduct(n)

    def basis(self, degree: int) -> list:
        return [n for n in range(1, self.max_n + 1) if big_omega(n) == degree]

    def generators(self, degree: int) -> list:
        return self.basis(1) if degree == 1 else []

    def factors(self, n: int) -> tuple:
        return tuple(factorize(n))

    def format_basis(self, n: int) -> str:
        return f"e{n}"

    def parse_basis(self, text: str) -> int:
        s = text.strip()
        if s == "1":
            return 1
        m = re.fullmatch(r"e\s*(\d+)", s)
        if not m or int(m.group(1)) < 1:
            raise ValueError(f"bad integer literal {text!r} (expected e<n>)")
        return int(m.group(1))


# ---------------------------------------------------------------------------


class SymmetricAlgebra(HopfAlgebra):
    """Polynomial Hopf algebra on primitive generators ``x_i`` of given degrees.

    A basis monomial is a sorted tuple of generator indices, e.g. ``(1, 1, 2)``
    for ``x1^2 x2``.
    """

    name = "symmetric"
    unit = ()
    commutative = True
    cocommutative = True

    def __init__(self, generator_degrees: dict[int, int] | None = None):
        degs = generator_degrees or {1: 1, 2: 1, 3: 2}
        if any(d < 1 for d in degs.values()):
            raise ValueError("generator degrees must be positive")
        self.generator_degrees = dict(sorted(degs.items()))
        super().__init__()

    def degree(self, m: tuple) -> int:
        return sum(self.generator_degrees[i] for i in m)

    def product_basis(self, a: tuple, b: tuple) -> tuple:
        return tuple(sorted(a + b))

    def _reduced_coproduct(self, m: tuple) -> TensorElement:
        return sym_reduced_coproduct(m)

    def basis(self, degree: int) -> list:
        gens = list(self.generator_degrees)
        out = []

        def rec(start, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for k in range(start, len(gens)):
                g = gens[k]
                d = self.generator_degrees[g]
                if d <= remaining:
                    rec(k, remaining - d, acc + [g])

        rec(0, degree, [])
        return sorted(out)

    def generators(self, degree: int) -> list:
        return [(i,) for i, d in self.generator_degrees.items() if d == degree]

    def factors(self, m: tuple) -> tuple:
        return tuple((i,) for i in m)

    def format_basis(self, m: tuple) -> str:
        if not m:
            return "1"
        counts = Counter(m)
        return " ".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in sorted(counts.items()))

    def parse_basis(self, text: str) -> tuple:
        s = text.strip()
        if s == "1":
            return ()
        out = []
        for tok in re.split(r"[\s*]+", s):
            m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", tok)
            if not m:
                raise ValueError(f"bad monomial factor {tok!r}")
            i, k = int(m.group(1)), int(m.group(2) or 1)
            if i not in self.generator_degrees:
                raise ValueError(f"unknown generator x{i}")
            out += [i] * k
        return tuple(sorted(out))


def sym_reduced_coproduct(m: tuple) -> TensorElement:
    """Proper sub-multiset splits ``I (x) m\\I`` with binomial multiplicities."""
    counts = Counter(m)
    out = {}
    for sub, mult in _submultisets(counts):
        left = tuple(sorted(Counter(sub).elements()))
        if not left or len(left) == len(m):
            continue
        right = tuple(sorted((counts - Counter(sub)).elements()))
        out[(left, right)] = out.get((left, right), 0) + mult
    return TensorElement(out)

