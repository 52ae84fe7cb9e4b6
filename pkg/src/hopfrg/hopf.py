"""Connected graded Hopf algebras with a monoid basis.

Concrete instances (trees, integers, symmetric algebras, Feynman graphs)
subclass :class:`HopfAlgebra` and supply the degree, the basis product and
the reduced coproduct of a basis element.  Everything else (full coproduct,
iterated reduced coproducts, counit, both recursive antipodes, axiom checks)
is generic and lives here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator

Key = Hashable


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Element:
    """Finite linear combination of basis keys with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | Iterable[tuple[Any, Any]] | None = None):
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        acc: dict = {}
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        self.terms = {k: _frac(c) for k, c in acc.items() if c}

    @classmethod
    def basis(cls, key, coeff=1):
        return cls({key: coeff})

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return type(self)({k: c * v for k, v in self.terms.items()})
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {c}" for k, c in self.sorted_items())
        return f"{type(self).__name__}({{{inner}}})"


class TensorElement(Element):
    """Linear combination of tuples of basis keys (``k``-fold tensors)."""

    __slots__ = ()


def _sort_key(key):
    # keys of one instance are mutually comparable; wrap to order by degree-free repr
    return (len(repr(key)), key) if not isinstance(key, int) else (0, key)


# ---------------------------------------------------------------------------


class HopfAlgebra:
    """Base class for connected graded Hopf algebras with a monoid basis.

    Subclasses implement :meth:`degree`, :meth:`product_basis`,
    :meth:`reduced_coproduct_basis`, :meth:`basis`, :meth:`factors` and
    :meth:`generators`; the literal helpers :meth:`format_basis` and
    :meth:`parse_basis` are needed only by the command line.
    """

    name = "hopf"
    unit: Key = ()
    commutative = True
    cocommutative = False

    def __init__(self):
        self._rcop_cache: dict = {}
        self._s_left: dict = {self.unit: Element.basis(self.unit)}
        self._s_right: dict = {self.unit: Element.basis(self.unit)}

    # -- instance interface -------------------------------------------------

    def degree(self, b: Key) -> int:
        raise NotImplementedError

    def product_basis(self, a: Key, b: Key) -> Key:
        raise NotImplementedError

    def _reduced_coproduct(self, b: Key) -> TensorElement:
        raise NotImplementedError

    def basis(self, degree: int) -> list:
        """All basis elements of the given degree, in a deterministic order."""
        raise NotImplementedError

    def factors(self, b: Key) -> tuple:
        """Factorisation of a basis element into algebra generators."""
        raise NotImplementedError

    def generators(self, degree: int) -> list:
        raise NotImplementedError

    def is_generator(self, b: Key) -> bool:
        return len(self.factors(b)) == 1

    def format_basis(self, b: Key) -> str:
        return repr(b)

    def parse_basis(self, text: str) -> Key:
        raise NotImplementedError(f"{self.name} has no literal syntax")

    # -- elements -----------------------------------------------------------

    def one(self) -> Element:
        return Element.basis(self.unit)

    def element(self, b: Key, coeff=1) -> Element:
        return Element.basis(b, coeff)

    def basis_upto(self, max_degree: int) -> list:
        return [b for d in range(max_degree + 1) for b in self.basis(d)]

    def product(self, a: Key, b: Key) -> Element:
        return Element.basis(self.product_basis(a, b))

    def mul(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for a, c in x.items():
            for b, d in y.items():
                k = self.product_basis(a, b)
                out[k] = out.get(k, 0) + c * d
        return Element(out)

    def multiply_all(self, keys: Iterable[Key]) -> Key:
        acc = self.unit
        for k in keys:
            acc = self.product_basis(acc, k)
        return acc

    def element_degree(self, x: Element) -> int:
        return max((self.degree(b) for b in x), default=0)

    # -- coalgebra ----------------------------------------------------------

    def reduced_coproduct_basis(self, b: Key) -> TensorElement:
        """Reduced coproduct of a basis element (memoized); empty on the unit."""
        try:
            return self._rcop_cache[b]
        except KeyError:
            pass
        if b == self.unit or self.degree(b) <= 1:
            out = TensorElement()
        else:
            out = self._reduced_coproduct(b)
        self._rcop_cache[b] = out
        return out

    def reduced_coproduct(self, x: Element) -> TensorElement:
        out: dict = {}
        for b, c in x.items():
            for pair, d in self.reduced_coproduct_basis(b).items():
                out[pair] = out.get(pair, 0) + c * d
        return TensorElement(out)

    def coproduct_basis(self, b: Key) -> TensorElement:
        if b == self.unit:
            return TensorElement({(self.unit, self.unit): 1})
        out = dict(self.reduced_coproduct_basis(b).terms)
        out[(b, self.unit)] = out.get((b, self.unit), 0) + 1
        out[(self.unit, b)] = out.get((self.unit, b), 0) + 1
        return TensorElement(out)

    def coproduct(self, x: Element) -> TensorElement:
        out: dict = {}
        for b, c in x.items():
            for pair, d in self.coproduct_basis(b).items():
                out[pair] = out.get(pair, 0) + c * d
        return TensorElement(out)

    def counit(self, x: Element) -> Fraction:
        return x.coefficient(self.unit)

    def iterated_reduced_coproduct(self, x: Element, k: int) -> TensorElement:
        """``(I^{k-1} (x) D~) ... D~ (x)``, a combination of ``(k+1)``-tuples."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if x.coefficient(self.unit):
            raise ValueError("iterated reduced coproduct needs x in Ker(counit)")
        cur = TensorElement({(b,): c for b, c in x.items()})
        for _ in range(k):
            nxt: dict = {}
            for tup, c in cur.items():
                for (p, q), d in self.reduced_coproduct_basis(tup[-1]).items():
                    key = tup[:-1] + (p, q)
                    nxt[key] = nxt.get(key, 0) + c * d
            cur = TensorElement(nxt)
        return cur

    # -- tensor helpers -----------------------------------------------------

    def tensor_mul(self, s: TensorElement, t: TensorElement) -> TensorElement:
        out: dict = {}
        for a, c in s.items():
            for b, d in t.items():
                key = tuple(self.product_basis(x, y) for x, y in zip(a, b))
                out[key] = out.get(key, 0) + c * d
        return TensorElement(out)

    def apply_on_slot(self, t: TensorElement, slot: int,
                      fn: Callable[[Key], Element]) -> TensorElement:
        """Apply a linear map (given on basis keys) to one tensor factor."""
        out: dict = {}
        for tup, c in t.items():
            image = fn(tup[slot])
            for parts, d in image.items():
                parts = parts if isinstance(image, TensorElement) else (parts,)
                key = tup[:slot] + tuple(parts) + tup[slot + 1:]
                out[key] = out.get(key, 0) + c * d
        return TensorElement(out)

    def multiply_tensor(self, t: TensorElement) -> Element:
        out: dict = {}
        for tup, c in t.items():
            k = self.multiply_all(tup)
            out[k] = out.get(k, 0) + c
        return Element(out)

    def swap(self, t: TensorElement) -> TensorElement:
        return TensorElement({(b, a): c for (a, b), c in t.items()})

    # -- antipode -----------------------------------------------------------

    def antipode_basis(self, b: Key) -> Element:
        """``S(x) = -x - sum S(x')x''``, memoized per basis element."""
        try:
            return self._s_left[b]
        except KeyError:
            pass
        out = -Element.basis(b)
        for (p, q), c in self.reduced_coproduct_basis(b).items():
            out = out - c * self.mul(self.antipode_basis(p), Element.basis(q))
        self._s_left[b] = out
        return out

    def antipode_right_basis(self, b: Key) -> Element:
        """``S(x) = -x - sum x'S(x'')``; kept for cross-checking."""
        try:
            return self._s_right[b]
        except KeyError:
            pass
        out = -Element.basis(b)
        for (p, q), c in self.reduced_coproduct_basis(b).items():
            out = out - c * self.mul(Element.basis(p), self.antipode_right_basis(q))
        self._s_right[b] = out
        return out

    def antipode(self, x: Element) -> Element:
        return self._linear(self.antipode_basis, x)

    def antipode_right(self, x: Element) -> Element:
        return self._linear(self.antipode_right_basis, x)

    @staticmethod
    def _linear(fn: Callable[[Key], Element], x: Element) -> Element:
        out = Element()
        for b, c in x.items():
            out = out + c * fn(b)
        return out

    def antipode_convolution_identity(self, x: Element) -> bool:
        """``m(S (x) I)D(x) == m(I (x) S)D(x) == counit(x) 1``."""
        delta = self.coproduct(x)
        left = self.multiply_tensor(self.apply_on_slot(delta, 0, self.antipode_basis))
        right = self.multiply_tensor(self.apply_on_slot(delta, 1, self.antipode_basis))
        target = self.counit(x) * self.one()
        return left == target and right == target

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# axiom suite


@dataclass
class Failure:
    check: str
    element: Any
    detail: str = ""


@dataclass
class HopfReport:
    instance: str
    max_degree: int
    checked: dict = field(default_factory=dict)
    failure: Failure | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        counts = ", ".join(f"{k}={v}" for k, v in sorted(self.checked.items()))
        if self.passed:
            return f"{self.instance}: pass up to degree {self.max_degree} ({counts})"
        f = self.failure
        return f"{self.instance}: FAIL {f.check} at {f.element!r}: {f.detail}"


def _coassociativity(H: HopfAlgebra, b) -> bool:
    delta = H.coproduct_basis(b)
    left = H.apply_on_slot(delta, 0, H.coproduct_basis)
    right = H.apply_on_slot(delta, 1, H.coproduct_basis)
    return left == right


def _counit_axiom(H: HopfAlgebra, b) -> bool:
    delta = H.coproduct_basis(b)
    x = Element.basis(b)
    left = Element({q: c for (p, q), c in delta.items() if p == H.unit})
    right = Element({p: c for (p, q), c in delta.items() if q == H.unit})
    return left == x and right == x


def _grading(H: HopfAlgebra, b) -> str | None:
    n = H.degree(b)
    for (p, q) in H.reduced_coproduct_basis(b):
        dp, dq = H.degree(p), H.degree(q)
        if dp + dq != n or dp < 1 or dq < 1:
            return f"term {p!r} (x) {q!r} has degrees ({dp}, {dq}) in degree {n}"
    if H.antipode_basis(b) and H.element_degree(H.antipode_basis(b)) != n:
        return "antipode leaves the homogeneous component"
    return None


def check_hopf_axioms(H: HopfAlgebra, max_degree: int,
                      basis: Iterable | None = None,
                      pair_degree: int | None = None) -> HopfReport:
    """Run the connected graded Hopf algebra axioms on every basis element.

    Checks coassociativity, counit, grading of product and coproduct,
    multiplicativity of the coproduct on pairs of total degree at most
    ``pair_degree`` (default ``max_degree``) and the antipode identity.  Stops at
    the first counterexample.
    """
    report = HopfReport(H.name, max_degree)
    elems = list(basis) if basis is not None else H.basis_upto(max_degree)
    pair_degree = max_degree if pair_degree is None else pair_degree
    counts = report.checked

    def fail(check, elem, detail=""):
        report.failure = Failure(check, elem, detail)
        return report

    unit_deg = H.degree(H.unit)
    if unit_deg != 0:
        return fail("connected", H.unit, "unit has nonzero degree")
    for b in elems:
        if b != H.unit and H.degree(b) == 0:
            return fail("connected", b, "second degree-0 basis element")
        msg = _grading(H, b)
        counts["grading"] = counts.get("grading", 0) + 1
        if msg:
            return fail("grading", b, msg)
        counts["coassociativity"] = counts.get("coassociativity", 0) + 1
        if not _coassociativity(H, b):
            return fail("coassociativity", b, "(D (x) I)D != (I (x) D)D")
        counts["counit"] = counts.get("counit", 0) + 1
        if not _counit_axiom(H, b):
            return fail("counit", b, "(e (x) I)D != I")
        counts["antipode"] = counts.get("antipode", 0) + 1
        if not H.antipode_convolution_identity(Element.basis(b)):
            return fail("antipode", b, "S * I != u e")
    nonunit = [b for b in elems if b != H.unit]
    for a, c in itertools.product(nonunit, repeat=2):
        if H.degree(a) + H.degree(c) > pair_degree:
            continue
        ac = H.product_basis(a, c)
        counts["product"] = counts.get("product", 0) + 1
        if H.degree(ac) != H.degree(a) + H.degree(c):
            return fail("grading", (a, c), "product is not degree-additive")
        if H.coproduct_basis(ac) != H.tensor_mul(H.coproduct_basis(a), H.coproduct_basis(c)):
            return fail("compatibility", (a, c), "D(ac) != D(a)D(c)")
    return report


def antipode_formulas_agree(H: HopfAlgebra, elems: Iterable) -> Any:
    """Return the first basis element where the two recursions differ, else None."""
    for b in elems:
        if H.antipode_basis(b) != H.antipode_right_basis(b):
            return b
    return None


def antipode_squared_witness(H: HopfAlgebra, elems: Iterable) -> Any:
    """First basis element with ``S(S(b)) != b``, or None."""
    for b in elems:
        if H.antipode(H.antipode_basis(b)) != Element.basis(b):
            return b
    return None


class CorruptedAlgebra(HopfAlgebra):
    """Wraps an instance and drops one term from one reduced coproduct.

    Used as a fault-injection fixture: the axiom suite must report it.
    """

    def __init__(self, base: HopfAlgebra, victim: Key | None = None):
        self.base = base
        self.name = f"corrupted({base.name})"
        self.unit = base.unit
        self.commutative = base.commutative
        super().__init__()
        if victim is None:
            victim = next(b for d in range(2, 8) for b in base.basis(d)
                          if base.reduced_coproduct_basis(b))
        self.victim = victim

    def degree(self, b):
        return self.base.degree(b)

    def product_basis(self, a, b):
        return self.base.product_basis(a, b)

    def _reduced_coproduct(self, b):
        full = self.base.reduced_coproduct_basis(b)
        if b != self.victim:
            return full
        first = min(full.keys(), key=_sort_key)
        terms = dict(full.terms)
        terms[first] -= 1
        return TensorElement(terms)

    def basis(self, degree):
        return self.base.basis(degree)

    def factors(self, b):
        return self.base.factors(b)

    def generators(self, degree):
        return self.base.generators(degree)

    def format_basis(self, b):
        return self.base.format_basis(b)

    def parse_basis(self, text):
        return self.base.parse_basis(text)


def iter_pairs_upto(H: HopfAlgebra, max_degree: int) -> Iterator[tuple]:
    """Ordered pairs of nonunit basis elements with total degree <= max_degree."""
    elems = [b for b in H.basis_upto(max_degree) if b != H.unit]
    for a, c in itertools.product(elems, repeat=2):
        if H.degree(a) + H.degree(c) <= max_degree:
            yield a, c
