"""Feynman graphs and the connected Hopf algebra of 1PI graphs.

A :class:`Graph` has vertices ``0..n-1``, typed internal edges
``(type, u, v)`` with ``u <= v`` (``u == v`` is a self-loop) and typed
external legs ``(type, v)``.  Internal edges are addressed by their index in
``edges``; a subgraph is a set of such indices.

Only the connected quotient is implemented: loop-number-zero graphs are
identified with the unit, so basis elements are multisets of connected 1PI
graphs with at least one loop.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

from .hopf import HopfAlgebra, TensorElement

MAX_CANONICAL_VERTICES = 10


class Graph(NamedTuple):
    n: int
    edges: tuple = ()
    externals: tuple = ()

    @property
    def vertices(self) -> range:
        return range(self.n)

    def star(self, v: int) -> tuple:
        """Sorted edge types at ``v``; self-loops count twice."""
        types = [t for t, w in self.externals if w == v]
        for t, a, b in self.edges:
            if a == v:
                types.append(t)
            if b == v:
                types.append(t)
        return tuple(sorted(types))

    def half_edges(self) -> list[tuple]:
        """``(vertex, type, edge_ref)`` triples; ``edge_ref`` is ``('int', i)`` or ``('ext', j)``."""
        out = []
        for i, (t, a, b) in enumerate(self.edges):
            out.append((a, t, ("int", i)))
            out.append((b, t, ("int", i)))
        for j, (t, v) in enumerate(self.externals):
            out.append((v, t, ("ext", j)))
        return out

    def vertex_types(self) -> list[tuple]:
        return [self.star(v) for v in range(self.n)]

    def external_type(self) -> tuple:
        return tuple(sorted(t for t, _ in self.externals))


def make_graph(n: int, edges: Iterable[tuple], externals: Iterable[tuple] = ()) -> Graph:
    norm = tuple((int(t), min(a, b), max(a, b)) for t, a, b in edges)
    ext = tuple((int(t), int(v)) for t, v in externals)
    for _, a, b in norm:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"edge endpoint outside 0..{n - 1}")
    for _, v in ext:
        if not 0 <= v < n:
            raise ValueError(f"external leg on missing vertex {v}")
    return Graph(n, norm, ext)


@dataclass(frozen=True)
class Theory:
    """Edge types and the allowed vertex types (multisets of edge types)."""

    name: str
    edge_types: frozenset
    vertex_types: frozenset

    @classmethod
    def from_types(cls, name: str, vertex_types: Iterable[Iterable[int]]) -> "Theory":
        vts = frozenset(tuple(sorted(v)) for v in vertex_types)
        if not vts:
            raise ValueError("a theory needs at least one vertex type")
        edge_types = frozenset(t for v in vts for t in v)
        return cls(name, edge_types, vts)

    def admits(self, g: Graph) -> bool:
        return all(vt in self.vertex_types for vt in g.vertex_types())


PHI3 = Theory.from_types("phi3", [(1, 1, 1), (1, 1)])
PHI4 = Theory.from_types("phi4", [(1, 1, 1, 1), (1, 1)])
# edge type 1 = fermion, 2 = photon
QED = Theory.from_types("qed", [(1, 1, 2), (1, 1), (2, 2)])
THEORIES = {t.name: t for t in (PHI3, PHI4, QED)}


# ---------------------------------------------------------------------------
# connectivity


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _components(n: int, edges: Iterable[tuple], vertices: Iterable[int] | None = None) -> int:
    dsu = _DSU(n)
    for _, a, b in edges:
        dsu.union(a, b)
    vs = range(n) if vertices is None else vertices
    return len({dsu.find(v) for v in vs})


def is_connected(g: Graph) -> bool:
    return g.n > 0 and _components(g.n, g.edges) == 1


def loop_number(g: Graph) -> int:
    if not is_connected(g):
        raise ValueError("loop number is defined here for connected graphs only")
    return len(g.edges) - g.n + 1


def is_one_particle_irreducible(g: Graph) -> bool:
    """Connected and no internal edge is a bridge."""
    if not is_connected(g):
        return False
    for i, (_, a, b) in enumerate(g.edges):
        if a == b:
            continue
        rest = g.edges[:i] + g.edges[i + 1:]
        if _components(g.n, rest) > 1:
            return False
    return True


def residue(g: Graph) -> Graph:
    """Single vertex carrying every external leg of a connected graph."""
    if not is_connected(g):
        raise ValueError("residue is defined for connected graphs")
    return Graph(1, (), tuple((t, 0) for t, _ in g.externals))


# ---------------------------------------------------------------------------
# subgraphs and contraction


def _gamma_dsu(g: Graph, sub: Iterable[int]) -> _DSU:
    dsu = _DSU(g.n)
    for i in sub:
        _, a, b = g.edges[i]
        dsu.union(a, b)
    return dsu


def contract(g: Graph, sub: Iterable[int]) -> Graph:
    """Replace every connected component of the subgraph by its residue."""
    sub = frozenset(sub)
    dsu = _gamma_dsu(g, sub)
    touched = {v for i in sub for v in g.edges[i][1:]}
    reps = sorted({dsu.find(v) if v in touched else v for v in range(g.n)})
    index = {r: k for k, r in enumerate(reps)}

    def image(v):
        return index[dsu.find(v) if v in touched else v]

    edges = [(t, image(a), image(b)) for i, (t, a, b) in enumerate(g.edges) if i not in sub]
    ext = [(t, image(v)) for t, v in g.externals]
    return make_graph(len(reps), edges, ext)


def subgraph_components(g: Graph, sub: Iterable[int]) -> list[Graph]:
    """Connected components of a subgraph as standalone graphs.

    Each component keeps the full stars of its vertices: internal edges of
    ``g`` outside the subgraph become external legs.
    """
    sub = frozenset(sub)
    dsu = _gamma_dsu(g, sub)
    touched = sorted({v for i in sub for v in g.edges[i][1:]})
    groups: dict = {}
    for v in touched:
        groups.setdefault(dsu.find(v), []).append(v)
    out = []
    for root in sorted(groups):
        vs = groups[root]
        index = {v: k for k, v in enumerate(vs)}
        edges, ext = [], []
        for i, (t, a, b) in enumerate(g.edges):
            if i in sub and a in index:
                edges.append((t, index[a], index[b]))
            elif i not in sub:
                if a in index:
                    ext.append((t, index[a]))
                if b in index:
                    ext.append((t, index[b]))
        ext += [(t, index[v]) for t, v in g.externals if v in index]
        out.append(make_graph(len(vs), edges, ext))
    return out


def enumerate_subgraphs(g: Graph, theory: Theory, include_excluded: bool = False):
    """Proper locally-1PI subgraphs whose contraction stays inside the theory.

    Returns a list of ``(edge_subset, contracted_graph)``.  With
    ``include_excluded`` the result is ``(kept, excluded)`` where ``excluded``
    lists the locally-1PI subgraphs dropped because the contraction creates a
    vertex type outside the theory.
    """
    m = len(g.edges)
    kept, excluded = [], []
    for r in range(1, m):
        for sub in itertools.combinations(range(m), r):
            comps = subgraph_components(g, sub)
            if not all(is_one_particle_irreducible(c) and loop_number(c) >= 1 for c in comps):
                continue
            quotient = contract(g, sub)
            if theory.admits(quotient):
                kept.append((frozenset(sub), quotient))
            else:
                excluded.append((frozenset(sub), quotient))
    return (kept, excluded) if include_excluded else kept


# ---------------------------------------------------------------------------
# canonical labelling


def _refined_colours(g: Graph) -> list[int]:
    colour = []
    for v in range(g.n):
        ext = tuple(sorted(t for t, w in g.externals if w == v))
        loops = tuple(sorted(t for t, a, b in g.edges if a == b == v))
        colour.append((ext, loops, g.star(v)))
    colour = _relabel(colour)
    for _ in range(g.n):
        sig = []
        for v in range(g.n):
            nbrs = []
            for t, a, b in g.edges:
                if a == b:
                    continue
                if a == v:
                    nbrs.append((t, colour[b]))
                elif b == v:
                    nbrs.append((t, colour[a]))
            sig.append((colour[v], tuple(sorted(nbrs))))
        new = _relabel(sig)
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    return colour


def _relabel(values: list) -> list[int]:
    order = {c: k for k, c in enumerate(sorted(set(values)))}
    return [order[c] for c in values]


def _serialise(g: Graph, perm: dict) -> Graph:
    edges = tuple(sorted((t, min(perm[a], perm[b]), max(perm[a], perm[b]))
                         for t, a, b in g.edges))
    ext = tuple(sorted((t, perm[v]) for t, v in g.externals))
    return Graph(g.n, edges, ext)


def canonical_form(g: Graph, max_vertices: int = MAX_CANONICAL_VERTICES) -> Graph:
    """Isomorphism-invariant relabelling (the minimal serialisation)."""
    if g.n > max_vertices:
        raise ValueError(f"graph has {g.n} vertices, canonical form bound is {max_vertices}")
    colour = _refined_colours(g)
    classes: dict = {}
    for v, c in enumerate(colour):
        classes.setdefault(c, []).append(v)
    blocks = [classes[c] for c in sorted(classes)]
    offsets = list(itertools.accumulate([0] + [len(b) for b in blocks]))
    best = None
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = {}
        for off, order in zip(offsets, choice):
            for k, v in enumerate(order):
                perm[v] = off + k
        cand = _serialise(g, perm)
        if best is None or cand < best:
            best = cand
    return best


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# Hopf algebra


def graph_reduced_coproduct(g: Graph, theory: Theory) -> TensorElement:
    """Sum of ``gamma (x) g/gamma`` over admissible proper subgraphs, merged."""
    out: dict = {}
    for sub, quotient in enumerate_subgraphs(g, theory):
        left = tuple(sorted(canonical_form(c) for c in subgraph_components(g, sub)))
        right = (canonical_form(quotient),)
        out[(left, right)] = out.get((left, right), 0) + 1
    return TensorElement(out)


class FeynmanGraphs(HopfAlgebra):
    """Connected graded Hopf algebra of 1PI graphs of a theory, graded by loops.

    Basis elements are sorted tuples of canonical connected 1PI graphs with
    loop number at least one.  Enumeration (:meth:`basis`) covers monomials
    in the graphs reachable from ``fixtures`` through coproducts.
    """

    commutative = True
    unit = ()

    def __init__(self, theory: Theory, fixtures: Iterable[Graph] = ()):
        self.theory = theory
        self.name = f"graphs:{theory.name}"
        super().__init__()
        self.fixtures = [self.validate(f) for f in fixtures]
        self._connected = self._closure(self.fixtures)

    def validate(self, g: Graph) -> Graph:
        if not self.theory.admits(g):
            bad = sorted({vt for vt in g.vertex_types() if vt not in self.theory.vertex_types})
            raise ValueError(f"vertex types {bad} are not in theory {self.theory.name}")
        if not is_one_particle_irreducible(g):
            raise ValueError("graph is not connected and one-particle irreducible")
        if loop_number(g) < 1:
            raise ValueError("loop-number-zero graphs are the unit in the connected quotient")
        return canonical_form(g)

    def _closure(self, graphs: list[Graph]) -> list[Graph]:
        seen = set(graphs)
        todo = list(graphs)
        while todo:
            g = todo.pop()
            for (left, right) in graph_reduced_coproduct(g, self.theory):
                for h in left + right:
                    if h not in seen:
                        seen.add(h)
                        todo.append(h)
        return sorted(seen, key=lambda h: (loop_number(h), h))

    def monomial(self, *graphs: Graph) -> tuple:
        return tuple(sorted(self.validate(g) for g in graphs))

    def degree(self, m: tuple) -> int:
        return sum(loop_number(g) for g in m)

    def product_basis(self, a: tuple, b: tuple) -> tuple:
        return tuple(sorted(a + b))

    def _reduced_coproduct(self, m: tuple) -> TensorElement:
        if len(m) == 1:
            return graph_reduced_coproduct(m[0], self.theory)
        full = TensorElement({((), ()): 1})
        for g in m:
            full = self.tensor_mul(full, self.coproduct_basis((g,)))
        terms = dict(full.terms)
        terms.pop((m, ()), None)
        terms.pop(((), m), None)
        return TensorElement(terms)

    def connected_graphs(self) -> list[Graph]:
        return list(self._connected)

    def generators(self, degree: int) -> list:
        return [(g,) for g in self._connected if loop_number(g) == degree]

    def basis(self, degree: int) -> list:
        gens = self._connected
        out = []

        def rec(start, remaining, acc):
            if remaining == 0:
                out.append(tuple(sorted(acc)))
                return
            for k in range(start, len(gens)):
                L = loop_number(gens[k])
                if L <= remaining:
                    rec(k, remaining - L, acc + [gens[k]])

        rec(0, degree, [])
        return sorted(set(out))

    def factors(self, m: tuple) -> tuple:
        return tuple((g,) for g in m)

    def format_basis(self, m: tuple) -> str:
        return " ".join(format_graph(g) for g in m) if m else "1"

    def parse_basis(self, text: str) -> tuple:
        s = text.strip()
        if s == "1":
            return ()
        graphs = []
        for tok in re.findall(r"<[^>]*>|@\S+", s):
            if tok.startswith("@"):
                theory, g = read_graph_file(tok[1:])
            else:
                g = parse_graph_literal(tok)
            graphs.append(g)
        rest = re.sub(r"<[^>]*>|@\S+", "", s).strip()
        if rest or not graphs:
            raise ValueError(f"bad graph monomial literal {text!r}")
        return self.monomial(*graphs)


# ---------------------------------------------------------------------------
# text formats


def format_graph(g: Graph) -> str:
    """Inline literal ``<1:0-1 1:0-1 | 1@0 1@1>``."""
    edges = " ".join(f"{t}:{a}-{b}" for t, a, b in g.edges)
    ext = " ".join(f"{t}@{v}" for t, v in g.externals)
    if g.n == 1 and not g.edges:
        edges = "."
    return f"<{edges} | {ext}>" if ext else f"<{edges}>"


def parse_graph_literal(text: str) -> Graph:
    s = text.strip()
    if not (s.startswith("<") and s.endswith(">")):
        raise ValueError(f"graph literal must be enclosed in <...>: {text!r}")
    body = s[1:-1]
    edge_part, _, ext_part = body.partition("|")
    edges, ext, n = [], [], 0
    for tok in edge_part.split():
        if tok == ".":
            n = max(n, 1)
            continue
        m = re.fullmatch(r"(\d+):(\d+)-(\d+)", tok)
        if not m:
            raise ValueError(f"bad edge token {tok!r}")
        t, a, b = map(int, m.groups())
        edges.append((t, a, b))
        n = max(n, a + 1, b + 1)
    for tok in ext_part.split():
        m = re.fullmatch(r"(\d+)@(\d+)", tok)
        if not m:
            raise ValueError(f"bad external leg token {tok!r}")
        t, v = map(int, m.groups())
        ext.append((t, v))
        n = max(n, v + 1)
    return make_graph(n, edges, ext)


def parse_graph_file(text: str, theories: dict | None = None) -> tuple[Theory, Graph]:
    """Parse the ``theory:/vertex/edge/ext`` format and validate vertex types."""
    theories = THEORIES if theories is None else theories
    theory = None
    ids: dict = {}
    edges, ext = [], []

    def vid(name, lineno):
        if name not in ids:
            raise ValueError(f"line {lineno}: undeclared vertex {name!r}")
        return ids[name]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.replace(":", " : ", 1).split() if line.startswith("theory") \
            else line.split()
        if head == "theory":
            name = line.split(":", 1)[1].strip()
            if name not in theories:
                raise ValueError(f"line {lineno}: unknown theory {name!r}")
            theory = theories[name]
        elif head == "vertex" and len(rest) == 1:
            ids.setdefault(rest[0], len(ids))
        elif head == "edge" and len(rest) == 3:
            edges.append((int(rest[0]), vid(rest[1], lineno), vid(rest[2], lineno)))
        elif head == "ext" and len(rest) == 2:
            ext.append((int(rest[0]), vid(rest[1], lineno)))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    if theory is None:
        raise ValueError("graph file needs a 'theory: <name>' header")
    g = make_graph(len(ids), edges, ext)
    if not theory.admits(g):
        raise ValueError(f"graph has vertex types outside theory {theory.name}")
    return theory, g


def read_graph_file(path, theories: dict | None = None) -> tuple[Theory, Graph]:
    return parse_graph_file(Path(path).read_text(), theories)


def write_graph_file(g: Graph, theory: Theory) -> str:
    lines = [f"theory: {theory.name}"]
    lines += [f"vertex v{v}" for v in range(g.n)]
    lines += [f"edge {t} v{a} v{b}" for t, a, b in g.edges]
    lines += [f"ext {t} v{v}" for t, v in g.externals]
    return "\n".join(lines) + "\n"


def parse_theory_file(text: str) -> Theory:
    """``theory: <name>`` followed by ``vertex: t1 t2 ...`` lines."""
    name, vts = None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        key = key.strip()
        if key == "theory":
            name = value.strip()
        elif key == "vertex":
            vts.append(tuple(int(t) for t in value.split()))
        elif key == "edge_types":
            continue
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    if not name:
        raise ValueError("theory file needs a 'theory: <name>' line")
    return Theory.from_types(name, vts)


# ---------------------------------------------------------------------------
# fixtures


def _g(edges, externals):
    n = 1 + max([max(a, b) for _, a, b in edges] + [v for _, v in externals])
    return make_graph(n, edges, externals)


def phi3_fixtures() -> dict[str, Graph]:
    return {
        "bubble": _g([(1, 0, 1), (1, 0, 1)], [(1, 0), (1, 1)]),
        "tadpole": _g([(1, 0, 0)], [(1, 0)]),
        "triangle": _g([(1, 0, 1), (1, 1, 2), (1, 0, 2)], [(1, 0), (1, 1), (1, 2)]),
        # two-loop self-energy with two triangle subgraphs and a box subgraph
        "kite": _g([(1, 0, 2), (1, 0, 3), (1, 2, 3), (1, 1, 2), (1, 1, 3)],
                   [(1, 0), (1, 1)]),
        # bubble with a bubble inserted on one line
        "bubble-in-bubble": _g([(1, 0, 1), (1, 0, 2), (1, 2, 3), (1, 2, 3), (1, 1, 3)],
                               [(1, 0), (1, 1)]),
        # triangle with a vertex correction at one corner
        "triangle-vertex": _g([(1, 0, 3), (1, 0, 4), (1, 3, 4), (1, 3, 1), (1, 4, 2),
                               (1, 1, 2)], [(1, 0), (1, 1), (1, 2)]),
        # three nested bubbles
        "nested-bubbles": _g([(1, 0, 1), (1, 0, 2), (1, 2, 3), (1, 2, 4), (1, 4, 5),
                              (1, 4, 5), (1, 3, 5), (1, 1, 3)], [(1, 0), (1, 1)]),
        # kite with a bubble inserted on its rung
        "kite-bubble": _g([(1, 0, 2), (1, 0, 3), (1, 2, 4), (1, 4, 5), (1, 4, 5),
                           (1, 3, 5), (1, 1, 2), (1, 1, 3)], [(1, 0), (1, 1)]),
    }


def phi4_fixtures() -> dict[str, Graph]:
    return {
        "fish": _g([(1, 0, 1), (1, 0, 1)], [(1, 0), (1, 0), (1, 1), (1, 1)]),
        "tadpole": _g([(1, 0, 0)], [(1, 0), (1, 0)]),
        "sunset": _g([(1, 0, 1), (1, 0, 1), (1, 0, 1)], [(1, 0), (1, 1)]),
        "double-fish": _g([(1, 0, 1), (1, 0, 1), (1, 1, 2), (1, 1, 2)],
                          [(1, 0), (1, 0), (1, 2), (1, 2)]),
        "triple-fish": _g([(1, 0, 1), (1, 0, 1), (1, 1, 2), (1, 1, 2), (1, 2, 3), (1, 2, 3)],
                          [(1, 0), (1, 0), (1, 3), (1, 3)]),
        # fish with a fish inserted at one vertex
        "nested-fish": _g([(1, 0, 1), (1, 0, 2), (1, 1, 2), (1, 1, 2)],
                          [(1, 0), (1, 0), (1, 1), (1, 2)]),
    }


def qed_fixtures() -> dict[str, Graph]:
    return {
        "electron-self-energy": _g([(1, 0, 1), (2, 0, 1)], [(1, 0), (1, 1)]),
        "vacuum-polarisation": _g([(1, 0, 1), (1, 0, 1)], [(2, 0), (2, 1)]),
        "vertex": _g([(1, 0, 1), (1, 0, 2), (2, 1, 2)], [(2, 0), (1, 1), (1, 2)]),
        # vertex correction with an electron self-energy on one fermion line
        "vertex-self-energy": _g([(1, 0, 3), (1, 3, 4), (2, 3, 4), (1, 4, 1), (1, 0, 2),
                                  (2, 1, 2)], [(2, 0), (1, 1), (1, 2)]),
        # photon line of the vertex correction dressed with a fermion loop
        "vertex-polarisation": _g([(1, 0, 1), (1, 0, 2), (2, 1, 3), (1, 3, 4), (1, 3, 4),
                                   (2, 4, 2)], [(2, 0), (1, 1), (1, 2)]),
        # both fermion lines of the vertex correction carry a self-energy
        "vertex-two-self-energies": _g([(1, 0, 3), (1, 3, 4), (2, 3, 4), (1, 4, 1),
                                        (1, 0, 5), (1, 5, 6), (2, 5, 6), (1, 6, 2),
                                        (2, 1, 2)], [(2, 0), (1, 1), (1, 2)]),
    }


FIXTURES = {"phi3": phi3_fixtures, "phi4": phi4_fixtures, "qed": qed_fixtures}


def fixture_algebra(theory_name: str) -> FeynmanGraphs:
    return FeynmanGraphs(THEORIES[theory_name], FIXTURES[theory_name]().values())
