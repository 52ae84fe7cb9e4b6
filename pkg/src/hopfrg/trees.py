"""Hopf algebras of decorated rooted forests with the admissible-cut coproduct.

Two instances share the machinery:

* :class:`RootedTrees` -- non-planar trees, free commutative algebra; forests
  are canonicalised by sorting children and factors.
* :class:`PlanarRootedTrees` -- planar trees, free noncommutative algebra;
  child order and factor order are kept as given.

A vertex is addressed by its path from the root (a tuple of child indices);
an edge is addressed by the path of its child endpoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .hopf import HopfAlgebra, TensorElement


class Tree(NamedTuple):
    decoration: int
    children: tuple = ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


Forest = tuple  # a tuple of Tree; the empty tuple is the unit


def graft(subtrees: Forest, decoration: int = 0) -> Tree:
    """Graft a forest onto a new root (the B+ operator)."""
    return Tree(decoration, tuple(subtrees))


def ladder(n: int, decoration: int = 0) -> Tree:
    t = Tree(decoration)
    for _ in range(n - 1):
        t = Tree(decoration, (t,))
    return t


def corolla(k: int, decoration: int = 0) -> Tree:
    return Tree(decoration, tuple(Tree(decoration) for _ in range(k)))


def canonical_tree(t: Tree) -> Tree:
    return Tree(t.decoration, tuple(sorted(canonical_tree(c) for c in t.children)))


def forest_size(f: Forest) -> int:
    return sum(t.size() for t in f)


# ---------------------------------------------------------------------------
# cuts


@dataclass(frozen=True)
class Cut:
    """Severed edges of a forest.

    ``edges`` holds ``(tree_index, edge_path)`` pairs; ``total`` holds the
    indices of trees cut below the root.
    """

    edges: frozenset = frozenset()
    total: frozenset = frozenset()

    def is_empty(self) -> bool:
        return not self.edges and not self.total


def _subtree(t: Tree, path: tuple) -> Tree:
    for i in path:
        t = t.children[i]
    return t


def _edge_paths(t: Tree, prefix: tuple = ()) -> Iterator[tuple]:
    for i, c in enumerate(t.children):
        p = prefix + (i,)
        yield p
        yield from _edge_paths(c, p)


def _antichains(t: Tree) -> list[frozenset]:
    """Edge sets of ``t`` meeting every root path at most once."""
    per_child = []
    for i, c in enumerate(t.children):
        opts = [frozenset({(i,)})]
        opts += [frozenset((i,) + p for p in a) for a in _antichains(c)]
        per_child.append(opts)
    return [frozenset().union(*combo) for combo in itertools.product(*per_child)]


def is_admissible(f: Forest, cut: Cut) -> bool:
    for ti, path in cut.edges:
        if ti >= len(f) or ti in cut.total or not path:
            return False
        try:
            _subtree(f[ti], path)
        except IndexError:
            return False
    if any(ti >= len(f) for ti in cut.total):
        return False
    paths_by_tree: dict = {}
    for ti, path in cut.edges:
        paths_by_tree.setdefault(ti, []).append(path)
    for paths in paths_by_tree.values():
        for p, q in itertools.permutations(paths, 2):
            if q[:len(p)] == p:
                return False
    return True


def enumerate_admissible_cuts(f: Forest) -> list[Cut]:
    """All admissible cuts of ``f``, empty and total cuts included."""
    per_tree = []
    for ti, t in enumerate(f):
        opts = [Cut(total=frozenset({ti}))]
        opts += [Cut(edges=frozenset((ti, p) for p in a)) for a in _antichains(t)]
        per_tree.append(opts)
    out = []
    for combo in itertools.product(*per_tree):
        out.append(Cut(frozenset().union(*(c.edges for c in combo)),
                       frozenset().union(*(c.total for c in combo))))
    return out


def _prune(t: Tree, cut_paths: set, prefix: tuple = ()) -> Tree:
    kept = []
    for i, c in enumerate(t.children):
        p = prefix + (i,)
        if p not in cut_paths:
            kept.append(_prune(c, cut_paths, p))
    return Tree(t.decoration, tuple(kept))


def crown_and_trunk(f: Forest, cut: Cut, planar: bool = False) -> tuple[Forest, Forest]:
    """Return ``(P^c(f), R^c(f))``; crown pieces are listed left to right."""
    if not is_admissible(f, cut):
        raise ValueError(f"cut {cut} is not admissible for this forest")
    crown, trunk = [], []
    for ti, t in enumerate(f):
        if ti in cut.total:
            crown.append(t)
            continue
        paths = sorted(p for tj, p in cut.edges if tj == ti)
        crown.extend(_subtree(t, p) for p in paths)
        trunk.append(_prune(t, set(paths)))
    if planar:
        return tuple(crown), tuple(trunk)
    return (tuple(sorted(canonical_tree(t) for t in crown)),
            tuple(sorted(canonical_tree(t) for t in trunk)))


# ---------------------------------------------------------------------------
# level decompositions (direct bi-admissible enumeration)


def _level_splits(t: Tree, lo: int, top: int):
    """Labelings of ``t`` by levels lo..top, non-decreasing away from the root.

    Yields ``(root_level, own_component, pieces)`` where ``pieces`` are the
    ``(level, tree)`` components started strictly below the root, in preorder.
    """
    for lvl in range(lo, top + 1):
        child_opts = [list(_level_splits(c, lvl, top)) for c in t.children]
        for combo in itertools.product(*child_opts):
            own_children, pieces = [], []
            for cl, own, pcs in combo:
                if cl == lvl:
                    own_children.append(own)
                else:
                    pieces.append((cl, own))
                pieces.extend(pcs)
            yield lvl, Tree(t.decoration, tuple(own_children)), pieces


def level_decompositions(f: Forest, levels: int, planar: bool = False):
    """Sum over monotone ``levels``-labelings: tuples of forests, crown first.

    With two levels this is the coproduct; with three it is the twice
    iterated coproduct (bi-admissible couples of cuts).
    """
    top = levels - 1
    per_tree = [list(_level_splits(t, 0, top)) for t in f]
    out: dict = {}
    for combo in itertools.product(*per_tree):
        buckets = [[] for _ in range(levels)]
        for root_level, own, pieces in combo:
            buckets[root_level].append(own)
            for lvl, piece in pieces:
                buckets[lvl].append(piece)
        if planar:
            parts = tuple(tuple(b) for b in reversed(buckets))
        else:
            parts = tuple(tuple(sorted(canonical_tree(t) for t in b))
                          for b in reversed(buckets))
        out[parts] = out.get(parts, 0) + 1
    return TensorElement(out)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _trees(n: int, decorations: tuple, planar: bool) -> tuple:
    if n <= 0:
        return ()
    out = set()
    for d in decorations:
        for kids in _forests(n - 1, decorations, planar):
            out.add(Tree(d, kids))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _forests(n: int, decorations: tuple, planar: bool) -> tuple:
    if n == 0:
        return ((),)
    out = set()
    for first in range(1, n + 1):
        for t in _trees(first, decorations, planar):
            for rest in _forests(n - first, decorations, planar):
                f = (t,) + rest
                out.add(f if planar else tuple(sorted(f)))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# literal syntax:  [d t1 t2 ...], forests separated by spaces, 1 = empty


def format_tree(t: Tree) -> str:
    inner = "".join(" " + format_tree(c) for c in t.children)
    return f"[{t.decoration}{inner}]"


def format_forest(f: Forest) -> str:
    return " ".join(format_tree(t) for t in f) if f else "1"


class TreeSyntaxError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


def parse_forest(text: str) -> Forest:
    s = text.strip()
    if s == "1":
        return ()
    pos = 0
    trees = []

    def skip(i):
        while i < len(s) and s[i].isspace():
            i += 1
        return i

    def tree(i):
        if i >= len(s) or s[i] != "[":
            raise TreeSyntaxError("expected '['", i)
        i = skip(i + 1)
        j = i
        while j < len(s) and s[j].isdigit():
            j += 1
        if j == i:
            raise TreeSyntaxError("expected decoration", i)
        dec = int(s[i:j])
        i = skip(j)
        kids = []
        while i < len(s) and s[i] == "[":
            child, i = tree(i)
            kids.append(child)
            i = skip(i)
        if i >= len(s) or s[i] != "]":
            raise TreeSyntaxError("expected ']'", i)
        return Tree(dec, tuple(kids)), i + 1

    pos = skip(pos)
    if pos >= len(s):
        raise TreeSyntaxError("empty forest literal", pos)
    while pos < len(s):
        t, pos = tree(pos)
        trees.append(t)
        pos = skip(pos)
    return tuple(trees)


# ---------------------------------------------------------------------------
# instances


class _TreeAlgebra(HopfAlgebra):
    planar = False

    def __init__(self, decorations=(0,)):
        self.decorations = tuple(sorted(set(decorations)))
        super().__init__()

    def canonical(self, f: Forest) -> Forest:
        raise NotImplementedError

    def forest(self, *trees: Tree) -> Forest:
        return self.canonical(tuple(trees))

    def degree(self, f: Forest) -> int:
        return forest_size(f)

    def product_basis(self, a: Forest, b: Forest) -> Forest:
        return self.canonical(a + b)

    def _reduced_coproduct(self, f: Forest) -> TensorElement:
        return tree_reduced_coproduct(f, planar=self.planar)

    def basis(self, degree: int) -> list:
        return list(_forests(degree, self.decorations, self.planar))

    def generators(self, degree: int) -> list:
        return [(t,) for t in _trees(degree, self.decorations, self.planar)]

    def factors(self, f: Forest) -> tuple:
        return tuple((t,) for t in f)

    def format_basis(self, f: Forest) -> str:
        return format_forest(f)

    def parse_basis(self, text: str) -> Forest:
        return self.canonical(parse_forest(text))


class RootedTrees(_TreeAlgebra):
    """Commutative Hopf algebra of non-planar decorated rooted forests."""

    name = "trees"
    commutative = True

    def canonical(self, f: Forest) -> Forest:
        return tuple(sorted(canonical_tree(t) for t in f))


class PlanarRootedTrees(_TreeAlgebra):
    """Noncommutative Hopf algebra of planar decorated rooted forests."""

    name = "planar-trees"
    planar = True
    commutative = False

    def canonical(self, f: Forest) -> Forest:
        return tuple(f)


def tree_reduced_coproduct(f: Forest, planar: bool = False) -> TensorElement:
    """Sum of crown (x) trunk over admissible cuts other than the empty and total ones."""
    out: dict = {}
    for cut in enumerate_admissible_cuts(f):
        crown, trunk = crown_and_trunk(f, cut, planar)
        if not crown or not trunk:
            continue
        out[(crown, trunk)] = out.get((crown, trunk), 0) + 1
    return TensorElement(out)


def bi_admissible_coassociativity_check(H: _TreeAlgebra, f: Forest,
                                        direct: bool = True) -> bool:
    """Compare both iterated coproducts, and the level-3 enumeration if ``direct``."""
    f = H.canonical(f)
    delta = H.coproduct_basis(f)
    left = H.apply_on_slot(delta, 0, H.coproduct_basis)
    right = H.apply_on_slot(delta, 1, H.coproduct_basis)
    if left != right:
        return False
    if direct:
        return level_decompositions(f, 3, H.planar) == left
    return True
