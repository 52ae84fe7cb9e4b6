"""Rooted trees: cuts, coproducts and antipodes.

Run with ``python demos/01_trees.py``.
"""

from hopfrg import Element
from hopfrg.cli import format_element, format_tensor
from hopfrg.hopf import antipode_squared_witness, check_hopf_axioms
from hopfrg.trees import (PlanarRootedTrees, RootedTrees, corolla, crown_and_trunk,
                          enumerate_admissible_cuts, format_forest)

T = RootedTrees()

# A tree literal is a bracketed root decoration followed by its subtrees.
cherry = T.parse_basis("[0 [0] [0]]")
print("forest:", format_forest(cherry))

# Every admissible cut splits the forest into a crown (what falls off) and a
# trunk (what stays attached to the roots).
for cut in enumerate_admissible_cuts(cherry):
    crown, trunk = crown_and_trunk(cherry, cut)
    print(f"  crown {format_forest(crown):12} trunk {format_forest(trunk)}")

# The coproduct sums crown (x) trunk over those cuts; equal terms merge.
print("coproduct:", format_tensor(T, T.coproduct_basis(cherry)))

# The antipode is computed by recursion on the degree.
ladder3 = T.parse_basis("[0 [0 [0]]]")
print("S(ladder of 3):", format_element(T, T.antipode_basis(ladder3)))

# Commutative trees have S o S = id; planar trees lose this already in degree 3.
print("S^2 witness, commutative:", antipode_squared_witness(T, T.basis_upto(5)))
P = PlanarRootedTrees()
w = antipode_squared_witness(P, P.basis_upto(5))
print("S^2 witness, planar:", format_forest(w))
print("  S(S(w)) =", format_element(P, P.antipode(P.antipode_basis(w))))

# The axiom suite stops at the first failing basis element.
print(check_hopf_axioms(T, 5).summary())
print("corolla with 3 leaves has", len(enumerate_admissible_cuts((corolla(3),))), "cuts")
print("unit element:", format_element(T, Element.basis(T.unit)))
