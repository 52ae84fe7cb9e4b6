"""Splitting a character into counterterm and renormalized parts.

Run with ``python demos/02_birkhoff.py``.
"""

from hopfrg import ConvContext, RootedTrees, birkhoff_decompose, birkhoff_via_bch
from hopfrg.birkhoff import bogoliubov, compare_routes, reconstruction_witness
from hopfrg.convolution import parse_character_text
from hopfrg.scalars import format_series

ctx = ConvContext(RootedTrees(), precision=8)
H = ctx.hopf

# A character is fixed by its values on single trees; forests multiply.
phi = parse_character_text("""
kind: character
gen [0]         = z^-1 + 2
gen [0 [0]]     = z^-2 + 1/2*z^-1 + 3
gen [0 [0 [0]]] = z^-3 - z
gen [0 [0] [0]] = 2*z^-3 + 1
""", ctx, "phi")

res = birkhoff_decompose(phi)
prep = bogoliubov(phi)
for lit in ["[0]", "[0 [0]]", "[0] [0]", "[0 [0 [0]]]", "[0 [0] [0]]"]:
    b = H.parse_basis(lit)
    print(f"{lit:14} phi  = {format_series(phi.value(b))}")
    print(f"{'':14} b    = {format_series(prep.value(b))}")
    print(f"{'':14} phi- = {format_series(res.phi_minus.value(b))}")
    print(f"{'':14} phi+ = {format_series(res.phi_plus.value(b))}"
          f"   (value at z = 0: {res.renormalized_value(b)})")

# phi_- * phi = phi_+ holds exactly on every basis element checked.
print("reconstruction witness:", reconstruction_witness(phi, res, 3))

# The exponential route reaches the same pair through a fixed point in the Lie algebra.
bch = birkhoff_via_bch(phi, 3)
print("BCH iterations:", bch.bch.iterations, "update valuations:", bch.bch.trace)
print("routes differ at:", compare_routes(phi, 3))
