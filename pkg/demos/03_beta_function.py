"""From a constant infinitesimal character to a polar map and back.

Run with ``python demos/03_beta_function.py``.
"""

from hopfrg import ConvContext, RootedTrees
from hopfrg.rgflow import (beta_function, constant_infinitesimal, first_order_witness,
                           has_property_phi, phi_sample_count, renorm_map, scattering_of_beta,
                           twist)
from hopfrg.birkhoff import birkhoff_decompose
from hopfrg.scalars import format_series

ctx = ConvContext(RootedTrees(), precision=10)
H = ctx.hopf
gens = {H.parse_basis(lit): c for lit, c in
        [("[0]", 1), ("[0 [0]]", -2), ("[0 [0 [0]]]", 3), ("[0 [0] [0]]", 1)]}
beta0 = constant_infinitesimal(ctx, gens)

# psi solves psi o Y = psi * (beta0 / z); its values are pure poles.
psi = scattering_of_beta(beta0)
for b in H.basis_upto(3)[1:]:
    print(f"psi({H.format_basis(b)}) = {format_series(psi.value(b))}")

# Twisting psi by exp(t z |x|) adds holomorphic terms but leaves the counterterms alone.
x = H.parse_basis("[0 [0]]")
for t in (1, 2):
    minus = birkhoff_decompose(twist(psi, t)).phi_minus.value(x)
    print(f"t = {t}: counterterm on [0 [0]] = {format_series(minus)}")
print("samples needed up to degree 3:", phi_sample_count(psi, 3))
print("t-independent counterterms:", has_property_phi(psi, 3))

# z times the renormalization map recovers beta0, and so does the residue route.
res = beta_function(psi, 3)
print("beta agrees with Res(psi) o Y:", res.agree, " constant:", res.constant)
for b in gens:
    print(f"beta({H.format_basis(b)}) = {format_series(res.beta.value(b))}")
print("z * Rt(psi) on [0 [0] [0]]:", format_series(renorm_map(psi).value(
    H.parse_basis("[0 [0] [0]]")).shift(1)))
print("first-order check in t:", first_order_witness(psi, 3))
