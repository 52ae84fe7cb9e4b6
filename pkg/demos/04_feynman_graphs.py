"""Feynman graphs: subgraphs, contraction and the coproduct.

Run with ``python demos/04_feynman_graphs.py``.
"""

from hopfrg.cli import format_tensor
from hopfrg.graphs import (PHI3, contract, enumerate_subgraphs, fixture_algebra,
                           format_graph, loop_number, phi3_fixtures, residue,
                           write_graph_file)
from hopfrg.hopf import check_hopf_axioms

kite = phi3_fixtures()["kite"]
print(write_graph_file(kite, PHI3))
print("loops:", loop_number(kite), " residue:", format_graph(residue(kite)))

# Contracting a one-loop subgraph must leave vertices allowed by the theory.
kept, excluded = enumerate_subgraphs(kite, PHI3, include_excluded=True)
for sub, quotient in kept:
    print("keep", sorted(sub), "->", format_graph(quotient))
for sub, quotient in excluded:
    print("drop", sorted(sub), "->", format_graph(quotient), "vertex types",
          sorted(set(quotient.vertex_types())))

print("contract everything == residue:", contract(kite, range(5)) == residue(kite))

H = fixture_algebra("phi3")
print("kite coproduct:", format_tensor(H, H.coproduct_basis((H.validate(kite),))))
print(check_hopf_axioms(H, 3).summary())
