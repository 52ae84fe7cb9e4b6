"""Exact algebraic renormalization on connected graded Hopf algebras.

Submodules:

* :mod:`hopfrg.scalars` -- rationals, truncated Laurent series, minimal subtraction
* :mod:`hopfrg.hopf` -- generic Hopf algebra machinery and the axiom suite
* :mod:`hopfrg.trees`, :mod:`hopfrg.arith`, :mod:`hopfrg.graphs` -- instances
* :mod:`hopfrg.convolution` -- maps to Laurent series, the convolution group
* :mod:`hopfrg.birkhoff` -- Birkhoff decomposition, recursive and BCH routes
* :mod:`hopfrg.rgflow` -- renormalization map, scattering inverse, beta-function
"""

from .arith import PositiveIntegers, SymmetricAlgebra
from .birkhoff import (BirkhoffResult, BchState, bch_chi, birkhoff_decompose,
                       birkhoff_via_bch, bogoliubov, renormalized_value)
from .convolution import (ConvContext, HopfMap, character, conv_exp, conv_inverse,
                          conv_log, conv_unit, convolve, infinitesimal_character,
                          valuation)
from .graphs import FeynmanGraphs, Graph, Theory, fixture_algebra
from .hopf import Element, HopfAlgebra, TensorElement, check_hopf_axioms
from .rgflow import (beta_function, compose_Y, compose_Yinv, has_property_phi,
                     renorm_map, renorm_map_integral, residue_functional,
                     scattering_inverse, twist, u_beta_property_check)
from .scalars import LaurentSeries, MinimalSubtraction, PrecisionError
from .trees import PlanarRootedTrees, RootedTrees, Tree

__version__ = "0.1.0"

__all__ = [
    "BchState", "BirkhoffResult", "ConvContext", "Element", "FeynmanGraphs", "Graph",
    "HopfAlgebra", "HopfMap", "LaurentSeries", "MinimalSubtraction", "PlanarRootedTrees",
    "PositiveIntegers", "PrecisionError", "RootedTrees", "SymmetricAlgebra",
    "TensorElement", "Theory", "Tree", "bch_chi", "beta_function", "birkhoff_decompose",
    "birkhoff_via_bch", "bogoliubov", "character", "check_hopf_axioms", "compose_Y",
    "compose_Yinv", "conv_exp", "conv_inverse", "conv_log", "conv_unit", "convolve",
    "fixture_algebra", "has_property_phi", "infinitesimal_character", "renorm_map",
    "renorm_map_integral", "renormalized_value", "residue_functional",
    "scattering_inverse", "twist", "u_beta_property_check", "valuation",
]
