"""Exact-rational engine for differential GBV algebras.

Feed it a finite-dimensional differential Gerstenhaber-Batalin-Vilkovisky
algebra (as tables over Q), and it verifies the axioms, computes
cohomology and a cohomological decomposition, solves the Maurer-Cartan
equation order by order, and produces the potential of the induced formal
Frobenius structure, with the associativity (WDVV) system, the identity
axiom, gauge invariance and invariance under quasi-isomorphism all
checkable to zero residual in exact arithmetic.
"""

from .graded import GradedSpace, Element, LinearOperator, koszul_sign, \
    compose, anticommutator
from .algebra import DGBVInstance, check_dgbv_axioms, deformed_differential, \
    multiply, bracket_delta
from .homology import cohomology, decomposition, check_integral, metric_eta, \
    check_conditions, Decomposition, CohomologyData, Metric, \
    IntegralNotNiceError
from .formal import CoordinateRing, FormalElement, SuperPolynomial
from .mc import solve_mc, contract, gauge_act, NormalizedSolution, \
    Obstruction, coordinate_ring, gamma_one, mc_residual, renormalize
from .frobenius import potential, third_derivatives, check_wdvv, \
    check_identity_axiom, check_cubic_identity, check_frobenius, Potential, \
    frobenius_data
from .geometry import PolyvectorField, PolyForm, schouten_bracket, \
    poisson_sigma, koszul_delta, sharp_flat, build_torus_model, \
    exterior_derivative, contract_bivector, form_bracket, \
    standard_symplectic_form
from .morphism import DGBVMorphism, check_morphism, check_quasi_iso, \
    compare_potentials, ZigZag, cohomology_instance, run_pipeline
from . import models, io

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
