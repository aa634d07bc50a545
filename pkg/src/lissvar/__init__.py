"""Computations with trigonometrically parametrized algebraic varieties.

Exact degrees via lattice-polytope volumes, membership and defining
equations via multiplication-matrix rank conditions, coupled-oscillator
equilibria with stability, the convex program for the positive equilibrium,
and branch-locus discriminants with their symmetries and degree bounds.
"""

from .discriminant import (
    DiscriminantResult,
    DiscriminantSample,
    check_graph_symmetry,
    check_sign_symmetry,
    exact_discriminant_1d,
    real_count_profile,
    sample_discriminant,
    toric_jacobian,
)
from .dynamics import (
    Equilibrium,
    EquilibriumSet,
    find_equilibria,
    integrate,
    jacobian,
    rhs,
)
from .exactmat import (
    CircuitData,
    IntMatrix,
    circuits,
    kernel_lattice_basis,
    lattice_index,
    rank_rational,
)
from .graphs import (
    Graph,
    automorphisms,
    complete_graph,
    cycle_graph,
    from_edges,
    incidence,
)
from .polynomials import PolynomialDense
from .polytope import (
    Polytope,
    discriminant_degree_bound,
    normalized_volume,
    symmetric_hull,
)
from .posopt import OptResult, objective, objective_gradient, omega_plus_contains, solve_positive
from .variety import (
    HypersurfaceEquation,
    LissajousModel,
    MembershipReport,
    build_model,
    cycle_poly_degree,
    degree,
    fiber_degree,
    genericity_test,
    hypersurface_equation,
    membership,
    param_point,
    torus_param_point,
)

__version__ = "0.1.0"

__all__ = [
    "CircuitData",
    "DiscriminantResult",
    "DiscriminantSample",
    "Equilibrium",
    "EquilibriumSet",
    "Graph",
    "HypersurfaceEquation",
    "IntMatrix",
    "LissajousModel",
    "MembershipReport",
    "OptResult",
    "PolynomialDense",
    "Polytope",
    "automorphisms",
    "build_model",
    "check_graph_symmetry",
    "check_sign_symmetry",
    "circuits",
    "complete_graph",
    "cycle_graph",
    "cycle_poly_degree",
    "degree",
    "discriminant_degree_bound",
    "exact_discriminant_1d",
    "fiber_degree",
    "find_equilibria",
    "from_edges",
    "genericity_test",
    "hypersurface_equation",
    "incidence",
    "integrate",
    "jacobian",
    "kernel_lattice_basis",
    "lattice_index",
    "membership",
    "normalized_volume",
    "objective",
    "objective_gradient",
    "omega_plus_contains",
    "param_point",
    "rank_rational",
    "real_count_profile",
    "rhs",
    "sample_discriminant",
    "solve_positive",
    "symmetric_hull",
    "toric_jacobian",
    "torus_param_point",
]
