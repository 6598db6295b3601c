"""Bell inequality with S4 (tetrahedral) symmetry.

Builds the 3-dimensional representation of S4 and its orbits, the
Clebsch-Gordan structure of D (x) D, the quantum bound of the 48-term
probability sum, its classical bound by exhaustive enumeration, and the
associated nonlocal game.
"""
from .bell import (
    BellOperator,
    ProductState,
    SpectralReport,
    build_X,
    closed_form_lambda_max,
    eigenvalues_dense,
    eigenvalues_schur,
    quantum_bound,
    scalar_state,
)
from .classical import (
    CoefficientHistogram,
    OrbitTerm,
    Strategy,
    classical_histogram,
    coefficient_c,
    constraint_graph_cycles,
    diagonal_orbit,
    enumerate_strategies,
    inequality_terms,
    quantum_value_S,
)
from .decomp import cg_matrix, project_closed_form, project_via_cg, spin_decompose
from .game import WinTable, build_win_table, classical_win_probability, quantum_win_probability
from .group import (
    Permutation,
    Representation,
    build_representation,
    compose,
    conjugacy_classes,
    generate_group,
    transposition_matrix,
)
from .orbit import (
    LabeledOrbit,
    generate_orbit,
    observable_from_basis,
    partition_into_bases,
    stabilizer,
    standard_orbit,
)

__version__ = "0.1.0"
