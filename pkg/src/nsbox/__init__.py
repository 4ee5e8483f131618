"""Calculus of no-signalling conditional probability distributions.

Boxes, their validation and algebra; exact separable decompositions of
symmetric boxes; de Finetti mixtures with certified error bounds; the
individual, adaptive and general (LP) distinguishability distances; the
hypergeometric-vs-multinomial urn comparison driving the bounds; and the
dimension-independent analogue for separable symmetric quantum states.
"""

from .box import (
    DEFAULT_TOL,
    Box,
    Permutation,
    ValidationReport,
    all_deterministic_boxes,
    boxes_equal,
    deterministic_box,
    is_no_signalling,
    is_symmetric,
    marginal,
    max_entry_deviation,
    mix,
    permute,
    product,
    sequential_condition,
    symmetrize,
    symmetry_violation,
    uniform_box,
    validate,
)
from .definetti import (
    DeFinettiMixture,
    SeparableDecomposition,
    averaged_mixture,
    definetti_approximation,
    mixture_to_box,
    reconstruct,
    separable_decompose,
)
from .distance import (
    AdaptiveStrategy,
    Effect,
    GeneralDistanceResult,
    NSPolytopeH,
    adaptive_distance,
    adaptive_strategy_count,
    general_distance,
    general_distance_detailed,
    individual_distance,
    ns_constraints,
    polytope_extremum,
    random_ns_box,
    random_ns_vertex,
    transcript_distribution,
)
from .errors import (
    AsymmetryError,
    ConvergenceError,
    ResourceLimitError,
    ShapeError,
    SignallingError,
)
from .examples import pr_box, q_box, signalling_example
from .quantum import (
    DensityMatrix,
    SymmetricSeparableSpec,
    definetti_quantum,
    hermitian_eigenvalues,
    jacobi_eigh,
    mixture_density,
    partial_trace_last,
    reduced_state,
    trace_norm,
    trace_norm_distance,
)
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, LPResult, lp_solve
from .urn import (
    Urn,
    df_bound,
    hypergeometric_label_pmf,
    hypergeometric_pmf,
    multinomial_label_pmf,
    multinomial_pmf,
    urn_variational_distance,
)

__version__ = "0.1.0"
