"""Constrained permutation codes for rank modulation.

Neighbour constraints on permutations, exact counting, the explicit
symmetric and asymmetric code constructions, Kendall tau / inversion /
Manhattan distances, and bounds for constrained codes with a minimum
inversion distance.
"""

from .constraints import (
    ConstraintKind,
    satisfies_asym_two_neighbor,
    satisfies_single_neighbor,
    satisfies_two_neighbor,
    satisfies_two_neighbor_vector,
)
from .constructions import (
    Code,
    build_Casym,
    build_Cr,
    build_Csym,
    cardinality_Csym,
    enumerate_D,
    enumerate_set_partitions,
    lower_bound_Casym,
    stirling2,
)
from .ecc import (
    ECCCode,
    capacity_surface_asym,
    capacity_surface_sym,
    greedy_code,
    gv_lower_bound,
    gv_manhattan_lower_bound,
    max_code_size,
    sphere_packing_bound,
    verify_min_distance,
)
from .enumeration import capacity_ratio, count_constrained, enumerate_constrained, psi, upper_bound_A_log
from .errors import BudgetExceeded
from .metrics import (
    ball_members_manhattan,
    ball_size_inversion,
    check_sandwich,
    inversion_distance,
    kendall_tau,
    manhattan,
)
from .perm import (
    BlockPermutation,
    MultiPermutation,
    Permutation,
    compose,
    decompose,
    inverse,
    make_permutation,
    ordered_run,
    valleys,
)

__version__ = "0.1.0"

__all__ = [
    "ball_members_manhattan",
    "ball_size_inversion",
    "BlockPermutation",
    "BudgetExceeded",
    "build_Casym",
    "build_Cr",
    "build_Csym",
    "capacity_ratio",
    "capacity_surface_asym",
    "capacity_surface_sym",
    "cardinality_Csym",
    "check_sandwich",
    "Code",
    "compose",
    "ConstraintKind",
    "count_constrained",
    "decompose",
    "ECCCode",
    "enumerate_constrained",
    "enumerate_D",
    "enumerate_set_partitions",
    "greedy_code",
    "gv_lower_bound",
    "gv_manhattan_lower_bound",
    "inverse",
    "inversion_distance",
    "kendall_tau",
    "lower_bound_Casym",
    "make_permutation",
    "manhattan",
    "max_code_size",
    "MultiPermutation",
    "ordered_run",
    "Permutation",
    "psi",
    "satisfies_asym_two_neighbor",
    "satisfies_single_neighbor",
    "satisfies_two_neighbor",
    "satisfies_two_neighbor_vector",
    "sphere_packing_bound",
    "stirling2",
    "upper_bound_A_log",
    "valleys",
    "verify_min_distance",
]
