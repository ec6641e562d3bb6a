"""Brick-wall lattice path enumeration and hammock network reliability."""
from .lattice import (
    BrickPath,
    EnumerationLimitExceeded,
    Kind,
    LatticePoint,
    LatticeSpec,
    Parity,
    Step,
    count_paths_bruteforce,
    enumerate_paths,
    joint_exists,
    parity_of,
    step_allowed,
    validate_path,
)
from .reliability import (
    HammockNetwork,
    brute_force_Ntable,
    build_network,
    edge_masks,
    eval_polynomial,
    first_coefficient,
    is_operational,
    monte_carlo_estimate,
    n_to_p,
    reliability_polynomial,
    second_coefficient,
    second_coefficient_specialized,
)
from .sequences import (
    RationalGF,
    closed_form_w3,
    closed_form_w4,
    fib_block_power,
    fibonacci,
    gf_expand,
    sequence_for,
    table1_reference,
)
from .transfer import (
    TransferMatrix,
    advance,
    column_matrix,
    column_vector,
    count_paths,
    paper_matrix,
    theorem_count,
    transition_matrix,
)

__version__ = "0.1.0"
