"""Truth-value assignment to quantum propositions as linear-system solvability,
with operation-counted cost models for sequential, PRAM and QPRAM machines."""

from .linalg import (
    Projector,
    StateVector,
    SubspaceBasis,
    commutes,
    kernel_basis,
    make_state,
    orthogonal,
    projector_from_matrix,
    projector_from_state,
    range_basis,
    subspace_leq,
)
from .solvability import (
    AugmentedTableau,
    OpCounter,
    StatementVerdict,
    eliminate_step,
    kernel_membership,
    range_membership,
    solve_consistency,
)
from .valuation import (
    PropositionPair,
    Semantics,
    Truth,
    TruthVerdict,
    comparability_bvn,
    comparability_partial,
    distributivity_witness,
    join,
    meet,
    valuate_bvn,
    valuate_partial,
)

__version__ = "0.1.0"
