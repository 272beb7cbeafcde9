"""jcouple: exact quantum angular-momentum coupling and time-reversal audits."""

from .coupling import (
    CouplingChain,
    CouplingTree,
    StateExpansion,
    double_factorial,
    enumerate_chains,
    enumerate_coupling_trees,
    expand_coupled_state,
    export_dot,
    generalized_coupling_coefficient,
    jmax,
    jmin,
)
from .kepler import (
    KeplerLevel,
    KramersVerdict,
    LieBasisElement,
    LieExpression,
    MergedKeplerLevel,
    SplitCheckReport,
    Statistics,
    basis_commutator,
    commutator,
    degeneracy_enumerated,
    degeneracy_paper,
    energy_level,
    j_operator,
    kramers_applicability,
    merge_spectrum,
    so4_split_check,
    spectrum,
)
from .numerics import (
    DomainError,
    FactorizedFactorial,
    GaussianRational,
    HalfInt,
    Parity,
    PhasedSurdSum,
    Surd,
    classify,
    classify_signed,
    factorial_factorized,
    halfint_range,
    parse_halfint,
    projection_range,
    squarefree_decomposition,
)
from .particles import (
    Leaf,
    Node,
    ParticleTree,
    Permutation,
    antisymmetrize,
    exchange,
    is_fermion,
    particle_from_json,
    signature,
    symmetrize,
)
from .timerev import (
    FirstSymmetryAudit,
    PhaseI,
    TStateTerm,
    apply_time_reversal,
    audit_first_symmetry,
    audit_second_symmetry,
    check_compatibility,
    coupled_univalence,
    kramers_overlap,
    t_phase,
    t_squared_sign,
    time_reverse_terms,
)
from .wigner import (
    CgArgs,
    ReggeAuditEntry,
    RSymbol,
    allowed_j,
    cg,
    cg_normalization_sum,
    cg_selection_ok,
    regge_orbit_audit,
    regge_symbol,
    three_j,
)

__version__ = "0.1.0"
