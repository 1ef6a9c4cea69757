"""Exact symbolic combinatorics of Harris-Taylor local systems.

Segment algebra, mod-l reduction rules, division-algebra transfer
coefficients, cohomology coefficient diagrams and tables, congruence
balance constraints and torsion certificates -- all over exact integer
and half-integer arithmetic with opaque symbolic multiplicities.
"""

from .segments import (
    CuspidalLabel,
    GrothElement,
    IrreducibleLabel,
    Multisegment,
    OpaqueFactor,
    Partition,
    Segment,
    dominance_leq,
    groth_product,
    half,
    ladder_cuts,
    make_speh,
    make_speh_st,
    make_steinberg,
    twist,
)
from .diagrams import (
    DiagramSupport,
    LocalComponent,
    m_coeff,
    m_support,
    n_coeff,
    n_support,
    render,
    superpose,
)
from .jl_red import (
    Orientation,
    R_cell,
    S_cell,
    SignedCharacter,
    multisegment_of_orientation,
    orientations,
    r_tau_sign,
    red_tau,
)
from .modl import (
    FieldData,
    SupercuspidalData,
    TowerLevel,
    chgt_cuspi_factor,
    e_l,
    is_banal,
    is_cuspidal_st,
    m_of,
    matched_strata,
    rl_division_rep,
    rl_speh,
    supercuspidal,
    tower_rank,
)
from .cohomology import (
    CohomologyTable,
    CongruenceConstraint,
    ProfileEntry,
    SpectrumProfile,
    TorsionCertificate,
    check_hij,
    check_se2,
    coh_intermediate,
    coh_shriek,
    conj2_predicate,
    dxi_support,
    euler_master_identity,
    inclusion_exclusion_ramified,
    rl_hi_balance,
    strong_congruence_filter,
    torsion_detect,
)
from .symbolic import SymExpr, atom, integer

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
