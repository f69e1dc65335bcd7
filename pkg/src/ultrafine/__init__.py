"""Exact coadjoint layer computations for completely solvable Lie algebras."""

from .chain import (
    DISCLAIMERS,
    ChainReport,
    LayerCatalog,
    OpennessConfig,
    SamplingConfig,
    enumerate_layers,
    order_layers,
    solvability_report,
    verify_openness,
)
from .lie import (
    FlagNotFound,
    JacobiViolation,
    JordanHolderFlag,
    LieAlgebra,
    LieAlgebraError,
    NotASubalgebra,
    find_jh_flag,
    from_brackets,
    roots,
    validate_algebra,
    validate_jh_flag,
)
from .linalg import GaussianRational, Subspace
from .orbits import GroupWord, coadjoint_apply, nilpotent_cross_section, orbit_dimension
from .polarize import (
    InvariantViolation,
    check_polarization,
    descending_sequence,
    pukanszky_containment_check,
    vergne_polarization,
)
from .stratify import (
    UltrafineLabel,
    classify,
    complexified_label,
    fine_index,
    ultrafine_label,
)
from .subgroups import grassmann_gap, rho_exponent, subgroup_from_subalgebra

__version__ = "0.1.0"
