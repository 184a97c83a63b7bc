"""Two mass-imbalanced particles in a 1D hard-wall box.

Classical collision kinematics close under a dihedral group at mass ratios
eta = tan^2(l*pi/2n); the quantum system at eta = 3 is solved exactly for any
repulsion by a finite plane-wave superposition, and certified against dense
diagonalization.
"""

__version__ = "0.1.0"

from .bethe import (
    BetheRoot,
    SpectralLevel,
    constraint_rank_probe,
    continue_level,
    energy,
    enumerate_spectrum,
    hardcore_levels,
    orbit_partners,
    residual,
    solve_root,
)
from .billiard import BilliardState, CollisionEvent, distinct_momentum_count, next_event, simulate
from .dihedral import (
    DihedralGroup,
    MassRatioClass,
    MomentumVector,
    build_dihedral_group,
    chebyshev_power,
    momentum_orbit,
    nonergodicity_classify,
    rotation_form,
    scattering_matrix,
)
from .ed import build_hamiltonian, extrapolate, interaction_element, spectrum, validate_against_bethe
from .params import ModelParams
from .wavefunction import (
    CoefficientSet,
    assemble_coefficients,
    density_grid,
    evaluate_psi,
    hardcore_wavefunction,
    jump_condition_check,
    special_state,
    triple_partners,
)

__all__ = [
    "BetheRoot",
    "BilliardState",
    "CoefficientSet",
    "CollisionEvent",
    "DihedralGroup",
    "MassRatioClass",
    "ModelParams",
    "MomentumVector",
    "SpectralLevel",
    "assemble_coefficients",
    "build_dihedral_group",
    "build_hamiltonian",
    "chebyshev_power",
    "constraint_rank_probe",
    "continue_level",
    "density_grid",
    "distinct_momentum_count",
    "energy",
    "enumerate_spectrum",
    "evaluate_psi",
    "extrapolate",
    "hardcore_levels",
    "hardcore_wavefunction",
    "interaction_element",
    "jump_condition_check",
    "momentum_orbit",
    "next_event",
    "nonergodicity_classify",
    "orbit_partners",
    "residual",
    "rotation_form",
    "scattering_matrix",
    "simulate",
    "solve_root",
    "special_state",
    "spectrum",
    "triple_partners",
    "validate_against_bethe",
]
