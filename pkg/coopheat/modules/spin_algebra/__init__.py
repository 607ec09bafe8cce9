"""
Álgebra de spin coletivo e decomposição de Dicke
"""

from .decomposition import SpinQuantumNumber, DickeDecomposition, decompose
from .operators import (
    OperatorMatrix,
    StateVector,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_Z,
    lowering_operator,
    raising_operator,
    z_operator,
    x_operator,
    y_operator,
    local_operator,
    collective_operator,
    total_spin_squared,
    excitation_counts,
    symmetric_state,
    symmetric_basis,
    spin_eigenbasis,
    subspace_projector,
    check_density_matrix,
    subspace_weights,
)

__all__ = [
    "SpinQuantumNumber",
    "DickeDecomposition",
    "decompose",
    "OperatorMatrix",
    "StateVector",
    "SIGMA_MINUS",
    "SIGMA_PLUS",
    "SIGMA_Z",
    "lowering_operator",
    "raising_operator",
    "z_operator",
    "x_operator",
    "y_operator",
    "local_operator",
    "collective_operator",
    "total_spin_squared",
    "excitation_counts",
    "symmetric_state",
    "symmetric_basis",
    "spin_eigenbasis",
    "subspace_projector",
    "check_density_matrix",
    "subspace_weights",
]
