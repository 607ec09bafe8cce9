"""
Oráculo de Lindblad: equação mestra por força bruta para verificar as formas fechadas
"""

from .states import (
    DensityMatrix,
    density_matrix,
    maximally_mixed,
    product_state,
    excited_state,
    singlet_state,
    dicke_state,
    symmetric_gibbs_state,
    product_gibbs_state,
)
from .channels import (
    LindbladChannel,
    FullCollective,
    SingleBlock,
    CrossRate,
    WithDephasing,
    Representation,
    build_machine_channels,
    bath_sub_liouvillian_jumps,
    cross_rate_symmetry,
)
from .solver import (
    METHODS,
    OracleResult,
    PreparedGenerator,
    lindblad_rhs,
    vectorized_generator,
    integrate,
    steady_state,
)
from .observables import (
    TransientResult,
    currents_from_state,
    run_oracle,
    dephasing_oracle,
    dephasing_currents,
    zero_temperature_rates,
    superradiant_transient,
)

__all__ = [
    "DensityMatrix",
    "density_matrix",
    "maximally_mixed",
    "product_state",
    "excited_state",
    "singlet_state",
    "dicke_state",
    "symmetric_gibbs_state",
    "product_gibbs_state",
    "LindbladChannel",
    "FullCollective",
    "SingleBlock",
    "CrossRate",
    "WithDephasing",
    "Representation",
    "build_machine_channels",
    "bath_sub_liouvillian_jumps",
    "cross_rate_symmetry",
    "METHODS",
    "OracleResult",
    "PreparedGenerator",
    "lindblad_rhs",
    "vectorized_generator",
    "integrate",
    "steady_state",
    "TransientResult",
    "currents_from_state",
    "run_oracle",
    "dephasing_oracle",
    "dephasing_currents",
    "zero_temperature_rates",
    "superradiant_transient",
]
