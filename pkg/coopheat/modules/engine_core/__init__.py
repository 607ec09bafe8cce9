"""
Termodinâmica em forma fechada da máquina térmica coletiva
"""

from .config import (
    MODES,
    MachineConfig,
    EffectiveTemperature,
    EnergyCurrents,
    normalize_subspace_weights,
)
from .thermodynamics import (
    effective_boltzmann,
    amplification,
    block_gibbs_populations,
    subspace_currents,
    total_currents,
    individual_currents,
    collective_currents,
    power_ratio,
    boost_ratio,
    boost_limits,
    saturation_boost,
    classify_mode,
    efficiency,
    build_currents,
    critical_hot_temperature,
)
from .sinusoidal import (
    sinusoidal_machine,
    sinusoidal_effective_boltzmann,
    sinusoidal_subspace_currents,
)

__all__ = [
    "MODES",
    "MachineConfig",
    "EffectiveTemperature",
    "EnergyCurrents",
    "normalize_subspace_weights",
    "effective_boltzmann",
    "amplification",
    "block_gibbs_populations",
    "subspace_currents",
    "total_currents",
    "individual_currents",
    "collective_currents",
    "power_ratio",
    "boost_ratio",
    "boost_limits",
    "saturation_boost",
    "classify_mode",
    "efficiency",
    "build_currents",
    "critical_hot_temperature",
    "sinusoidal_machine",
    "sinusoidal_effective_boltzmann",
    "sinusoidal_subspace_currents",
]
