"""
Modulação periódica e pesos de bandas laterais de Floquet
"""

from .weights import (
    ModulationSpec,
    FloquetWeights,
    floquet_weights_numeric,
    sinusoidal_weights_approx,
    bessel_weights,
    modulation_condition_warnings,
)

__all__ = [
    "ModulationSpec",
    "FloquetWeights",
    "floquet_weights_numeric",
    "sinusoidal_weights_approx",
    "bessel_weights",
    "modulation_condition_warnings",
]
