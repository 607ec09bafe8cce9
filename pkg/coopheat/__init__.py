"""
coopheat - Cooperative quantum thermal machine simulator
========================================================

Steady-state thermodynamics of N collectively coupled two-level atoms
driven as a periodically modulated heat engine or refrigerator:
- Dicke decomposition and collective spin operators
- Floquet sideband weights of the frequency modulation
- Closed-form currents, power boost and operation modes
- Brute-force Lindblad oracle (collective, cross-rate and dephased)
- Command line sweeps reproducing the cooperative boost figures

Version: 1.0.0
"""

__version__ = "1.0.0"

from .core.machine import CoopHeat
from .core.runner import SimulationRunner

__all__ = ["CoopHeat", "SimulationRunner"]
