"""
Máquina de modulação senoidal com banhos espectralmente separados

Com modulação fraca só as bandas q = ±1 acoplam: o banho frio em ω0 - Ω
e o quente em ω0 + Ω. As formas fechadas abaixo servem de verificação
canal a canal do caminho genérico.
"""

import logging
from typing import Mapping, Optional

import numpy as np

from ...core.errors import InvalidArgumentError
from ..floquet_modulation import ModulationSpec, floquet_weights_numeric, sinusoidal_weights_approx
from ..spin_algebra import SpinQuantumNumber
from ..thermal_baths import BathSpec, SeparatedSpectrum
from .config import EffectiveTemperature, EnergyCurrents, MachineConfig
from .thermodynamics import amplification, build_currents


logger = logging.getLogger(__name__)

DEFAULT_OMEGA = 0.3
DEFAULT_DEPTH_RATIO = 0.01
WEIGHT_MODES = ("approx", "numeric")


def sinusoidal_machine(x_cold: float, x_hot: float, Omega: float = DEFAULT_OMEGA,
                       g: Optional[float] = None, n_atoms: int = 1,
                       coupling_cold: float = 1.0, coupling_hot: float = 1.0,
                       weights_mode: str = "approx", omega0: float = 1.0,
                       q_max: Optional[int] = None,
                       subspace_weights: Optional[Mapping[object, float]] = None) -> MachineConfig:
    """
    Monta a máquina senoidal padrão

    Args:
        x_cold, x_hot: β_i ħω0 dos banhos
        Omega: frequência de acionamento
        g: profundidade (padrão 0.01 Omega)
        n_atoms: número de átomos
        coupling_cold: G_c(ω0 - Ω)
        coupling_hot: G_h(ω0 + Ω)
        weights_mode: approx (fraca) ou numeric (quadratura)

    Returns:
        MachineConfig
    """
    if weights_mode not in WEIGHT_MODES:
        raise InvalidArgumentError(f"weights_mode inválido: {weights_mode!r}", {"allowed": list(WEIGHT_MODES)})
    g = DEFAULT_DEPTH_RATIO * Omega if g is None else g
    modulation = ModulationSpec.sinusoidal(g=g, Omega=Omega, omega0=omega0)
    if weights_mode == "approx":
        weights = sinusoidal_weights_approx(g, Omega)
    else:
        weights = floquet_weights_numeric(modulation, q_max=q_max)
    baths = (
        BathSpec("cold", x_cold, SeparatedSpectrum(level=coupling_cold), omega0),
        BathSpec("hot", x_hot, SeparatedSpectrum(level=coupling_hot), omega0),
    )
    return MachineConfig(baths=baths, modulation=modulation, weights=weights,
                         n_atoms=n_atoms, subspace_weights=subspace_weights)


def sinusoidal_effective_boltzmann(x_cold: float, x_hot: float, Omega: float = DEFAULT_OMEGA,
                                   omega0: float = 1.0, coupling_cold: float = 1.0,
                                   coupling_hot: float = 1.0) -> EffectiveTemperature:
    """
    e^{-x_eff} = [G_c e^{-x_c(ω0-Ω)/ω0} + G_h e^{-x_h(ω0+Ω)/ω0}] / (G_c + G_h)
    """
    if coupling_cold < 0 or coupling_hot < 0 or coupling_cold + coupling_hot == 0:
        raise InvalidArgumentError("Acoplamentos devem ser >= 0 e não ambos nulos")
    cold = coupling_cold * np.exp(-x_cold * (omega0 - Omega) / omega0)
    hot = coupling_hot * np.exp(-x_hot * (omega0 + Omega) / omega0)
    return EffectiveTemperature.from_boltzmann(float((cold + hot) / (coupling_cold + coupling_hot)))


def sinusoidal_subspace_currents(j, x_cold: float, x_hot: float, Omega: float = DEFAULT_OMEGA,
                                 g: Optional[float] = None, omega0: float = 1.0,
                                 coupling_cold: float = 1.0, coupling_hot: float = 1.0) -> EnergyCurrents:
    """
    Correntes do bloco j na forma fechada da máquina senoidal

    Args:
        j: spin do bloco
        x_cold, x_hot: β_i ħω0
        Omega: frequência de acionamento
        g: profundidade (padrão 0.01 Omega)

    Returns:
        EnergyCurrents
    """
    j = SpinQuantumNumber.from_value(j)
    g = DEFAULT_DEPTH_RATIO * Omega if g is None else g
    side = (g / (2 * Omega)) ** 2
    eff = sinusoidal_effective_boltzmann(x_cold, x_hot, Omega, omega0, coupling_cold, coupling_hot)
    factor = amplification(j, eff.x_eff)

    low, high = omega0 - Omega, omega0 + Omega
    j_cold = factor * low * side * coupling_cold * (np.exp(-x_cold * low / omega0) - eff.boltzmann_factor)
    j_hot = factor * high * side * coupling_hot * (np.exp(-x_hot * high / omega0) - eff.boltzmann_factor)
    return build_currents(j_cold, j_hot)
