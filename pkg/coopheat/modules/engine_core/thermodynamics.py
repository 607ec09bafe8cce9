"""
Termodinâmica em forma fechada
==============================

Cada subespaço invariante de spin j relaxa para o estado tipo Gibbs
exp(-x_eff S_z)/Z, e todas as correntes do bloco são as correntes de um
átomo isolado multiplicadas pelo fator de amplificação F(j).
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np

from ...core.errors import DivergenceError, InvalidArgumentError, InvalidConfigurationError, NoCouplingError
from ...core.settings import get_settings
from ..spin_algebra import SpinQuantumNumber
from ..thermal_baths import SidebandRates
from .config import EffectiveTemperature, EnergyCurrents, MachineConfig


logger = logging.getLogger(__name__)

SINGLE_ATOM = SpinQuantumNumber(1)
CURRENT_FLOOR = 1e-30

JValue = Union[SpinQuantumNumber, int, float, str]


def _rates_of(source: Union[MachineConfig, SidebandRates]) -> SidebandRates:
    return source.rates if isinstance(source, MachineConfig) else source


def effective_boltzmann(source: Union[MachineConfig, SidebandRates]) -> EffectiveTemperature:
    """
    Condição global de balanço detalhado: razão entre a absorção total e
    a emissão total somadas sobre todos os canais (i, q)

    Args:
        source: MachineConfig ou taxas já montadas

    Returns:
        EffectiveTemperature
    """
    rates = _rates_of(source)
    emission = rates.total_emission
    if emission <= 0:
        raise NoCouplingError("Nenhum canal com taxa não nula; β_eff indefinido")
    factor = rates.total_absorption / emission
    eff = EffectiveTemperature.from_boltzmann(factor)
    logger.debug(f"β_eff: fator={factor:.6g}, x_eff={eff.x_eff:.6g} ({len(rates)} canais)")
    return eff


def _block_log_weights(j: SpinQuantumNumber, x_eff: float) -> np.ndarray:
    p = np.arange(j.dim, dtype=float)
    log_w = -p * x_eff
    return log_w - log_w.max()


def block_gibbs_populations(j: JValue, x_eff: float) -> np.ndarray:
    """Populações p = 0..2j do estado exp(-x_eff S_z)/Z do bloco"""
    j = SpinQuantumNumber.from_value(j)
    weights = np.exp(_block_log_weights(j, x_eff))
    return weights / weights.sum()


def amplification(j: JValue, x_eff: float) -> float:
    """
    Fator de amplificação F(j) = ⟨S_- S_+⟩ no estado tipo Gibbs do bloco

    Args:
        j: spin do bloco
        x_eff: β_eff ħω0 (>= 0)

    Returns:
        F(j); F(0) = 0
    """
    j = SpinQuantumNumber.from_value(j)
    if x_eff < 0:
        raise InvalidArgumentError(f"x_eff deve ser >= 0, recebido {x_eff}")
    if j.twice_j == 0:
        return 0.0
    populations = block_gibbs_populations(j, x_eff)
    p = np.arange(j.twice_j, dtype=float)
    return float(np.dot(populations[:-1], (p + 1.0) * (j.twice_j - p)))


def _raw_currents(rates: SidebandRates, eff: EffectiveTemperature, factor: float) -> Tuple[float, float]:
    # 𝒥_i = F Σ_q ω_q P G (e^{-β_i ω_q} - e^{-x_eff}), com P G = 2 x emissão
    totals = {"cold": 0.0, "hot": 0.0}
    for channel in rates:
        bracket = channel.absorption - channel.emission * eff.boltzmann_factor
        totals[channel.label] += 2.0 * channel.frequency * bracket
    return factor * totals["cold"], factor * totals["hot"]


def classify_mode(currents: EnergyCurrents, scale_epsilon: Optional[float] = None,
                  floor: float = CURRENT_FLOOR) -> str:
    """
    Modo de operação pelos sinais de 𝒥_c, 𝒥_h e 𝒫

    Args:
        currents: correntes (j_cold, j_hot, power)
        scale_epsilon: banda morta relativa à maior corrente
        floor: escala absoluta mínima

    Returns:
        engine, refrigerator, heat_distributor ou idle
    """
    scale_epsilon = get_settings().idle_epsilon if scale_epsilon is None else scale_epsilon
    if not scale_epsilon > 0:
        raise InvalidArgumentError(f"scale_epsilon deve ser positivo, recebido {scale_epsilon}")
    jc, jh, power = currents.j_cold, currents.j_hot, currents.power
    eps = scale_epsilon * max(abs(jc), abs(jh), abs(power), floor)

    if power < -eps and jh > eps and jc < -eps:
        return "engine"
    if power > eps and jc > eps and jh < -eps:
        return "refrigerator"
    if power > eps and jc < -eps and jh < -eps:
        return "heat_distributor"
    return "idle"


def efficiency(currents: EnergyCurrents) -> Optional[float]:
    """η = -𝒫/𝒥_h no modo motor; None nos demais modos"""
    if currents.mode != "engine" or currents.j_hot == 0:
        return None
    return -currents.power / currents.j_hot


def build_currents(j_cold: float, j_hot: float, scale_epsilon: Optional[float] = None,
                   floor: float = CURRENT_FLOOR) -> EnergyCurrents:
    """Completa 𝒫, modo e eficiência a partir dos dois fluxos de calor"""
    draft = EnergyCurrents(float(j_cold), float(j_hot), -(float(j_cold) + float(j_hot)))
    mode = classify_mode(draft, scale_epsilon, floor)
    staged = EnergyCurrents(draft.j_cold, draft.j_hot, draft.power, None, mode)
    return EnergyCurrents(draft.j_cold, draft.j_hot, draft.power, efficiency(staged), mode)


def subspace_currents(j: JValue, config: MachineConfig,
                      eff: Optional[EffectiveTemperature] = None) -> EnergyCurrents:
    """
    Correntes estacionárias de um único bloco de spin j

    Args:
        j: spin do bloco
        config: configuração da máquina
        eff: temperatura efetiva (calculada da config se omitida)

    Returns:
        EnergyCurrents do bloco
    """
    eff = effective_boltzmann(config) if eff is None else eff
    factor = amplification(j, eff.x_eff)
    return build_currents(*_raw_currents(config.rates, eff, factor))


def total_currents(config: MachineConfig,
                   eff: Optional[EffectiveTemperature] = None) -> EnergyCurrents:
    """
    Soma Σ_j ⟨Π_j⟩ 𝒥(j) sobre os subespaços ocupados do estado inicial

    Args:
        config: configuração com subspace_weights

    Returns:
        EnergyCurrents totais
    """
    eff = effective_boltzmann(config) if eff is None else eff
    factor = sum(weight * amplification(j, eff.x_eff) for j, weight in config.subspace_weights.items())
    currents = build_currents(*_raw_currents(config.rates, eff, factor))
    logger.debug(f"Correntes totais N={config.n_atoms}: {currents.to_dict()}")
    return currents


def individual_currents(config: MachineConfig,
                        eff: Optional[EffectiveTemperature] = None) -> EnergyCurrents:
    """N átomos independentes: N x correntes de j = 1/2"""
    eff = effective_boltzmann(config) if eff is None else eff
    factor = config.n_atoms * amplification(SINGLE_ATOM, eff.x_eff)
    return build_currents(*_raw_currents(config.rates, eff, factor))


def collective_currents(config: MachineConfig,
                        eff: Optional[EffectiveTemperature] = None) -> EnergyCurrents:
    """Estado inicial totalmente simétrico: correntes do bloco j = N/2"""
    return subspace_currents(SpinQuantumNumber.maximal(config.n_atoms), config, eff)


def power_ratio(n_atoms: int, x_eff: float) -> float:
    """
    Razão 𝒫_coll/𝒫_ind = F(N/2)/(N F(1/2)), igual para as duas correntes de calor

    Args:
        n_atoms: número de átomos (>= 1)
        x_eff: β_eff ħω0

    Returns:
        Fator de ganho coletivo
    """
    if not isinstance(n_atoms, (int, np.integer)) or n_atoms < 1:
        raise InvalidArgumentError(f"n_atoms deve ser inteiro positivo, recebido {n_atoms!r}")
    single = amplification(SINGLE_ATOM, x_eff)
    return amplification(SpinQuantumNumber.maximal(int(n_atoms)), x_eff) / (n_atoms * single)


def boost_ratio(config: MachineConfig) -> float:
    return power_ratio(config.n_atoms, effective_boltzmann(config).x_eff)


def boost_limits(n_atoms: int) -> Tuple[float, float]:
    """Limites de baixa e alta temperatura: (1, (N+2)/3)"""
    if not isinstance(n_atoms, (int, np.integer)) or n_atoms < 1:
        raise InvalidArgumentError(f"n_atoms deve ser inteiro positivo, recebido {n_atoms!r}")
    return 1.0, (n_atoms + 2) / 3


def saturation_boost(x_eff: float) -> float:
    """
    Ganho de saturação N -> ∞: coth(x_eff/2)

    Args:
        x_eff: β_eff ħω0 (> 0)

    Returns:
        coth(x_eff/2)
    """
    if x_eff == 0:
        raise DivergenceError("coth(x/2) diverge em x_eff = 0 (assíntota 2/x)", {"asymptote": "2/x"})
    if x_eff < 0:
        raise InvalidArgumentError(f"x_eff deve ser positivo, recebido {x_eff}")
    return float(1.0 / np.tanh(0.5 * x_eff))


def critical_hot_temperature(beta_c: float, omega0: float = 1.0, Omega: float = 0.0) -> float:
    """
    Temperatura inversa do banho quente em que as correntes se anulam
    na máquina de modulação senoidal com banhos espectralmente separados

    Args:
        beta_c: temperatura inversa do banho frio
        omega0: frequência nua
        Omega: frequência de acionamento (< omega0)

    Returns:
        β_h^crit = β_c (ω0 - Ω)/(ω0 + Ω)
    """
    if Omega < 0:
        raise InvalidArgumentError(f"Omega deve ser >= 0, recebido {Omega}")
    if Omega >= omega0:
        raise InvalidConfigurationError(
            f"Omega = {Omega} >= omega0 = {omega0}: banda lateral fria com frequência não positiva"
        )
    return beta_c * (omega0 - Omega) / (omega0 + Omega)
