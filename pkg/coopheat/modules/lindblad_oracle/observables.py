"""
Correntes de energia a partir do estado e experimentos do oráculo
"""

import logging
from dataclasses import dataclass, replace
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ...core.errors import InvalidArgumentError
from ...core.settings import get_settings
from ..engine_core import EnergyCurrents, build_currents
from ..floquet_modulation import FloquetWeights
from ..spin_algebra import collective_operator
from ..thermal_baths import BathSpec, FlatSpectrum, SidebandRates, sideband_rates
from .channels import (
    FullCollective,
    Representation,
    WithDephasing,
    bath_sub_liouvillian_jumps,
    build_machine_channels,
)
from .solver import OracleResult, PreparedGenerator, integrate, steady_state
from .states import density_matrix, excited_state


logger = logging.getLogger(__name__)

Jumps = Union[np.ndarray, Sequence[Tuple[np.ndarray, float]]]


def _dissipator_action(jump: np.ndarray, rho: np.ndarray) -> np.ndarray:
    number = jump.conj().T @ jump
    return 2.0 * jump @ rho @ jump.conj().T - number @ rho - rho @ number


def currents_from_state(rho_ss, rates: SidebandRates, z_op: np.ndarray, lowering: Jumps,
                        omega0: Optional[float] = None, Omega: Optional[float] = None,
                        floor: Optional[float] = None) -> EnergyCurrents:
    """
    𝒥_i = Σ_q ħ(ω0+qΩ) Tr[(ℒ_{i,q} ρ) J_z] aplicando cada sub-Liouvilliano

    Args:
        rho_ss: estado estacionário
        rates: taxas por banda lateral
        z_op: J_z na mesma base do estado
        lowering: J_- (ou lista de pares (A_k, peso) para taxas cruzadas)
        omega0, Omega: frequências (padrão: as das taxas)
        floor: escala absoluta da banda morta de classificação

    Returns:
        EnergyCurrents
    """
    rho = density_matrix(rho_ss).entries
    omega0 = rates.omega0 if omega0 is None else omega0
    Omega = rates.Omega if Omega is None else Omega
    jumps = [(np.asarray(lowering), 1.0)] if isinstance(lowering, np.ndarray) else list(lowering)

    emission_flow = 0.0
    absorption_flow = 0.0
    for jump, weight in jumps:
        emission_flow += weight * np.real(np.trace(_dissipator_action(jump, rho) @ z_op))
        absorption_flow += weight * np.real(np.trace(_dissipator_action(jump.conj().T, rho) @ z_op))

    totals = {"cold": 0.0, "hot": 0.0}
    for channel in rates:
        frequency = omega0 + channel.q * Omega
        totals[channel.label] += frequency * (channel.emission * emission_flow
                                              + channel.absorption * absorption_flow)

    floor = get_settings().oracle_tol * max(rates.max_rate, 1e-300) if floor is None else floor
    return build_currents(totals["cold"], totals["hot"], floor=floor)


def run_oracle(representation: Representation, rates: SidebandRates, rho0,
               x_eff: Optional[float] = None, method: str = "time_integration",
               dt: Optional[float] = None, tol: Optional[float] = None,
               max_steps: Optional[int] = None) -> OracleResult:
    """
    Canais + estado estacionário + correntes para uma representação

    Returns:
        OracleResult com correntes preenchidas
    """
    channels = build_machine_channels(representation, rates, x_eff)
    result = steady_state(rho0, channels, method=method, dt=dt, tol=tol, max_steps=max_steps)
    currents = currents_from_state(result.steady_state, rates, representation.z_operator(),
                                   bath_sub_liouvillian_jumps(representation, rates))
    logger.info(
        f"Oráculo {type(representation).__name__}: método={result.method}, passos={result.steps}, "
        f"resíduo={result.final_residual:.2e}"
    )
    return replace(result, currents=currents)


def dephasing_oracle(n_atoms: int, rates: SidebandRates, gamma_d: float, rho0=None,
                     **solver_options) -> OracleResult:
    """Oráculo com defasagem local; rho0 padrão |e...e⟩"""
    rho0 = excited_state(n_atoms) if rho0 is None else rho0
    representation = WithDephasing(FullCollective(n_atoms), gamma_d)
    return run_oracle(representation, rates, rho0, **solver_options)


def dephasing_currents(n_atoms: int, rates: SidebandRates, gamma_d: float, rho0=None,
                       **solver_options) -> EnergyCurrents:
    """
    Correntes estacionárias com defasagem: iguais a N x as de um átomo
    para qualquer estado inicial quando γ_d > 0
    """
    if gamma_d <= 0:
        logger.info("gamma_d = 0: sem defasagem, resultado coletivo")
    return dephasing_oracle(n_atoms, rates, gamma_d, rho0, **solver_options).currents


@dataclass(frozen=True, eq=False)
class TransientResult:
    """Série temporal do decaimento superradiante"""
    n_atoms: int
    times: np.ndarray
    jz: np.ndarray
    emission_rate: np.ndarray
    residual: np.ndarray
    dt: float

    @property
    def initial_rate(self) -> float:
        return float(self.emission_rate[0])

    @property
    def peak_index(self) -> int:
        return int(np.argmax(self.emission_rate))

    @property
    def peak_time(self) -> float:
        return float(self.times[self.peak_index])

    @property
    def peak_rate(self) -> float:
        return float(self.emission_rate[self.peak_index])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t": self.times,
            "jz": self.jz,
            "emission_rate": self.emission_rate,
            "residual": self.residual,
        })

    def summary(self) -> Dict[str, float]:
        return {
            "n_atoms": self.n_atoms,
            "initial_rate": self.initial_rate,
            "peak_rate": self.peak_rate,
            "peak_time": self.peak_time,
            "peak_over_initial": self.peak_rate / self.initial_rate,
        }


def zero_temperature_rates(gamma0: float = 1.0) -> SidebandRates:
    """Banho frio sem ocupação térmica, sem modulação: um canal de emissão ½γ0"""
    cold = BathSpec("cold", 700.0, FlatSpectrum(gamma0=gamma0, bosonic=False))
    return sideband_rates((cold,), FloquetWeights.unmodulated(), tolerance=0.0)


def superradiant_transient(n_atoms: int, t_final: Optional[float] = None,
                           dt: Optional[float] = None, gamma0: float = 1.0,
                           record_every: int = 1) -> TransientResult:
    """
    Decaimento de |e...e⟩ num banho a temperatura zero

    Args:
        n_atoms: número de átomos (<= oracle_max)
        t_final: tempo final (padrão 10/γ0)
        dt: passo do RK4
        gamma0: taxa do banho
        record_every: gravação a cada tantos passos

    Returns:
        TransientResult com ⟨J_z⟩(t) e a taxa de emissão -d⟨J_z⟩/dt
    """
    if gamma0 <= 0:
        raise InvalidArgumentError(f"gamma0 deve ser positivo, recebido {gamma0}")
    t_final = 10.0 / gamma0 if t_final is None else t_final
    rates = zero_temperature_rates(gamma0)
    representation = FullCollective(n_atoms)
    channels = [c for c in build_machine_channels(representation, rates) if c.tag[2] == "emission"]
    generator = PreparedGenerator(channels)
    dt = generator.default_dt() if dt is None else dt

    times, states = integrate(excited_state(n_atoms), channels, t_final, dt, record_every)
    jz_op = collective_operator(n_atoms, "z")
    jz = np.array([np.real(np.trace(rho @ jz_op)) for rho in states])
    emission = np.array([-np.real(np.trace(generator(rho) @ jz_op)) for rho in states])
    residual = np.array([generator.residual(rho) for rho in states])

    result = TransientResult(n_atoms, times, jz, emission, residual, dt)
    logger.info(f"Transiente N={n_atoms}: pico {result.peak_rate:.4g} em t={result.peak_time:.4g}")
    return result
