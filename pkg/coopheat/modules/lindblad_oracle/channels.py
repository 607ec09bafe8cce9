"""
Canais de Lindblad das diferentes representações da máquina
===========================================================

Convenção do dissipador: rate * (2AρA† - A†Aρ - ρA†A). Cada canal de
banho (i, q) contribui com emissão (operador de abaixamento) e absorção
(operador de levantamento).
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from ...core.errors import InvalidArgumentError, InvalidConfigurationError
from ..engine_core import effective_boltzmann
from ..spin_algebra import (
    SIGMA_MINUS,
    SIGMA_Z,
    SpinQuantumNumber,
    collective_operator,
    local_operator,
    lowering_operator,
    z_operator,
)
from ..thermal_baths import SidebandRates


logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
EIGEN_TOL = 1e-12

# (A, peso) com ℒ_{i,q} = e_iq Σ peso D[A] + a_iq Σ peso D[A†]
BathJumps = List[Tuple[np.ndarray, float]]


@dataclass(frozen=True, eq=False)
class LindbladChannel:
    """Operador de salto com taxa e etiqueta (origem, índice, processo)"""
    jump: np.ndarray
    rate: float
    tag: Tuple[object, ...] = ()

    def __post_init__(self):
        if self.rate < 0:
            raise InvalidArgumentError(f"Taxa de canal negativa: {self.rate}", {"tag": list(self.tag)})
        object.__setattr__(self, "jump", np.asarray(self.jump, dtype=complex))


@dataclass(frozen=True)
class FullCollective:
    """Espaço completo de N átomos com operadores coletivos J_±"""
    n_atoms: int

    @property
    def dim(self) -> int:
        return 2 ** self.n_atoms

    def z_operator(self) -> np.ndarray:
        return collective_operator(self.n_atoms, "z")

    def bath_jumps(self) -> BathJumps:
        return [(collective_operator(self.n_atoms, "minus"), 1.0)]


@dataclass(frozen=True)
class SingleBlock:
    """Um único bloco de spin j (dimensão 2j+1)"""
    j: SpinQuantumNumber

    def __post_init__(self):
        object.__setattr__(self, "j", SpinQuantumNumber.from_value(self.j))

    @property
    def dim(self) -> int:
        return self.j.dim

    def z_operator(self) -> np.ndarray:
        return z_operator(self.j)

    def bath_jumps(self) -> BathJumps:
        return [(lowering_operator(self.j), 1.0)]


@dataclass(frozen=True, eq=False)
class CrossRate:
    """
    Decaimento com taxas cruzadas c_ij (c_ij multiplica σ_-^j ρ σ_+^i).
    O gerador usa o fator de absorção global e^{-x_eff}.
    """
    c: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise InvalidConfigurationError(f"Matriz c deve ser quadrada, recebido shape {c.shape}")
        if np.max(np.abs(c - c.conj().T)) > HERMITIAN_TOL * max(1.0, np.max(np.abs(c))):
            raise InvalidConfigurationError("Matriz de taxas cruzadas não é hermitiana")
        object.__setattr__(self, "c", c)
        lowest = float(linalg.eigvalsh(c)[0])
        if lowest < -EIGEN_TOL * max(1.0, np.max(np.abs(c))):
            raise InvalidConfigurationError(
                f"Matriz de taxas cruzadas não é semidefinida positiva (autovalor {lowest:.3e})"
            )

    @property
    def n_atoms(self) -> int:
        return self.c.shape[0]

    @property
    def dim(self) -> int:
        return 2 ** self.n_atoms

    def z_operator(self) -> np.ndarray:
        return collective_operator(self.n_atoms, "z")

    def eigenchannels(self) -> List[Tuple[float, np.ndarray]]:
        """Pares (λ_k, A_k = Σ_i u_ik* σ_-^i) dos autovalores não nulos de c"""
        values, vectors = linalg.eigh(self.c)
        scale = max(float(np.max(np.abs(values))), 1e-300)
        locals_ = [local_operator(self.n_atoms, i, SIGMA_MINUS) for i in range(self.n_atoms)]
        result = []
        for value, vector in zip(values, vectors.T):
            if value <= EIGEN_TOL * scale:
                continue
            jump = sum(np.conj(u) * op for u, op in zip(vector, locals_))
            result.append((float(value), jump))
        return result

    def bath_jumps(self) -> BathJumps:
        # o peso de cada autocanal é λ_k relativo à emissão total dos banhos
        return [(jump, value) for value, jump in self.eigenchannels()]


@dataclass(frozen=True)
class WithDephasing:
    """Representação base com defasagem local σ_z^k de taxa γ_d"""
    base: Union[FullCollective, CrossRate]
    gamma_d: float

    def __post_init__(self):
        if self.gamma_d < 0:
            raise InvalidArgumentError(f"gamma_d deve ser >= 0, recebido {self.gamma_d}")
        if not isinstance(self.base, (FullCollective, CrossRate)):
            raise InvalidConfigurationError(
                "Defasagem local requer representação com átomos resolvidos (full_collective ou cross_rate)"
            )

    @property
    def n_atoms(self) -> int:
        return self.base.n_atoms

    @property
    def dim(self) -> int:
        return self.base.dim

    def z_operator(self) -> np.ndarray:
        return self.base.z_operator()

    def bath_jumps(self) -> BathJumps:
        return self.base.bath_jumps()


Representation = Union[FullCollective, SingleBlock, CrossRate, WithDephasing]


def _bath_channels(representation: Representation, rates: SidebandRates) -> List[LindbladChannel]:
    channels = []
    for jump, weight in representation.bath_jumps():
        for channel in rates:
            channels.append(LindbladChannel(jump, weight * channel.emission,
                                            (channel.label, channel.q, "emission")))
            channels.append(LindbladChannel(jump.conj().T, weight * channel.absorption,
                                            (channel.label, channel.q, "absorption")))
    return channels


def _cross_channels(representation: CrossRate, x_eff: float) -> List[LindbladChannel]:
    boltzmann = float(np.exp(-x_eff))
    channels = []
    for k, (value, jump) in enumerate(representation.eigenchannels()):
        channels.append(LindbladChannel(jump, value, ("cross", k, "emission")))
        channels.append(LindbladChannel(jump.conj().T, value * boltzmann, ("cross", k, "absorption")))
    return channels


def build_machine_channels(representation: Representation, rates: SidebandRates,
                           x_eff: Optional[float] = None) -> List[LindbladChannel]:
    """
    Monta os canais de Lindblad da máquina

    Args:
        representation: FullCollective, SingleBlock, CrossRate ou WithDephasing
        rates: taxas por banda lateral
        x_eff: β_eff ħω0 (usado pela forma com taxas cruzadas)

    Returns:
        Lista de LindbladChannel
    """
    base = representation.base if isinstance(representation, WithDephasing) else representation

    if isinstance(base, CrossRate):
        x_eff = effective_boltzmann(rates).x_eff if x_eff is None else x_eff
        channels = _cross_channels(base, x_eff)
    else:
        channels = _bath_channels(base, rates)

    if isinstance(representation, WithDephasing) and representation.gamma_d > 0:
        for site in range(representation.n_atoms):
            channels.append(LindbladChannel(local_operator(representation.n_atoms, site, SIGMA_Z),
                                            representation.gamma_d, ("dephasing", site, "local")))

    logger.debug(f"{len(channels)} canais para {type(representation).__name__} (dim={representation.dim})")
    return channels


def bath_sub_liouvillian_jumps(representation: Representation, rates: SidebandRates) -> BathJumps:
    """
    Saltos que compõem cada sub-Liouvilliano de banho ℒ_{i,q}; para taxas
    cruzadas os pesos λ_k são normalizados pela emissão total dos banhos
    """
    jumps = representation.bath_jumps()
    base = representation.base if isinstance(representation, WithDephasing) else representation
    if isinstance(base, CrossRate):
        total = rates.total_emission
        if total <= 0:
            raise InvalidConfigurationError("Taxas cruzadas exigem ao menos um canal de banho ativo")
        jumps = [(jump, weight / total) for jump, weight in jumps]
    return jumps


def cross_rate_symmetry(c: np.ndarray) -> Dict[str, object]:
    """
    Análise espectral da matriz de taxas cruzadas

    Args:
        c: matriz N x N hermitiana semidefinida positiva

    Returns:
        Dicionário com autovalores não nulos e a classificação
        collective (um autovalor), partial (alguns) ou broken (todos)
    """
    representation = CrossRate(c)
    values = linalg.eigvalsh(representation.c)
    scale = max(float(np.max(np.abs(values))), 1e-300)
    nonzero = [float(v) for v in values[::-1] if v > EIGEN_TOL * scale]

    if len(nonzero) == 0:
        classification = "uncoupled"
    elif len(nonzero) == 1 and representation.n_atoms > 1:
        classification = "collective"
    elif len(nonzero) == representation.n_atoms:
        classification = "broken"
    else:
        classification = "partial"

    return {
        "n_atoms": representation.n_atoms,
        "nonzero_eigenvalues": nonzero,
        "classification": classification,
    }
