"""
Configuração da máquina térmica e tipos de resultado
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from ...core.errors import InvalidArgumentError, InvalidConfigurationError
from ..floquet_modulation import FloquetWeights, ModulationSpec
from ..spin_algebra import SpinQuantumNumber
from ..thermal_baths import BATH_LABELS, BathSpec, SidebandRates, sideband_rates


logger = logging.getLogger(__name__)

SUBSPACE_WEIGHT_TOL = 1e-10

MODES = ("engine", "refrigerator", "heat_distributor", "idle")


def normalize_subspace_weights(n_atoms: int,
                               weights: Optional[Mapping[object, float]]) -> Dict[SpinQuantumNumber, float]:
    """
    Converte e valida o mapa j -> ⟨Π_j⟩

    Args:
        n_atoms: número de átomos
        weights: chaves j (SpinQuantumNumber, "3/2", 1.5) e pesos; None = {N/2: 1}

    Returns:
        Dicionário ordenado por j decrescente
    """
    if weights is None:
        return {SpinQuantumNumber.maximal(n_atoms): 1.0}

    parsed: Dict[SpinQuantumNumber, float] = {}
    for key, value in weights.items():
        j = SpinQuantumNumber.from_value(key)
        if j.twice_j > n_atoms or (n_atoms - j.twice_j) % 2:
            raise InvalidConfigurationError(
                f"j = {j} não aparece na decomposição de N={n_atoms}",
                {"j": str(j), "n_atoms": n_atoms},
            )
        if value < 0:
            raise InvalidConfigurationError(f"Peso de subespaço negativo para j = {j}: {value}")
        parsed[j] = parsed.get(j, 0.0) + float(value)

    total = sum(parsed.values())
    if abs(total - 1.0) > SUBSPACE_WEIGHT_TOL:
        raise InvalidConfigurationError(
            f"Pesos de subespaço somam {total:.12g}, esperado 1",
            {"weights": {str(j): w for j, w in parsed.items()}},
        )
    return dict(sorted(parsed.items(), reverse=True))


@dataclass(frozen=True)
class MachineConfig:
    """
    Máquina térmica de N átomos: modulação, banhos, pesos P(q) e pesos dos
    subespaços de spin do estado inicial
    """
    baths: Tuple[BathSpec, ...]
    modulation: ModulationSpec = field(default_factory=ModulationSpec)
    weights: FloquetWeights = field(default_factory=FloquetWeights.unmodulated)
    n_atoms: int = 1
    subspace_weights: Optional[Mapping[object, float]] = None
    truncation_tol: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.n_atoms, int) or self.n_atoms < 1:
            raise InvalidArgumentError(f"n_atoms deve ser inteiro positivo, recebido {self.n_atoms!r}")
        baths = tuple(self.baths)
        if not 1 <= len(baths) <= 2:
            raise InvalidConfigurationError(f"Esperados um ou dois banhos, recebidos {len(baths)}")
        labels = [b.label for b in baths]
        if len(set(labels)) != len(labels):
            raise InvalidConfigurationError(f"Banhos com rótulos repetidos: {labels}")
        for bath in baths:
            if not np.isclose(bath.omega0, self.modulation.omega0):
                raise InvalidConfigurationError(
                    f"omega0 do banho {bath.label} ({bath.omega0}) difere da modulação ({self.modulation.omega0})"
                )
        object.__setattr__(self, "baths", tuple(sorted(baths, key=lambda b: BATH_LABELS.index(b.label))))
        object.__setattr__(self, "subspace_weights",
                           normalize_subspace_weights(self.n_atoms, self.subspace_weights))

    @property
    def omega0(self) -> float:
        return self.modulation.omega0

    @property
    def Omega(self) -> float:
        return self.modulation.Omega

    def bath(self, label: str) -> Optional[BathSpec]:
        for bath in self.baths:
            if bath.label == label:
                return bath
        return None

    @property
    def cold(self) -> Optional[BathSpec]:
        return self.bath("cold")

    @property
    def hot(self) -> Optional[BathSpec]:
        return self.bath("hot")

    @cached_property
    def rates(self) -> SidebandRates:
        return sideband_rates(self.baths, self.weights, self.omega0, self.Omega, self.truncation_tol)

    def with_hot(self, x_hot: float) -> "MachineConfig":
        """Cópia com outra temperatura do banho quente"""
        baths = tuple(replace(b, x=x_hot) if b.label == "hot" else b for b in self.baths)
        return replace(self, baths=baths)

    def with_atoms(self, n_atoms: int,
                   subspace_weights: Optional[Mapping[object, float]] = None) -> "MachineConfig":
        return replace(self, n_atoms=n_atoms, subspace_weights=subspace_weights)

    def to_dict(self) -> Dict[str, object]:
        return {
            "n_atoms": self.n_atoms,
            "omega0": self.omega0,
            "Omega": self.Omega,
            "modulation": self.modulation.form,
            "g": self.modulation.g,
            "baths": [b.describe() for b in self.baths],
            "weights": self.weights.to_dict(),
            "subspace_weights": {str(j): w for j, w in self.subspace_weights.items()},
        }


@dataclass(frozen=True)
class EffectiveTemperature:
    """β_eff via fator de Boltzmann global e x_eff = β_eff ħω0"""
    boltzmann_factor: float
    x_eff: float

    @classmethod
    def from_boltzmann(cls, factor: float) -> "EffectiveTemperature":
        if not 0 < factor < 1:
            raise InvalidArgumentError(f"Fator de Boltzmann efetivo fora de (0, 1): {factor}")
        return cls(boltzmann_factor=float(factor), x_eff=-float(np.log(factor)))

    @classmethod
    def from_x(cls, x_eff: float) -> "EffectiveTemperature":
        if not x_eff > 0:
            raise InvalidArgumentError(f"x_eff deve ser positivo, recebido {x_eff}")
        return cls(boltzmann_factor=float(np.exp(-x_eff)), x_eff=float(x_eff))


@dataclass(frozen=True)
class EnergyCurrents:
    """
    Correntes estacionárias na convenção: 𝒥_i > 0 é calor entrando nos
    átomos, 𝒫 < 0 é trabalho extraído. power = -(j_cold + j_hot)
    """
    j_cold: float
    j_hot: float
    power: float
    efficiency: Optional[float] = None
    mode: str = "idle"

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.j_cold, self.j_hot, self.power

    def to_dict(self) -> Dict[str, object]:
        return {
            "j_cold": self.j_cold,
            "j_hot": self.j_hot,
            "power": self.power,
            "efficiency": self.efficiency,
            "mode": self.mode,
        }
