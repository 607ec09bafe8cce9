"""
Banhos térmicos e taxas por banda lateral
=========================================

Unidades: ħ = 1, frequências em unidades de ω0 e temperaturas como
x = βħω0. Cada banho i contribui, em cada banda lateral q, com um canal
de emissão ½P(q)G_i(ω0+qΩ) e um de absorção multiplicado por
exp(-β_i(ω0+qΩ)).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ...core.errors import InvalidArgumentError, InvalidConfigurationError, OutOfRangeError
from ...core.settings import get_settings
from ..floquet_modulation import FloquetWeights


logger = logging.getLogger(__name__)

BATH_LABELS = ("cold", "hot")


def planck_occupation(beta: float, omega: float) -> float:
    """
    Ocupação térmica n̄ = 1/(exp(βħω) - 1) do modo do banho

    Args:
        beta: temperatura inversa (> 0)
        omega: frequência angular (> 0)

    Returns:
        n̄ (>= 0)
    """
    if not omega > 0:
        raise InvalidArgumentError(f"Ocupação indefinida para omega <= 0 (omega={omega})")
    if not beta > 0:
        raise InvalidArgumentError(f"beta deve ser positivo, recebido {beta}")
    with np.errstate(over="ignore"):
        return float(1.0 / np.expm1(beta * omega))


@dataclass(frozen=True)
class FlatSpectrum:
    """Taxa γ0 constante em [omega_min, omega_max]; G = γ0(n̄+1) se bosonic"""
    gamma0: float = 1.0
    omega_min: float = 0.0
    omega_max: float = float("inf")
    bosonic: bool = True
    kind: str = field(default="flat", init=False)

    def evaluate(self, omega: float, bath: "BathSpec") -> float:
        if not self.omega_min <= omega <= self.omega_max:
            return 0.0
        if self.bosonic:
            return self.gamma0 * (planck_occupation(bath.beta, omega) + 1.0)
        return self.gamma0


@dataclass(frozen=True)
class SeparatedSpectrum:
    """
    Degrau espectral que separa os banhos: o frio não acopla para ω >= ω0
    e o quente não acopla para ω <= ω0 (ω = ω0 é nulo para ambos)
    """
    level: float = 1.0
    bosonic: bool = False
    kind: str = field(default="spectrally_separated", init=False)

    def evaluate(self, omega: float, bath: "BathSpec") -> float:
        if bath.label == "cold" and omega >= bath.omega0:
            return 0.0
        if bath.label == "hot" and omega <= bath.omega0:
            return 0.0
        if self.bosonic:
            return self.level * (planck_occupation(bath.beta, omega) + 1.0)
        return self.level


@dataclass(frozen=True)
class TabulatedSpectrum:
    """G(ω) interpolado linearmente de uma tabela (ω/ω0, G)"""
    frequencies: Tuple[float, ...]
    values: Tuple[float, ...]
    kind: str = field(default="tabulated", init=False)

    def __post_init__(self):
        if len(self.frequencies) < 2 or len(self.frequencies) != len(self.values):
            raise InvalidArgumentError("Tabela espectral precisa de colunas ω e G do mesmo tamanho (>= 2)")
        if np.any(np.diff(self.frequencies) <= 0):
            raise InvalidArgumentError("Frequências da tabela espectral devem ser crescentes")
        if min(self.values) < 0:
            raise InvalidArgumentError("G(ω) tabulado deve ser não negativo")

    @classmethod
    def from_csv(cls, path: str) -> "TabulatedSpectrum":
        frame = pd.read_csv(path, header=None, comment="#")
        frame = frame.apply(pd.to_numeric, errors="coerce").dropna()
        if frame.shape[1] < 2:
            raise InvalidArgumentError(f"CSV espectral precisa de duas colunas: {path}")
        return cls(tuple(frame.iloc[:, 0].tolist()), tuple(frame.iloc[:, 1].tolist()))

    def evaluate(self, omega: float, bath: "BathSpec") -> float:
        scaled = omega / bath.omega0
        if not self.frequencies[0] <= scaled <= self.frequencies[-1]:
            raise OutOfRangeError(
                f"ω/ω0 = {scaled:.6g} fora da tabela espectral do banho {bath.label}",
                {"range": [self.frequencies[0], self.frequencies[-1]]},
            )
        return float(np.interp(scaled, self.frequencies, self.values))


SpectralModel = Union[FlatSpectrum, SeparatedSpectrum, TabulatedSpectrum]


@dataclass(frozen=True)
class BathSpec:
    """Banho térmico: rótulo, x = βħω0 e modelo espectral"""
    label: str
    x: float
    spectral_model: SpectralModel = field(default_factory=FlatSpectrum)
    omega0: float = 1.0

    def __post_init__(self):
        if self.label not in BATH_LABELS:
            raise InvalidArgumentError(f"Rótulo de banho inválido: {self.label!r}", {"allowed": list(BATH_LABELS)})
        if not self.x > 0 or not np.isfinite(self.x):
            raise InvalidArgumentError(f"x = βħω0 deve ser positivo e finito, recebido {self.x}")
        if not self.omega0 > 0:
            raise InvalidArgumentError(f"omega0 deve ser positivo, recebido {self.omega0}")

    @classmethod
    def from_boltzmann(cls, label: str, factor: float,
                       spectral_model: Optional[SpectralModel] = None,
                       omega0: float = 1.0) -> "BathSpec":
        """Constrói o banho a partir do fator de Boltzmann exp(-βħω0)"""
        if not 0 < factor < 1:
            raise InvalidArgumentError(f"Fator de Boltzmann deve estar em (0, 1), recebido {factor}")
        return cls(label=label, x=-float(np.log(factor)),
                   spectral_model=spectral_model or FlatSpectrum(), omega0=omega0)

    @property
    def beta(self) -> float:
        return self.x / self.omega0

    @property
    def boltzmann(self) -> float:
        return float(np.exp(-self.x))

    def describe(self) -> Dict[str, object]:
        return {"label": self.label, "x": self.x, "boltzmann": self.boltzmann,
                "spectral_model": self.spectral_model.kind}


def bath_spectrum(spec: BathSpec, omega: float) -> float:
    """
    Resposta espectral G(ω) do banho

    Args:
        spec: especificação do banho
        omega: frequência (> 0)

    Returns:
        G(ω) >= 0
    """
    if not omega > 0:
        raise InvalidArgumentError(f"omega deve ser positivo, recebido {omega}")
    return spec.spectral_model.evaluate(omega, spec)


@dataclass(frozen=True)
class SidebandChannel:
    """Par de taxas emissão/absorção do banho `label` na banda lateral q"""
    label: str
    q: int
    frequency: float
    emission: float
    absorption: float

    @property
    def boltzmann(self) -> float:
        return self.absorption / self.emission


@dataclass(frozen=True)
class SidebandRates:
    """Canais ativos (banho, q) em ordem determinística: frio, quente; q crescente"""
    channels: Tuple[SidebandChannel, ...]
    omega0: float = 1.0
    Omega: float = 1.0

    def __iter__(self) -> Iterator[SidebandChannel]:
        return iter(self.channels)

    def __len__(self) -> int:
        return len(self.channels)

    def _find(self, label: str, q: int) -> Optional[SidebandChannel]:
        for channel in self.channels:
            if channel.label == label and channel.q == q:
                return channel
        return None

    def emission(self, label: str, q: int) -> float:
        channel = self._find(label, q)
        return channel.emission if channel else 0.0

    def absorption(self, label: str, q: int) -> float:
        channel = self._find(label, q)
        return channel.absorption if channel else 0.0

    def for_bath(self, label: str) -> Tuple[SidebandChannel, ...]:
        return tuple(c for c in self.channels if c.label == label)

    @property
    def total_emission(self) -> float:
        return float(sum(c.emission for c in self.channels))

    @property
    def total_absorption(self) -> float:
        return float(sum(c.absorption for c in self.channels))

    @property
    def max_rate(self) -> float:
        return max((c.emission for c in self.channels), default=0.0)

    def active(self) -> Tuple[Tuple[str, int], ...]:
        return tuple((c.label, c.q) for c in self.channels)


def sideband_rates(baths: Sequence[BathSpec], weights: FloquetWeights,
                   omega0: float = 1.0, Omega: float = 1.0,
                   tolerance: Optional[float] = None) -> SidebandRates:
    """
    Monta as taxas de emissão e absorção de cada canal (banho, q)

    Args:
        baths: banhos (frio e quente, ou um só)
        weights: pesos P(q)
        omega0: frequência nua
        Omega: frequência de acionamento
        tolerance: pesos abaixo deste valor são omitidos

    Returns:
        SidebandRates com os canais de taxa não nula
    """
    tolerance = get_settings().truncation_tol if tolerance is None else tolerance
    channels = []
    for bath in sorted(baths, key=lambda b: BATH_LABELS.index(b.label)):
        for q, weight in weights.items():
            if weight < tolerance:
                continue
            frequency = omega0 + q * Omega
            if frequency <= 0:
                raise InvalidConfigurationError(
                    f"Banda lateral q={q} com frequência não positiva ({frequency:.4g}); reduza q_max ou Omega",
                    {"q": q, "frequency": frequency, "weight": weight},
                )
            coupling = bath_spectrum(bath, frequency)
            if coupling <= 0:
                continue
            emission = 0.5 * weight * coupling
            absorption = emission * float(np.exp(-bath.beta * frequency))
            channels.append(SidebandChannel(bath.label, q, frequency, emission, absorption))

    logger.debug(f"{len(channels)} canais ativos: {[(c.label, c.q) for c in channels]}")
    return SidebandRates(channels=tuple(channels), omega0=omega0, Omega=Omega)
