"""
Classes base dos comandos do coopheat
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from .errors import InvalidConfigurationError


SCALES = ("linear", "log")
OUTPUT_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class SweepAxis:
    """Eixo de varredura: variável, limites, número de pontos e escala"""
    name: str
    minimum: float
    maximum: float
    points: int = 50
    scale: str = "linear"

    def __post_init__(self):
        if not np.isfinite(self.minimum) or not np.isfinite(self.maximum):
            raise InvalidConfigurationError(f"Limites da varredura de {self.name} devem ser finitos")
        if not self.minimum < self.maximum:
            raise InvalidConfigurationError(
                f"Varredura de {self.name} requer min < max", {"min": self.minimum, "max": self.maximum}
            )
        if self.points < 2:
            raise InvalidConfigurationError(f"Varredura requer ao menos 2 pontos, recebido {self.points}")
        if self.scale not in SCALES:
            raise InvalidConfigurationError(f"Escala desconhecida: {self.scale!r}", {"allowed": list(SCALES)})
        if self.scale == "log" and self.minimum <= 0:
            raise InvalidConfigurationError("Escala log requer min > 0")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.minimum, self.maximum, self.points)
        return np.linspace(self.minimum, self.maximum, self.points)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "min": self.minimum, "max": self.maximum,
                "points": self.points, "scale": self.scale}


@dataclass
class RunConfig:
    """Configuração resolvida de uma execução de comando"""
    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    sweep: Optional[SweepAxis] = None
    output: Optional[str] = None
    output_format: str = "csv"
    jobs: int = 1

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidConfigurationError(
                f"Formato de saída desconhecido: {self.output_format!r}", {"allowed": list(OUTPUT_FORMATS)}
            )
        if self.jobs < 1:
            raise InvalidConfigurationError(f"jobs deve ser >= 1, recebido {self.jobs}")

    def get(self, name: str, default: Any = None) -> Any:
        value = self.params.get(name)
        return default if value is None else value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "params": dict(sorted(self.params.items())),
            "sweep": self.sweep.to_dict() if self.sweep else None,
            "output": self.output,
            "format": self.output_format,
            "jobs": self.jobs,
        }


@dataclass
class SweepTable:
    """
    Tabela de resultados: colunas, linhas reais e metadados.
    Infinitos só são aceitos em `divergent_columns`; valores ausentes (NaN)
    só em `optional_columns`.
    """
    frame: pd.DataFrame
    metadata: Dict[str, Any] = field(default_factory=dict)
    divergent_columns: List[str] = field(default_factory=list)
    optional_columns: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    def __post_init__(self):
        numeric = self.frame.select_dtypes(include=[np.number])
        bad = []
        for column in numeric.columns:
            values = numeric[column].to_numpy(dtype=float)
            if np.isnan(values).any() and column not in self.optional_columns:
                bad.append(column)
            elif np.isinf(values).any() and column not in self.divergent_columns:
                bad.append(column)
        if bad:
            raise InvalidConfigurationError(f"Valores não finitos nas colunas {bad}")

    @classmethod
    def from_rows(cls, rows: List[Dict[str, Any]], metadata: Optional[Dict[str, Any]] = None,
                  **kwargs) -> "SweepTable":
        return cls(pd.DataFrame(rows), metadata or {}, **kwargs)

    @property
    def columns(self) -> List[str]:
        return list(self.frame.columns)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __len__(self) -> int:
        return len(self.frame)


class BaseCommand(ABC):
    """Classe base para todos os subcomandos"""

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        """
        Executa o comando com a configuração resolvida

        Args:
            config: RunConfig do comando
            runner: SimulationRunner (mapeamento paralelo das varreduras)

        Returns:
            SweepTable com os resultados
        """
        pass

    def defaults(self) -> Dict[str, Any]:
        """Valores padrão dos parâmetros do comando"""
        return {}

    def resolve(self, file_params: Dict[str, Any], flag_params: Dict[str, Any]) -> Dict[str, Any]:
        """
        Resolve os parâmetros: padrões do comando, depois o arquivo JSON,
        depois as flags explícitas

        Args:
            file_params: valores do --config
            flag_params: valores das flags (None = não informado)

        Returns:
            Parâmetros efetivos, incluindo os padrões
        """
        defaults = self.defaults()
        unknown = sorted(set(file_params) - set(defaults))
        if unknown:
            raise InvalidConfigurationError(
                f"Parâmetros desconhecidos para {self.name}: {unknown}", {"allowed": sorted(defaults)}
            )
        params = dict(defaults)
        params.update(file_params)
        params.update({k: v for k, v in flag_params.items() if v is not None and k in defaults})
        return params

    def sweep_axis(self, params: Dict[str, Any]) -> Optional[SweepAxis]:
        """Eixo de varredura do comando, se houver"""
        return None


class CommandRegistry:
    """Registry dos subcomandos"""

    def __init__(self):
        self._commands: Dict[str, BaseCommand] = {}

    def register(self, command: BaseCommand) -> None:
        self._commands[command.name] = command

    def get_command(self, name: str) -> Optional[BaseCommand]:
        return self._commands.get(name)
