"""
Configuração de processo lida do ambiente (.env suportado)
"""

import os
from dataclasses import dataclass, asdict
from functools import lru_cache
from typing import Any, Dict

from dotenv import load_dotenv


@dataclass(frozen=True)
class Settings:
    """Valores padrão globais, sobrescritos por variáveis COOPHEAT_*"""
    oracle_max: int = 10
    q_max: int = 8
    grid_points: int = 4096
    truncation_tol: float = 1e-10
    oracle_tol: float = 1e-10
    oracle_max_steps: int = 2_000_000
    idle_epsilon: float = 1e-12
    hot_limit_x: float = 1e-4
    jobs: int = 1
    log_level: str = "INFO"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _env(name: str, default: Any, cast) -> Any:
    raw = os.getenv(f"COOPHEAT_{name.upper()}")
    if raw is None or raw.strip() == "":
        return default
    return cast(raw)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Carrega as configurações uma única vez por processo

    Returns:
        Settings com os valores do ambiente aplicados
    """
    load_dotenv()
    defaults = Settings()
    return Settings(
        oracle_max=_env("oracle_max", defaults.oracle_max, int),
        q_max=_env("q_max", defaults.q_max, int),
        grid_points=_env("grid_points", defaults.grid_points, int),
        truncation_tol=_env("truncation_tol", defaults.truncation_tol, float),
        oracle_tol=_env("oracle_tol", defaults.oracle_tol, float),
        oracle_max_steps=_env("oracle_max_steps", defaults.oracle_max_steps, int),
        idle_epsilon=_env("idle_epsilon", defaults.idle_epsilon, float),
        hot_limit_x=_env("hot_limit_x", defaults.hot_limit_x, float),
        jobs=_env("jobs", defaults.jobs, int),
        log_level=_env("log_level", defaults.log_level, str).upper(),
    )
