"""
Pesos das bandas laterais de Floquet
====================================

Para uma modulação periódica ω(t) da frequência de transição, o peso da
banda lateral q é

    P(q) = | τ^{-1} ∫_0^τ exp(iΦ(t)) e^{-iqΩt} dt |²,  Φ(t) = ∫_0^t (ω(s) - ω0) ds

A integral é avaliada na grade uniforme de um período (regra do trapézio
periódica, via FFT), o que é espectralmente preciso para integrandos
periódicos suaves.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.special import jv

from ...core.errors import InvalidArgumentError, TruncationError
from ...core.settings import get_settings


logger = logging.getLogger(__name__)

MODULATION_FORMS = ("constant", "sinusoidal", "tabulated")
MIN_GRID_POINTS = 64
MEAN_TOL = 1e-9
APPROX_DEPTH_LIMIT = 0.2


@dataclass(frozen=True)
class ModulationSpec:
    """Modulação periódica ω(t) com média ω0 sobre um período 2π/Ω"""
    omega0: float = 1.0
    form: str = "constant"
    g: float = 0.0
    Omega: float = 1.0
    samples_t: Tuple[float, ...] = ()
    samples_omega: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.form not in MODULATION_FORMS:
            raise InvalidArgumentError(
                f"Forma de modulação desconhecida: {self.form!r}", {"allowed": list(MODULATION_FORMS)}
            )
        if not self.omega0 > 0:
            raise InvalidArgumentError(f"omega0 deve ser positivo, recebido {self.omega0}")
        if self.form == "tabulated":
            self._validate_samples()
        elif not self.Omega > 0:
            raise InvalidArgumentError(f"Omega deve ser positivo, recebido {self.Omega}")
        if self.form == "sinusoidal" and self.g < 0:
            raise InvalidArgumentError(f"Profundidade g deve ser >= 0, recebido {self.g}")

    def _validate_samples(self) -> None:
        t = np.asarray(self.samples_t, dtype=float)
        omega = np.asarray(self.samples_omega, dtype=float)
        if t.size < 2 or t.size != omega.size:
            raise InvalidArgumentError("Tabela de modulação precisa de colunas t e ω do mesmo tamanho (>= 2)")
        if np.any(np.diff(t) <= 0):
            raise InvalidArgumentError("Tempos da tabela de modulação devem ser estritamente crescentes")
        period = t[-1] - t[0]
        if not np.isclose(self.Omega * period, 2 * np.pi, rtol=1e-9):
            raise InvalidArgumentError(
                "A tabela deve cobrir exatamente um período 2π/Ω",
                {"period": period, "Omega": self.Omega},
            )
        mean = trapezoid(omega, t) / period
        if abs(mean - self.omega0) > MEAN_TOL * max(1.0, abs(self.omega0)):
            raise InvalidArgumentError(
                "Média de ω(t) sobre o período difere de omega0",
                {"mean": mean, "omega0": self.omega0},
            )

    @classmethod
    def constant(cls, omega0: float = 1.0, Omega: float = 1.0) -> "ModulationSpec":
        return cls(omega0=omega0, form="constant", Omega=Omega)

    @classmethod
    def sinusoidal(cls, g: float, Omega: float, omega0: float = 1.0) -> "ModulationSpec":
        """ω(t) = ω0 + g sin(Ωt)"""
        return cls(omega0=omega0, form="sinusoidal", g=g, Omega=Omega)

    @classmethod
    def tabulated(cls, t: Sequence[float], omega: Sequence[float],
                  omega0: Optional[float] = None) -> "ModulationSpec":
        """
        Modulação amostrada em um período completo (t[0] .. t[0] + τ)

        Args:
            t: tempos crescentes, primeiro e último separados por um período
            omega: ω(t) nos mesmos instantes
            omega0: frequência nua; por padrão a média no período

        Returns:
            ModulationSpec tabulada
        """
        t = np.asarray(t, dtype=float)
        omega = np.asarray(omega, dtype=float)
        if t.size < 2:
            raise InvalidArgumentError("Tabela de modulação com menos de duas amostras")
        period = t[-1] - t[0]
        if period <= 0:
            raise InvalidArgumentError("Período da tabela deve ser positivo")
        if omega0 is None:
            omega0 = float(trapezoid(omega, t) / period)
        return cls(omega0=omega0, form="tabulated", Omega=2 * np.pi / period,
                   samples_t=tuple(t.tolist()), samples_omega=tuple(omega.tolist()))

    @classmethod
    def from_csv(cls, path: str, omega0: Optional[float] = None) -> "ModulationSpec":
        """Lê CSV de duas colunas (t, ω(t)); linha de cabeçalho opcional"""
        frame = pd.read_csv(path, header=None, comment="#")
        frame = frame.apply(pd.to_numeric, errors="coerce").dropna()
        if frame.shape[1] < 2:
            raise InvalidArgumentError(f"CSV de modulação precisa de duas colunas: {path}")
        return cls.tabulated(frame.iloc[:, 0].to_numpy(), frame.iloc[:, 1].to_numpy(), omega0)

    @property
    def period(self) -> float:
        return 2 * np.pi / self.Omega

    @property
    def depth_ratio(self) -> float:
        """g/Ω (zero fora da forma senoidal)"""
        return self.g / self.Omega if self.form == "sinusoidal" else 0.0

    def omega_at(self, t: Union[float, np.ndarray]) -> np.ndarray:
        """Avalia ω(t)"""
        t = np.asarray(t, dtype=float)
        if self.form == "constant":
            return np.full_like(t, self.omega0)
        if self.form == "sinusoidal":
            return self.omega0 + self.g * np.sin(self.Omega * t)
        t0 = self.samples_t[0]
        return np.interp(t0 + np.mod(t - t0, self.period), self.samples_t, self.samples_omega)

    def phase(self, t: np.ndarray) -> np.ndarray:
        """Fase acumulada Φ(t) = ∫_0^t (ω(s) - ω0) ds dentro de um período"""
        t = np.asarray(t, dtype=float)
        if self.form == "constant":
            return np.zeros_like(t)
        if self.form == "sinusoidal":
            return (self.g / self.Omega) * (1.0 - np.cos(self.Omega * t))
        samples_t = np.asarray(self.samples_t)
        accumulated = cumulative_trapezoid(
            np.asarray(self.samples_omega) - self.omega0, samples_t, initial=0.0
        )
        return np.interp(samples_t[0] + t, samples_t, accumulated)


@dataclass(frozen=True)
class FloquetWeights:
    """Mapa q -> P(q) com resíduo de truncamento 1 - Σ P(q)"""
    weights: Dict[int, float]
    q_max: int
    residual: float
    warnings: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        negative = {q: p for q, p in self.weights.items() if p < 0}
        if negative:
            raise InvalidArgumentError("Pesos P(q) negativos", {"weights": negative})

    def __getitem__(self, q: int) -> float:
        return self.weights.get(q, 0.0)

    def get(self, q: int, default: float = 0.0) -> float:
        return self.weights.get(q, default)

    def items(self) -> Iterator[Tuple[int, float]]:
        """Pares (q, P(q)) em ordem crescente de q"""
        return iter(sorted(self.weights.items()))

    def total(self) -> float:
        return float(sum(self.weights.values()))

    @classmethod
    def unmodulated(cls) -> "FloquetWeights":
        return cls(weights={0: 1.0}, q_max=1, residual=0.0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "weights": {str(q): p for q, p in self.items()},
            "q_max": self.q_max,
            "residual": self.residual,
            "warnings": list(self.warnings),
        }


def modulation_condition_warnings(mod: ModulationSpec) -> Tuple[str, ...]:
    """
    Verifica a condição 0 <= g << Ω <= ω0 da modulação senoidal

    Returns:
        Mensagens de aviso (vazio se a condição é satisfeita)
    """
    messages = []
    if mod.form != "sinusoidal":
        return ()
    if mod.depth_ratio > APPROX_DEPTH_LIMIT:
        messages.append(f"g/Omega = {mod.depth_ratio:.3g} > {APPROX_DEPTH_LIMIT}: condição g << Omega violada")
    if mod.Omega > mod.omega0:
        messages.append(f"Omega = {mod.Omega:.3g} > omega0 = {mod.omega0:.3g}: condição Omega <= omega0 violada")
    for message in messages:
        logger.warning(message)
    return tuple(messages)


def _check_residual(residual: float, q_max: int, tolerance: float) -> None:
    if residual > tolerance:
        raise TruncationError(
            f"Resíduo de truncamento {residual:.3e} acima da tolerância {tolerance:.1e}; aumente q_max (atual {q_max})",
            {"residual": residual, "q_max": q_max, "tolerance": tolerance},
        )


def floquet_weights_numeric(mod: ModulationSpec, q_max: Optional[int] = None,
                            grid_points: Optional[int] = None,
                            tolerance: Optional[float] = None) -> FloquetWeights:
    """
    Calcula P(q) por quadratura uniforme sobre um período

    Args:
        mod: especificação da modulação
        q_max: maior |q| retido
        grid_points: pontos da grade (>= 64)
        tolerance: tolerância do resíduo de truncamento

    Returns:
        FloquetWeights com P(q) para |q| <= q_max
    """
    settings = get_settings()
    q_max = settings.q_max if q_max is None else q_max
    grid_points = settings.grid_points if grid_points is None else grid_points
    tolerance = settings.truncation_tol if tolerance is None else tolerance

    if not isinstance(q_max, int) or q_max < 1:
        raise InvalidArgumentError(f"q_max deve ser inteiro positivo, recebido {q_max!r}")
    if grid_points < MIN_GRID_POINTS:
        raise InvalidArgumentError(f"grid_points deve ser >= {MIN_GRID_POINTS}, recebido {grid_points}")
    if grid_points <= 2 * q_max:
        raise InvalidArgumentError("grid_points deve exceder 2*q_max para evitar aliasing")

    t = mod.period * np.arange(grid_points) / grid_points
    coefficients = np.fft.fft(np.exp(1j * mod.phase(t))) / grid_points

    weights = {q: float(np.abs(coefficients[q % grid_points]) ** 2) for q in range(-q_max, q_max + 1)}
    residual = 1.0 - sum(weights.values())
    _check_residual(residual, q_max, tolerance)

    logger.debug(f"P(q) numérico: forma={mod.form}, q_max={q_max}, resíduo={residual:.2e}")
    return FloquetWeights(weights=weights, q_max=q_max, residual=residual,
                          warnings=modulation_condition_warnings(mod))


def sinusoidal_weights_approx(g: float, Omega: float) -> FloquetWeights:
    """
    Aproximação de modulação fraca: P(0) = 1 - (g/Ω)²/2, P(±1) = (g/2Ω)²

    Args:
        g: profundidade da modulação (>= 0)
        Omega: frequência de acionamento (> 0)

    Returns:
        FloquetWeights com q em {-1, 0, 1}
    """
    if g < 0 or not Omega > 0:
        raise InvalidArgumentError("Requer g >= 0 e Omega > 0", {"g": g, "Omega": Omega})
    ratio = g / Omega
    p0 = 1.0 - 0.5 * ratio ** 2
    p1 = (0.5 * ratio) ** 2
    if p0 < 0:
        raise InvalidArgumentError(f"Aproximação inválida para g/Omega = {ratio:.3g} (P(0) < 0)")

    warnings = ()
    if ratio > APPROX_DEPTH_LIMIT:
        warnings = (f"g/Omega = {ratio:.3g} > {APPROX_DEPTH_LIMIT}: aproximação de P(q) degradada",)
        logger.warning(warnings[0])

    return FloquetWeights(weights={-1: p1, 0: p0, 1: p1}, q_max=1,
                          residual=1.0 - p0 - 2 * p1, warnings=warnings)


def bessel_weights(g: float, Omega: float, q_max: Optional[int] = None) -> FloquetWeights:
    """Valores exatos J_q(g/Ω)² da modulação senoidal (expansão de Jacobi–Anger)"""
    if g < 0 or not Omega > 0:
        raise InvalidArgumentError("Requer g >= 0 e Omega > 0", {"g": g, "Omega": Omega})
    q_max = get_settings().q_max if q_max is None else q_max
    weights = {q: float(jv(q, g / Omega) ** 2) for q in range(-q_max, q_max + 1)}
    return FloquetWeights(weights=weights, q_max=q_max, residual=1.0 - sum(weights.values()))
