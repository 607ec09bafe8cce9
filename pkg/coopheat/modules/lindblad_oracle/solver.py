"""
Integração da equação mestra e estado estacionário
==================================================

Integração por Runge-Kutta de quarta ordem com passo fixo, ou vetor nulo
do Liouvilliano vetorizado (empilhamento de colunas) para dim <= 64.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from ...core.errors import ConvergenceError, InvalidArgumentError, IntegrationInstabilityError
from ...core.settings import get_settings
from ..engine_core import EnergyCurrents
from .channels import LindbladChannel
from .states import DensityMatrix, density_matrix


logger = logging.getLogger(__name__)

METHODS = ("time_integration", "nullspace")
MAX_VECTORIZED_DIM = 64
STEP_SAFETY = 0.05
POSITIVITY_DRIFT = 1e-8
CHECK_EVERY = 100
NULLSPACE_RCOND = 1e-9


class PreparedGenerator:
    """
    Gerador de Lindblad pré-computado: saltos empilhados e Σ rate A†A
    """

    def __init__(self, channels: Sequence[LindbladChannel], dim: Optional[int] = None):
        active = [c for c in channels if c.rate > 0]
        dims = {c.jump.shape for c in channels}
        if len(dims) > 1:
            raise InvalidArgumentError(f"Canais com dimensões diferentes: {sorted(dims)}")
        if dim is None:
            if not dims:
                raise InvalidArgumentError("Sem canais e sem dimensão informada")
            dim = next(iter(dims))[0]
        elif dims and next(iter(dims))[0] != dim:
            raise InvalidArgumentError(f"Canais de dimensão {next(iter(dims))[0]} para estado de dimensão {dim}")

        self.dim = dim
        self.rates = np.array([c.rate for c in active], dtype=float)
        self.jumps = np.array([c.jump for c in active], dtype=complex).reshape(len(active), dim, dim)
        self.adjoints = np.conj(np.transpose(self.jumps, (0, 2, 1)))
        number = self.adjoints @ self.jumps
        self.anticommutator = np.einsum("k,kij->ij", self.rates, number) if active else np.zeros((dim, dim), complex)
        self.max_rate = float(self.rates.max()) if active else 0.0
        # estimativa de rigidez Σ rate ‖A†A‖
        self.stiffness = float(sum(r * np.linalg.norm(n, 2) for r, n in zip(self.rates, number)))

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        if self.rates.size == 0:
            return np.zeros_like(rho)
        sandwich = np.einsum("k,kij->ij", 2.0 * self.rates, self.jumps @ rho @ self.adjoints)
        return sandwich - self.anticommutator @ rho - rho @ self.anticommutator

    def default_dt(self) -> float:
        if self.stiffness <= 0:
            return 1.0
        return STEP_SAFETY / self.stiffness

    def residual(self, rho: np.ndarray) -> float:
        """‖L ρ‖_1 relativo à maior taxa"""
        if self.max_rate == 0:
            return 0.0
        return float(np.linalg.norm(self(rho), "nuc")) / self.max_rate


def lindblad_rhs(rho, channels: Sequence[LindbladChannel]) -> np.ndarray:
    """
    dρ/dt = Σ rate (2AρA† - A†Aρ - ρA†A), sem parte hamiltoniana

    Args:
        rho: DensityMatrix ou matriz
        channels: canais de Lindblad

    Returns:
        Matriz dρ/dt
    """
    rho = getattr(rho, "entries", rho)
    rho = np.asarray(rho, dtype=complex)
    return PreparedGenerator(channels, rho.shape[0])(rho)


def vectorized_generator(channels: Sequence[LindbladChannel], dim: int) -> np.ndarray:
    """
    Superoperador denso L com vec(Lρ) = L vec(ρ), vec por colunas

    Args:
        channels: canais de Lindblad
        dim: dimensão do espaço de Hilbert (<= 64)

    Returns:
        Matriz dim² x dim²
    """
    if dim > MAX_VECTORIZED_DIM:
        raise InvalidArgumentError(
            f"Superoperador denso só para dim <= {MAX_VECTORIZED_DIM}, recebido {dim}"
        )
    identity = np.eye(dim, dtype=complex)
    generator = np.zeros((dim * dim, dim * dim), dtype=complex)
    for channel in channels:
        if channel.rate == 0:
            continue
        a = channel.jump
        number = a.conj().T @ a
        # vec(AXB) = (B^T ⊗ A) vec(X)
        generator += channel.rate * (
            2.0 * np.kron(a.conj(), a) - np.kron(identity, number) - np.kron(number.T, identity)
        )
    return generator


def _rk4_step(generator: PreparedGenerator, rho: np.ndarray, dt: float) -> np.ndarray:
    k1 = generator(rho)
    k2 = generator(rho + 0.5 * dt * k1)
    k3 = generator(rho + 0.5 * dt * k2)
    k4 = generator(rho + dt * k3)
    return rho + dt * (k1 + 2 * k2 + 2 * k3 + k4) / 6


def _min_eigenvalue(rho: np.ndarray) -> float:
    return float(linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])


def integrate(rho0, channels: Sequence[LindbladChannel], t_final: float,
              dt: Optional[float] = None, record_every: int = 1
              ) -> Tuple[np.ndarray, List[np.ndarray]]:
    """
    Evolução temporal por RK4 de passo fixo

    Args:
        rho0: estado inicial
        channels: canais de Lindblad
        t_final: tempo final
        dt: passo (padrão 0.05/rigidez)
        record_every: grava um estado a cada tantos passos

    Returns:
        (tempos, estados)
    """
    rho = density_matrix(rho0).entries
    generator = PreparedGenerator(channels, rho.shape[0])
    dt = generator.default_dt() if dt is None else dt
    if not dt > 0 or not t_final >= 0:
        raise InvalidArgumentError("dt deve ser positivo e t_final não negativo", {"dt": dt, "t_final": t_final})

    n_steps = int(np.ceil(t_final / dt - 1e-12))
    times, states = [0.0], [rho.copy()]
    for step in range(1, n_steps + 1):
        rho = _rk4_step(generator, rho, dt)
        if step % record_every == 0 or step == n_steps:
            times.append(step * dt)
            states.append(rho.copy())
    return np.array(times), states


@dataclass(frozen=True, eq=False)
class OracleResult:
    """Resultado do oráculo de Lindblad"""
    steady_state: DensityMatrix
    steps: int
    final_residual: float
    method: str
    nullity: int = 1
    dt: Optional[float] = None
    currents: Optional[EnergyCurrents] = None

    def to_dict(self):
        return {
            "method": self.method,
            "steps": self.steps,
            "final_residual": self.final_residual,
            "nullity": self.nullity,
            "dt": self.dt,
            "currents": self.currents.to_dict() if self.currents else None,
        }


def _time_integration(rho0: np.ndarray, generator: PreparedGenerator, dt: Optional[float],
                      tol: float, max_steps: int) -> OracleResult:
    dt = generator.default_dt() if dt is None else dt
    if not dt > 0:
        raise InvalidArgumentError(f"dt deve ser positivo, recebido {dt}")
    if dt * generator.stiffness > 0.1:
        logger.warning(f"dt={dt:.3g} acima do limite estável estimado {0.1 / generator.stiffness:.3g}")

    halved = False
    rho = rho0.copy()
    step = 0
    residual = generator.residual(rho)
    while residual >= tol:
        if step >= max_steps:
            raise ConvergenceError(
                f"Estado estacionário não convergiu em {max_steps} passos", residual,
                {"dt": dt, "tol": tol},
            )
        for _ in range(CHECK_EVERY):
            rho = _rk4_step(generator, rho, dt)
        step += CHECK_EVERY

        lowest = _min_eigenvalue(rho)
        if lowest < -POSITIVITY_DRIFT:
            if halved:
                raise IntegrationInstabilityError(
                    f"Autovalor negativo {lowest:.3e} mesmo após reduzir dt para {dt:.3g}",
                    {"min_eigenvalue": lowest, "dt": dt},
                )
            halved = True
            dt *= 0.5
            logger.debug(f"Deriva de positividade ({lowest:.3e}); reiniciando com dt={dt:.3g}")
            rho, step = rho0.copy(), 0
        residual = generator.residual(rho)
        if step % (100 * CHECK_EVERY) == 0:
            logger.debug(f"passo {step}: resíduo relativo {residual:.3e}")

    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    return OracleResult(DensityMatrix(rho), step, residual, "time_integration", dt=dt)


def _nullspace(generator_matrix: np.ndarray, dim: int) -> Tuple[np.ndarray, int]:
    basis = linalg.null_space(generator_matrix, rcond=NULLSPACE_RCOND)
    nullity = basis.shape[1]
    if nullity != 1:
        return np.empty((dim, dim)), nullity
    rho = basis[:, 0].reshape((dim, dim), order="F")
    rho = rho / np.trace(rho)
    return 0.5 * (rho + rho.conj().T), nullity


def steady_state(rho0, channels: Sequence[LindbladChannel], method: str = "time_integration",
                 dt: Optional[float] = None, tol: Optional[float] = None,
                 max_steps: Optional[int] = None) -> OracleResult:
    """
    Estado estacionário a partir de rho0

    Args:
        rho0: estado inicial (define os pesos conservados)
        channels: canais de Lindblad
        method: time_integration ou nullspace
        dt: passo do RK4 (padrão 0.05/rigidez)
        tol: tolerância do resíduo relativo ‖Lρ‖_1/Γ_max
        max_steps: limite de passos

    Returns:
        OracleResult (sem correntes)
    """
    if method not in METHODS:
        raise InvalidArgumentError(f"Método desconhecido: {method!r}", {"allowed": list(METHODS)})
    settings = get_settings()
    tol = settings.oracle_tol if tol is None else tol
    max_steps = settings.oracle_max_steps if max_steps is None else max_steps

    rho0 = density_matrix(rho0).entries
    dim = rho0.shape[0]
    generator = PreparedGenerator(channels, dim)

    if method == "nullspace":
        rho, nullity = _nullspace(vectorized_generator(channels, dim), dim)
        if nullity == 1:
            residual = generator.residual(rho)
            logger.debug(f"Núcleo único: resíduo relativo {residual:.3e}")
            return OracleResult(DensityMatrix(rho), 0, residual, "nullspace", nullity=1)
        logger.warning(f"Núcleo do Liouvilliano com dimensão {nullity}; usando integração temporal a partir de rho0")
        result = _time_integration(rho0, generator, dt, tol, max_steps)
        return OracleResult(result.steady_state, result.steps, result.final_residual,
                            result.method, nullity=nullity, dt=result.dt)

    result = _time_integration(rho0, generator, dt, tol, max_steps)
    logger.debug(f"Estacionário em {result.steps} passos (dt={result.dt:.3g}, resíduo {result.final_residual:.2e})")
    return result
