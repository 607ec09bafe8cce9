"""
Matrizes densidade do oráculo e estados iniciais usuais
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Union

import numpy as np
from scipy import linalg

from ...core.errors import InvalidArgumentError
from ..engine_core import block_gibbs_populations
from ..spin_algebra import SpinQuantumNumber, check_density_matrix, symmetric_basis, symmetric_state


logger = logging.getLogger(__name__)

POSITIVITY_TOL = 1e-9

GROUND = np.array([1.0, 0.0], dtype=complex)
EXCITED = np.array([0.0, 1.0], dtype=complex)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Matriz densidade densa: hermitiana, traço 1, autovalores >= -1e-9"""
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", np.array(self.entries, dtype=complex))
        self.validate()

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def validate(self) -> "DensityMatrix":
        check_density_matrix(self.entries)
        lowest = float(linalg.eigvalsh(self.entries)[0])
        if lowest < -POSITIVITY_TOL:
            raise InvalidArgumentError(
                f"Matriz densidade com autovalor negativo {lowest:.3e}", {"min_eigenvalue": lowest}
            )
        return self

    def expectation(self, operator: np.ndarray) -> float:
        """Parte real de Tr[ρ O]"""
        return float(np.real(np.trace(self.entries @ operator)))

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    @classmethod
    def from_pure(cls, state: np.ndarray) -> "DensityMatrix":
        state = np.asarray(state, dtype=complex)
        norm = np.linalg.norm(state)
        if state.ndim != 1 or norm == 0:
            raise InvalidArgumentError("Estado puro deve ser um vetor não nulo")
        state = state / norm
        return cls(np.outer(state, state.conj()))


def density_matrix(state: Union[np.ndarray, DensityMatrix]) -> DensityMatrix:
    """Aceita vetor de estado, matriz ou DensityMatrix"""
    if isinstance(state, DensityMatrix):
        return state
    state = np.asarray(state)
    if state.ndim == 1:
        return DensityMatrix.from_pure(state)
    return DensityMatrix(state)


def maximally_mixed(dim: int) -> DensityMatrix:
    if dim < 1:
        raise InvalidArgumentError(f"Dimensão inválida: {dim}")
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


def product_state(pattern: str) -> DensityMatrix:
    """
    Estado produto a partir de um padrão como "egg" (átomo 1 primeiro)

    Args:
        pattern: sequência de 'e' (excitado) e 'g' (fundamental)

    Returns:
        DensityMatrix de dimensão 2^len(pattern)
    """
    pattern = pattern.strip().lower()
    if not pattern or set(pattern) - {"e", "g"}:
        raise InvalidArgumentError(f"Padrão de estado produto inválido: {pattern!r}")
    vector = reduce(np.kron, [EXCITED if c == "e" else GROUND for c in pattern])
    return DensityMatrix.from_pure(vector)


def excited_state(n_atoms: int) -> DensityMatrix:
    return product_state("e" * n_atoms)


def singlet_state() -> DensityMatrix:
    """(|eg⟩ - |ge⟩)/√2"""
    vector = np.kron(EXCITED, GROUND) - np.kron(GROUND, EXCITED)
    return DensityMatrix.from_pure(vector)


def dicke_state(n_atoms: int, excitations: int) -> DensityMatrix:
    return DensityMatrix.from_pure(symmetric_state(n_atoms, excitations))


def symmetric_gibbs_state(n_atoms: int, x_eff: float) -> DensityMatrix:
    """
    Estado exp(-x_eff J_z)/Z restrito ao subespaço simétrico j = N/2

    Args:
        n_atoms: número de átomos
        x_eff: β_eff ħω0

    Returns:
        DensityMatrix 2^N x 2^N
    """
    basis = symmetric_basis(n_atoms)
    populations = block_gibbs_populations(SpinQuantumNumber.maximal(n_atoms), x_eff)
    return DensityMatrix((basis * populations) @ basis.conj().T)


def product_gibbs_state(n_atoms: int, x_eff: float) -> DensityMatrix:
    """Produto de N estados de um átomo diag(1, e^{-x})/(1 + e^{-x})"""
    single = np.diag([1.0, np.exp(-x_eff)]).astype(complex) / (1.0 + np.exp(-x_eff))
    return DensityMatrix(reduce(np.kron, [single] * n_atoms))
