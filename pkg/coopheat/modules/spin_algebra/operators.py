"""
Operadores de spin coletivo
===========================

Dois níveis por átomo na base (g, e), g primeiro. Em produtos tensoriais o
átomo 1 é o qubit mais significativo. Dentro de um bloco de spin j a base
é ordenada pelo número de excitações p = 0..2j (p = 0 é o estado
fundamental).
"""

import logging
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import linalg
from scipy.special import comb

from ...core.errors import InvalidArgumentError, ResourceLimitError
from ...core.settings import get_settings
from .decomposition import SpinQuantumNumber, decompose


logger = logging.getLogger(__name__)

# Tipos de matriz usados nas assinaturas
OperatorMatrix = np.ndarray
StateVector = np.ndarray

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10

SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.T.copy()
SIGMA_Z = np.diag([-1.0, 1.0]).astype(complex)
SIGMA_X = SIGMA_PLUS + SIGMA_MINUS
SIGMA_Y = -1j * (SIGMA_PLUS - SIGMA_MINUS)

SINGLE_SITE = {
    "x": 0.5 * SIGMA_X,
    "y": 0.5 * SIGMA_Y,
    "z": 0.5 * SIGMA_Z,
    "plus": SIGMA_PLUS,
    "minus": SIGMA_MINUS,
}


def lowering_operator(j: SpinQuantumNumber) -> OperatorMatrix:
    """
    S_- do bloco de spin j: <p|S_-|p+1> = sqrt((p+1)(2j-p))

    Args:
        j: número quântico do bloco

    Returns:
        Matriz (2j+1)x(2j+1) complexa
    """
    j = SpinQuantumNumber.from_value(j)
    p = np.arange(j.twice_j)
    return np.diag(np.sqrt((p + 1.0) * (j.twice_j - p)), k=1).astype(complex)


def raising_operator(j: SpinQuantumNumber) -> OperatorMatrix:
    return lowering_operator(j).conj().T


def z_operator(j: SpinQuantumNumber) -> OperatorMatrix:
    """S_z diagonal com autovalores p - j (fundamental em -j)"""
    j = SpinQuantumNumber.from_value(j)
    return np.diag(np.arange(j.dim) - j.value).astype(complex)


def x_operator(j: SpinQuantumNumber) -> OperatorMatrix:
    lower = lowering_operator(j)
    return 0.5 * (lower + lower.conj().T)


def y_operator(j: SpinQuantumNumber) -> OperatorMatrix:
    lower = lowering_operator(j)
    return -0.5j * (lower.conj().T - lower)


def _check_oracle_size(n_atoms: int, oracle_max: Optional[int]) -> None:
    if not isinstance(n_atoms, int) or n_atoms < 1:
        raise InvalidArgumentError(f"n_atoms deve ser inteiro positivo, recebido {n_atoms!r}")
    limit = get_settings().oracle_max if oracle_max is None else oracle_max
    if n_atoms > limit:
        raise ResourceLimitError(
            f"N={n_atoms} excede oracle_max={limit} (espaço de Hilbert 2^N)",
            {"n_atoms": n_atoms, "oracle_max": limit},
        )


def local_operator(n_atoms: int, site: int, single: OperatorMatrix,
                   oracle_max: Optional[int] = None) -> OperatorMatrix:
    """
    Embute um operador de um átomo no espaço de N átomos

    Args:
        n_atoms: número de átomos
        site: índice do átomo (0 = átomo 1, mais significativo)
        single: matriz 2x2
        oracle_max: limite opcional de átomos

    Returns:
        Matriz 2^N x 2^N
    """
    _check_oracle_size(n_atoms, oracle_max)
    if not 0 <= site < n_atoms:
        raise InvalidArgumentError(f"site {site} fora de [0, {n_atoms})")
    left = np.eye(2 ** site, dtype=complex)
    right = np.eye(2 ** (n_atoms - site - 1), dtype=complex)
    return np.kron(np.kron(left, single), right)


def collective_operator(n_atoms: int, which: str,
                        oracle_max: Optional[int] = None) -> OperatorMatrix:
    """
    Operador coletivo J_x, J_y, J_z (soma de sigma/2) ou J_+/J_- (soma de sigma_±)

    Args:
        n_atoms: número de átomos (<= oracle_max)
        which: um de x, y, z, plus, minus

    Returns:
        Matriz 2^N x 2^N
    """
    if which not in SINGLE_SITE:
        raise InvalidArgumentError(
            f"Operador coletivo desconhecido: {which!r}", {"allowed": sorted(SINGLE_SITE)}
        )
    _check_oracle_size(n_atoms, oracle_max)
    single = SINGLE_SITE[which]
    total = np.zeros((2 ** n_atoms, 2 ** n_atoms), dtype=complex)
    for site in range(n_atoms):
        total += local_operator(n_atoms, site, single, oracle_max=n_atoms)
    return total


def total_spin_squared(n_atoms: int, oracle_max: Optional[int] = None) -> OperatorMatrix:
    """J² = J_x² + J_y² + J_z²"""
    jx = collective_operator(n_atoms, "x", oracle_max)
    jy = collective_operator(n_atoms, "y", oracle_max)
    jz = collective_operator(n_atoms, "z", oracle_max)
    return jx @ jx + jy @ jy + jz @ jz


def excitation_counts(n_atoms: int) -> np.ndarray:
    """Número de átomos excitados em cada estado da base computacional"""
    index = np.arange(2 ** n_atoms)
    bits = (index[:, None] >> np.arange(n_atoms)) & 1
    return bits.sum(axis=1)


def symmetric_state(n_atoms: int, excitations: int,
                    oracle_max: Optional[int] = None) -> StateVector:
    """
    Estado de Dicke simétrico |k> com k excitações

    Args:
        n_atoms: número de átomos
        excitations: k em [0, N]

    Returns:
        Vetor normalizado de dimensão 2^N
    """
    _check_oracle_size(n_atoms, oracle_max)
    if not isinstance(excitations, (int, np.integer)) or not 0 <= excitations <= n_atoms:
        raise InvalidArgumentError(
            f"excitations deve estar em [0, {n_atoms}], recebido {excitations!r}"
        )
    state = (excitation_counts(n_atoms) == excitations).astype(complex)
    return state / np.sqrt(comb(n_atoms, excitations, exact=True))


def symmetric_basis(n_atoms: int, oracle_max: Optional[int] = None) -> np.ndarray:
    """Colunas |0>, ..., |N> do subespaço de spin N/2"""
    return np.column_stack([
        symmetric_state(n_atoms, k, oracle_max) for k in range(n_atoms + 1)
    ])


@lru_cache(maxsize=16)
def _spin_squared_eigensystem(n_atoms: int) -> Tuple[np.ndarray, np.ndarray]:
    values, vectors = linalg.eigh(total_spin_squared(n_atoms, oracle_max=n_atoms))
    values.setflags(write=False)
    vectors.setflags(write=False)
    return values, vectors


def spin_eigenbasis(n_atoms: int, oracle_max: Optional[int] = None
                    ) -> Tuple[np.ndarray, np.ndarray]:
    """
    Autovalores e autovetores de J² (colunas), ordem crescente

    Returns:
        (autovalores, autovetores)
    """
    _check_oracle_size(n_atoms, oracle_max)
    return _spin_squared_eigensystem(n_atoms)


def subspace_projector(n_atoms: int, j: SpinQuantumNumber,
                       oracle_max: Optional[int] = None) -> OperatorMatrix:
    """
    Projetor espectral de J² no autovalor j(j+1), somando todas as cópias de j

    Args:
        n_atoms: número de átomos
        j: spin do setor

    Returns:
        Projetor 2^N x 2^N
    """
    j = SpinQuantumNumber.from_value(j)
    values, vectors = spin_eigenbasis(n_atoms, oracle_max)
    # autovalores vizinhos j(j+1) distam pelo menos 3/4
    selected = vectors[:, np.abs(values - j.casimir) < 0.25]
    return selected @ selected.conj().T


def check_density_matrix(rho: np.ndarray, dim: Optional[int] = None) -> np.ndarray:
    """
    Valida hermiticidade e traço unitário

    Args:
        rho: matriz candidata
        dim: dimensão esperada

    Returns:
        A própria matriz como ndarray complexo
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidArgumentError(f"Matriz densidade deve ser quadrada, recebido shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise InvalidArgumentError(f"Dimensão {rho.shape[0]} difere da esperada {dim}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise InvalidArgumentError("Matriz densidade não é hermitiana")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise InvalidArgumentError(
            "Matriz densidade sem traço unitário", {"trace": complex(np.trace(rho)).real}
        )
    return rho


def subspace_weights(rho0: np.ndarray, n_atoms: int,
                     oracle_max: Optional[int] = None) -> Dict[SpinQuantumNumber, float]:
    """
    Pesos Tr[P_j rho0] de cada setor de spin j

    Args:
        rho0: matriz densidade 2^N x 2^N
        n_atoms: número de átomos

    Returns:
        Mapa j -> peso (soma 1)
    """
    rho0 = check_density_matrix(getattr(rho0, "entries", rho0), 2 ** n_atoms)
    weights = {}
    for j, _ in decompose(n_atoms):
        projector = subspace_projector(n_atoms, j, oracle_max)
        weights[j] = float(np.real(np.trace(projector @ rho0)))
    total = sum(weights.values())
    logger.debug(f"Pesos de subespaço para N={n_atoms}: soma={total:.3e}")
    return weights
