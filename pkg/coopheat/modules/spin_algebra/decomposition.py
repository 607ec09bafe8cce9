"""
Decomposição de N spins-1/2 em subespaços irredutíveis
======================================================

O espaço de 2^N dimensões de N átomos de dois níveis se decompõe em blocos
de spin coletivo j com multiplicidade C(N, N/2-j) - C(N, N/2-j-1).
Os valores de j são guardados como 2j para que semi-inteiros sejam exatos.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple, Union

from ...core.errors import InvalidArgumentError


MAX_DECOMPOSE_ATOMS = 10 ** 6


@dataclass(frozen=True, order=True)
class SpinQuantumNumber:
    """Número quântico de spin j armazenado como twice_j = 2j"""
    twice_j: int

    def __post_init__(self):
        if not isinstance(self.twice_j, int) or isinstance(self.twice_j, bool):
            raise InvalidArgumentError(f"twice_j deve ser inteiro, recebido {self.twice_j!r}")
        if self.twice_j < 0:
            raise InvalidArgumentError(f"twice_j deve ser não negativo, recebido {self.twice_j}")

    @property
    def dim(self) -> int:
        return self.twice_j + 1

    @property
    def value(self) -> float:
        return self.twice_j / 2

    @property
    def casimir(self) -> float:
        """Autovalor j(j+1) de J²"""
        return self.value * (self.value + 1)

    @classmethod
    def from_value(cls, j: Union[int, float, Fraction, str]) -> "SpinQuantumNumber":
        """
        Constrói a partir de j (número ou texto como "3/2")

        Args:
            j: valor inteiro ou semi-inteiro

        Returns:
            SpinQuantumNumber correspondente
        """
        if isinstance(j, SpinQuantumNumber):
            return j
        try:
            twice = Fraction(str(j).strip()) * 2
        except (ValueError, ZeroDivisionError):
            raise InvalidArgumentError(f"Valor de spin inválido: {j!r}")
        if twice.denominator != 1:
            raise InvalidArgumentError(f"j deve ser inteiro ou semi-inteiro, recebido {j!r}")
        return cls(int(twice))

    parse = from_value
    from_float = from_value

    @classmethod
    def maximal(cls, n_atoms: int) -> "SpinQuantumNumber":
        """Spin máximo N/2 (subespaço totalmente simétrico)"""
        return cls(n_atoms)

    def __str__(self) -> str:
        if self.twice_j % 2 == 0:
            return str(self.twice_j // 2)
        return f"{self.twice_j}/2"


@dataclass(frozen=True)
class DickeDecomposition:
    """Multiconjunto {(j, multiplicidade)} dos setores de N átomos, j decrescente"""
    n_atoms: int
    sectors: Tuple[Tuple[SpinQuantumNumber, int], ...]

    def __iter__(self) -> Iterator[Tuple[SpinQuantumNumber, int]]:
        return iter(self.sectors)

    def __len__(self) -> int:
        return len(self.sectors)

    @property
    def j_values(self) -> List[SpinQuantumNumber]:
        return [j for j, _ in self.sectors]

    @property
    def number_of_subspaces(self) -> int:
        """Número n de subespaços invariantes (multiplicidades somadas)"""
        return sum(mult for _, mult in self.sectors)

    def multiplicity(self, j: SpinQuantumNumber) -> int:
        j = SpinQuantumNumber.from_value(j)
        for spin, mult in self.sectors:
            if spin == j:
                return mult
        return 0

    def total_dimension(self) -> int:
        """Soma exata de (2j+1)·multiplicidade; deve ser 2^N"""
        return sum(j.dim * mult for j, mult in self.sectors)

    def as_dict(self) -> Dict[str, int]:
        return {str(j): mult for j, mult in self.sectors}


def decompose(n_atoms: int) -> DickeDecomposition:
    """
    Decompõe N spins-1/2 em subespaços irredutíveis de spin coletivo

    Args:
        n_atoms: número de átomos, 1 <= N <= 10^6

    Returns:
        DickeDecomposition com setores em ordem decrescente de j
    """
    if not isinstance(n_atoms, int) or isinstance(n_atoms, bool) or n_atoms < 1:
        raise InvalidArgumentError(f"n_atoms deve ser inteiro positivo, recebido {n_atoms!r}")
    if n_atoms > MAX_DECOMPOSE_ATOMS:
        raise InvalidArgumentError(
            f"n_atoms acima do limite suportado ({MAX_DECOMPOSE_ATOMS})",
            {"n_atoms": n_atoms},
        )

    sectors = []
    # binômios C(N, k) por recorrência exata em inteiros de Python
    previous, current = 0, 1
    for k in range(n_atoms // 2 + 1):
        if k > 0:
            previous, current = current, current * (n_atoms - k + 1) // k
        sectors.append((SpinQuantumNumber(n_atoms - 2 * k), current - previous))

    return DickeDecomposition(n_atoms=n_atoms, sectors=tuple(sectors))
