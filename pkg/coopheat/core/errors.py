"""
Hierarquia de exceções do CoopHeat

Cada exceção carrega o código de saída que o CLI devolve quando ela
atravessa a fronteira do runner.
"""

from typing import Any, Dict, Optional


EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INVALID_CONFIGURATION = 2
EXIT_CONVERGENCE_FAILURE = 3
EXIT_VERIFICATION_FAILURE = 4


class CoopHeatError(Exception):
    """Erro base de todos os módulos do CoopHeat"""

    exit_code = EXIT_INVALID_CONFIGURATION

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Formata o erro para saída JSON"""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
            "exit_code": self.exit_code,
        }


class InvalidArgumentError(CoopHeatError, ValueError):
    """Argumento fora do domínio da operação"""


class InvalidConfigurationError(CoopHeatError, ValueError):
    """Configuração inconsistente (bandas laterais negativas, dimensões, ...)"""


class ResourceLimitError(CoopHeatError):
    """Pedido excede os limites do oráculo (oracle_max)"""


class OutOfRangeError(CoopHeatError, ValueError):
    """Consulta fora da faixa de uma tabela"""


class TruncationError(CoopHeatError):
    """Resíduo de truncamento dos pesos de Floquet acima da tolerância"""


class NoCouplingError(CoopHeatError):
    """Nenhum canal com taxa não nula"""


class DivergenceError(CoopHeatError, ArithmeticError):
    """Quantidade diverge no ponto pedido"""


class ConvergenceError(CoopHeatError):
    """O integrador não atingiu a tolerância dentro de max_steps"""

    exit_code = EXIT_CONVERGENCE_FAILURE

    def __init__(self, message: str, residual: float, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, {**(details or {}), "residual": residual})
        self.residual = residual


class IntegrationInstabilityError(CoopHeatError):
    """Positividade ou traço perdidos durante a integração"""

    exit_code = EXIT_CONVERGENCE_FAILURE


class VerificationError(CoopHeatError):
    """Comparação oráculo × forma fechada fora da tolerância"""

    exit_code = EXIT_VERIFICATION_FAILURE
