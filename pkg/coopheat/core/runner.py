"""
SimulationRunner - Coordena a execução dos comandos
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional, Tuple

from .base import BaseCommand, CommandRegistry, RunConfig, SweepTable
from .errors import (
    EXIT_OK,
    EXIT_UNEXPECTED,
    EXIT_VERIFICATION_FAILURE,
    CoopHeatError,
)
from .settings import get_settings


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class SimulationRunner:
    """
    Executor principal: registra comandos, configura logging, mapeia
    varreduras em paralelo e traduz erros em códigos de saída
    """

    def __init__(self, verbose: bool = False):
        self.registry = CommandRegistry()
        self.logger = logging.getLogger(__name__)
        self._setup_logging(verbose)

    def _setup_logging(self, verbose: bool = False):
        """Configura o sistema de logging (stderr)"""
        level = logging.DEBUG if verbose else getattr(logging, get_settings().log_level.upper(), logging.INFO)
        logging.basicConfig(level=level, format=LOG_FORMAT)
        logging.getLogger("coopheat").setLevel(level)

    def register_command(self, command: BaseCommand) -> None:
        """
        Registra um novo comando

        Args:
            command: comando a ser registrado
        """
        self.registry.register(command)
        self.logger.debug(f"Comando {command.name} registrado com sucesso")

    def map(self, function: Callable[[Any], Any], items: Iterable[Any], jobs: int = 1) -> List[Any]:
        """
        Avalia `function` sobre os pontos da varredura preservando a ordem

        Args:
            function: função de módulo (serializável)
            items: pontos da varredura
            jobs: processos paralelos

        Returns:
            Resultados na ordem dos pontos
        """
        items = list(items)
        if jobs <= 1 or len(items) < 2:
            return [function(item) for item in items]
        self.logger.debug(f"Varredura de {len(items)} pontos com {jobs} processos")
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(function, items))

    def execute(self, name: str, config: RunConfig) -> SweepTable:
        """Executa um comando registrado sem tratar erros"""
        command = self.registry.get_command(name)
        if command is None:
            raise CoopHeatError(f"Comando desconhecido: {name}")
        self.logger.info(f"Iniciando comando {name}")
        table = command.execute(config, self)
        table.metadata.setdefault("command", name)
        table.metadata.setdefault("config", config.to_dict())
        self.logger.info(f"Comando {name} concluído: {len(table)} linhas")
        return table

    def run(self, name: str, config: RunConfig,
            writer: Optional[Callable[[SweepTable, RunConfig], None]] = None
            ) -> Tuple[int, Optional[SweepTable]]:
        """
        Executa, grava a saída e devolve o código de saída

        Args:
            name: nome do comando
            config: RunConfig resolvida
            writer: função que grava a tabela

        Returns:
            (código de saída, tabela ou None)
        """
        try:
            table = self.execute(name, config)
            if writer is not None:
                writer(table, config)
        except CoopHeatError as e:
            self.logger.error(f"{type(e).__name__}: {e.message}")
            self.logger.debug("Detalhes do erro", exc_info=True)
            return e.exit_code, None
        except Exception as e:
            self.logger.error(f"Erro inesperado no comando {name}: {str(e)}", exc_info=True)
            return EXIT_UNEXPECTED, None

        if not table.passed:
            for failure in table.failures:
                self.logger.error(f"Verificação falhou: {failure}")
            return EXIT_VERIFICATION_FAILURE, table
        return EXIT_OK, table
