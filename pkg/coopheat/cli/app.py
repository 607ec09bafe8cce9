"""
coopheat CLI - Aplicação de linha de comando
============================================

Subcomandos para decomposição, pesos de Floquet, correntes, ganhos,
figuras e verificações com o oráculo de Lindblad
"""

import argparse
import json
import logging
from typing import Any, Dict, Optional, Sequence, Tuple

from .. import __version__
from ..core.base import BaseCommand, RunConfig
from ..core.errors import EXIT_INVALID_CONFIGURATION, EXIT_OK, CoopHeatError, InvalidConfigurationError
from ..core.runner import SimulationRunner
from ..core.settings import get_settings
from ..modules.lindblad_oracle import METHODS
from .commands import default_commands
from .figures import FIGURES
from .output import write_table


logger = logging.getLogger(__name__)

META_KEYS = ("command", "config", "output", "format", "jobs", "print_config", "verbose", "n_positional")
FILE_META_KEYS = ("output", "format", "jobs")
EXCLUSIVE_PAIRS = (("x_cold", "cold_boltzmann"), ("x_hot", "hot_boltzmann"))
INITIAL_STATES = ("symmetric", "product", "singlet", "excited")


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("opções gerais")
    group.add_argument("--config", help="arquivo JSON com parâmetros")
    group.add_argument("--output", help="arquivo de saída (padrão: stdout)")
    group.add_argument("--format", choices=("csv", "json"), help="formato de saída (padrão csv)")
    group.add_argument("--jobs", type=int, help="processos paralelos nas varreduras")
    group.add_argument("--print-config", action="store_true", help="imprime a configuração resolvida e sai")
    group.add_argument("-v", "--verbose", action="store_true", help="logging em nível DEBUG")
    return parser


def _add_truncation_flags(parser: argparse.ArgumentParser, tol: bool = True) -> None:
    group = parser.add_argument_group("truncamento")
    group.add_argument("--q-max", dest="q_max", type=int, help="maior |q| retido")
    if tol:
        group.add_argument("--tol", type=float, help="tolerância (truncamento ou oráculo)")


def _sweep_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("varredura")
    group.add_argument("--sweep-min", dest="sweep_min", type=float)
    group.add_argument("--sweep-max", dest="sweep_max", type=float)
    group.add_argument("--points", type=int)
    group.add_argument("--scale", choices=("linear", "log"))
    return parser


def _add_machine_flags(parser: argparse.ArgumentParser, full: bool = True) -> None:
    group = parser.add_argument_group("máquina")
    group.add_argument("--n-atoms", dest="n_atoms", type=int)
    cold = group.add_mutually_exclusive_group()
    cold.add_argument("--x-cold", dest="x_cold", type=float, help="β_c ħω0")
    cold.add_argument("--cold-boltzmann", dest="cold_boltzmann", type=float, help="e^{-β_c ħω0}")
    group.add_argument("--omega", dest="Omega", type=float, help="frequência de acionamento Ω")
    group.add_argument("--g", type=float, help="profundidade da modulação (padrão 0.01 Ω)")
    group.add_argument("--weights", dest="weights_mode", choices=("approx", "numeric"))
    group.add_argument("--coupling-cold", dest="coupling_cold", type=float)
    group.add_argument("--coupling-hot", dest="coupling_hot", type=float)
    if not full:
        return
    hot = group.add_mutually_exclusive_group()
    hot.add_argument("--x-hot", dest="x_hot", type=float, help="β_h ħω0")
    hot.add_argument("--hot-boltzmann", dest="hot_boltzmann", type=float, help="e^{-β_h ħω0}")
    group.add_argument("--omega0", type=float)
    group.add_argument("--modulation", choices=("constant", "sinusoidal", "tabulated"))
    group.add_argument("--modulation-csv", dest="modulation_csv")
    group.add_argument("--spectral-model", dest="spectral_model", choices=("separated", "flat", "tabulated"))
    group.add_argument("--spectrum-csv", dest="spectrum_csv")
    group.add_argument("--grid-points", dest="grid_points", type=int)


def _add_oracle_flags(parser: argparse.ArgumentParser, gamma_d: bool = False) -> None:
    group = parser.add_argument_group("oráculo")
    group.add_argument("--rho0", choices=INITIAL_STATES, help="estado inicial")
    group.add_argument("--method", choices=METHODS)
    group.add_argument("--dt", type=float, help="passo do RK4")
    group.add_argument("--max-steps", dest="max_steps", type=int)
    if gamma_d:
        group.add_argument("--gamma-d", dest="gamma_d", type=float, help="taxa de defasagem local")


def create_parser() -> argparse.ArgumentParser:
    """
    Factory function para criar o parser da CLI

    Returns:
        ArgumentParser com todos os subcomandos
    """
    common = _common_parser()
    sweep = _sweep_parser()

    parser = argparse.ArgumentParser(
        prog="coopheat",
        description="Máquina térmica coletiva de N átomos: formas fechadas e oráculo de Lindblad",
    )
    parser.add_argument("--version", action="version", version=f"coopheat {__version__}")
    subparsers = parser.add_subparsers(dest="command")

    decompose = subparsers.add_parser("decompose", parents=[common], help="decomposição de Dicke")
    decompose.add_argument("n_positional", nargs="?", type=int, metavar="N")
    decompose.add_argument("--n-atoms", dest="n_atoms", type=int)

    weights = subparsers.add_parser("pq-weights", parents=[common], help="pesos de Floquet P(q)")
    weights.add_argument("--omega", dest="Omega", type=float)
    weights.add_argument("--omega0", type=float)
    weights.add_argument("--g", type=float)
    weights.add_argument("--modulation", choices=("constant", "sinusoidal", "tabulated"))
    weights.add_argument("--modulation-csv", dest="modulation_csv")
    weights.add_argument("--grid-points", dest="grid_points", type=int)
    _add_truncation_flags(weights)

    for name, description in (("beta-eff", "temperatura efetiva"), ("currents", "correntes estacionárias")):
        command = subparsers.add_parser(name, parents=[common, sweep], help=description)
        _add_machine_flags(command)
        _add_truncation_flags(command)

    boost = subparsers.add_parser("boost", parents=[common, sweep], help="ganho coletivo de potência")
    boost.add_argument("--n-atoms", dest="n_atoms", type=int)
    boost.add_argument("--x-eff", dest="x_eff", type=float)

    figure = subparsers.add_parser("figure", parents=[common, sweep], help="dados das figuras")
    figure.add_argument("which", choices=FIGURES)
    _add_machine_flags(figure, full=False)
    figure.add_argument("--omega0", type=float)
    _add_truncation_flags(figure, tol=False)

    oracle = subparsers.add_parser("oracle-compare", parents=[common], help="oráculo contra formas fechadas")
    _add_machine_flags(oracle)
    _add_oracle_flags(oracle)
    _add_truncation_flags(oracle)

    dephasing = subparsers.add_parser("dephasing", parents=[common], help="defasagem local")
    _add_machine_flags(dephasing)
    _add_oracle_flags(dephasing, gamma_d=True)
    _add_truncation_flags(dephasing)

    transient = subparsers.add_parser("transient", parents=[common], help="transiente superradiante")
    transient.add_argument("--n-atoms", dest="n_atoms", type=int)
    transient.add_argument("--t-final", dest="t_final", type=float)
    transient.add_argument("--dt", type=float)
    transient.add_argument("--gamma0", type=float)
    transient.add_argument("--record-every", dest="record_every", type=int)

    return parser


def load_config_file(path: Optional[str]) -> Tuple[Dict[str, Any], Dict[str, Any]]:
    """
    Lê o arquivo JSON de configuração

    Args:
        path: caminho ou None

    Returns:
        (parâmetros do comando, opções gerais output/format/jobs)
    """
    if not path:
        return {}, {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except FileNotFoundError:
        raise InvalidConfigurationError(f"Arquivo de configuração não encontrado: {path}")
    except json.JSONDecodeError as e:
        raise InvalidConfigurationError(f"JSON inválido em {path}: {e}")
    if not isinstance(data, dict):
        raise InvalidConfigurationError(f"Configuração em {path} deve ser um objeto JSON")
    meta = {key: data.pop(key) for key in FILE_META_KEYS if key in data}
    return data, meta


def build_run_config(command: BaseCommand, args: argparse.Namespace) -> RunConfig:
    """
    Resolve padrões do comando, arquivo --config e flags explícitas

    Args:
        command: subcomando registrado
        args: namespace do argparse

    Returns:
        RunConfig validada
    """
    flags = {k: v for k, v in vars(args).items() if k not in META_KEYS}
    if getattr(args, "n_positional", None) is not None:
        if flags.get("n_atoms") is not None and flags["n_atoms"] != args.n_positional:
            raise InvalidConfigurationError("N posicional e --n-atoms divergem")
        flags["n_atoms"] = args.n_positional

    file_params, meta = load_config_file(args.config)
    for first, second in EXCLUSIVE_PAIRS:
        if flags.get(first) is not None:
            file_params.pop(second, None)
        if flags.get(second) is not None:
            file_params.pop(first, None)

    params = command.resolve(file_params, flags)
    return RunConfig(
        command=command.name,
        params=params,
        sweep=command.sweep_axis(params),
        output=args.output or meta.get("output"),
        output_format=args.format or meta.get("format") or "csv",
        jobs=int(args.jobs or meta.get("jobs") or get_settings().jobs),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Ponto de entrada da CLI

    Args:
        argv: argumentos (padrão sys.argv[1:])

    Returns:
        Código de saída: 0 sucesso, 2 configuração inválida,
        3 falha de convergência, 4 falha de verificação
    """
    parser = create_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_INVALID_CONFIGURATION

    runner = SimulationRunner(verbose=args.verbose)
    for command in default_commands():
        runner.register_command(command)

    try:
        config = build_run_config(runner.registry.get_command(args.command), args)
    except CoopHeatError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        return e.exit_code

    if args.print_config:
        print(json.dumps(config.to_dict(), indent=2, sort_keys=True, default=str))
        return EXIT_OK

    exit_code, _ = runner.run(args.command, config, writer=write_table)
    return exit_code
