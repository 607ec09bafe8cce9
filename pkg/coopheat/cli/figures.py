"""
Varreduras que geram os dados das figuras (fig3 a fig7)

Cada função de ponto é de nível de módulo para poder ser enviada ao
ProcessPoolExecutor do SimulationRunner.
"""

import logging
import math
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from ..core.base import RunConfig, SweepAxis, SweepTable
from ..core.errors import InvalidConfigurationError
from ..core.settings import get_settings
from ..modules.engine_core import (
    amplification,
    boost_limits,
    collective_currents,
    critical_hot_temperature,
    effective_boltzmann,
    individual_currents,
    power_ratio,
    sinusoidal_machine,
)
from ..modules.spin_algebra import SpinQuantumNumber


logger = logging.getLogger(__name__)

THREE_ATOM_PI = (1.0, 0.8, 0.6, 0.5, 0.3, 0.0)
INDEPENDENT_REFERENCE = 3.0
FIG4_ATOMS = (2, 3, 5, 10, 20, 50, 100)
FIG5_ATOMS = (5, 10, 50, 100)

# fig6: x_c = 2.3 (e^{-2.3} ≈ 0.1); fig7: e^{-x_c} = 0.9 exatamente
FIG6_X_COLD = 2.3
FIG7_X_COLD = -math.log(0.9)

FIGURE_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "fig3": {"axis": "x_eff", "sweep_min": 1e-4, "sweep_max": 5.0, "points": 100, "scale": "linear"},
    "fig4": {"axis": "x_eff", "sweep_min": 1e-2, "sweep_max": 10.0, "points": 40, "scale": "log"},
    "fig5": {"axis": "x_eff", "sweep_min": 1e-2, "sweep_max": 5.0, "points": 60, "scale": "log"},
    "fig6": {"axis": "x_hot", "sweep_min": None, "sweep_max": 2.0, "points": 100, "scale": "linear",
             "x_cold": FIG6_X_COLD, "n_atoms": 100},
    "fig7": {"axis": "x_hot", "sweep_min": None, "sweep_max": 0.1, "points": 100, "scale": "linear",
             "x_cold": FIG7_X_COLD, "n_atoms": 100},
}
MACHINE_PARAMS = ("x_cold", "Omega", "omega0", "g", "n_atoms", "coupling_cold", "coupling_hot", "weights_mode",
                  "q_max")


def coth_column(x_eff: float) -> Tuple[float, bool]:
    """coth(x/2) e a flag de divergência (x = 0)"""
    if x_eff == 0:
        return float("inf"), True
    return float(1.0 / np.tanh(0.5 * x_eff)), False


def three_atom_point(x_eff: float) -> Dict[str, Any]:
    quartet = amplification(SpinQuantumNumber(3), x_eff)
    doublet = amplification(SpinQuantumNumber(1), x_eff)
    row: Dict[str, Any] = {"x_eff": x_eff}
    for pi1 in THREE_ATOM_PI:
        # peso 1 - Π1 distribuído pelos dois dubletos
        row[f"pi1_{pi1:.1f}"] = (pi1 * quartet + (1.0 - pi1) * doublet) / doublet
    row["independent_reference"] = INDEPENDENT_REFERENCE
    return row


def boost_grid_point(item: Tuple[int, float]) -> Dict[str, Any]:
    n_atoms, x_eff = item
    low, high = boost_limits(n_atoms)
    return {"n_atoms": n_atoms, "x_eff": x_eff, "power_ratio": power_ratio(n_atoms, x_eff),
            "low_temperature_limit": low, "high_temperature_limit": high}


def saturation_point(x_eff: float) -> Dict[str, Any]:
    row: Dict[str, Any] = {"x_eff": x_eff}
    for n_atoms in FIG5_ATOMS:
        row[f"n_{n_atoms}"] = power_ratio(n_atoms, x_eff)
    row["saturation_boost"], row["divergent"] = coth_column(x_eff)
    return row


def sinusoidal_point(item: Tuple[Dict[str, Any], float]) -> Dict[str, Any]:
    """Correntes coletivas e individuais da máquina senoidal em um x_h"""
    machine_params, x_hot = item
    machine = sinusoidal_machine(x_hot=x_hot, **machine_params)
    eff = effective_boltzmann(machine)
    collective = collective_currents(machine, eff)
    individual = individual_currents(machine, eff)
    saturation, divergent = coth_column(eff.x_eff)
    return {
        "x_hot": x_hot,
        "x_eff": eff.x_eff,
        "j_cold_collective": collective.j_cold,
        "j_hot_collective": collective.j_hot,
        "power_collective": collective.power,
        "j_cold_individual": individual.j_cold,
        "j_hot_individual": individual.j_hot,
        "power_individual": individual.power,
        "power_ratio": power_ratio(machine.n_atoms, eff.x_eff),
        "saturation_boost": saturation,
        "divergent": divergent,
        "mode": collective.mode,
    }


def figure_axis(which: str, params: Dict[str, Any]) -> SweepAxis:
    defaults = FIGURE_DEFAULTS[which]
    minimum = params.get("sweep_min")
    if minimum is None:
        minimum = defaults["sweep_min"]
    if minimum is None:
        minimum = get_settings().hot_limit_x
    return SweepAxis(
        name=defaults["axis"],
        minimum=float(minimum),
        maximum=float(params.get("sweep_max") or defaults["sweep_max"]),
        points=int(params.get("points") or defaults["points"]),
        scale=params.get("scale") or defaults["scale"],
    )


def _three_atom_table(config: RunConfig, runner: Any) -> SweepTable:
    rows = runner.map(three_atom_point, config.sweep.values().tolist(), config.jobs)
    return SweepTable.from_rows(rows, {"n_atoms": 3, "pi1_values": list(THREE_ATOM_PI)})


def _boost_grid_table(config: RunConfig, runner: Any) -> SweepTable:
    n_values = config.get("n_values", FIG4_ATOMS)
    items = [(int(n), float(x)) for n in n_values for x in config.sweep.values()]
    rows = runner.map(boost_grid_point, items, config.jobs)
    return SweepTable.from_rows(rows, {"n_values": [int(n) for n in n_values]})


def _saturation_table(config: RunConfig, runner: Any) -> SweepTable:
    rows = runner.map(saturation_point, config.sweep.values().tolist(), config.jobs)
    table = SweepTable.from_rows(rows, {"n_values": list(FIG5_ATOMS)}, divergent_columns=["saturation_boost"])
    if table.frame["divergent"].any():
        logger.warning("coth(x/2) avaliado em x_eff = 0: pontos marcados como divergentes")
    return table


def _sinusoidal_table(config: RunConfig, runner: Any) -> SweepTable:
    machine_params = {k: config.params[k] for k in MACHINE_PARAMS if config.params.get(k) is not None}
    if config.params.get("cold_boltzmann") is not None:
        factor = float(config.params["cold_boltzmann"])
        if not 0 < factor < 1:
            raise InvalidConfigurationError(f"cold_boltzmann deve estar em (0, 1), recebido {factor}")
        machine_params["x_cold"] = -math.log(factor)
    x_cold = float(machine_params["x_cold"])
    Omega = float(machine_params.get("Omega", 0.3))
    omega0 = float(machine_params.get("omega0", 1.0))

    items = [(machine_params, float(x)) for x in config.sweep.values()]
    rows = runner.map(sinusoidal_point, items, config.jobs)
    # x = β ħω0 nos dois banhos
    critical = critical_hot_temperature(x_cold / omega0, omega0, Omega) * omega0
    logger.info(f"x_h crítico = {critical:.6f}")
    metadata = {"machine": machine_params, "critical_x_hot": critical,
                "hot_limit_x": config.sweep.minimum}
    return SweepTable.from_rows(rows, metadata, divergent_columns=["saturation_boost"])


FIGURE_BUILDERS: Dict[str, Callable[[RunConfig, Any], SweepTable]] = {
    "fig3": _three_atom_table,
    "fig4": _boost_grid_table,
    "fig5": _saturation_table,
    "fig6": _sinusoidal_table,
    "fig7": _sinusoidal_table,
}
FIGURES: Tuple[str, ...] = tuple(FIGURE_BUILDERS)


def figure_parameters(which: str) -> Dict[str, Any]:
    """Parâmetros padrão de máquina da figura (fig6 e fig7)"""
    defaults = FIGURE_DEFAULTS[which]
    return {key: defaults[key] for key in MACHINE_PARAMS if key in defaults}


def build_figure(which: str, config: RunConfig, runner: Any) -> SweepTable:
    """
    Gera a tabela de dados de uma figura

    Args:
        which: fig3, fig4, fig5, fig6 ou fig7
        config: RunConfig com o eixo de varredura já resolvido
        runner: SimulationRunner

    Returns:
        SweepTable
    """
    if which not in FIGURE_BUILDERS:
        raise InvalidConfigurationError(f"Figura desconhecida: {which!r}", {"allowed": list(FIGURES)})
    table = FIGURE_BUILDERS[which](config, runner)
    table.metadata["figure"] = which
    return table


def figure_rows(which: str, values: List[float]) -> List[Dict[str, Any]]:
    """Linhas de fig3 ou fig5 sem o runner (uso em testes e notebooks)"""
    point = {"fig3": three_atom_point, "fig5": saturation_point}[which]
    return [point(float(x)) for x in values]
