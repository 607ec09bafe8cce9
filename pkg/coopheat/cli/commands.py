"""
Subcomandos do coopheat, um BaseCommand por subcomando
"""

import logging
from dataclasses import replace
from typing import Any, Dict, List, Optional

from ..core.base import BaseCommand, RunConfig, SweepAxis, SweepTable
from ..core.errors import InvalidConfigurationError
from ..core.machine import DEFAULT_MACHINE, CoopHeat
from ..modules.engine_core import (
    MachineConfig,
    boost_limits,
    collective_currents,
    critical_hot_temperature,
    effective_boltzmann,
    individual_currents,
    power_ratio,
    total_currents,
)
from ..modules.floquet_modulation import (
    ModulationSpec,
    bessel_weights,
    floquet_weights_numeric,
    sinusoidal_weights_approx,
)
from ..modules.lindblad_oracle import superradiant_transient
from ..modules.spin_algebra import decompose
from .figures import FIGURE_DEFAULTS, FIGURES, build_figure, coth_column, figure_axis, figure_parameters


logger = logging.getLogger(__name__)

TRUNCATION_PARAMS: Dict[str, Any] = {"q_max": None, "tol": None}
SWEEP_PARAMS: Dict[str, Any] = {"sweep_min": None, "sweep_max": None, "points": None, "scale": None}
ORACLE_PARAMS: Dict[str, Any] = {"dt": None, "max_steps": None}


def _machine(params: Dict[str, Any], truncation: bool = True) -> MachineConfig:
    machine = CoopHeat.machine_from_dict({k: v for k, v in params.items() if k in DEFAULT_MACHINE})
    if truncation and params.get("tol") is not None:
        machine = replace(machine, truncation_tol=float(params["tol"]))
    return machine


def _axis(params: Dict[str, Any], name: str, minimum: float, maximum: float,
          points: int = 50, scale: str = "linear") -> SweepAxis:
    value = params.get("sweep_min")
    return SweepAxis(
        name=name,
        minimum=float(minimum if value is None else value),
        maximum=float(params.get("sweep_max") if params.get("sweep_max") is not None else maximum),
        points=int(params.get("points") or points),
        scale=params.get("scale") or scale,
    )


def _has_sweep(params: Dict[str, Any]) -> bool:
    return params.get("sweep_min") is not None or params.get("sweep_max") is not None


def beta_eff_point(item) -> Dict[str, Any]:
    machine, x_hot = item
    if x_hot is not None:
        machine = machine.with_hot(x_hot)
    eff = effective_boltzmann(machine)
    return {"x_hot": machine.hot.x if machine.hot else float("nan"),
            "x_eff": eff.x_eff, "boltzmann_factor": eff.boltzmann_factor}


def currents_point(item) -> List[Dict[str, Any]]:
    machine, x_hot = item
    if x_hot is not None:
        machine = machine.with_hot(x_hot)
    eff = effective_boltzmann(machine)
    rows = []
    for scope, function in (("total", total_currents), ("collective", collective_currents),
                            ("individual", individual_currents)):
        currents = function(machine, eff)
        rows.append({"x_hot": machine.hot.x if machine.hot else float("nan"),
                     "scope": scope, "x_eff": eff.x_eff, **currents.to_dict()})
    return rows


class DecomposeCommand(BaseCommand):
    """Tabela (j, multiplicidade, dimensão) dos subespaços de N átomos"""

    def __init__(self):
        super().__init__("decompose")

    def defaults(self) -> Dict[str, Any]:
        return {"n_atoms": None}

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        n_atoms = config.get("n_atoms")
        if n_atoms is None:
            raise InvalidConfigurationError("decompose requer N (posicional ou --n-atoms)")
        decomposition = decompose(int(n_atoms))
        rows = [{"j": str(j), "multiplicity": mult, "dimension": j.dim} for j, mult in decomposition]
        return SweepTable.from_rows(rows, {
            "n_atoms": int(n_atoms),
            "number_of_subspaces": decomposition.number_of_subspaces,
            "total_dimension": decomposition.total_dimension(),
        })


class PqWeightsCommand(BaseCommand):
    """Pesos de Floquet P(q): numérico, Bessel e aproximação fraca"""

    def __init__(self):
        super().__init__("pq-weights")

    def defaults(self) -> Dict[str, Any]:
        return {"Omega": 0.3, "g": None, "omega0": 1.0, "modulation": "sinusoidal",
                "modulation_csv": None, "grid_points": None, **TRUNCATION_PARAMS}

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        omega0 = float(config.get("omega0"))
        Omega = float(config.get("Omega"))
        g = float(config.get("g", 0.01 * Omega))
        form = config.get("modulation")
        if form == "tabulated":
            if not config.get("modulation_csv"):
                raise InvalidConfigurationError("Modulação tabulada requer modulation_csv")
            modulation = ModulationSpec.from_csv(config.get("modulation_csv"), omega0)
        elif form == "sinusoidal":
            modulation = ModulationSpec.sinusoidal(g, Omega, omega0)
        elif form == "constant":
            modulation = ModulationSpec.constant(omega0, Omega)
        else:
            raise InvalidConfigurationError(f"Modulação desconhecida: {form!r}")

        numeric = floquet_weights_numeric(modulation, config.get("q_max"), config.get("grid_points"),
                                          config.get("tol"))
        rows = []
        if form == "sinusoidal":
            exact = bessel_weights(g, Omega, numeric.q_max)
            approx = sinusoidal_weights_approx(g, Omega)
            for q, value in numeric.items():
                rows.append({"q": q, "numeric": value, "bessel": exact[q], "approx": approx.get(q)})
        else:
            rows = [{"q": q, "numeric": value} for q, value in numeric.items()]
        for message in numeric.warnings:
            logger.warning(message)
        return SweepTable.from_rows(rows, {
            "modulation": form,
            "omega0": omega0,
            "Omega": modulation.Omega,
            "g": modulation.g,
            "residual": numeric.residual,
            "warnings": list(numeric.warnings),
        })


class BetaEffCommand(BaseCommand):
    """Temperatura efetiva β_eff ħω0, opcionalmente varrendo x_h"""

    def __init__(self):
        super().__init__("beta-eff")

    def defaults(self) -> Dict[str, Any]:
        return {**DEFAULT_MACHINE, **SWEEP_PARAMS, **TRUNCATION_PARAMS}

    def sweep_axis(self, params: Dict[str, Any]) -> Optional[SweepAxis]:
        if not _has_sweep(params):
            return None
        return _axis(params, "x_hot", 1e-4, 2.0)

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        machine = _machine(config.params)
        xs = [None] if config.sweep is None else [float(x) for x in config.sweep.values()]
        rows = runner.map(beta_eff_point, [(machine, x) for x in xs], config.jobs)
        return SweepTable.from_rows(rows, {"machine": machine.to_dict()}, optional_columns=["x_hot"])


class CurrentsCommand(BaseCommand):
    """Correntes estacionárias total, coletiva e individual"""

    def __init__(self):
        super().__init__("currents")

    def defaults(self) -> Dict[str, Any]:
        return {**DEFAULT_MACHINE, **SWEEP_PARAMS, **TRUNCATION_PARAMS}

    def sweep_axis(self, params: Dict[str, Any]) -> Optional[SweepAxis]:
        if not _has_sweep(params):
            return None
        return _axis(params, "x_hot", 1e-4, 2.0)

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        machine = _machine(config.params)
        xs = [None] if config.sweep is None else [float(x) for x in config.sweep.values()]
        blocks = runner.map(currents_point, [(machine, x) for x in xs], config.jobs)
        rows = [row for block in blocks for row in block]
        metadata: Dict[str, Any] = {"machine": machine.to_dict()}
        if machine.cold is not None and machine.hot is not None and machine.Omega < machine.omega0:
            metadata["critical_x_hot"] = critical_hot_temperature(
                machine.cold.beta, machine.omega0, machine.Omega) * machine.omega0
        return SweepTable.from_rows(rows, metadata, optional_columns=["efficiency", "x_hot"])


class BoostCommand(BaseCommand):
    """Razão 𝒫_coll/𝒫_ind em função de x_eff para um N"""

    def __init__(self):
        super().__init__("boost")

    def defaults(self) -> Dict[str, Any]:
        return {"n_atoms": 100, "x_eff": None, **SWEEP_PARAMS}

    def sweep_axis(self, params: Dict[str, Any]) -> Optional[SweepAxis]:
        if params.get("x_eff") is not None and not _has_sweep(params):
            return None
        return _axis(params, "x_eff", 1e-3, 10.0, points=50, scale="log")

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        n_atoms = int(config.get("n_atoms"))
        low, high = boost_limits(n_atoms)
        xs = [float(config.get("x_eff"))] if config.sweep is None else config.sweep.values().tolist()
        rows = []
        for x_eff in xs:
            saturation, divergent = coth_column(x_eff)
            rows.append({"x_eff": x_eff, "power_ratio": power_ratio(n_atoms, x_eff),
                         "low_temperature_limit": low, "high_temperature_limit": high,
                         "saturation_boost": saturation, "divergent": divergent})
        return SweepTable.from_rows(rows, {"n_atoms": n_atoms}, divergent_columns=["saturation_boost"])


class FigureCommand(BaseCommand):
    """Dados das figuras fig3 a fig7"""

    def __init__(self):
        super().__init__("figure")

    def defaults(self) -> Dict[str, Any]:
        return {"which": None, "x_cold": None, "cold_boltzmann": None, "Omega": None, "g": None,
                "omega0": None, "n_atoms": None, "coupling_cold": None, "coupling_hot": None,
                "weights_mode": None, "q_max": None, "n_values": None, **SWEEP_PARAMS}

    def resolve(self, file_params: Dict[str, Any], flag_params: Dict[str, Any]) -> Dict[str, Any]:
        params = super().resolve(file_params, flag_params)
        which = params.get("which")
        if which not in FIGURE_DEFAULTS:
            raise InvalidConfigurationError(f"Figura desconhecida: {which!r}", {"allowed": list(FIGURES)})
        explicit_cold = params.get("x_cold") is not None or params.get("cold_boltzmann") is not None
        for key, value in figure_parameters(which).items():
            if key == "x_cold" and explicit_cold:
                continue
            if params.get(key) is None:
                params[key] = value
        return params

    def sweep_axis(self, params: Dict[str, Any]) -> Optional[SweepAxis]:
        return figure_axis(params["which"], params)

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        return build_figure(config.get("which"), config, runner)


class OracleCompareCommand(BaseCommand):
    """Correntes do oráculo de Lindblad contra as formas fechadas"""

    def __init__(self, facade: Optional[CoopHeat] = None):
        super().__init__("oracle-compare")
        self.facade = facade or CoopHeat()

    def defaults(self) -> Dict[str, Any]:
        return {**DEFAULT_MACHINE, "n_atoms": 2, "rho0": "symmetric", "method": "time_integration",
                **ORACLE_PARAMS, **TRUNCATION_PARAMS}

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        machine = _machine(config.params, truncation=False)
        report = self.facade.compare_with_oracle(
            machine, config.get("rho0"), config.get("method"),
            dt=config.get("dt"), tol=config.get("tol"), max_steps=config.get("max_steps"),
        )
        failures = [f"{row['quantity']}: erro relativo {row['rel_error']:.3e}"
                    for row in report["rows"] if not row["passed"]]
        metadata = {"machine": machine.to_dict(), "rho0": config.get("rho0"),
                    "subspace_weights": report["subspace_weights"], "oracle": report["oracle"]}
        return SweepTable.from_rows(report["rows"], metadata, failures=failures)


class DephasingCommand(BaseCommand):
    """Máquina coletiva com defasagem local contra N átomos independentes"""

    def __init__(self, facade: Optional[CoopHeat] = None):
        super().__init__("dephasing")
        self.facade = facade or CoopHeat()

    def defaults(self) -> Dict[str, Any]:
        return {**DEFAULT_MACHINE, "n_atoms": 2, "gamma_d": 1.0, "rho0": "excited",
                "method": "nullspace", **ORACLE_PARAMS, **TRUNCATION_PARAMS}

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        machine = _machine(config.params, truncation=False)
        gamma_d = float(config.get("gamma_d"))
        report = self.facade.compare_dephasing(
            machine, gamma_d, config.get("rho0"), config.get("method"),
            dt=config.get("dt"), tol=config.get("tol"), max_steps=config.get("max_steps"),
        )
        failures = [] if report["passed"] else [
            f"{row['quantity']}: erro relativo {row['rel_error']:.3e}"
            for row in report["rows"] if not row["passed"]
        ]
        metadata = {"machine": machine.to_dict(), "gamma_d": gamma_d, "rho0": config.get("rho0"),
                    "status": report["status"], "power_ratio": report["power_ratio"],
                    "oracle": report["oracle"]}
        return SweepTable.from_rows(report["rows"], metadata, failures=failures)


class TransientCommand(BaseCommand):
    """Decaimento superradiante de |e...e⟩ a temperatura zero"""

    def __init__(self):
        super().__init__("transient")

    def defaults(self) -> Dict[str, Any]:
        return {"n_atoms": 6, "t_final": None, "dt": None, "gamma0": 1.0, "record_every": 1}

    def execute(self, config: RunConfig, runner: Any) -> SweepTable:
        result = superradiant_transient(int(config.get("n_atoms")), config.get("t_final"), config.get("dt"),
                                        float(config.get("gamma0")), int(config.get("record_every")))
        metadata = {**result.summary(), "dt": result.dt}
        return SweepTable(result.to_frame(), metadata)


def default_commands(facade: Optional[CoopHeat] = None) -> List[BaseCommand]:
    """Instâncias de todos os subcomandos, na ordem de exibição"""
    facade = facade or CoopHeat()
    return [
        DecomposeCommand(),
        PqWeightsCommand(),
        BetaEffCommand(),
        CurrentsCommand(),
        BoostCommand(),
        FigureCommand(),
        OracleCompareCommand(facade),
        DephasingCommand(facade),
        TransientCommand(),
    ]
