"""
CoopHeat - Interface unificada da máquina térmica coletiva
"""

import logging
from typing import Any, Dict, List, Mapping, Optional, Union

from .errors import InvalidConfigurationError, ResourceLimitError, VerificationError
from .settings import Settings, get_settings
from ..modules.engine_core import (
    MachineConfig,
    collective_currents,
    effective_boltzmann,
    individual_currents,
    power_ratio,
    saturation_boost,
    total_currents,
)
from ..modules.floquet_modulation import (
    FloquetWeights,
    ModulationSpec,
    floquet_weights_numeric,
    sinusoidal_weights_approx,
)
from ..modules.lindblad_oracle import (
    DensityMatrix,
    FullCollective,
    dephasing_oracle,
    dicke_state,
    excited_state,
    product_state,
    run_oracle,
    singlet_state,
)
from ..modules.spin_algebra import subspace_weights
from ..modules.thermal_baths import (
    BathSpec,
    FlatSpectrum,
    SeparatedSpectrum,
    TabulatedSpectrum,
)


logger = logging.getLogger(__name__)

DEFAULT_MACHINE: Dict[str, Any] = {
    "n_atoms": 1,
    "omega0": 1.0,
    "Omega": 0.3,
    "g": None,
    "modulation": "sinusoidal",
    "weights_mode": "approx",
    "q_max": None,
    "grid_points": None,
    "x_cold": None,
    "cold_boltzmann": None,
    "x_hot": None,
    "hot_boltzmann": None,
    "coupling_cold": 1.0,
    "coupling_hot": 1.0,
    "spectral_model": "separated",
    "spectrum_csv": None,
    "modulation_csv": None,
    "subspace_weights": None,
}
DEFAULT_X_COLD = 2.3
DEFAULT_X_HOT = 0.2

INITIAL_STATES = ("symmetric", "product", "singlet", "excited")
SPECTRAL_MODELS = ("separated", "flat", "tabulated")
RELATIVE_TOLERANCE = 1e-5
DARK_TOLERANCE = 1e-10


def _bath_x(data: Mapping[str, Any], label: str, default: float) -> float:
    x = data.get(f"x_{label}")
    factor = data.get(f"{label}_boltzmann")
    if x is not None and factor is not None:
        raise InvalidConfigurationError(f"Informe x_{label} ou {label}_boltzmann, não ambos")
    if factor is not None:
        return BathSpec.from_boltzmann(label, float(factor)).x
    return float(default if x is None else x)


class CoopHeat:
    """
    Classe principal do coopheat - monta máquinas a partir de dicionários e
    confronta as formas fechadas com o oráculo de Lindblad
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    @staticmethod
    def machine_from_dict(data: Mapping[str, Any]) -> MachineConfig:
        """
        Converte um dicionário (JSON) em MachineConfig validada

        Args:
            data: chaves de DEFAULT_MACHINE

        Returns:
            MachineConfig
        """
        unknown = sorted(set(data) - set(DEFAULT_MACHINE))
        if unknown:
            raise InvalidConfigurationError(f"Chaves de configuração desconhecidas: {unknown}")
        merged = {**DEFAULT_MACHINE, **{k: v for k, v in data.items() if v is not None}}

        omega0 = float(merged["omega0"])
        Omega = float(merged["Omega"])
        g = 0.01 * Omega if merged["g"] is None else float(merged["g"])
        form = merged["modulation"]

        if form == "constant":
            modulation = ModulationSpec.constant(omega0, Omega)
            weights = FloquetWeights.unmodulated()
        elif form == "sinusoidal":
            modulation = ModulationSpec.sinusoidal(g, Omega, omega0)
            if merged["weights_mode"] == "approx":
                weights = sinusoidal_weights_approx(g, Omega)
            elif merged["weights_mode"] == "numeric":
                weights = floquet_weights_numeric(modulation, merged["q_max"], merged["grid_points"])
            else:
                raise InvalidConfigurationError(f"weights_mode inválido: {merged['weights_mode']!r}")
        elif form == "tabulated":
            if not merged["modulation_csv"]:
                raise InvalidConfigurationError("Modulação tabulada requer modulation_csv")
            modulation = ModulationSpec.from_csv(merged["modulation_csv"], omega0)
            weights = floquet_weights_numeric(modulation, merged["q_max"], merged["grid_points"])
        else:
            raise InvalidConfigurationError(f"Modulação desconhecida: {form!r}")

        model_name = merged["spectral_model"]
        if model_name not in SPECTRAL_MODELS:
            raise InvalidConfigurationError(f"Modelo espectral desconhecido: {model_name!r}",
                                            {"allowed": list(SPECTRAL_MODELS)})
        if model_name == "tabulated":
            if not merged["spectrum_csv"]:
                raise InvalidConfigurationError("Espectro tabulado requer spectrum_csv")
            table = TabulatedSpectrum.from_csv(merged["spectrum_csv"])

        baths = []
        for label, default in (("cold", DEFAULT_X_COLD), ("hot", DEFAULT_X_HOT)):
            coupling = float(merged[f"coupling_{label}"])
            if model_name == "separated":
                model = SeparatedSpectrum(level=coupling)
            elif model_name == "flat":
                model = FlatSpectrum(gamma0=coupling)
            else:
                model = table
            baths.append(BathSpec(label, _bath_x(merged, label, default), model, omega0))

        return MachineConfig(baths=tuple(baths), modulation=modulation, weights=weights,
                             n_atoms=int(merged["n_atoms"]),
                             subspace_weights=merged["subspace_weights"])

    def analyze(self, config: MachineConfig) -> Dict[str, Any]:
        """
        Resumo em forma fechada: β_eff, correntes e ganhos

        Args:
            config: MachineConfig

        Returns:
            Dicionário com correntes total, coletiva e individual
        """
        eff = effective_boltzmann(config)
        try:
            saturation = saturation_boost(eff.x_eff)
        except ArithmeticError:
            saturation = None
        return {
            "x_eff": eff.x_eff,
            "boltzmann_factor": eff.boltzmann_factor,
            "total": total_currents(config, eff).to_dict(),
            "collective": collective_currents(config, eff).to_dict(),
            "individual": individual_currents(config, eff).to_dict(),
            "power_ratio": power_ratio(config.n_atoms, eff.x_eff),
            "saturation_boost": saturation,
        }

    @staticmethod
    def initial_state(kind: Union[str, DensityMatrix], n_atoms: int) -> DensityMatrix:
        """
        Estados iniciais nomeados do oráculo

        Args:
            kind: symmetric (Dicke com N//2 excitações), product (|eg...g⟩),
                singlet (apenas N=2) ou excited (|e...e⟩)
            n_atoms: número de átomos

        Returns:
            DensityMatrix
        """
        if isinstance(kind, DensityMatrix):
            return kind
        if kind == "symmetric":
            return dicke_state(n_atoms, n_atoms // 2)
        if kind == "product":
            return product_state("e" + "g" * (n_atoms - 1))
        if kind == "excited":
            return excited_state(n_atoms)
        if kind == "singlet":
            if n_atoms != 2:
                raise InvalidConfigurationError("Estado singleto só é definido para N=2")
            return singlet_state()
        raise InvalidConfigurationError(f"Estado inicial desconhecido: {kind!r}", {"allowed": list(INITIAL_STATES)})

    def _require_oracle_size(self, n_atoms: int) -> None:
        if n_atoms > self.settings.oracle_max:
            raise ResourceLimitError(
                f"N={n_atoms} excede oracle_max={self.settings.oracle_max}",
                {"n_atoms": n_atoms, "oracle_max": self.settings.oracle_max},
            )

    @staticmethod
    def _compare(closed, oracle, label: str) -> List[Dict[str, Any]]:
        rows = []
        for quantity in ("j_cold", "j_hot", "power"):
            expected = getattr(closed, quantity)
            found = getattr(oracle, quantity)
            abs_error = abs(found - expected)
            rel_error = abs_error / abs(expected) if expected != 0 else (0.0 if abs_error == 0 else float("inf"))
            passed = rel_error <= RELATIVE_TOLERANCE or abs_error <= DARK_TOLERANCE
            rows.append({
                "quantity": quantity,
                "closed_form": expected,
                label: found,
                "abs_error": abs_error,
                "rel_error": min(rel_error, 1e300),
                "passed": passed,
            })
        return rows

    def compare_with_oracle(self, config: MachineConfig, rho0: Union[str, DensityMatrix] = "symmetric",
                            method: str = "time_integration", **solver_options) -> Dict[str, Any]:
        """
        Correntes do oráculo de Lindblad contra a soma ponderada por subespaço

        Args:
            config: máquina (n_atoms <= oracle_max)
            rho0: estado inicial ou nome
            method: time_integration ou nullspace

        Returns:
            Dicionário com linhas de comparação e o resultado do oráculo
        """
        n_atoms = config.n_atoms
        self._require_oracle_size(n_atoms)
        state = self.initial_state(rho0, n_atoms)
        weights = {j: max(w, 0.0) for j, w in subspace_weights(state, n_atoms).items()}
        norm = sum(weights.values())
        weighted = config.with_atoms(n_atoms, {j: w / norm for j, w in weights.items()})

        closed = total_currents(weighted)
        oracle = run_oracle(FullCollective(n_atoms), config.rates, state, method=method, **solver_options)
        rows = self._compare(closed, oracle.currents, "oracle")
        passed = all(row["passed"] for row in rows)
        if not passed:
            logger.warning(f"Oráculo diverge da forma fechada para N={n_atoms}")
        return {
            "rows": rows,
            "passed": passed,
            "subspace_weights": {str(j): w for j, w in weighted.subspace_weights.items()},
            "oracle": oracle.to_dict(),
        }

    def compare_dephasing(self, config: MachineConfig, gamma_d: float,
                          rho0: Union[str, DensityMatrix] = "excited",
                          method: str = "nullspace", **solver_options) -> Dict[str, Any]:
        """
        Correntes com defasagem local contra N átomos independentes

        Returns:
            Dicionário com linhas, status (independent ou collective) e razão
        """
        n_atoms = config.n_atoms
        self._require_oracle_size(n_atoms)
        state = self.initial_state(rho0, n_atoms)
        oracle = dephasing_oracle(n_atoms, config.rates, gamma_d, state, method=method, **solver_options)
        independent = individual_currents(config)
        rows = self._compare(independent, oracle.currents, "dephased")
        ratio = oracle.currents.power / independent.power if independent.power != 0 else None
        status = "independent" if gamma_d > 0 else "collective"
        passed = all(row["passed"] for row in rows) if gamma_d > 0 else True
        return {
            "rows": rows,
            "passed": passed,
            "status": status,
            "power_ratio": ratio,
            "oracle": oracle.to_dict(),
        }

    @staticmethod
    def ensure_passed(report: Dict[str, Any]) -> Dict[str, Any]:
        """
        Exige que um relatório de comparação tenha passado

        Args:
            report: resultado de compare_with_oracle ou compare_dephasing

        Returns:
            O próprio relatório

        Raises:
            VerificationError: com as linhas fora da tolerância
        """
        if report["passed"]:
            return report
        failing = [row for row in report["rows"] if not row["passed"]]
        raise VerificationError(
            f"{len(failing)} corrente(s) fora da tolerância relativa {RELATIVE_TOLERANCE:g}",
            {"failures": failing},
        )

    def get_status(self) -> Dict[str, Any]:
        from .. import __version__
        return {"version": __version__, "settings": self.settings.to_dict()}
