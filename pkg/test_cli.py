#!/usr/bin/env python3
"""
Testes da CLI: subcomandos, resolução de configuração e formatos de saída
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import io
import json

import numpy as np
import pandas as pd
import pytest

from coopheat.cli import create_parser, main
from coopheat.cli.commands import default_commands
from coopheat.cli.figures import figure_rows
from coopheat.core.base import RunConfig, SweepAxis, SweepTable
from coopheat.core.runner import SimulationRunner
from coopheat.core.errors import InvalidConfigurationError
from coopheat.core.settings import get_settings


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def read_csv(text):
    return pd.read_csv(io.StringIO(text), comment="#")


class TestParser:
    def test_subcommands(self):
        parser = create_parser()
        args = parser.parse_args(["figure", "fig6", "--points", "5"])
        assert args.command == "figure"
        assert args.which == "fig6"
        assert args.points == 5

    def test_exclusive_temperature_flags(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args(["currents", "--x-hot", "0.2", "--hot-boltzmann", "0.5"])

    def test_no_command(self, capsys):
        code, _ = run(capsys)
        assert code == 2

    @pytest.mark.parametrize("argv", [
        ["decompose", "3", "--tol", "1e-6"],
        ["boost", "--x-eff", "1.0", "--q-max", "4"],
        ["transient", "--tol", "1e-6"],
        ["transient", "--q-max", "4"],
        ["figure", "fig6", "--tol", "1e-6"],
    ])
    def test_truncation_flags_only_where_used(self, argv):
        with pytest.raises(SystemExit) as excinfo:
            create_parser().parse_args(argv)
        assert excinfo.value.code == 2

    @pytest.mark.parametrize("command", ["pq-weights", "beta-eff", "currents", "oracle-compare", "dephasing"])
    def test_truncation_flags_accepted(self, command):
        args = create_parser().parse_args([command, "--q-max", "4", "--tol", "1e-6"])
        assert args.q_max == 4
        assert args.tol == 1e-6

    def test_truncation_keys_rejected_in_config_file(self, capsys, tmp_path):
        path = tmp_path / "transient.json"
        path.write_text(json.dumps({"n_atoms": 2, "tol": 1e-6}))
        code, _ = run(capsys, "transient", "--config", str(path))
        assert code == 2


class TestRunner:
    """Registro dos subcomandos no SimulationRunner"""

    def test_every_registered_command_has_a_subparser(self):
        parser = create_parser()
        for command in default_commands():
            with pytest.raises(SystemExit) as excinfo:
                parser.parse_args([command.name, "--help"])
            assert excinfo.value.code == 0

    def test_registered_command_runs(self):
        runner = SimulationRunner()
        for command in default_commands():
            runner.register_command(command)
        assert runner.registry.get_command("decompose").name == "decompose"
        code, table = runner.run("decompose", RunConfig(command="decompose", params={"n_atoms": 2}))
        assert code == 0
        assert table.frame["j"].tolist() == ["1", "0"]

    def test_unknown_command(self):
        runner = SimulationRunner()
        assert runner.registry.get_command("list") is None
        code, table = runner.run("list", RunConfig(command="list"))
        assert code == 2
        assert table is None


class TestDecompose:
    def test_three_atoms_csv(self, capsys):
        code, out = run(capsys, "decompose", "3")
        assert code == 0
        frame = read_csv(out)
        assert frame["j"].tolist() == ["3/2", "1/2"]
        assert frame["multiplicity"].tolist() == [1, 2]
        assert frame["dimension"].tolist() == [4, 2]
        assert out.startswith("# command: \"decompose\"")

    def test_json_format(self, capsys):
        code, out = run(capsys, "decompose", "--n-atoms", "4", "--format", "json")
        document = json.loads(out)
        assert code == 0
        assert document["columns"] == ["j", "multiplicity", "dimension"]
        assert document["metadata"]["total_dimension"] == 16
        assert document["passed"] is True

    def test_conflicting_atom_numbers(self, capsys):
        code, _ = run(capsys, "decompose", "4", "--n-atoms", "3")
        assert code == 2

    def test_missing_atom_number(self, capsys):
        code, _ = run(capsys, "decompose")
        assert code == 2


class TestConfiguration:
    """Padrões, arquivo --config e flags"""

    def test_print_config(self, capsys):
        code, out = run(capsys, "currents", "--x-hot", "0.5", "--print-config")
        resolved = json.loads(out)
        assert code == 0
        assert resolved["command"] == "currents"
        assert resolved["params"]["x_hot"] == 0.5
        assert resolved["params"]["Omega"] == 0.3
        assert resolved["format"] == "csv"

    def test_flags_override_file(self, capsys, tmp_path):
        path = tmp_path / "machine.json"
        path.write_text(json.dumps({"hot_boltzmann": 0.5, "n_atoms": 7, "format": "json"}))
        code, out = run(capsys, "currents", "--config", str(path), "--x-hot", "0.4", "--print-config")
        resolved = json.loads(out)
        assert code == 0
        assert resolved["params"]["x_hot"] == 0.4
        assert resolved["params"]["hot_boltzmann"] is None
        assert resolved["params"]["n_atoms"] == 7
        assert resolved["format"] == "json"

    def test_missing_config_file(self, capsys, tmp_path):
        code, _ = run(capsys, "decompose", "3", "--config", str(tmp_path / "missing.json"))
        assert code == 2

    def test_unknown_config_key(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"temperature": 1.0}))
        code, _ = run(capsys, "currents", "--config", str(path))
        assert code == 2

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _ = run(capsys, "boost", "--config", str(path))
        assert code == 2

    def test_settings_from_environment(self, monkeypatch):
        monkeypatch.setenv("COOPHEAT_ORACLE_MAX", "3")
        get_settings.cache_clear()
        try:
            assert get_settings().oracle_max == 3
        finally:
            monkeypatch.delenv("COOPHEAT_ORACLE_MAX")
            get_settings.cache_clear()
        assert get_settings().oracle_max == 10


class TestClosedFormCommands:
    def test_pq_weights(self, capsys):
        code, out = run(capsys, "pq-weights", "--g", "0.03", "--format", "json")
        document = json.loads(out)
        assert code == 0
        rows = {row["q"]: row for row in document["rows"]}
        assert rows[1]["numeric"] == pytest.approx(rows[1]["bessel"], abs=1e-8)
        assert document["metadata"]["residual"] < 1e-9

    def test_pq_weights_truncation(self, capsys):
        code, _ = run(capsys, "pq-weights", "--g", "1.5", "--q-max", "2")
        assert code == 2

    def test_beta_eff(self, capsys):
        code, out = run(capsys, "beta-eff", "--x-hot", "1e-4")
        assert code == 0
        assert read_csv(out)["x_eff"].iloc[0] == pytest.approx(0.511, abs=5e-3)

    def test_currents_scopes(self, capsys):
        code, out = run(capsys, "currents", "--n-atoms", "10", "--format", "json")
        document = json.loads(out)
        assert code == 0
        scopes = {row["scope"]: row for row in document["rows"]}
        assert set(scopes) == {"total", "collective", "individual"}
        assert scopes["total"]["mode"] == "engine"
        assert scopes["total"]["power"] == pytest.approx(scopes["collective"]["power"])
        assert document["metadata"]["critical_x_hot"] == pytest.approx(1.238, abs=1e-3)

    def test_refrigerator_has_no_efficiency(self, capsys):
        code, out = run(capsys, "currents", "--x-hot", "2.0", "--format", "json")
        document = json.loads(out)
        assert code == 0
        assert document["rows"][0]["mode"] == "refrigerator"
        assert document["rows"][0]["efficiency"] is None

    def test_boost_single_point(self, capsys):
        code, out = run(capsys, "boost", "--n-atoms", "2000", "--x-eff", "0.2", "--format", "json")
        row = json.loads(out)["rows"][0]
        assert code == 0
        assert row["power_ratio"] == pytest.approx(10.03, rel=1e-2)
        assert row["divergent"] is False

    def test_boost_divergent_point(self, capsys):
        code, out = run(capsys, "boost", "--sweep-min", "0", "--sweep-max", "1", "--points", "3",
                        "--scale", "linear", "--format", "json")
        rows = json.loads(out)["rows"]
        assert code == 0
        assert rows[0]["saturation_boost"] == "inf"
        assert rows[0]["divergent"] is True
        assert rows[0]["power_ratio"] == pytest.approx(34.0)

    def test_log_sweep_requires_positive_minimum(self, capsys):
        code, _ = run(capsys, "boost", "--sweep-min", "0", "--sweep-max", "1", "--scale", "log")
        assert code == 2


class TestFigures:
    def test_fig3_limits(self, capsys):
        code, out = run(capsys, "figure", "fig3", "--points", "5", "--format", "json")
        first = json.loads(out)["rows"][0]
        assert code == 0
        assert first["pi1_1.0"] == pytest.approx(5.0, abs=1e-3)
        assert first["pi1_0.5"] == pytest.approx(3.0, abs=1e-3)
        assert first["pi1_0.0"] == pytest.approx(1.0, abs=1e-3)

    def test_fig5_rows_approach_saturation(self):
        rows = figure_rows("fig5", [0.2, 1.0])
        for row in rows:
            assert row["n_5"] < row["n_10"] < row["n_50"] < row["n_100"] < row["saturation_boost"]

    def test_fig6(self, capsys):
        code, out = run(capsys, "figure", "fig6", "--points", "5", "--format", "json")
        document = json.loads(out)
        assert code == 0
        assert document["metadata"]["critical_x_hot"] == pytest.approx(1.238, abs=1e-3)
        assert document["metadata"]["hot_limit_x"] == pytest.approx(1e-4)
        first = document["rows"][0]
        assert first["x_eff"] == pytest.approx(0.511, abs=5e-3)
        assert first["power_ratio"] == pytest.approx(4.0, abs=0.2)
        assert document["rows"][-1]["mode"] == "refrigerator"

    def test_fig7(self, capsys):
        code, out = run(capsys, "figure", "fig7", "--points", "3", "--format", "json")
        first = json.loads(out)["rows"][0]
        assert code == 0
        assert first["x_eff"] == pytest.approx(0.036, abs=1e-3)
        assert first["power_ratio"] == pytest.approx(28.0, abs=2.0)
        assert first["saturation_boost"] == pytest.approx(56.0, abs=2.0)

    def test_fig6_cold_boltzmann_override(self, capsys):
        code, out = run(capsys, "figure", "fig6", "--cold-boltzmann", "0.9", "--print-config")
        params = json.loads(out)["params"]
        assert code == 0
        assert params["x_cold"] is None
        assert params["cold_boltzmann"] == 0.9

    def test_fig6_critical_temperature_uses_omega0(self, capsys):
        code, out = run(capsys, "figure", "fig6", "--omega0", "2.0", "--points", "3", "--format", "json")
        document = json.loads(out)
        assert code == 0
        # x_c (ω0 - Ω)/(ω0 + Ω) = 2.3 × 1.7/2.3
        assert document["metadata"]["critical_x_hot"] == pytest.approx(1.7, rel=1e-12)
        assert document["metadata"]["machine"]["omega0"] == 2.0


class TestReproducibility:
    def test_same_output_twice(self, capsys, tmp_path):
        path = tmp_path / "currents.csv"
        argv = ["currents", "--sweep-min", "0.1", "--sweep-max", "1.5", "--points", "7", "--output", str(path)]
        assert run(capsys, *argv)[0] == 0
        first = path.read_bytes()
        assert run(capsys, *argv)[0] == 0
        assert path.read_bytes() == first

    def test_parallel_matches_serial(self, capsys):
        argv = ["figure", "fig4", "--points", "6", "--format", "json"]
        serial = json.loads(run(capsys, *argv, "--jobs", "1")[1])
        parallel = json.loads(run(capsys, *argv, "--jobs", "2")[1])
        assert parallel["rows"] == serial["rows"]


class TestOracleCommands:
    def test_oracle_compare(self, capsys):
        code, out = run(capsys, "oracle-compare", "--n-atoms", "2", "--rho0", "product", "--format", "json")
        document = json.loads(out)
        assert code == 0
        assert document["passed"] is True
        assert [row["quantity"] for row in document["rows"]] == ["j_cold", "j_hot", "power"]

    def test_oracle_size_limit(self, capsys):
        code, _ = run(capsys, "oracle-compare", "--n-atoms", "11")
        assert code == 2

    def test_oracle_non_convergence(self, capsys):
        code, _ = run(capsys, "oracle-compare", "--n-atoms", "2", "--max-steps", "100", "--tol", "1e-15")
        assert code == 3

    def test_dephasing(self, capsys):
        code, out = run(capsys, "dephasing", "--n-atoms", "3", "--format", "json")
        document = json.loads(out)
        assert code == 0
        assert document["metadata"]["status"] == "independent"

    def test_transient(self, capsys):
        code, out = run(capsys, "transient", "--n-atoms", "3", "--t-final", "1.0", "--record-every", "1")
        frame = read_csv(out)
        assert code == 0
        assert frame["emission_rate"].iloc[0] == pytest.approx(3.0)
        assert frame["emission_rate"].max() > frame["emission_rate"].iloc[0]

    def test_transient_written_to_file(self, capsys, tmp_path):
        path = tmp_path / "transient.csv"
        code, out = run(capsys, "transient", "--n-atoms", "2", "--t-final", "0.5", "--output", str(path))
        assert code == 0
        assert out == ""
        text = path.read_text()
        assert "# peak_rate:" in text
        frame = read_csv(text)
        assert frame.columns.tolist() == ["t", "jz", "emission_rate", "residual"]
        assert frame["t"].iloc[0] == 0.0
        assert frame["jz"].iloc[0] == pytest.approx(1.0)
        assert frame["emission_rate"].iloc[0] == pytest.approx(2.0)


class TestTables:
    """Validação de eixos e tabelas"""

    @pytest.mark.parametrize("kwargs", [
        {"minimum": 1.0, "maximum": 1.0},
        {"minimum": 0.0, "maximum": 1.0, "points": 1},
        {"minimum": 0.0, "maximum": 1.0, "scale": "log"},
        {"minimum": 0.0, "maximum": 1.0, "scale": "cubic"},
        {"minimum": 0.0, "maximum": float("inf")},
    ])
    def test_invalid_axes(self, kwargs):
        with pytest.raises(InvalidConfigurationError):
            SweepAxis(name="x_eff", **kwargs)

    def test_axis_values(self):
        values = SweepAxis("x_eff", 0.01, 1.0, points=3, scale="log").values()
        assert np.allclose(values, [0.01, 0.1, 1.0])

    def test_non_finite_values_need_declaration(self):
        with pytest.raises(InvalidConfigurationError):
            SweepTable.from_rows([{"x": 1.0, "y": float("inf")}])
        with pytest.raises(InvalidConfigurationError):
            SweepTable.from_rows([{"x": 1.0, "y": float("nan")}])
        table = SweepTable.from_rows([{"x": 1.0, "y": float("inf"), "z": float("nan")}],
                                     divergent_columns=["y"], optional_columns=["z"])
        assert table.passed
        assert len(table) == 1


if __name__ == '__main__':
    pytest.main([__file__, "-v"])
