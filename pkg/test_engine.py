#!/usr/bin/env python3
"""
Testes da termodinâmica em forma fechada da máquina coletiva
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from coopheat.core.errors import (
    DivergenceError,
    InvalidArgumentError,
    InvalidConfigurationError,
    NoCouplingError,
)
from coopheat.modules.engine_core import (
    EffectiveTemperature,
    EnergyCurrents,
    MachineConfig,
    amplification,
    block_gibbs_populations,
    boost_limits,
    boost_ratio,
    build_currents,
    classify_mode,
    collective_currents,
    critical_hot_temperature,
    effective_boltzmann,
    individual_currents,
    normalize_subspace_weights,
    power_ratio,
    saturation_boost,
    sinusoidal_effective_boltzmann,
    sinusoidal_machine,
    sinusoidal_subspace_currents,
    subspace_currents,
    total_currents,
)
from coopheat.modules.floquet_modulation import FloquetWeights
from coopheat.modules.spin_algebra import SpinQuantumNumber
from coopheat.modules.thermal_baths import BathSpec, FlatSpectrum


OMEGA = 0.3
X_COLD = 2.3
X_COLD_WARM = -math.log(0.9)
HOT_LIMIT = 1e-4


class TestAmplification:
    """F(j) = ⟨S_- S_+⟩ no estado tipo Gibbs do bloco"""

    def test_high_temperature_values(self):
        assert amplification("1/2", 0.0) == pytest.approx(0.5)
        assert amplification("3/2", 0.0) == pytest.approx(2.5)
        assert amplification(0, 1.0) == 0.0

    def test_low_temperature_limit(self):
        for twice_j in (1, 3, 10):
            assert amplification(SpinQuantumNumber(twice_j), 60.0) == pytest.approx(twice_j, rel=1e-12)

    def test_single_atom_closed_form(self):
        x = 0.7
        assert amplification("1/2", x) == pytest.approx(1.0 / (1.0 + math.exp(-x)))

    def test_populations_normalized(self):
        populations = block_gibbs_populations("5/2", 0.4)
        assert populations.sum() == pytest.approx(1.0)
        assert np.all(np.diff(populations) < 0)

    def test_negative_temperature_rejected(self):
        with pytest.raises(InvalidArgumentError):
            amplification("1/2", -0.1)


class TestPowerBoost:
    """Razão 𝒫_coll/𝒫_ind e seus limites"""

    @pytest.mark.parametrize("n_atoms", [2, 3, 10, 100])
    def test_limits(self, n_atoms):
        low, high = boost_limits(n_atoms)
        assert power_ratio(n_atoms, 1e-8) == pytest.approx(high, rel=1e-4)
        assert power_ratio(n_atoms, 40.0) == pytest.approx(low, rel=1e-6)

    @pytest.mark.parametrize("x", [0.2, 0.5, 1.0])
    def test_saturation(self, x):
        # correção de tamanho finito: 1 - 𝒫_ratio/coth(x/2) = 2b/(N(1-b)), b = e^{-x}
        b = math.exp(-x)
        gap = 1.0 - power_ratio(2000, x) / saturation_boost(x)
        assert gap == pytest.approx(2 * b / (2000 * (1 - b)), rel=1e-6)
        assert gap < 5e-3

    def test_saturation_tight_at_moderate_temperature(self):
        assert abs(power_ratio(2000, 1.0) - saturation_boost(1.0)) / saturation_boost(1.0) < 1e-3

    def test_factor_of_ten(self):
        assert saturation_boost(0.2) == pytest.approx(10.03, rel=1e-2)
        assert power_ratio(2000, 0.2) == pytest.approx(10.03, rel=1e-2)

    def test_saturation_diverges_at_zero(self):
        with pytest.raises(DivergenceError) as excinfo:
            saturation_boost(0.0)
        assert "2/x" in excinfo.value.message

    def test_single_atom_ratio_is_one(self):
        assert power_ratio(1, 0.3) == pytest.approx(1.0)

    @given(st.integers(min_value=1, max_value=200), st.floats(min_value=1e-6, max_value=50.0))
    @settings(max_examples=80, deadline=None)
    def test_ratio_between_limits(self, n_atoms, x):
        low, high = boost_limits(n_atoms)
        ratio = power_ratio(n_atoms, x)
        assert low - 1e-9 <= ratio <= high + 1e-9

    @given(st.floats(min_value=1e-3, max_value=20.0))
    @settings(max_examples=40, deadline=None)
    def test_ratio_monotone_in_atoms(self, x):
        assert power_ratio(20, x) >= power_ratio(10, x) - 1e-12

    @given(st.integers(min_value=1, max_value=300),
           st.floats(min_value=1e-3, max_value=40.0),
           st.floats(min_value=1e-3, max_value=40.0))
    @settings(max_examples=100, deadline=None)
    def test_ratio_non_increasing_in_x(self, n_atoms, x1, x2):
        hotter, colder = sorted((x1, x2))
        assert power_ratio(n_atoms, colder) <= power_ratio(n_atoms, hotter) * (1 + 1e-10)

    @given(st.integers(min_value=1, max_value=300), st.floats(min_value=1e-3, max_value=40.0))
    @settings(max_examples=100, deadline=None)
    def test_ratio_bounded_by_saturation(self, n_atoms, x):
        assert power_ratio(n_atoms, x) <= saturation_boost(x) * (1 + 1e-12)


class TestThreeAtomFamily:
    """Potência de três átomos relativa a um átomo, em função de ⟨Π_{3/2}⟩"""

    @staticmethod
    def relative_power(pi1, x):
        return (pi1 * amplification("3/2", x) + (1 - pi1) * amplification("1/2", x)) / amplification("1/2", x)

    @pytest.mark.parametrize("pi1,expected", [(1.0, 5.0), (0.5, 3.0), (0.0, 1.0)])
    def test_high_temperature_limits(self, pi1, expected):
        assert self.relative_power(pi1, 1e-6) == pytest.approx(expected, abs=1e-3)

    def test_near_half_weight_crosses_independent_reference(self):
        values = np.array([self.relative_power(0.6, x) for x in np.linspace(1e-4, 5.0, 100)])
        assert values[0] > 3.0 > values[-1]

    def test_matches_total_currents(self):
        weights = {"3/2": 0.3, "1/2": 0.7}
        machine = sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=3, subspace_weights=weights)
        single = sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=1)
        ratio = total_currents(machine).power / total_currents(single).power
        assert ratio == pytest.approx(self.relative_power(0.3, effective_boltzmann(machine).x_eff), rel=1e-12)


class TestEffectiveTemperature:
    def test_separated_machine_hot_limit(self):
        machine = sinusoidal_machine(X_COLD, HOT_LIMIT, OMEGA)
        assert effective_boltzmann(machine).x_eff == pytest.approx(0.511, abs=5e-3)

    def test_warm_cold_bath(self):
        machine = sinusoidal_machine(X_COLD_WARM, HOT_LIMIT, OMEGA)
        assert effective_boltzmann(machine).x_eff == pytest.approx(0.036, abs=1e-3)

    def test_matches_sinusoidal_closed_form(self):
        machine = sinusoidal_machine(1.7, 0.4, OMEGA, coupling_cold=2.0, coupling_hot=0.5)
        general = effective_boltzmann(machine)
        closed = sinusoidal_effective_boltzmann(1.7, 0.4, OMEGA, coupling_cold=2.0, coupling_hot=0.5)
        assert general.x_eff == pytest.approx(closed.x_eff, rel=1e-12)

    def test_single_bath_equilibrium(self):
        bath = BathSpec("cold", 1.3, FlatSpectrum())
        machine = MachineConfig(baths=(bath,))
        assert effective_boltzmann(machine).x_eff == pytest.approx(1.3)

    def test_no_coupling(self):
        bath = BathSpec("cold", 1.0, FlatSpectrum(omega_min=2.0))
        with pytest.raises(NoCouplingError):
            effective_boltzmann(MachineConfig(baths=(bath,)))

    def test_from_x(self):
        eff = EffectiveTemperature.from_x(0.5)
        assert eff.boltzmann_factor == pytest.approx(math.exp(-0.5))
        with pytest.raises(InvalidArgumentError):
            EffectiveTemperature.from_boltzmann(1.2)


class TestCurrents:
    """Correntes estacionárias, modos e eficiência"""

    def test_first_law(self):
        machine = sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=5)
        currents = total_currents(machine)
        assert currents.j_cold + currents.j_hot + currents.power == pytest.approx(0.0, abs=1e-18)

    def test_engine_mode_and_efficiency(self):
        machine = sinusoidal_machine(X_COLD, 0.2, OMEGA)
        currents = total_currents(machine)
        assert currents.mode == "engine"
        assert currents.power < 0 < currents.j_hot
        assert currents.efficiency == pytest.approx(2 * OMEGA / (1 + OMEGA), rel=1e-9)

    def test_efficiency_independent_of_atom_number(self):
        single = collective_currents(sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=1))
        many = collective_currents(sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=100))
        assert many.efficiency == pytest.approx(single.efficiency, abs=1e-12)
        assert many.power / single.power > 1.0

    def test_refrigerator_past_critical_point(self):
        currents = total_currents(sinusoidal_machine(X_COLD, 2.0, OMEGA))
        assert currents.mode == "refrigerator"
        assert currents.efficiency is None

    def test_currents_vanish_at_critical_point(self):
        critical = critical_hot_temperature(X_COLD, 1.0, OMEGA)
        assert critical == pytest.approx(1.238, abs=1e-3)
        at_critical = total_currents(sinusoidal_machine(X_COLD, critical, OMEGA, n_atoms=100))
        reference = total_currents(sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=100))
        for value in at_critical.as_tuple():
            assert abs(value) < 1e-9 * abs(reference.j_hot)

    def test_sign_change_brackets_critical_point(self):
        critical = critical_hot_temperature(X_COLD, 1.0, OMEGA)
        below = total_currents(sinusoidal_machine(X_COLD, critical - 1e-9, OMEGA))
        above = total_currents(sinusoidal_machine(X_COLD, critical + 1e-9, OMEGA))
        assert below.j_hot > 0 > above.j_hot

    def test_critical_point_requires_drive_below_bare_frequency(self):
        with pytest.raises(InvalidConfigurationError):
            critical_hot_temperature(1.0, 1.0, 1.2)

    def test_boost_with_mostly_unexcited_cold_bath(self):
        machine = sinusoidal_machine(X_COLD, HOT_LIMIT, OMEGA, n_atoms=100)
        assert boost_ratio(machine) == pytest.approx(4.0, abs=0.2)
        eff = effective_boltzmann(machine)
        assert saturation_boost(eff.x_eff) == pytest.approx(4.0, abs=0.2)

    def test_boost_with_warm_cold_bath(self):
        machine = sinusoidal_machine(X_COLD_WARM, HOT_LIMIT, OMEGA, n_atoms=100)
        eff = effective_boltzmann(machine)
        assert boost_ratio(machine) == pytest.approx(28.0, abs=2.0)
        assert saturation_boost(eff.x_eff) == pytest.approx(56.0, abs=2.0)

    def test_collective_over_individual_equals_power_ratio(self):
        machine = sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=30)
        eff = effective_boltzmann(machine)
        collective = collective_currents(machine, eff)
        individual = individual_currents(machine, eff)
        expected = power_ratio(30, eff.x_eff)
        assert collective.power / individual.power == pytest.approx(expected, rel=1e-12)
        assert collective.j_hot / individual.j_hot == pytest.approx(expected, rel=1e-12)

    def test_sinusoidal_closed_form_channel_by_channel(self):
        machine = sinusoidal_machine(X_COLD, 0.5, OMEGA, coupling_cold=1.5, coupling_hot=0.7)
        general = subspace_currents("3/2", machine)
        closed = sinusoidal_subspace_currents("3/2", X_COLD, 0.5, OMEGA, coupling_cold=1.5, coupling_hot=0.7)
        assert general.j_cold == pytest.approx(closed.j_cold, rel=1e-10)
        assert general.j_hot == pytest.approx(closed.j_hot, rel=1e-10)

    def test_three_atom_weighting(self):
        weights = {"3/2": 1.0 / 3.0, "1/2": 2.0 / 3.0}
        machine = sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=3, subspace_weights=weights)
        eff = effective_boltzmann(machine)
        expected = (subspace_currents("3/2", machine, eff).power / 3.0
                    + 2.0 * subspace_currents("1/2", machine, eff).power / 3.0)
        assert total_currents(machine, eff).power == pytest.approx(expected, rel=1e-12)

    def test_equilibrium_has_no_currents(self):
        bath = BathSpec("cold", 1.0, FlatSpectrum())
        currents = total_currents(MachineConfig(baths=(bath,), n_atoms=3))
        assert max(abs(v) for v in currents.as_tuple()) < 1e-15
        assert currents.mode == "idle"

    @given(
        st.floats(min_value=0.3, max_value=6.0),
        st.floats(min_value=0.01, max_value=6.0),
        st.integers(min_value=1, max_value=40),
    )
    @settings(max_examples=80, deadline=None)
    def test_first_law_and_carnot_bound(self, x_cold, x_hot, n_atoms):
        assume(abs(x_hot - critical_hot_temperature(x_cold, 1.0, OMEGA)) > 1e-6)
        currents = collective_currents(sinusoidal_machine(x_cold, x_hot, OMEGA, n_atoms=n_atoms))
        scale = max(abs(currents.j_cold), abs(currents.j_hot), 1e-300)
        assert abs(currents.j_cold + currents.j_hot + currents.power) <= 1e-12 * scale
        if currents.mode == "engine":
            assert currents.efficiency <= 1.0 - x_hot / x_cold + 1e-12


class TestModeClassification:
    @pytest.mark.parametrize("j_cold,j_hot,mode", [
        (-1.0, 2.0, "engine"),
        (1.0, -2.0, "refrigerator"),
        (-1.0, -2.0, "heat_distributor"),
        (1e-20, -1e-20, "idle"),
        (-2.0, 1.0, "idle"),
    ])
    def test_modes(self, j_cold, j_hot, mode):
        assert build_currents(j_cold, j_hot, floor=1e-10).mode == mode

    def test_efficiency_only_for_engine(self):
        assert build_currents(-1.0, 2.0).efficiency == pytest.approx(0.5)
        assert build_currents(1.0, -2.0).efficiency is None

    def test_invalid_epsilon(self):
        with pytest.raises(InvalidArgumentError):
            classify_mode(EnergyCurrents(1.0, 1.0, -2.0), scale_epsilon=0.0)


class TestMachineConfig:
    def test_default_weights(self):
        machine = sinusoidal_machine(X_COLD, 0.2, OMEGA, n_atoms=4)
        assert machine.subspace_weights == {SpinQuantumNumber(4): 1.0}

    def test_weights_validation(self):
        with pytest.raises(InvalidConfigurationError):
            normalize_subspace_weights(3, {"1": 1.0})
        with pytest.raises(InvalidConfigurationError):
            normalize_subspace_weights(3, {"3/2": 0.5, "1/2": 0.4})
        with pytest.raises(InvalidConfigurationError):
            normalize_subspace_weights(3, {"3/2": 1.2, "1/2": -0.2})

    def test_duplicate_baths_rejected(self):
        with pytest.raises(InvalidConfigurationError):
            MachineConfig(baths=(BathSpec("cold", 1.0), BathSpec("cold", 2.0)))

    def test_bath_frequency_must_match(self):
        with pytest.raises(InvalidConfigurationError):
            MachineConfig(baths=(BathSpec("cold", 1.0, omega0=2.0),))

    def test_with_hot_copies(self):
        machine = sinusoidal_machine(X_COLD, 0.2, OMEGA)
        warmer = machine.with_hot(0.1)
        assert warmer.hot.x == 0.1
        assert machine.hot.x == 0.2
        assert warmer.to_dict()["baths"][1]["x"] == 0.1

    def test_invalid_atom_number(self):
        with pytest.raises(InvalidArgumentError):
            MachineConfig(baths=(BathSpec("cold", 1.0),), n_atoms=0)

    def test_unmodulated_default(self):
        machine = MachineConfig(baths=(BathSpec("cold", 1.0),))
        assert machine.weights == FloquetWeights.unmodulated()


if __name__ == '__main__':
    pytest.main([__file__, "-v"])
