#!/usr/bin/env python3
"""
Testes do oráculo de Lindblad contra as formas fechadas
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import linalg

from coopheat.core.errors import (
    ConvergenceError,
    InvalidArgumentError,
    InvalidConfigurationError,
    ResourceLimitError,
    VerificationError,
)
from coopheat.core.machine import CoopHeat
from coopheat.modules.engine_core import collective_currents, effective_boltzmann, individual_currents
from coopheat.modules.lindblad_oracle import (
    CrossRate,
    DensityMatrix,
    FullCollective,
    LindbladChannel,
    PreparedGenerator,
    SingleBlock,
    WithDephasing,
    build_machine_channels,
    cross_rate_symmetry,
    dicke_state,
    excited_state,
    integrate,
    lindblad_rhs,
    maximally_mixed,
    product_gibbs_state,
    product_state,
    run_oracle,
    steady_state,
    superradiant_transient,
    symmetric_gibbs_state,
    vectorized_generator,
)
from coopheat.modules.spin_algebra import SpinQuantumNumber, subspace_weights


MACHINES = {
    "separated": {},
    "flat_constant": {"modulation": "constant", "spectral_model": "flat", "x_cold": 1.0, "x_hot": 0.3},
    "flat_numeric": {"spectral_model": "flat", "weights_mode": "numeric", "g": 0.06, "x_cold": 2.0, "x_hot": 0.5},
}


def machine(name, n_atoms):
    return CoopHeat.machine_from_dict({**MACHINES[name], "n_atoms": n_atoms})


def assert_currents_close(found, expected, rel=1e-5):
    for a, b in zip(found.as_tuple(), expected.as_tuple()):
        assert a == pytest.approx(b, rel=rel, abs=1e-12 * max(abs(x) for x in expected.as_tuple()))


class TestDensityMatrix:
    def test_pure_state_normalized(self):
        rho = DensityMatrix.from_pure(np.array([1.0, 1.0]))
        assert rho.purity() == pytest.approx(1.0)
        assert rho.expectation(np.diag([0.0, 1.0])) == pytest.approx(0.5)

    def test_rejects_invalid_matrices(self):
        with pytest.raises(InvalidArgumentError):
            DensityMatrix(np.array([[1.0, 1.0], [0.0, 0.0]]))
        with pytest.raises(InvalidArgumentError):
            DensityMatrix(np.eye(2))
        with pytest.raises(InvalidArgumentError):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_product_pattern(self):
        rho = product_state("eg")
        assert rho.entries[2, 2] == pytest.approx(1.0)
        with pytest.raises(InvalidArgumentError):
            product_state("ex")

    def test_gibbs_states(self):
        symmetric = symmetric_gibbs_state(3, 0.5)
        assert subspace_weights(symmetric.entries, 3)[SpinQuantumNumber(3)] == pytest.approx(1.0)
        product = product_gibbs_state(2, 0.5)
        assert product.entries[0, 0].real == pytest.approx(1.0 / (1.0 + np.exp(-0.5)) ** 2)


class TestGenerator:
    """Gerador de Lindblad preparado, vetorizado e integração RK4"""

    def channels(self, n_atoms=2):
        return build_machine_channels(FullCollective(n_atoms), machine("flat_constant", n_atoms).rates)

    def test_prepared_matches_vectorized(self):
        rng = np.random.default_rng(7)
        channels = self.channels(2)
        raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = raw @ raw.conj().T
        rho /= np.trace(rho)
        direct = lindblad_rhs(rho, channels)
        vectorized = vectorized_generator(channels, 4) @ rho.reshape(-1, order="F")
        assert np.allclose(direct.reshape(-1, order="F"), vectorized, atol=1e-12)

    def test_generator_is_traceless(self):
        generator = PreparedGenerator(self.channels(3))
        assert abs(np.trace(generator(excited_state(3).entries))) < 1e-12

    def test_vectorized_size_limit(self):
        with pytest.raises(InvalidArgumentError):
            vectorized_generator([], 128)

    def test_negative_rate_rejected(self):
        with pytest.raises(InvalidArgumentError):
            LindbladChannel(np.eye(2), -1.0)

    def test_mismatched_dimensions(self):
        with pytest.raises(InvalidArgumentError):
            PreparedGenerator([LindbladChannel(np.eye(2), 1.0), LindbladChannel(np.eye(4), 1.0)])

    def test_trace_and_positivity_preserved(self):
        channels = self.channels(3)
        _, states = integrate(product_state("egg"), channels, t_final=5.0, record_every=50)
        for rho in states:
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
            assert linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] > -1e-9

    @given(st.sampled_from(["egg", "eeg", "geg", "ggg", "eee"]))
    @settings(max_examples=5, deadline=None)
    def test_subspace_weights_conserved(self, pattern):
        initial = subspace_weights(product_state(pattern).entries, 3)
        _, states = integrate(product_state(pattern), self.channels(3), t_final=3.0, record_every=100)
        final = subspace_weights(states[-1], 3)
        for j, weight in initial.items():
            assert final[j] == pytest.approx(weight, abs=1e-9)

    def test_single_atom_relaxes_at_twice_the_rate(self):
        gamma = 0.7
        sigma_minus = np.array([[0.0, 1.0], [0.0, 0.0]])
        drho = lindblad_rhs(maximally_mixed(2), [LindbladChannel(sigma_minus, gamma)])
        # ρ_ee = 1/2 decai a 2Γ
        assert drho[1, 1].real == pytest.approx(-gamma, abs=1e-14)
        assert drho[0, 0].real == pytest.approx(gamma, abs=1e-14)
        assert abs(drho[0, 1]) < 1e-14

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_rhs_is_hermitian(self, seed):
        rng = np.random.default_rng(seed)
        raw = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        rho = raw + raw.conj().T
        drho = lindblad_rhs(rho, self.channels(3))
        assert np.max(np.abs(drho - drho.conj().T)) < 1e-13 * max(1.0, np.max(np.abs(drho)))


class TestChannels:
    """Montagem dos canais por representação"""

    def test_single_atom_collective_equals_half_spin_block(self):
        rates = machine("separated", 1).rates
        full = build_machine_channels(FullCollective(1), rates)
        block = build_machine_channels(SingleBlock("1/2"), rates)
        assert len(full) == len(block)
        for a, b in zip(full, block):
            assert a.tag == b.tag
            assert a.rate == b.rate
            assert np.array_equal(a.jump, b.jump)

    @pytest.mark.parametrize("n_atoms", [2, 3])
    def test_zero_dephasing_adds_no_channels(self, n_atoms):
        rates = machine("flat_constant", n_atoms).rates
        base = build_machine_channels(FullCollective(n_atoms), rates)
        dephased = build_machine_channels(WithDephasing(FullCollective(n_atoms), 0.0), rates)
        assert [c.tag for c in dephased] == [c.tag for c in base]
        assert [c.rate for c in dephased] == [c.rate for c in base]
        assert all(np.array_equal(a.jump, b.jump) for a, b in zip(dephased, base))

    def test_dephasing_adds_one_channel_per_atom(self):
        rates = machine("flat_constant", 2).rates
        base = build_machine_channels(FullCollective(2), rates)
        dephased = build_machine_channels(WithDephasing(FullCollective(2), 0.5), rates)
        extra = dephased[len(base):]
        assert [c.tag for c in extra] == [("dephasing", 0, "local"), ("dephasing", 1, "local")]
        assert all(c.rate == 0.5 for c in extra)


class TestSteadyState:
    def test_single_block_reaches_gibbs(self):
        config = machine("flat_constant", 3)
        result = run_oracle(SingleBlock("3/2"), config.rates, maximally_mixed(4), method="nullspace")
        populations = np.real(np.diag(result.steady_state.entries))
        x_eff = effective_boltzmann(config).x_eff
        assert np.allclose(populations[1:] / populations[:-1], np.exp(-x_eff), rtol=1e-6)
        assert_currents_close(result.currents, collective_currents(config))

    def test_nullspace_falls_back_when_degenerate(self):
        config = machine("separated", 2)
        result = run_oracle(FullCollective(2), config.rates, dicke_state(2, 1), method="nullspace")
        assert result.nullity > 1
        assert result.method == "time_integration"

    def test_nullspace_single_atom(self):
        config = machine("separated", 1)
        result = run_oracle(FullCollective(1), config.rates, excited_state(1), method="nullspace")
        assert result.nullity == 1
        assert_currents_close(result.currents, collective_currents(config))

    def test_convergence_failure(self):
        config = machine("separated", 2)
        channels = build_machine_channels(FullCollective(2), config.rates)
        with pytest.raises(ConvergenceError) as excinfo:
            steady_state(excited_state(2), channels, tol=1e-14, max_steps=100)
        assert excinfo.value.exit_code == 3

    def test_unknown_method(self):
        with pytest.raises(InvalidArgumentError):
            steady_state(excited_state(1), [], method="euler")


class TestOracleEquivalence:
    """Correntes do oráculo iguais à soma Σ_j ⟨Π_j⟩ 𝒥(j)"""

    @pytest.mark.slow
    @pytest.mark.parametrize("name", sorted(MACHINES))
    @pytest.mark.parametrize("n_atoms", [1, 2, 3, 4])
    @pytest.mark.parametrize("rho0", ["symmetric", "product"])
    def test_matches_closed_form(self, name, n_atoms, rho0):
        report = CoopHeat().compare_with_oracle(machine(name, n_atoms), rho0=rho0)
        assert report["passed"], report["rows"]

    @pytest.mark.parametrize("name", sorted(MACHINES))
    def test_singlet_is_dark(self, name):
        report = CoopHeat().compare_with_oracle(machine(name, 2), rho0="singlet")
        assert report["passed"]
        assert report["subspace_weights"]["0"] == pytest.approx(1.0)
        for row in report["rows"]:
            assert abs(row["oracle"]) < 1e-10

    def test_size_guard(self):
        with pytest.raises(ResourceLimitError):
            CoopHeat().compare_with_oracle(machine("separated", 11))

    def test_ensure_passed(self):
        report = CoopHeat().compare_with_oracle(machine("separated", 2), rho0="product")
        assert CoopHeat.ensure_passed(report) is report

        broken = {**report, "passed": False,
                  "rows": [{**report["rows"][0], "passed": False}] + report["rows"][1:]}
        with pytest.raises(VerificationError) as excinfo:
            CoopHeat.ensure_passed(broken)
        assert excinfo.value.exit_code == 4
        assert len(excinfo.value.details["failures"]) == 1

    def test_singlet_needs_two_atoms(self):
        with pytest.raises(InvalidConfigurationError):
            CoopHeat.initial_state("singlet", 3)


class TestCrossRates:
    """Matriz de taxas cruzadas c_ij"""

    def test_uniform_matrix_is_collective(self):
        config = machine("flat_constant", 3)
        rates = config.rates
        c = rates.total_emission * np.ones((3, 3))
        cross = run_oracle(CrossRate(c), rates, dicke_state(3, 1))
        full = run_oracle(FullCollective(3), rates, dicke_state(3, 1))
        assert_currents_close(cross.currents, full.currents)
        assert_currents_close(cross.currents, collective_currents(config))

    def test_diagonal_matrix_is_independent(self):
        config = machine("flat_constant", 2)
        rates = config.rates
        c = rates.total_emission * np.eye(2)
        result = run_oracle(CrossRate(c), rates, dicke_state(2, 1), method="nullspace")
        assert_currents_close(result.currents, individual_currents(config))

    @pytest.mark.parametrize("c,classification,count", [
        (np.ones((3, 3)), "collective", 1),
        (np.eye(3), "broken", 3),
        (np.diag([1.0, 1.0, 0.0]), "partial", 2),
        (np.zeros((2, 2)), "uncoupled", 0),
    ])
    def test_symmetry_classification(self, c, classification, count):
        report = cross_rate_symmetry(c)
        assert report["classification"] == classification
        assert len(report["nonzero_eigenvalues"]) == count

    def test_invalid_matrices(self):
        with pytest.raises(InvalidConfigurationError):
            CrossRate(np.array([[1.0, 2.0], [0.0, 1.0]]))
        with pytest.raises(InvalidConfigurationError):
            CrossRate(np.array([[1.0, 2.0], [2.0, 1.0]]))
        with pytest.raises(InvalidConfigurationError):
            CrossRate(np.ones((2, 3)))


class TestDephasing:
    """Defasagem local restaura o comportamento de átomos independentes"""

    @pytest.mark.parametrize("n_atoms", [2, 3])
    @pytest.mark.parametrize("rho0", ["excited", "symmetric"])
    def test_collapse_to_independent(self, n_atoms, rho0):
        report = CoopHeat().compare_dephasing(machine("separated", n_atoms), gamma_d=1.0, rho0=rho0)
        assert report["status"] == "independent"
        assert report["passed"], report["rows"]
        assert report["power_ratio"] == pytest.approx(1.0, rel=1e-5)

    def test_without_dephasing_stays_collective(self):
        report = CoopHeat().compare_dephasing(machine("flat_constant", 2), gamma_d=0.0, rho0="symmetric",
                                              method="time_integration")
        assert report["status"] == "collective"
        assert report["power_ratio"] > 1.0

    def test_requires_atom_resolved_base(self):
        with pytest.raises(InvalidConfigurationError):
            WithDephasing(SingleBlock("1/2"), 1.0)
        with pytest.raises(InvalidArgumentError):
            WithDephasing(FullCollective(2), -0.5)


@pytest.mark.slow
class TestSuperradiantTransient:
    def test_peak_exceeds_initial_rate(self):
        result = superradiant_transient(6, t_final=3.0, record_every=10)
        assert result.initial_rate == pytest.approx(6.0, rel=1e-10)
        assert result.peak_rate > result.initial_rate
        assert result.peak_rate <= 12.0 + 1e-9
        assert result.jz[0] == pytest.approx(3.0)
        assert result.jz[-1] < result.jz[0]

    def test_single_atom_decays_without_peak(self):
        result = superradiant_transient(1, t_final=3.0, record_every=10)
        assert result.peak_index == 0
        assert result.peak_time == 0.0
        assert np.all(np.diff(result.emission_rate) <= 1e-12)
        assert result.initial_rate == pytest.approx(1.0, rel=1e-10)

    def test_frame_columns(self):
        frame = superradiant_transient(2, t_final=1.0, record_every=20).to_frame()
        assert list(frame.columns) == ["t", "jz", "emission_rate", "residual"]
        assert frame["t"].iloc[0] == 0.0

    def test_invalid_gamma(self):
        with pytest.raises(InvalidArgumentError):
            superradiant_transient(2, gamma0=0.0)


if __name__ == '__main__':
    pytest.main([__file__, "-v"])
