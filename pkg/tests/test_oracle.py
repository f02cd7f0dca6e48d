import math

import numpy as np
import pytest

from ising_fidelity.errors import InvalidParameterError
from ising_fidelity.oracle.dense import (
    dense_ground_state,
    dense_hamiltonian,
    oracle_fidelity,
    oracle_parity_gap,
    oracle_quench,
    parity_diagonal,
)
from ising_fidelity.physics.chain import ParitySector, ground_state_parity, parity_gap, sector_ground_energy
from ising_fidelity.physics.overlap import fidelity
from ising_fidelity.physics.quench import QuenchProtocol, run_quench


@pytest.mark.parametrize("g", [0.0, 0.4, 1.0, 2.5])
def test_two_site_ground_energy(g):
    _, energy = dense_ground_state(g, 2)
    assert energy == pytest.approx(-2 * math.sqrt(1 + g * g), abs=1e-12)


def test_classical_and_paramagnetic_limits():
    assert dense_ground_state(0.0, 4)[1] == pytest.approx(-4.0, abs=1e-12)
    energy = dense_ground_state(10.0, 4)[1]
    assert -41.0 < energy < -40.0


@pytest.mark.parametrize("n", [3, 4, 7, 8])
def test_hamiltonian_commutes_with_parity(n):
    rng = np.random.default_rng(n)
    parity = np.diag(parity_diagonal(n))
    for g in rng.uniform(-2, 2, 3):
        h = dense_hamiltonian(g, n)
        assert np.linalg.norm(h @ parity - parity @ h) < 1e-12
        assert np.allclose(h, h.T)


def test_dense_state_invariants():
    state, _ = dense_ground_state(0.8, 6, ParitySector.NEGATIVE)
    assert state.amplitudes.shape == (64,)
    assert np.linalg.norm(state.amplitudes) == pytest.approx(1.0, abs=1e-12)
    flipped = parity_diagonal(6) * state.amplitudes
    assert np.linalg.norm(flipped + state.amplitudes) < 1e-10


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("g", [0.3, 1.0, 1.7])
def test_sector_energies_match_free_fermions(g, n):
    for sector in ParitySector:
        _, energy = dense_ground_state(g, n, sector)
        assert energy == pytest.approx(sector_ground_energy(g, n, sector), abs=1e-10)


@pytest.mark.parametrize("n", range(2, 12))
def test_ground_state_parity_matches_sector_minimum(n):
    grid = np.concatenate([np.linspace(0.3, 2.5, 25), -np.linspace(0.3, 2.5, 25)])
    for g in grid:
        _, e_plus = dense_ground_state(g, n, ParitySector.POSITIVE)
        _, e_minus = dense_ground_state(g, n, ParitySector.NEGATIVE)
        expected = ParitySector.POSITIVE if e_plus < e_minus else ParitySector.NEGATIVE
        assert ground_state_parity(g, n) is expected


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
@pytest.mark.parametrize("g", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("delta", [0.01, 0.1])
def test_fidelity_matches_dense_overlap(g, delta, n):
    assert fidelity(g, delta, n).value == pytest.approx(oracle_fidelity(g, delta, n), abs=1e-8)


def test_oracle_fidelity_at_zero_shift():
    assert oracle_fidelity(0.7, 0.0, 6) == pytest.approx(1.0, abs=1e-12)


def test_critical_two_site_gap():
    assert oracle_parity_gap(1.0, 2) == pytest.approx(2 * math.tan(math.pi / 8), abs=1e-10)


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("g", [0.5, 0.9, 1.0, 1.3, 2.0, -0.6, -1.0, -1.5])
def test_parity_gap_matches_dense(g, n):
    assert parity_gap(g, n).value == pytest.approx(oracle_parity_gap(g, n), abs=1e-6)


def test_oracle_size_limit():
    with pytest.raises(InvalidParameterError):
        dense_ground_state(1.0, 13)
    with pytest.raises(InvalidParameterError):
        oracle_quench(QuenchProtocol(12, 1.0))


def test_oracle_quench_sudden_limit():
    n = 6
    protocol = QuenchProtocol(n, 1e-6)
    start, _ = dense_ground_state(protocol.g_start, n, ParitySector.POSITIVE)
    end, _ = dense_ground_state(protocol.g_end, n, ParitySector.POSITIVE)
    assert oracle_quench(protocol) == pytest.approx(start.overlap(end) ** 2, abs=1e-6)


@pytest.mark.parametrize("tau_q", [1.0, 5.0])
def test_mode_quench_matches_full_state(tau_q):
    protocol = QuenchProtocol(8, tau_q)
    assert run_quench(protocol).p_gs_final == pytest.approx(oracle_quench(protocol), abs=1e-6)


@pytest.mark.slow
def test_mode_quench_matches_full_state_slow_ramp():
    protocol = QuenchProtocol(8, 20.0)
    assert run_quench(protocol).p_gs_final == pytest.approx(oracle_quench(protocol), abs=1e-6)
