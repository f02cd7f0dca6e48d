import math

import numpy as np
import pytest

from ising_fidelity.errors import InvalidParameterError
from ising_fidelity.oracle.dense import dense_ground_state
from ising_fidelity.physics.chain import ParitySector, bogoliubov_theta, dispersion, momentum_grid
from ising_fidelity.physics.fits import FitResult, linear_fit
from ising_fidelity.physics.quench import (
    CriticalExponents,
    QuenchProtocol,
    QuenchRegime,
    adiabatic_finite_size,
    adiabatic_impulse_p_gs,
    classify_regime,
    evolve_mode,
    finite_size_negligible,
    ghat,
    kz_const_from_fit,
    kz_scaling,
    mode_hamiltonian,
    run_quench,
    size_sweep,
    tau_sweep,
)


def test_mode_hamiltonian_ground_vector():
    rng = np.random.default_rng(7)
    for g, k in zip(rng.uniform(-3, 3, 50), rng.uniform(0.01, math.pi - 0.01, 50)):
        energies, vectors = np.linalg.eigh(mode_hamiltonian(g, k))
        theta = float(bogoliubov_theta(g, k))
        expected = np.array([math.cos(theta / 2), -math.sin(theta / 2)])
        assert abs(vectors[:, 0] @ expected) == pytest.approx(1.0, abs=1e-12)
        lam = float(dispersion(g, k))
        assert energies == pytest.approx([-2 * lam, 2 * lam], abs=1e-12)


def test_mode_hamiltonian_rejects_unpaired_momenta():
    with pytest.raises(InvalidParameterError):
        mode_hamiltonian(1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        mode_hamiltonian(1.0, math.pi)


def test_mode_energies_sum_to_dense_ground_energy():
    g, n = 1.3, 8
    k = momentum_grid(n, ParitySector.POSITIVE).paired_momenta
    _, energy = dense_ground_state(g, n)
    assert -2 * float(np.sum(dispersion(g, k))) == pytest.approx(energy, abs=1e-10)


def test_protocol_validation_and_times():
    protocol = QuenchProtocol(10, 20.0)
    assert protocol.t_start == -100.0
    assert protocol.t_end == 0.0
    assert protocol.field_at(-30.0) == pytest.approx(1.5)
    assert QuenchProtocol.from_dict(protocol.to_dict()) == protocol
    with pytest.raises(InvalidParameterError):
        QuenchProtocol(10, 0.0)
    with pytest.raises(InvalidParameterError):
        QuenchProtocol(10, 5.0, g_start=0.0, g_end=1.0)


def test_sudden_limit_keeps_initial_state():
    protocol = QuenchProtocol(8, 1e-6)
    k = 3 * math.pi / 8
    state = evolve_mode(k, protocol)
    theta = float(bogoliubov_theta(protocol.g_start, k))
    overlap = math.cos(theta / 2) * state.amp_vac - math.sin(theta / 2) * state.amp_pair
    assert abs(overlap) ** 2 >= 1 - 1e-4
    assert state.norm == pytest.approx(1.0, abs=1e-8)


def test_adiabatic_limit():
    result = run_quench(QuenchProtocol(4, 100.0))
    assert result.p_gs_final >= 1 - 1e-3
    assert result.norm_drift <= 1e-7
    assert result.trajectory is None


def test_trajectory_near_adiabatic_finite_size():
    protocol = QuenchProtocol(20, 10.0)
    result = run_quench(protocol, record_trajectory=True, samples=201)
    assert len(result.trajectory) == 201
    assert all(0.0 <= point.p_instantaneous <= 1.0 for point in result.trajectory)
    assert result.trajectory[0].p_instantaneous == pytest.approx(1.0, abs=1e-8)
    assert result.trajectory[-1].p_instantaneous == pytest.approx(result.p_gs_final, rel=1e-9)
    assert result.trajectory[0].regime is QuenchRegime.ADIABATIC_PARA
    assert result.trajectory[-1].regime is QuenchRegime.ADIABATIC_FERRO
    assert result.p_gs_final == pytest.approx(adiabatic_finite_size(20, 10.0), rel=0.1)


def test_parallel_run_matches_serial():
    protocol = QuenchProtocol(12, 3.0)
    serial = run_quench(protocol)
    parallel = run_quench(protocol, threads=2)
    assert parallel.ln_p_gs == pytest.approx(serial.ln_p_gs, abs=1e-14)


def test_run_quench_preconditions():
    with pytest.raises(InvalidParameterError):
        run_quench(QuenchProtocol(5, 10.0))
    with pytest.raises(InvalidParameterError):
        run_quench(QuenchProtocol(6, 10.0, g_start=1.0, g_end=-1.0))
    with pytest.raises(InvalidParameterError):
        run_quench(QuenchProtocol(6, 10.0), tol=0.0)


def test_ghat_and_regimes():
    assert ghat(100.0) == pytest.approx(0.1)
    assert ghat(50.0) == pytest.approx(0.1414, abs=1e-4)
    assert classify_regime(1.5, 100.0) is QuenchRegime.ADIABATIC_PARA
    assert classify_regime(1.05, 100.0) is QuenchRegime.IMPULSE
    assert classify_regime(0.95, 100.0) is QuenchRegime.IMPULSE
    assert classify_regime(0.5, 100.0) is QuenchRegime.ADIABATIC_FERRO


def test_adiabatic_impulse_prediction():
    n, tau_q, const = 500, 50.0, 0.147
    p = adiabatic_impulse_p_gs(n, tau_q, const)
    assert math.log(p) == pytest.approx(math.log(2) - n * const / math.sqrt(tau_q))
    assert finite_size_negligible(n, tau_q)


def test_adiabatic_impulse_warns_for_small_chain(caplog):
    adiabatic_impulse_p_gs(10, 50.0)
    assert any("有限尺寸" in record.getMessage() for record in caplog.records)


def test_kz_scaling_exponents():
    assert CriticalExponents().kz_exponent == pytest.approx(0.5)
    assert CriticalExponents(z=2.0, nu=0.5, d=1.0).kz_exponent == pytest.approx(0.25)
    assert kz_scaling(100, 50.0) > kz_scaling(200, 50.0)
    assert kz_scaling(100, 50.0) == pytest.approx(math.exp(-100 * 0.14708 / math.sqrt(50.0)))
    with pytest.raises(InvalidParameterError):
        CriticalExponents(z=0.0)


def test_adiabatic_finite_size_limits():
    assert adiabatic_finite_size(10 ** 6, 1.0) == pytest.approx(0.0, abs=1e-10)
    assert adiabatic_finite_size(10, 1e6) == pytest.approx(1.0)
    assert adiabatic_finite_size(150, 50.0) == pytest.approx(1 - math.exp(-2 * math.pi ** 3 * 50 / 150 ** 2))


def test_kz_const_from_fit():
    fit = FitResult(0.693, -0.0208, 0.0, 0.0, 1.0)
    assert kz_const_from_fit(fit, tau_q=50.0) == pytest.approx(0.0208 * math.sqrt(50.0))
    assert kz_const_from_fit(FitResult(0.694, -22.065, 0.0, 0.0, 1.0), n=150) == pytest.approx(22.065 / 150)
    with pytest.raises(InvalidParameterError):
        kz_const_from_fit(fit)


@pytest.mark.slow
def test_size_sweep_fit():
    points = size_sweep(50.0, range(100, 1001, 100), threads=4)
    fit = linear_fit(points)
    assert fit.intercept == pytest.approx(0.693, abs=0.01)
    assert fit.slope == pytest.approx(-0.0208, abs=3e-4)


@pytest.mark.slow
def test_tau_sweep_fit():
    points = tau_sweep(150, [50.0 + 10 * i for i in range(11)], threads=4)
    fit = linear_fit(points)
    assert fit.intercept == pytest.approx(0.694, abs=0.005)
    assert fit.slope == pytest.approx(-22.07, abs=0.15)


@pytest.mark.slow
def test_single_size_against_fit():
    result = run_quench(QuenchProtocol(500, 50.0), threads=4)
    assert result.ln_p_gs == pytest.approx(0.693146 - 0.020800730 * 500, abs=0.05)


@pytest.mark.slow
def test_three_regime_trajectory():
    tau_q = 50.0
    result = run_quench(QuenchProtocol(150, tau_q), record_trajectory=True, threads=4)
    width = ghat(tau_q)
    early = [p.p_instantaneous for p in result.trajectory if p.g > 1 + 5 * width]
    late = [p.p_instantaneous for p in result.trajectory if p.g < 1 - 5 * width]
    window = [p.p_instantaneous for p in result.trajectory if abs(p.g - 1) < width]
    assert min(early) >= 0.99
    assert max(late) - min(late) <= 1e-3
    assert all(b <= a + 1e-6 for a, b in zip(window, window[1:]))


@pytest.mark.slow
def test_kz_exponent_at_fixed_size():
    taus = [50.0, 100.0, 200.0, 400.0]
    ln_p = [run_quench(QuenchProtocol(300, tau), threads=4).ln_p_gs for tau in taus]
    excess = [math.log(math.log(2.0) - value) for value in ln_p]
    slope, _ = np.polyfit(np.log(taus), excess, 1)
    assert slope == pytest.approx(-0.5, abs=0.03)
