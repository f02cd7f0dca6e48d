import math

import numpy as np
import pytest

from ising_fidelity.errors import InvalidParameterError
from ising_fidelity.physics.chain import ParitySector, Phase
from ising_fidelity.physics.overlap import chi_finite_difference
from ising_fidelity.physics.susceptibility import (
    ChiVariant,
    chi_asymptote,
    chi_exact,
    chi_max_location,
    chi_minus,
    chi_mode_sum,
    chi_plus,
)

G_GRID = [0.3, 0.8, 0.99, 0.9999, 1.0, 1.0001, 1.01, 1.7, 3.0, -0.6, -1.0, -1.4]
N_GRID = [4, 7, 10, 33, 100, 257]


@pytest.mark.parametrize("n", [2, 3, 10, 99, 100, 1000])
@pytest.mark.parametrize("g", [1.0, -1.0])
def test_chi_exact_at_critical_point(g, n):
    assert chi_exact(g, n).chi == pytest.approx(n * (n - 1) / 32, rel=1e-12)


@pytest.mark.parametrize("n", N_GRID)
@pytest.mark.parametrize("g", G_GRID)
def test_closed_forms_match_mode_sums(g, n):
    assert chi_plus(g, n).chi == pytest.approx(chi_mode_sum(g, n, ParitySector.POSITIVE).chi, rel=1e-11)
    assert chi_minus(g, n).chi == pytest.approx(chi_mode_sum(g, n, ParitySector.NEGATIVE).chi, rel=1e-11)


@pytest.mark.parametrize("n", [7, 50, 1000])
def test_duality(n):
    rng = np.random.default_rng(2024)
    for g in rng.uniform(0.05, 20.0, 300):
        left = g * g * chi_exact(g, n).chi
        right = chi_exact(1 / g, n).chi / (g * g)
        assert left == pytest.approx(right, rel=1e-10)


@pytest.mark.parametrize("n", [4, 5, 10, 57, 200, 400])
def test_critical_sector_ratio(n):
    ratio = chi_plus(1.0, n).chi / chi_minus(1.0, n).chi
    assert ratio == pytest.approx(3 * n / (n - 2), rel=1e-10)


def test_chi_exact_is_even_in_g():
    assert chi_exact(-0.7, 9).chi == chi_exact(0.7, 9).chi


def test_chi_exact_equals_ground_sector_sum():
    # 奇数链 g < 0 时基态在负宇称
    assert chi_exact(-0.7, 9).chi == pytest.approx(chi_mode_sum(-0.7, 9, ParitySector.NEGATIVE).chi, rel=1e-11)
    assert chi_exact(0.7, 9).chi == pytest.approx(chi_mode_sum(0.7, 9, ParitySector.POSITIVE).chi, rel=1e-11)


def test_large_chain_does_not_overflow():
    chi = chi_exact(1.5, 10 ** 6).chi
    assert math.isfinite(chi)
    assert chi == pytest.approx(chi_asymptote(1.5, 10 ** 6, Phase.PARA).chi, rel=1e-9)


@pytest.mark.parametrize("g, phase", [(3.0, Phase.PARA), (0.5, Phase.FERRO), (-2.0, Phase.PARA)])
def test_asymptotes_far_from_critical_point(g, phase):
    n = 400
    assert chi_exact(g, n).chi == pytest.approx(chi_asymptote(g, n, phase).chi, rel=1e-10)


def test_asymptote_variants():
    assert chi_asymptote(3.0, 10, Phase.PARA).variant is ChiVariant.PARA_ASYMPTOTE
    assert chi_asymptote(0.5, 10, Phase.FERRO).variant is ChiVariant.FERRO_ASYMPTOTE
    critical = chi_asymptote(1.0, 10, Phase.CRITICAL)
    assert critical.variant is ChiVariant.CRITICAL_SERIES
    assert critical.chi == pytest.approx(10 * 9 / 32)


def test_critical_series_near_critical_point():
    n = 100
    g = 1.0 + 1e-4
    assert chi_asymptote(g, n, Phase.CRITICAL).chi == pytest.approx(chi_exact(g, n).chi, rel=1e-4)


def test_asymptote_outside_its_phase_warns(caplog):
    chi_asymptote(0.5, 10, Phase.PARA)
    assert any(record.levelname == "WARNING" for record in caplog.records)


def test_asymptote_rejects_critical_point():
    with pytest.raises(InvalidParameterError):
        chi_asymptote(1.0, 10, Phase.FERRO)


def test_zero_field_rejected():
    with pytest.raises(InvalidParameterError):
        chi_plus(0.0, 6)
    with pytest.raises(InvalidParameterError):
        chi_exact(0.0, 6)


def _scanned_maximum(n):
    # u = N²(1-g) 上等距扫描，再用三点抛物线精修
    u = np.linspace(0.0, 12.0, 1201)
    chi = np.array([chi_exact(1.0 - x / n ** 2, n).chi for x in u])
    i = int(np.argmax(chi))
    left, mid, right = chi[i - 1], chi[i], chi[i + 1]
    step = u[1] - u[0]
    vertex = u[i] + 0.5 * step * (left - right) / (left - 2 * mid + right)
    return vertex / n ** 2


@pytest.mark.parametrize("n", [50, 100, 200, 500])
def test_chi_maximum_location_matches_scan(n):
    distance = chi_max_location(n)
    assert distance == pytest.approx(_scanned_maximum(n), abs=1e-3 / n ** 2)
    assert abs(distance - (6 / n ** 2 - 6 / n ** 3)) <= 20 / n ** 4


def test_chi_maximum_residual_converges():
    sizes = [50, 100, 200, 500, 1000]
    coefficients = [(chi_max_location(n) - (6 / n ** 2 - 6 / n ** 3)) * n ** 4 for n in sizes]
    assert all(12.0 < c < 20.0 for c in coefficients)
    steps = np.diff(coefficients)
    assert np.all(steps > 0)
    assert np.all(np.diff(steps) < 0)


def test_chi_maximum_requires_four_spins():
    with pytest.raises(InvalidParameterError):
        chi_max_location(3)


@pytest.mark.parametrize("g, n", [(0.7, 20), (1.0, 30), (1.6, 11)])
def test_finite_difference_matches_closed_form(g, n):
    result = chi_finite_difference(g, n, richardson=True)
    assert result.variant is ChiVariant.FINITE_DIFFERENCE
    assert result.chi == pytest.approx(chi_exact(g, n).chi, rel=1e-6)
