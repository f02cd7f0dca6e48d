import math

import numpy as np
import pytest

from ising_fidelity.config import SCALING_EPS
from ising_fidelity.errors import InvalidParameterError
from ising_fidelity.physics.elliptic import elliptic_E, elliptic_K, elliptic_quadrature, elliptic_self_test
from ising_fidelity.physics.overlap import fidelity
from ising_fidelity.physics.scaling import (
    A_CRITICAL,
    ln_fidelity_far,
    ln_fidelity_per_site,
    scaling_A,
    scaling_A_far,
    scaling_A_quadrature,
    scaling_parameters,
    sum_minus_integral,
    thermo_onset,
)


def test_elliptic_reference_values():
    assert elliptic_K(0.0).real == pytest.approx(math.pi / 2, rel=1e-15)
    assert elliptic_E(0.0).real == pytest.approx(math.pi / 2, rel=1e-15)
    assert elliptic_K(0.5).real == pytest.approx(1.8540746773013719, rel=1e-14)
    assert elliptic_E(0.5).real == pytest.approx(1.3506438810476755, rel=1e-14)
    assert elliptic_E(1.0).real == pytest.approx(1.0, rel=1e-15)


def test_elliptic_K_diverges_at_one():
    with pytest.raises(InvalidParameterError):
        elliptic_K(1.0)


@pytest.mark.parametrize("m", [1.5, 4.0, 37.0])
def test_continuation_above_one(m):
    k_ref, e_ref = elliptic_quadrature(m)
    assert elliptic_K(m).value == pytest.approx(k_ref, rel=1e-10)
    assert elliptic_E(m).value == pytest.approx(e_ref, rel=1e-10)
    assert elliptic_E(m).imag > 0
    assert elliptic_K(m).imag < 0


def test_elliptic_self_test():
    report = elliptic_self_test()
    assert report["real_K"] <= 1e-12
    assert report["real_E"] <= 1e-12
    assert report["complex_K"] <= 1e-10
    assert report["complex_E"] <= 1e-10


def test_scaling_parameters():
    c1, c2 = scaling_parameters(3.0)
    assert c1 == pytest.approx(-3.0)
    assert c2 == pytest.approx(4.0)
    assert scaling_parameters(-1.0) == (-math.inf, math.inf)


def test_scaling_function_at_origin():
    assert scaling_A(0.0).a_value == pytest.approx(0.25, abs=1e-15)


@pytest.mark.parametrize("c", [0.3, 0.999, 1.5, 4.0, 25.0])
def test_scaling_function_is_even_and_positive(c):
    assert scaling_A(c).a_value == scaling_A(-c).a_value
    assert scaling_A(c).a_value > 0


def test_scaling_function_continuity_at_unit_c():
    assert scaling_A(1.0).a_value == A_CRITICAL
    lower = scaling_A(1.0 - SCALING_EPS).a_value
    upper = scaling_A(1.0 + SCALING_EPS).a_value
    assert 0.5 * (lower + upper) == pytest.approx(A_CRITICAL, abs=2e-3)
    assert lower == pytest.approx(A_CRITICAL, abs=5e-3)
    assert upper == pytest.approx(A_CRITICAL, abs=5e-3)


@pytest.mark.parametrize("c", [0.0, 0.5, -0.8, 2.0, -3.0])
def test_scaling_function_matches_quadrature(c):
    assert scaling_A(c).a_value == pytest.approx(scaling_A_quadrature(c), rel=1e-5)


def test_far_from_critical_tail():
    assert scaling_A(1000.0).a_value == pytest.approx(scaling_A_far(1000.0), rel=1e-2)
    assert scaling_A_far(4.0) == pytest.approx(1 / 64)
    with pytest.raises(InvalidParameterError):
        scaling_A_far(0.5)


def test_ln_fidelity_forms():
    assert ln_fidelity_per_site(1.3, 0.0) == 0.0
    assert ln_fidelity_per_site(1.0, 0.02) == pytest.approx(-0.02 / 4)
    assert ln_fidelity_far(1.5, 0.01, 100) == pytest.approx(-100 * 1e-4 / 8)
    with pytest.raises(InvalidParameterError):
        ln_fidelity_far(1.0, 0.01, 100)


def test_thermo_onset():
    onset = thermo_onset(1000, 0.01)
    assert onset.ratio == pytest.approx(10.0)
    assert onset.reached
    assert not thermo_onset(100, 0.01).reached


@pytest.mark.parametrize("c", [-2.5 + 0.5 * i for i in range(11)])
def test_finite_chain_reaches_scaling_limit(c):
    n, delta = 10 ** 5, math.pi / 1000
    ratio = fidelity(1.0 + c * delta, delta, n).log_value / (n * delta)
    assert ratio == pytest.approx(-scaling_A(c).a_value, rel=0.02)


def _scaling_deviation(c, n, delta):
    ratio = fidelity(1.0 + c * delta, delta, n).log_value / (n * delta)
    return ratio / -scaling_A(c).a_value - 1.0


@pytest.mark.parametrize("c", [3.0, 3.5, 4.0])
def test_scaling_deviation_is_linear_in_delta(c):
    n, delta = 10 ** 5, math.pi / 1000
    coarse = _scaling_deviation(c, n, delta)
    fine = _scaling_deviation(c, n, 0.5 * delta)
    assert coarse < 0.0
    assert fine / coarse == pytest.approx(0.5, abs=0.05)


def test_far_tail_example():
    assert scaling_A_far(100.0) == pytest.approx(0.000625)
    assert 0.99 <= scaling_A(100.0).a_value / scaling_A_far(100.0) <= 1.01


def test_far_form_matches_finite_chain():
    n, delta, g = 10 ** 5, 1e-4, 1.01
    assert fidelity(g, delta, n).log_value == pytest.approx(ln_fidelity_far(g, delta, n), rel=0.05)


def test_critical_log_fidelity_is_linear_in_delta():
    n = 10 ** 6
    deltas = np.logspace(-4, -2, 9)
    values = [-fidelity(1.0, float(delta), n).log_per_site for delta in deltas]
    slope, _ = np.polyfit(np.log(deltas), np.log(values), 1)
    assert 0.99 <= slope <= 1.01


def test_orthogonality_catastrophe_correction():
    delta = 1e-3
    excess = []
    for n in (10 ** 3, 10 ** 4, 10 ** 5):
        per_site = fidelity(1.0, delta, n).log_per_site
        excess.append(n * (per_site + delta * scaling_A(0.0).a_value))
    errors = [abs(x - math.log(2) / 2) for x in excess]
    assert errors[-1] < errors[0]
    assert errors[-1] < 5e-3


@pytest.mark.parametrize("n, delta", [(20000, 0.01), (100000, 0.002)])
def test_subleading_term_at_critical_point(n, delta):
    assert sum_minus_integral(1.0, delta, n) == pytest.approx(math.log(2) / 2, abs=1e-3)
