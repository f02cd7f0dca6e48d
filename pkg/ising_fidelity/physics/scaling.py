"""
热力学极限下的单格点保真度

N|δ| ≫ 1 时 ln F / N ≈ -|δ|·A(c)，c = (g-1)/|δ|。标度函数 A(c) 由椭圆积分给出，
c₁ = -4|c|/(|c|-1)²，c₂ = (|c|+1)²/(|c|-1)²：

    |c| < 1: A = 1/4 + |c|K(c₁)/2π + (|c|-1)·Im E(c₂)/4π
    |c| ≥ 1: A = |c|/4 - |c|K(c₁)/2π - (|c|-1)·Im E(c₂)/4π

|c| → 1 时 c₁、c₂ 发散而两支共同趋于 1/4 - 1/2π。
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Tuple

from scipy import integrate

from ..config import ONSET_THRESHOLD
from ..errors import InvalidParameterError, QuadratureError
from .chain import check_size, momentum_grid
from .elliptic import elliptic_E, elliptic_K
from .overlap import log_cos_half_angle, shared_sector

logger = logging.getLogger(__name__)

A_CRITICAL = 0.25 - 0.5 / math.pi

# ||c| - 1| 小于此值时 1 - 1/c₂ 在双精度下舍入为 1，直接取临界极限
_CRITICAL_WINDOW = 1e-7


@dataclass(frozen=True)
class ScalingPoint:
    c: float
    a_value: float
    c1: float
    c2: float

    def to_dict(self) -> dict:
        result: dict = {}
        result["c"] = self.c
        result["A"] = self.a_value
        return result


@dataclass(frozen=True)
class ThermoOnset:
    ratio: float
    reached: bool


def scaling_parameters(c: float) -> Tuple[float, float]:
    magnitude = abs(c)
    if magnitude == 1.0:
        return -math.inf, math.inf
    gap = (magnitude - 1.0) ** 2
    return -4.0 * magnitude / gap, (magnitude + 1.0) ** 2 / gap


def scaling_A(c: float) -> ScalingPoint:
    """
    标度函数 A(c)

    参数:
        c: 到临界点的相对距离 (g-1)/|δ|

    返回:
        ScalingPoint；A(c) = A(-c) > 0，A(0) = 1/4，|c| = 1 取两支的公共极限
    """
    magnitude = abs(c)
    c1, c2 = scaling_parameters(c)
    # |c| = 1 附近取两支的公共极限 1/4 - 1/2π，不做 1 ± ε 插值
    if abs(magnitude - 1.0) <= _CRITICAL_WINDOW:
        return ScalingPoint(c, A_CRITICAL, c1, c2)

    k1 = elliptic_K(c1).real
    im_e2 = elliptic_E(c2).imag
    if magnitude < 1.0:
        a_value = 0.25 + magnitude * k1 / (2.0 * math.pi) + (magnitude - 1.0) * im_e2 / (4.0 * math.pi)
    else:
        a_value = 0.25 * magnitude - magnitude * k1 / (2.0 * math.pi) - (magnitude - 1.0) * im_e2 / (4.0 * math.pi)
    return ScalingPoint(c, a_value, c1, c2)


def scaling_A_far(c: float) -> float:
    """|c| ≫ 1 时 A(c) → 1/(16|c|)"""
    if abs(c) < 1.0:
        raise InvalidParameterError(f"远离临界点的近似要求 |c| ≥ 1，实际为 {c}")
    return 1.0 / (16.0 * abs(c))


def ln_fidelity_per_site(g: float, delta: float) -> float:
    """热力学极限下的 ln F / N = -|δ|·A((g-1)/|δ|)"""
    if delta == 0:
        return 0.0
    return -abs(delta) * scaling_A((g - 1.0) / abs(delta)).a_value


def ln_fidelity_far(g: float, delta: float, n: int) -> float:
    """远离临界点（|g-1| ≫ |δ|）时 ln F ≈ -Nδ²/(16|g-1|)"""
    if g == 1.0:
        raise InvalidParameterError("ln_fidelity_far 在 g = 1 处无定义")
    return -n * delta * delta / (16.0 * abs(g - 1.0))


def _breakpoints(g: float, delta: float) -> list:
    # 被积函数在 k ~ |δ| 与 k ~ |g-1| 的尺度上变化最快
    scales = {abs(delta)}
    if g != 1.0:
        scales.add(abs(g - 1.0))
    points = set()
    for scale in scales:
        for power in range(-1, 4):
            k = scale * 10.0 ** power
            if 0.0 < k < math.pi:
                points.add(k)
    return sorted(points)


def log_cos_integral(g: float, delta: float, tol: float = 1e-12) -> float:
    """∫₀^π ln cos((θ₊-θ₋)/2) dk，相对精度 tol"""
    def integrand(k: float) -> float:
        return float(log_cos_half_angle(g, delta, k))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr = integrate.quad(
            integrand, 0.0, math.pi, points=_breakpoints(g, delta),
            epsabs=0.0, epsrel=tol, limit=500,
        )
    if abserr > 100.0 * tol * abs(value):
        raise QuadratureError(f"ln cos 积分未收敛：误差 {abserr:.3e}，积分值 {value:.3e}", abserr)
    return value


def sum_minus_integral(g: float, delta: float, n: int) -> float:
    """
    有限尺寸求和与积分之差 Σ_k ln cos(...) - (N/2π)∫₀^π ln cos(...) dk

    g = 1 且 N|δ| ≫ 1 时趋于 ln2/2。
    """
    n = check_size(n)
    if delta == 0:
        return 0.0
    sector = shared_sector(g, delta, n)
    k = momentum_grid(n, sector).paired_momenta
    total = math.fsum(log_cos_half_angle(g, delta, k))
    return total - n / (2.0 * math.pi) * log_cos_integral(g, delta)


def scaling_A_quadrature(c: float, delta: float = 1e-6, richardson: bool = True) -> float:
    """
    由积分直接计算 A(c) = -(1/2π|δ|)∫₀^π ln cos(...) dk，g = 1 + c|δ|

    参数:
        richardson: 用 δ 与 δ/2 外推到 δ → 0
    """
    def estimate(step: float) -> float:
        return -log_cos_integral(1.0 + c * step, step) / (2.0 * math.pi * step)

    value = estimate(delta)
    if richardson:
        value = 2.0 * estimate(0.5 * delta) - value
    return value


def thermo_onset(n: int, delta: float, threshold: float = ONSET_THRESHOLD) -> ThermoOnset:
    """热力学极限判据 N|δ| ≫ 1，按阈值判断"""
    ratio = n * abs(delta)
    return ThermoOnset(ratio, ratio >= threshold)


__all__ = [
    "A_CRITICAL",
    "ScalingPoint",
    "ThermoOnset",
    "scaling_parameters",
    "scaling_A",
    "scaling_A_far",
    "ln_fidelity_per_site",
    "ln_fidelity_far",
    "log_cos_integral",
    "sum_minus_integral",
    "scaling_A_quadrature",
    "thermo_onset",
]
