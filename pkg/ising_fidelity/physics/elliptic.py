"""
第一类、第二类完全椭圆积分

约定参数 m 乘在 sin²φ 上：K(m) = ∫₀^{π/2} (1 - m sin²φ)^{-1/2} dφ，E(m) = ∫₀^{π/2} (1 - m sin²φ)^{1/2} dφ。
m ≤ 1 时用 Carlson 对称形式 R_F、R_D、R_G；m > 1 时按主值平方根解析延拓，
经倒数参数变换化为 (0, 1) 内的实值 Carlson 积分：

    K(m) = [K(1/m) - i·K(1-1/m)]/√m
    E(m) = [K(q) - D(q)]/√m + i·√m·p·[K(p) - D(p)]，q = 1/m，p = 1 - 1/m

其中 D(x) = R_D(0, 1-x, 1)/3 = (K(x) - E(x))/x。
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy import integrate, special

from ..errors import InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EllipticValue:
    parameter: float
    value: complex

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag


def _k_real(m: float) -> float:
    return float(special.elliprf(0.0, 1.0 - m, 1.0))


def _e_real(m: float) -> float:
    return float(2.0 * special.elliprg(0.0, 1.0 - m, 1.0))


def _k_minus_d(m: float) -> float:
    # K(m) - (K(m) - E(m))/m，m → 0 时无抵消
    return _k_real(m) - float(special.elliprd(0.0, 1.0 - m, 1.0)) / 3.0


def elliptic_K(m: float) -> EllipticValue:
    """第一类完全椭圆积分，m = 1 处发散"""
    if m == 1.0:
        raise InvalidParameterError("K(m) 在 m = 1 处对数发散")
    if m < 1.0:
        return EllipticValue(m, complex(_k_real(m), 0.0))
    root = math.sqrt(m)
    return EllipticValue(m, complex(_k_real(1.0 / m), -_k_real((m - 1.0) / m)) / root)


def elliptic_E(m: float) -> EllipticValue:
    """第二类完全椭圆积分，m > 1 时虚部取正（主值平方根）"""
    if m <= 1.0:
        return EllipticValue(m, complex(_e_real(m), 0.0))
    root = math.sqrt(m)
    p = (m - 1.0) / m
    real = _k_minus_d(1.0 / m) / root
    imag = root * p * _k_minus_d(p)
    return EllipticValue(m, complex(real, imag))


def _quad(f, a: float, b: float, wvar: Tuple[float, float] = None) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if wvar is None:
            return integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-13, limit=400)[0]
        return integrate.quad(f, a, b, weight="alg", wvar=wvar, epsabs=0.0, epsrel=1e-13, limit=400)[0]


def elliptic_quadrature(m: float) -> Tuple[complex, complex]:
    """
    直接对定义式做数值积分，作为 Carlson 实现的参照

    m > 1 时被积函数在 φ₀ = arcsin(1/√m) 处有平方根支点，利用
    1 - m sin²φ = m·sin(φ₀-φ)·sin(φ₀+φ) 把奇异因子交给代数权函数。

    返回:
        (K(m), E(m))；m = 1 时 K 返回 inf
    """
    if m <= 1.0:
        e_value = _quad(lambda phi: math.sqrt(1.0 - m * math.sin(phi) ** 2), 0.0, 0.5 * math.pi)
        if m == 1.0:
            return complex(math.inf, 0.0), complex(e_value, 0.0)
        k_value = _quad(lambda phi: 1.0 / math.sqrt(1.0 - m * math.sin(phi) ** 2), 0.0, 0.5 * math.pi)
        return complex(k_value, 0.0), complex(e_value, 0.0)

    root = math.sqrt(m)
    phi0 = math.asin(1.0 / root)

    def smooth(x: float, phi: float) -> float:
        # √m·√(sin x / x)·√(sin(φ₀+φ))，x 为到支点的距离
        return root * math.sqrt(np.sinc(x / math.pi) * math.sin(phi0 + phi))

    re_e = _quad(lambda phi: smooth(phi0 - phi, phi), 0.0, phi0, wvar=(0.0, 0.5))
    im_e = _quad(lambda phi: smooth(phi - phi0, phi), phi0, 0.5 * math.pi, wvar=(0.5, 0.0))
    re_k = _quad(lambda phi: 1.0 / smooth(phi0 - phi, phi), 0.0, phi0, wvar=(0.0, -0.5))
    im_k = _quad(lambda phi: 1.0 / smooth(phi - phi0, phi), phi0, 0.5 * math.pi, wvar=(-0.5, 0.0))
    return complex(re_k, -im_k), complex(re_e, im_e)


def elliptic_self_test(real_points: int = 41, complex_points: int = 25) -> Dict[str, float]:
    """
    在 m ∈ [-10, 0.999] 与 m ∈ (1, 50] 上比较 Carlson 结果与定义式积分

    返回:
        各分支 K、E 的最大相对误差
    """
    report = {"real_K": 0.0, "real_E": 0.0, "complex_K": 0.0, "complex_E": 0.0}
    grids = {
        "real": np.linspace(-10.0, 0.999, real_points),
        "complex": np.linspace(1.02, 50.0, complex_points),
    }
    for branch, grid in grids.items():
        for m in grid:
            k_ref, e_ref = elliptic_quadrature(float(m))
            k_err = abs(elliptic_K(float(m)).value - k_ref) / abs(k_ref)
            e_err = abs(elliptic_E(float(m)).value - e_ref) / abs(e_ref)
            report[f"{branch}_K"] = max(report[f"{branch}_K"], k_err)
            report[f"{branch}_E"] = max(report[f"{branch}_E"], e_err)
    logger.info(f"椭圆积分自检: {report}")
    return report


__all__ = [
    "EllipticValue",
    "elliptic_K",
    "elliptic_E",
    "elliptic_quadrature",
    "elliptic_self_test",
]
