"""
保真度磁化率 χ

闭式表达在 |g| = 1 处是可去奇点，在 N ln|g| 很大时 |g|^N 会溢出。这里把闭式改写成
ε = ln|g|、y = Nε/2 的双曲函数组合：

    正宇称（反周期）: 16g²χ⁺ = N²/(4cosh²y) + (N/2)·sinh(y-ε)/(sinh ε·cosh y)
    负宇称（周期）  : 16g²χ⁻ = (N/2)·cosh(y-ε)/(sinh ε·sinh y) - N²/(4sinh²y)

后者在 |y| < 1 时两项都约为 1/ε² 且相互抵消，改用 coth z - 1/z 与 1/sinh²z - 1/z²
的级数形式计算。g < 0 且 N 为奇数时两个子空间的公式互换。
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import optimize

from ..errors import InvalidParameterError
from .chain import (
    ParitySector,
    Phase,
    check_size,
    classify_phase,
    momentum_grid,
    shifted_cos,
)

logger = logging.getLogger(__name__)


class ChiVariant(Enum):
    EXACT = "exact"
    POSITIVE_SECTOR = "positive_sector"
    NEGATIVE_SECTOR = "negative_sector"
    MODE_SUM = "mode_sum"
    PARA_ASYMPTOTE = "para_asymptote"
    FERRO_ASYMPTOTE = "ferro_asymptote"
    CRITICAL_SERIES = "critical_series"
    FINITE_DIFFERENCE = "finite_difference"


@dataclass(frozen=True)
class ChiResult:
    g: float
    n: int
    chi: float
    variant: ChiVariant

    def to_dict(self) -> dict:
        result: dict = {}
        result["g"] = self.g
        result["n"] = self.n
        result["chi"] = self.chi
        result["variant"] = self.variant.value
        return result


def _coth_minus_inv(z: float) -> float:
    """coth z - 1/z"""
    if abs(z) < 0.1:
        z2 = z * z
        return z * (1.0 / 3.0 + z2 * (-1.0 / 45.0 + z2 * (2.0 / 945.0 + z2 * (
            -1.0 / 4725.0 + z2 * (2.0 / 93555.0 - z2 * 1382.0 / 638512875.0)))))
    return 1.0 / math.tanh(z) - 1.0 / z


def _inv_sinh_sq_minus_inv_sq(z: float) -> float:
    """1/sinh²z - 1/z²"""
    if abs(z) < 0.1:
        z2 = z * z
        return -1.0 / 3.0 + z2 * (1.0 / 15.0 + z2 * (-2.0 / 189.0 + z2 * (
            1.0 / 675.0 + z2 * (-2.0 / 10395.0 + z2 * 15202.0 / 638512875.0))))
    return 1.0 / math.sinh(z) ** 2 - 1.0 / (z * z)


def _sinh_over_cosh(a: float, b: float) -> float:
    """sinh a / cosh b，不溢出"""
    if a == 0.0:
        return 0.0
    ratio = math.exp(abs(a) - abs(b)) * -math.expm1(-2.0 * abs(a)) / (1.0 + math.exp(-2.0 * abs(b)))
    return math.copysign(ratio, a)


def _cosh_over_sinh(a: float, b: float) -> float:
    """cosh a / sinh b，b ≠ 0"""
    ratio = math.exp(abs(a) - abs(b)) * (1.0 + math.exp(-2.0 * abs(a))) / -math.expm1(-2.0 * abs(b))
    return math.copysign(ratio, b)


def _sech_sq(y: float) -> float:
    q = math.exp(-2.0 * abs(y))
    return 4.0 * q / (1.0 + q) ** 2


def _csch_sq(y: float) -> float:
    q = math.exp(-2.0 * abs(y))
    return 4.0 * q / math.expm1(-2.0 * abs(y)) ** 2


def _antiperiodic_bracket(eps: float, n: int) -> float:
    # 16g²χ⁺ 写成 ε = ln g 的函数；对 ε 为偶函数，对偶关系由此成立
    if eps == 0.0:
        return 0.5 * n * (n - 1)
    y = 0.5 * n * eps
    return 0.25 * n * n * _sech_sq(y) + 0.5 * n * _sinh_over_cosh(y - eps, y) / math.sinh(eps)


def _periodic_bracket(eps: float, n: int) -> float:
    if eps == 0.0:
        return (n - 1) * (n - 2) / 6.0
    y = 0.5 * n * eps
    if abs(y) >= 1.0:
        return 0.5 * n * _cosh_over_sinh(y - eps, y) / math.sinh(eps) - 0.25 * n * n * _csch_sq(y)
    c_eps = _coth_minus_inv(eps)
    c_y = _coth_minus_inv(y)
    return (0.5 * n * (c_y / eps + c_eps / y + c_eps * c_y)
            - 0.25 * n * n * _inv_sinh_sq_minus_inv_sq(y) - 0.5 * n)


def _closed_form(g: float, n: int, antiperiodic: bool) -> float:
    n = check_size(n)
    if g == 0:
        raise InvalidParameterError("χ 的闭式含 1/g² 因子，g = 0 不予计算")
    eps = math.log(abs(g))
    bracket = _antiperiodic_bracket(eps, n) if antiperiodic else _periodic_bracket(eps, n)
    return bracket / (16.0 * g * g)


def chi_plus(g: float, n: int) -> ChiResult:
    """正宇称子空间动量求和的闭式结果"""
    antiperiodic = g > 0 or n % 2 == 0
    return ChiResult(g, n, _closed_form(g, n, antiperiodic), ChiVariant.POSITIVE_SECTOR)


def chi_minus(g: float, n: int) -> ChiResult:
    """负宇称子空间动量求和的闭式结果"""
    antiperiodic = g < 0 and n % 2 == 1
    return ChiResult(g, n, _closed_form(g, n, antiperiodic), ChiVariant.NEGATIVE_SECTOR)


def chi_exact(g: float, n: int) -> ChiResult:
    """
    基态保真度磁化率

    对任意 N 成立，等于正宇称闭式在 |g| 处的取值，因此关于 g ↔ -g 对称。
    """
    return ChiResult(g, n, _closed_form(abs(g), n, True), ChiVariant.EXACT)


def chi_mode_sum(g: float, n: int, sector: ParitySector) -> ChiResult:
    """(1/4)Σ_k sin²k/(g²-2g cos k+1)²，k = 0、π 的分子为零，不计入"""
    k = momentum_grid(n, sector).paired_momenta
    lam_sq = shifted_cos(g, k) ** 2 + np.sin(k) ** 2
    chi = 0.25 * math.fsum(np.sin(k) ** 2 / lam_sq ** 2)
    return ChiResult(g, n, chi, ChiVariant.MODE_SUM)


def chi_asymptote(g: float, n: int, phase: Phase) -> ChiResult:
    """
    远离临界点（N ≫ ξ）的渐近式，以及临界点附近的展开

    参数:
        g: 横场
        n: 自旋数
        phase: PARA 给出 N/(16g²(g²-1))，FERRO 给出 N/(16(1-g²))，
               CRITICAL 给出 N(N-1)/(32g²)·(1 - (N+1)/N·(N ln|g|)²/6)
    """
    n = check_size(n)
    if phase is Phase.CRITICAL:
        if g == 0:
            raise InvalidParameterError("临界展开在 g = 0 处无定义")
        x = n * math.log(abs(g))
        chi = n * (n - 1) / (32.0 * g * g) * (1.0 - (n + 1) / n * x * x / 6.0)
        return ChiResult(g, n, chi, ChiVariant.CRITICAL_SERIES)

    if abs(g) == 1.0:
        raise InvalidParameterError("渐近式在临界点 |g| = 1 处发散")
    if classify_phase(g) is not phase:
        logger.warning(f"g={g} 不在 {phase.value} 相，渐近式仅形式上成立")
    g2 = g * g
    if phase is Phase.PARA:
        return ChiResult(g, n, n / (16.0 * g2 * (g2 - 1.0)), ChiVariant.PARA_ASYMPTOTE)
    return ChiResult(g, n, n / (16.0 * (1.0 - g2)), ChiVariant.FERRO_ASYMPTOTE)


def _chi_slope(g: float, n: int) -> float:
    # dχ/dg = -Σ sin²k (g - cos k)/Λ⁶，正宇称网格
    k = momentum_grid(n, ParitySector.POSITIVE).paired_momenta
    a = shifted_cos(g, k)
    lam_sq = a * a + np.sin(k) ** 2
    return -math.fsum(np.sin(k) ** 2 * a / lam_sq ** 3)


def chi_max_location(n: int) -> float:
    """
    χ 极大值到临界点的距离 1 - g_max

    先在 u = N²(1-g) 上做有界一维极大化，再用 dχ/dg 的求根把结果精修到机器精度。
    极大值位于铁磁一侧，距离约为 6/N² - 6/N³。
    """
    n = check_size(n)
    if n < 4:
        raise InvalidParameterError(f"chi_max_location 要求 n ≥ 4，实际为 {n}")
    n2 = float(n) * n

    def objective(u: float) -> float:
        return -chi_exact(1.0 - u / n2, n).chi

    res = optimize.minimize_scalar(objective, bounds=(0.0, 3.0 * n), method="bounded",
                                   options={"xatol": 1e-12})
    g_max = 1.0 - res.x / n2

    width = 1e-3 / n2
    lo, hi = g_max - width, min(g_max + width, 1.0)
    if _chi_slope(lo, n) > 0.0 > _chi_slope(hi, n):
        g_max = optimize.brentq(_chi_slope, lo, hi, args=(n,), xtol=1e-16)
    else:
        logger.debug(f"n={n} 的导数求根区间无变号，保留极大化结果")
    return 1.0 - g_max


__all__ = [
    "ChiVariant",
    "ChiResult",
    "chi_plus",
    "chi_minus",
    "chi_exact",
    "chi_mode_sum",
    "chi_asymptote",
    "chi_max_location",
]
