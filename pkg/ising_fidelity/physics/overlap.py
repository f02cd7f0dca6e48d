"""
有限尺寸基态保真度

F(g, δ) = |⟨g-δ|g+δ⟩| = Π_k cos((θ_k(g+δ) - θ_k(g-δ))/2)，乘积取在基态所在宇称子空间
的配对动量上，以对数求和避免 N ~ 10⁵ 时下溢。
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..config import FD_STEP
from ..errors import ParityMismatchError
from .chain import ParitySector, check_size, ground_state_parity, momentum_grid, shifted_cos
from .susceptibility import ChiResult, ChiVariant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FidelityResult:
    g: float
    delta: float
    n: int
    value: float
    log_per_site: float
    sector: ParitySector

    @property
    def log_value(self) -> float:
        return self.log_per_site * self.n

    def to_dict(self) -> dict:
        result: dict = {}
        result["g"] = self.g
        result["delta"] = self.delta
        result["n"] = self.n
        result["F"] = self.value
        result["lnF_per_site"] = self.log_per_site
        return result


def log_cos_half_angle(g: float, delta: float, k) -> np.ndarray:
    """
    ln cos((θ₊ - θ₋)/2)，θ± 为 g±δ 处的 Bogoliubov 角

    角度差直接由 atan2(-2δ sin k, a₊a₋ + sin²k) 得到，δ 很小时不损失精度。
    """
    k = np.asarray(k, dtype=float)
    s = np.sin(k)
    a_plus = shifted_cos(g + delta, k)
    a_minus = shifted_cos(g - delta, k)
    half = 0.5 * np.arctan2(-2.0 * delta * s, a_plus * a_minus + s * s)
    small = np.abs(half) < 0.5
    with np.errstate(divide="ignore"):
        return np.where(small, 0.5 * np.log1p(-np.sin(half) ** 2), np.log(np.abs(np.cos(half))))


def shared_sector(g: float, delta: float, n: int) -> ParitySector:
    """g-δ 与 g+δ 必须落在同一宇称子空间"""
    lower = ground_state_parity(g - delta, n)
    upper = ground_state_parity(g + delta, n)
    if lower is not upper:
        raise ParityMismatchError(
            f"g-δ={g - delta} 与 g+δ={g + delta} 的基态宇称不同（n={n}），保真度无定义"
        )
    return lower


def fidelity(g: float, delta: float, n: int) -> FidelityResult:
    """
    基态保真度 F(g, δ)

    参数:
        g: 平均磁场
        delta: 半偏移 δ
        n: 自旋数

    返回:
        FidelityResult，value = exp(Σ ln cos(...))，log_per_site = ln F / N
    """
    n = check_size(n)
    sector = shared_sector(g, delta, n)
    k = momentum_grid(n, sector).paired_momenta
    log_value = math.fsum(log_cos_half_angle(g, delta, k))
    return FidelityResult(g, delta, n, math.exp(log_value), log_value / n, sector)


def chi_finite_difference(g: float, n: int, h: float = FD_STEP, richardson: bool = False) -> ChiResult:
    """
    由 F = 1 - 2χh² + O(h⁴) 反解 χ

    参数:
        richardson: 为 True 时用 h 与 h/2 做一次 Richardson 外推，消去 h² 项
    """
    def estimate(step: float) -> float:
        log_value = fidelity(g, step, n).log_value
        return -math.expm1(log_value) / (2.0 * step * step)

    chi = estimate(h)
    if richardson:
        chi = (4.0 * estimate(0.5 * h) - chi) / 3.0
    return ChiResult(g, n, chi, ChiVariant.FINITE_DIFFERENCE)


def sudden_quench_probability(g1: float, g2: float, n: int) -> float:
    """磁场从 g1 突变到 g2 后仍处于新基态的概率 |⟨g1|g2⟩|² = F²((g1+g2)/2, (g2-g1)/2)"""
    result = fidelity(0.5 * (g1 + g2), 0.5 * (g2 - g1), n)
    return math.exp(2.0 * result.log_value)


def cat_state_overlap(g: float, delta: float, n: int) -> float:
    # 中心自旋模型中两支猫态分量的重叠与 F(g, δ) 相同
    return fidelity(g, delta, n).value


__all__ = [
    "FidelityResult",
    "log_cos_half_angle",
    "shared_sector",
    "fidelity",
    "chi_finite_difference",
    "sudden_quench_probability",
    "cat_state_overlap",
]
