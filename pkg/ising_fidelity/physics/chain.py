"""
横场 Ising 链的自由费米子描述

H = -Σ_i (σ^x_i σ^x_{i+1} + g σ^z_i)，周期边界条件。宇称 P = Π σ^z 把希尔伯特空间分成
两个子空间：正宇称对应反周期费米子边界（动量为 π/N 的奇数倍），负宇称对应周期边界
（动量为 π/N 的偶数倍）。本模块负责动量量子化、Bogoliubov 角、色散、关联长度、
基态宇称判定以及宇称能隙积分。
"""

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np
from scipy import integrate

from ..config import DEFAULT_TOL
from ..errors import (
    AmbiguousParityError,
    CorrelationLengthDivergence,
    DegenerateModeError,
    InvalidParameterError,
    QuadratureError,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class ParitySector(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Phase(Enum):
    FERRO = "ferro"
    PARA = "para"
    CRITICAL = "critical"


def classify_phase(g: float) -> Phase:
    """按 |g| 与 1 的大小关系划分相"""
    magnitude = abs(g)
    if magnitude < 1.0:
        return Phase.FERRO
    if magnitude > 1.0:
        return Phase.PARA
    return Phase.CRITICAL


def check_size(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise InvalidParameterError(f"自旋数 n 必须是不小于 2 的整数，实际为 {n}")
    return int(n)


@dataclass(frozen=True)
class MomentumGrid:
    """
    某一宇称子空间允许的动量 k ∈ [0, π]

    动量以 π/N 的整数倍保存，需要时再换算为弧度。
    """
    n_spins: int
    sector: ParitySector
    multiples: Tuple[int, ...]

    @property
    def momenta(self) -> np.ndarray:
        return np.asarray(self.multiples, dtype=float) * math.pi / self.n_spins

    @property
    def paired_multiples(self) -> Tuple[int, ...]:
        # k = 0 与 k = π 没有 -k 伙伴，不参与配对
        return tuple(m for m in self.multiples if 0 < m < self.n_spins)

    @property
    def paired_momenta(self) -> np.ndarray:
        return np.asarray(self.paired_multiples, dtype=float) * math.pi / self.n_spins

    def __len__(self) -> int:
        return len(self.multiples)

    def to_dict(self) -> dict:
        result: dict = {}
        result["n_spins"] = self.n_spins
        result["sector"] = self.sector.value
        result["momenta"] = [float(k) for k in self.momenta]
        return result


@dataclass(frozen=True)
class ModeAngle:
    g: float
    k: float
    sin_theta: float
    cos_theta: float
    energy: float

    @property
    def theta(self) -> float:
        return math.atan2(self.sin_theta, self.cos_theta)


@dataclass(frozen=True)
class GapResult:
    """ε⁻ - ε⁺：负宇称与正宇称子空间最低能量之差"""
    g: float
    n: int
    value: float
    regime: Phase
    quadrature_error: float

    def to_dict(self) -> dict:
        result: dict = {}
        result["g"] = self.g
        result["n"] = self.n
        result["gap"] = self.value
        result["regime"] = self.regime.value
        result["quadrature_error"] = self.quadrature_error
        return result


def momentum_grid(n: int, sector: ParitySector) -> MomentumGrid:
    """
    动量量子化

    参数:
        n: 自旋数 N ≥ 2
        sector: 宇称子空间

    返回:
        正宇称: k = π/N, 3π/N, ...（偶 N 到 π-π/N，奇 N 到 π）
        负宇称: k = 0, 2π/N, ...（偶 N 到 π，奇 N 到 π-π/N）
    """
    n = check_size(n)
    start = 1 if sector is ParitySector.POSITIVE else 0
    return MomentumGrid(n, sector, tuple(range(start, n + 1, 2)))


def shifted_cos(g: float, k: ArrayLike) -> ArrayLike:
    """g - cos k，在 k→0 与 k→π 附近都不损失有效数字"""
    k = np.asarray(k, dtype=float)
    near_zero = (g - 1.0) + 2.0 * np.sin(0.5 * k) ** 2
    near_pi = (g + 1.0) - 2.0 * np.cos(0.5 * k) ** 2
    return np.where(np.cos(k) >= 0.0, near_zero, near_pi)


def dispersion(g: float, k: ArrayLike) -> ArrayLike:
    """Λ_k = √(g² - 2g cos k + 1)，准粒子能量为 2Λ_k"""
    return np.hypot(shifted_cos(g, k), np.sin(k))


def bogoliubov_theta(g: float, k: ArrayLike) -> ArrayLike:
    """向量化的 θ_k，tan θ_k = sin k / (g - cos k)，k ∈ (0, π) 时 θ_k ∈ (0, π)"""
    return np.arctan2(np.sin(k), shifted_cos(g, k))


def bogoliubov_angle(g: float, k: float) -> ModeAngle:
    """
    单个模式的 Bogoliubov 角与能量

    参数:
        g: 横场
        k: 动量（弧度）

    返回:
        ModeAngle，sinθ = sin k/Λ，cosθ = (g - cos k)/Λ，energy = 2Λ
    """
    a = float(shifted_cos(g, k))
    s = math.sin(k)
    lam = math.hypot(a, s)
    if lam <= 1e-14:
        raise DegenerateModeError(f"(g={g}, k={k}) 处 Λ_k 为零，Bogoliubov 角无定义")
    return ModeAngle(g=g, k=k, sin_theta=s / lam, cos_theta=a / lam, energy=2.0 * lam)


def correlation_length(g: float) -> float:
    """无限长链的关联长度 ξ = 1/|ln|g||"""
    if g == 0:
        raise InvalidParameterError("g = 0 处关联长度为零，不予计算")
    if abs(g) == 1.0:
        raise CorrelationLengthDivergence("临界点 |g| = 1 处关联长度发散")
    return 1.0 / abs(math.log(abs(g)))


def ground_state_parity(g: float, n: int) -> ParitySector:
    """
    基态所在宇称子空间，sign(ε⁻ - ε⁺) = sign(g^N)

    偶数 N 总在正宇称；奇数 N 在 g > 0 时为正、g < 0 时为负。
    """
    n = check_size(n)
    if n % 2 == 0:
        return ParitySector.POSITIVE
    if g == 0:
        raise AmbiguousParityError(f"奇数链 (n={n}) 在 g = 0 处基态宇称不确定")
    return ParitySector.POSITIVE if g > 0 else ParitySector.NEGATIVE


def sector_ground_energy(g: float, n: int, sector: ParitySector) -> float:
    """
    自由费米子给出的子空间最低能量

    配对动量贡献 Σ(-2cos k - 2Λ_k)；无伙伴的 k = 0、π 模式贡献 -g + 2(g - cos k)n_k。
    子空间要求费米子数的奇偶（正宇称为偶、负宇称为奇），若各模式单独取最低
    后奇偶不符，则加上代价最小的一次翻转（翻转一个无伙伴模式或拆开一对）。
    """
    grid = momentum_grid(n, sector)
    k_pair = grid.paired_momenta
    lam = dispersion(g, k_pair)
    energy = math.fsum(-2.0 * np.cos(k_pair) - 2.0 * lam)

    flip_costs = [2.0 * float(lam.min())] if lam.size else []
    occupied = 0
    for m in grid.multiples:
        if 0 < m < grid.n_spins:
            continue
        level = 2.0 * (g - 1.0) if m == 0 else 2.0 * (g + 1.0)
        filled = level < 0.0
        energy += -g + (level if filled else 0.0)
        occupied += int(filled)
        flip_costs.append(abs(level))

    want_odd = sector is ParitySector.NEGATIVE
    if (occupied % 2 == 1) != want_odd:
        energy += min(flip_costs)
    return energy


def _gap_integral(integrand, n: int, prefactor: float, tol: float) -> Tuple[float, float]:
    # 权函数 t^{N-3/2}(1-t)^{1/2} 交给 QUADPACK 的代数奇点积分处理
    scale = abs(prefactor)
    if scale == 0.0:
        return 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr = integrate.quad(
            integrand, 0.0, 1.0,
            weight="alg", wvar=(n - 1.5, 0.5),
            epsabs=min(tol / scale, 1e-13), epsrel=1e-12, limit=200,
        )
    achieved = scale * abserr
    if achieved > tol:
        raise QuadratureError(f"宇称能隙积分未收敛：误差 {achieved:.3e} > {tol:.3e}", achieved)
    return prefactor * value, achieved


def parity_gap(g: float, n: int, tol: float = DEFAULT_TOL) -> GapResult:
    """
    宇称能隙 ε⁻ - ε⁺

    参数:
        g: 横场
        n: 自旋数
        tol: 允许的绝对积分误差

    返回:
        GapResult。铁磁相用积分表达式，顺磁相为边界项 sign(g^N)(2|g|-2) 加积分，
        临界点用闭式 2tan(π/4N)·sign(g^N)。
    """
    n = check_size(n)
    if tol <= 0:
        raise InvalidParameterError(f"tol 必须为正，实际为 {tol}")

    regime = classify_phase(g)
    sign = 1.0 if (g > 0 or n % 2 == 0) else -1.0
    if regime is Phase.CRITICAL:
        return GapResult(g, n, sign * 2.0 * math.tan(math.pi / (4 * n)), regime, 0.0)

    g2 = g * g
    if regime is Phase.FERRO:
        prefactor = g ** n * 4.0 * n / math.pi

        def integrand(t):
            return math.sqrt(1.0 - g2 * t) / (1.0 - (g2 * t * t) ** n)

        value, error = _gap_integral(integrand, n, prefactor, tol)
    else:
        prefactor = g ** (-n) * 4.0 * n / math.pi

        def integrand(t):
            return math.sqrt(g2 - t) / (1.0 - (t * t / g2) ** n)

        value, error = _gap_integral(integrand, n, prefactor, tol)
        value += sign * (2.0 * abs(g) - 2.0)

    logger.debug(f"parity_gap(g={g}, n={n}) = {value:.6e}，积分误差 {error:.1e}")
    return GapResult(g, n, value, regime, error)


__all__ = [
    "ParitySector",
    "Phase",
    "MomentumGrid",
    "ModeAngle",
    "GapResult",
    "classify_phase",
    "check_size",
    "momentum_grid",
    "shifted_cos",
    "dispersion",
    "bogoliubov_theta",
    "bogoliubov_angle",
    "correlation_length",
    "ground_state_parity",
    "sector_ground_energy",
    "parity_gap",
]
