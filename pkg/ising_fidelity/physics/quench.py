"""
线性淬火 g(t) = -t/τ_Q 下的动力学

每个正宇称动量 k 在基 (|vac_k⟩, c_k†c_{-k}†|vac_k⟩) 中是独立的二能级问题，
p_GS(t) = Π_k |⟨gs_k(g(t))|ψ_k(t)⟩|²。各模式彼此独立，按对数重叠求和归约。
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Any, Iterable, List, Optional, Tuple

import numpy as np
from scipy import integrate

from ..base.data_utils import from_float, from_int
from ..base.parallel import parallel_map
from ..config import DEFAULT_TOL, FINITE_SIZE_FACTOR, G_END, G_START, KZ_CONST, TRAJECTORY_SAMPLES
from ..errors import IntegrationError, InvalidParameterError
from .chain import ParitySector, check_size, momentum_grid, shifted_cos
from .fits import FitResult

logger = logging.getLogger(__name__)

# DOP853 每个接受步消耗 12 次右端函数求值
_EVALS_PER_STEP = 12


@dataclass(frozen=True)
class QuenchProtocol:
    """淬火协议，时间与磁场由 t = -g·τ_Q 互换"""
    n_spins: int
    tau_q: float
    g_start: float = G_START
    g_end: float = G_END

    def __post_init__(self):
        check_size(self.n_spins)
        if not self.tau_q > 0:
            raise InvalidParameterError(f"τ_Q 必须为正，实际为 {self.tau_q}")
        if not self.g_start > self.g_end:
            raise InvalidParameterError(f"要求 g_start > g_end，实际为 {self.g_start} ≤ {self.g_end}")

    @property
    def t_start(self) -> float:
        return -self.g_start * self.tau_q

    @property
    def t_end(self) -> float:
        return -self.g_end * self.tau_q

    def field_at(self, t: float) -> float:
        return -t / self.tau_q

    @staticmethod
    def from_dict(obj: Any) -> 'QuenchProtocol':
        assert isinstance(obj, dict)
        n_spins = from_int(obj.get("n_spins"))
        tau_q = from_float(obj.get("tau_q"))
        g_start = from_float(obj.get("g_start", G_START))
        g_end = from_float(obj.get("g_end", G_END))
        return QuenchProtocol(n_spins, tau_q, g_start, g_end)

    def to_dict(self) -> dict:
        result: dict = {}
        result["n_spins"] = from_int(self.n_spins)
        result["tau_q"] = from_float(self.tau_q)
        result["g_start"] = from_float(self.g_start)
        result["g_end"] = from_float(self.g_end)
        return result


@dataclass(frozen=True)
class ModeState:
    k: float
    amp_vac: complex
    amp_pair: complex

    @property
    def norm(self) -> float:
        return math.sqrt(abs(self.amp_vac) ** 2 + abs(self.amp_pair) ** 2)


class QuenchRegime(Enum):
    ADIABATIC_PARA = "adiabatic_para"
    IMPULSE = "impulse"
    ADIABATIC_FERRO = "adiabatic_ferro"


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    g: float
    p_instantaneous: float
    regime: QuenchRegime

    def to_dict(self) -> dict:
        result: dict = {}
        result["t"] = self.t
        result["g"] = self.g
        result["p_instantaneous"] = self.p_instantaneous
        result["regime"] = self.regime.value
        return result


@dataclass(frozen=True)
class QuenchResult:
    protocol: QuenchProtocol
    p_gs_final: float
    ln_p_gs: float
    trajectory: Optional[Tuple[TrajectoryPoint, ...]]
    norm_drift: float

    def to_dict(self) -> dict:
        result: dict = {}
        result["protocol"] = self.protocol.to_dict()
        result["p_gs_final"] = self.p_gs_final
        result["ln_p_gs"] = self.ln_p_gs
        result["norm_drift"] = self.norm_drift
        if self.trajectory is not None:
            result["trajectory"] = [point.to_dict() for point in self.trajectory]
        return result


@dataclass(frozen=True)
class CriticalExponents:
    z: float = 1.0
    nu: float = 1.0
    d: float = 1.0

    def __post_init__(self):
        if min(self.z, self.nu, self.d) <= 0:
            raise InvalidParameterError(f"临界指数必须为正: z={self.z}, ν={self.nu}, d={self.d}")

    @property
    def kz_exponent(self) -> float:
        """Kibble-Zurek 指数 dν/(1+zν)，Ising 情形为 1/2"""
        return self.d * self.nu / (1.0 + self.z * self.nu)


@dataclass(frozen=True)
class _ModeOutcome:
    state: ModeState
    log_overlap: float
    log_samples: Optional[np.ndarray]
    steps: int
    norm_drift: float


def _check_momentum(k: float) -> None:
    if not 0.0 < k < math.pi:
        raise InvalidParameterError(f"模式动量必须在 (0, π) 内，实际为 {k}")


def mode_hamiltonian(g: float, k: float) -> np.ndarray:
    """
    单模式哈密顿量 H_k = 2[-(g - cos k)σ^z + sin k·σ^x]

    基为 (|vac_k⟩, c_k†c_{-k}†|vac_k⟩)，本征值 ±2Λ_k，基态为 (cos(θ_k/2), -sin(θ_k/2))。
    """
    _check_momentum(k)
    a = float(shifted_cos(g, k))
    s = math.sin(k)
    return 2.0 * np.array([[-a, s], [s, a]])


def _ground_vector(g: float, k: float) -> np.ndarray:
    half = 0.5 * math.atan2(math.sin(k), float(shifted_cos(g, k)))
    return np.array([math.cos(half), -math.sin(half)])


def _instantaneous_log_overlap(g: np.ndarray, k: float, psi: np.ndarray) -> np.ndarray:
    # ln |⟨gs_k(g)|ψ⟩|²，g 与 ψ 的列一一对应
    half = 0.5 * np.arctan2(math.sin(k), shifted_cos(g, k))
    overlap = np.cos(half) * psi[0] - np.sin(half) * psi[1]
    with np.errstate(divide="ignore"):
        return np.log(np.abs(overlap) ** 2)


def _mode_rhs(t: float, psi: np.ndarray, cos_k: float, sin_k: float, tau_q: float) -> np.ndarray:
    a = -t / tau_q - cos_k
    return -2j * np.array([-a * psi[0] + sin_k * psi[1], sin_k * psi[0] + a * psi[1]])


def _solve_mode(k: float, protocol: QuenchProtocol, tol: float, t_eval: Optional[np.ndarray]) -> _ModeOutcome:
    psi0 = _ground_vector(protocol.g_start, k).astype(complex)
    sol = integrate.solve_ivp(
        _mode_rhs, (protocol.t_start, protocol.t_end), psi0,
        method="DOP853", rtol=tol, atol=tol, t_eval=t_eval,
        args=(math.cos(k), math.sin(k), protocol.tau_q),
    )
    if not sol.success:
        raise IntegrationError(f"k={k} 的模式积分失败: {sol.message}", k)

    final = sol.y[:, -1]
    norms = np.abs(sol.y[0]) ** 2 + np.abs(sol.y[1]) ** 2
    log_samples = None
    if t_eval is not None:
        log_samples = _instantaneous_log_overlap(-sol.t / protocol.tau_q, k, sol.y)

    steps = max(1, sol.nfev // _EVALS_PER_STEP)
    drift = float(np.max(np.abs(norms - 1.0)))
    log_overlap = float(_instantaneous_log_overlap(np.array([protocol.g_end]), k, final[:, None])[0])
    if drift > 10.0 * tol * steps:
        logger.warning(f"k={k:.6f} 的范数漂移 {drift:.2e} 超过 10·tol·步数 = {10.0 * tol * steps:.2e}")
    logger.debug(f"k={k:.6f}: 右端求值 {sol.nfev} 次，约 {steps} 步，范数漂移 {drift:.2e}")
    state = ModeState(k, complex(final[0]), complex(final[1]))
    return _ModeOutcome(state, log_overlap, log_samples, steps, drift)


def evolve_mode(k: float, protocol: QuenchProtocol, tol: float = DEFAULT_TOL) -> ModeState:
    """
    求解 i dψ_k/dt = H_k(g(t))ψ_k，从 g_start 的模式基态出发

    参数:
        k: 动量 ∈ (0, π)
        protocol: 淬火协议
        tol: 自适应步长的相对与绝对容差

    返回:
        t = -g_end·τ_Q 时刻的 ModeState
    """
    _check_momentum(k)
    if not tol > 0:
        raise InvalidParameterError(f"tol 必须为正，实际为 {tol}")
    return _solve_mode(k, protocol, tol, None).state


def run_quench(protocol: QuenchProtocol, tol: float = DEFAULT_TOL, record_trajectory: bool = False,
               samples: int = TRAJECTORY_SAMPLES, threads: int = 1) -> QuenchResult:
    """
    演化正宇称子空间的全部模式，给出终态处于瞬时基态的概率

    参数:
        protocol: 淬火协议，n_spins 须为偶数，g_start、g_end ≥ 0
        tol: 积分容差
        record_trajectory: 是否记录 p_GS(t) 轨迹
        samples: 轨迹采样点数
        threads: 并行进程数

    返回:
        QuenchResult
    """
    n = protocol.n_spins
    if n % 2 == 1:
        raise InvalidParameterError(f"淬火只对偶数链定义，实际 n={n}")
    if protocol.g_end < 0:
        raise InvalidParameterError(f"要求 g_start、g_end ≥ 0，实际 g_end={protocol.g_end}")
    if not tol > 0:
        raise InvalidParameterError(f"tol 必须为正，实际为 {tol}")

    t_eval = None
    if record_trajectory:
        if samples < 2:
            raise InvalidParameterError(f"轨迹采样点数至少为 2，实际为 {samples}")
        t_eval = np.linspace(protocol.t_start, protocol.t_end, samples)

    momenta = [float(k) for k in momentum_grid(n, ParitySector.POSITIVE).paired_momenta]
    task = partial(_solve_mode, protocol=protocol, tol=tol, t_eval=t_eval)
    logger.info(f"开始淬火: N={n}, τ_Q={protocol.tau_q}, g {protocol.g_start} → {protocol.g_end}，共 {len(momenta)} 个模式")
    outcomes: List[_ModeOutcome] = parallel_map(task, momenta, threads)

    ln_p = math.fsum(outcome.log_overlap for outcome in outcomes)
    p_final = min(1.0, math.exp(ln_p))
    drift = max((outcome.norm_drift for outcome in outcomes), default=0.0)

    trajectory = None
    if record_trajectory:
        log_p = np.sum([outcome.log_samples for outcome in outcomes], axis=0)
        p_values = np.minimum(1.0, np.exp(log_p))
        fields = [protocol.field_at(float(t)) for t in t_eval]
        trajectory = tuple(
            TrajectoryPoint(float(t), g, float(p), classify_regime(g, protocol.tau_q))
            for t, g, p in zip(t_eval, fields, p_values)
        )

    logger.info(f"淬火结束: p_GS = {p_final:.10g}，ln p_GS = {ln_p:.10g}，最大范数漂移 {drift:.1e}")
    return QuenchResult(protocol, p_final, ln_p, trajectory, drift)


def ghat(tau_q: float) -> float:
    """冻结区半宽 ĝ = 1/√τ_Q（前因子取 1）"""
    if not tau_q > 0:
        raise InvalidParameterError(f"τ_Q 必须为正，实际为 {tau_q}")
    if tau_q < 1.0:
        logger.warning(f"τ_Q={tau_q} < 1，绝热-冲击图像只对慢淬火有意义")
    return 1.0 / math.sqrt(tau_q)


def classify_regime(g: float, tau_q: float) -> QuenchRegime:
    """按 |g - 1| 与 ĝ 的关系划分绝热-冲击三段"""
    width = 1.0 / math.sqrt(tau_q)
    if g > 1.0 + width:
        return QuenchRegime.ADIABATIC_PARA
    if g < 1.0 - width:
        return QuenchRegime.ADIABATIC_FERRO
    return QuenchRegime.IMPULSE


def finite_size_negligible(n: int, tau_q: float, factor: float = FINITE_SIZE_FACTOR) -> bool:
    return n >= factor * math.sqrt(tau_q)


def adiabatic_impulse_p_gs(n: int, tau_q: float, const: float = KZ_CONST) -> float:
    """
    绝热-冲击近似 p_GS ≈ 2·exp(-N·const/√τ_Q)

    前因子 2 来自临界点处 F² 的次领头项；const 默认取尺寸扫描拟合值，可自行标定。
    """
    n = check_size(n)
    if not tau_q > 0:
        raise InvalidParameterError(f"τ_Q 必须为正，实际为 {tau_q}")
    if not finite_size_negligible(n, tau_q):
        logger.warning(f"N={n} 未满足 N ≫ √τ_Q = {math.sqrt(tau_q):.3g}，有限尺寸效应不可忽略")
    return 2.0 * math.exp(-n * const / math.sqrt(tau_q))


def kz_scaling(n: int, tau_q: float, exps: CriticalExponents = CriticalExponents(),
               const: float = KZ_CONST) -> float:
    """exp(-N·const/τ_Q^{dν/(1+zν)})"""
    if n <= 0 or tau_q <= 0 or const <= 0:
        raise InvalidParameterError(f"参数必须为正: n={n}, τ_Q={tau_q}, const={const}")
    return math.exp(-n * const / tau_q ** exps.kz_exponent)


def adiabatic_finite_size(n: int, tau_q: float) -> float:
    """τ_Q ≳ N² 时的有限尺寸绝热结果 1 - exp(-2π³τ_Q/N²)"""
    if n <= 0 or tau_q <= 0:
        raise InvalidParameterError(f"参数必须为正: n={n}, τ_Q={tau_q}")
    return -math.expm1(-2.0 * math.pi ** 3 * tau_q / (n * n))


def size_sweep(tau_q: float, sizes: Iterable[int], tol: float = DEFAULT_TOL, threads: int = 1,
               g_start: float = G_START, g_end: float = G_END) -> List[Tuple[float, float]]:
    """固定 τ_Q 扫描链长，返回 (N, ln p_GS) 点列"""
    points = []
    for n in sizes:
        result = run_quench(QuenchProtocol(int(n), tau_q, g_start, g_end), tol, threads=threads)
        points.append((float(n), result.ln_p_gs))
    return points


def tau_sweep(n: int, taus: Iterable[float], tol: float = DEFAULT_TOL, threads: int = 1,
              g_start: float = G_START, g_end: float = G_END) -> List[Tuple[float, float]]:
    """固定 N 扫描 τ_Q，返回 (1/√τ_Q, ln p_GS) 点列"""
    points = []
    for tau_q in taus:
        result = run_quench(QuenchProtocol(n, float(tau_q), g_start, g_end), tol, threads=threads)
        points.append((1.0 / math.sqrt(tau_q), result.ln_p_gs))
    return points


def kz_const_from_fit(fit: FitResult, tau_q: Optional[float] = None, n: Optional[int] = None) -> float:
    """
    由拟合斜率反推 const

    参数:
        fit: ln p_GS 的线性拟合
        tau_q: 尺寸扫描时的 τ_Q，const = -slope·√τ_Q
        n: τ_Q 扫描时的链长，const = -slope/N
    """
    if (tau_q is None) == (n is None):
        raise InvalidParameterError("tau_q 与 n 必须且只能给出一个")
    if tau_q is not None:
        return -fit.slope * math.sqrt(tau_q)
    return -fit.slope / n


__all__ = [
    "QuenchProtocol",
    "ModeState",
    "QuenchRegime",
    "TrajectoryPoint",
    "QuenchResult",
    "CriticalExponents",
    "mode_hamiltonian",
    "evolve_mode",
    "run_quench",
    "ghat",
    "classify_regime",
    "finite_size_negligible",
    "adiabatic_impulse_p_gs",
    "kz_scaling",
    "adiabatic_finite_size",
    "size_sweep",
    "tau_sweep",
    "kz_const_from_fit",
]
