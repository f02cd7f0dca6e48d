"""
小尺寸链的精确对角化

计算基 |b_{N-1} … b_0⟩，b_i = 1 表示第 i 个自旋向下（σ^z = -1）。宇称 P = Π σ^z = (-1)^{popcount}，
σ^x_i σ^x_{i+1} 翻转两个比特，不改变 popcount 的奇偶，因此哈密顿量按宇称分块。
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import integrate, linalg

from ..config import DEFAULT_TOL, ORACLE_MAX_SPINS, ORACLE_QUENCH_MAX_SPINS
from ..errors import IntegrationError, InvalidParameterError, ParityMismatchError
from ..physics.chain import ParitySector, check_size
from ..physics.quench import QuenchProtocol

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DenseState:
    n_spins: int
    amplitudes: np.ndarray
    parity: ParitySector

    def overlap(self, other: 'DenseState') -> float:
        """|⟨self|other⟩|，与本征求解器给出的相位无关"""
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)))


def _check_oracle_size(n: int, limit: int = ORACLE_MAX_SPINS) -> int:
    n = check_size(n)
    if n > limit:
        raise InvalidParameterError(f"精确对角化只支持 2 ≤ n ≤ {limit}，实际为 {n}")
    return n


def _popcount(states: np.ndarray) -> np.ndarray:
    return np.array([bin(int(s)).count("1") for s in states], dtype=int)


def parity_diagonal(n: int) -> np.ndarray:
    """Π σ^z 在计算基下的对角元"""
    states = np.arange(1 << n)
    return 1 - 2 * (_popcount(states) % 2)


def _sector_states(n: int, sector: Optional[ParitySector]) -> np.ndarray:
    states = np.arange(1 << n)
    if sector is None:
        return states
    odd = sector is ParitySector.NEGATIVE
    return states[(_popcount(states) % 2 == 1) == odd]


def _hamiltonian_parts(n: int, sector: Optional[ParitySector]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    # 返回 (键项矩阵, Σσ^z 对角元, 基态列表)，H(g) = bonds - g·diag(field)
    states = _sector_states(n, sector)
    index = {int(s): i for i, s in enumerate(states)}
    bonds = np.zeros((states.size, states.size))
    for col, s in enumerate(states):
        for i in range(n):
            flipped = int(s) ^ ((1 << i) | (1 << ((i + 1) % n)))
            bonds[index[flipped], col] -= 1.0
    field = (n - 2 * _popcount(states)).astype(float)
    return bonds, field, states


def dense_hamiltonian(g: float, n: int, sector: Optional[ParitySector] = None) -> np.ndarray:
    """
    H = -Σ(σ^x_i σ^x_{i+1} + gσ^z_i) 的稠密矩阵

    参数:
        g: 横场
        n: 自旋数
        sector: None 表示整个 2^N 空间，否则只取对应宇称子空间
    """
    n = _check_oracle_size(n)
    bonds, field, _ = _hamiltonian_parts(n, sector)
    return bonds - g * np.diag(field)


def _embed(n: int, states: np.ndarray, vector: np.ndarray) -> np.ndarray:
    amplitudes = np.zeros(1 << n, dtype=complex)
    amplitudes[states] = vector
    return amplitudes


def _sector_ground(g: float, n: int, sector: ParitySector) -> Tuple[DenseState, float]:
    bonds, field, states = _hamiltonian_parts(n, sector)
    energies, vectors = linalg.eigh(bonds - g * np.diag(field), subset_by_index=[0, 0])
    return DenseState(n, _embed(n, states, vectors[:, 0]), sector), float(energies[0])


def dense_ground_state(g: float, n: int, sector: Optional[ParitySector] = None) -> Tuple[DenseState, float]:
    """
    最低本征对

    参数:
        g: 横场
        n: 自旋数，2 ≤ n ≤ 12
        sector: 指定时返回该宇称子空间内的最低态；None 时比较两个子空间，能量相同取正宇称

    返回:
        (DenseState, 能量)
    """
    n = _check_oracle_size(n)
    if sector is not None:
        return _sector_ground(g, n, sector)
    positive = _sector_ground(g, n, ParitySector.POSITIVE)
    negative = _sector_ground(g, n, ParitySector.NEGATIVE)
    return negative if negative[1] < positive[1] else positive


def oracle_fidelity(g: float, delta: float, n: int) -> float:
    """|⟨g-δ|g+δ⟩|，两个基态均由精确对角化得到"""
    lower, _ = dense_ground_state(g - delta, n)
    upper, _ = dense_ground_state(g + delta, n)
    if lower.parity is not upper.parity:
        raise ParityMismatchError(f"g-δ 与 g+δ 的精确基态宇称不同（n={n}）")
    return lower.overlap(upper)


def oracle_parity_gap(g: float, n: int) -> float:
    """E₀(负宇称) - E₀(正宇称)"""
    n = _check_oracle_size(n)
    _, e_plus = _sector_ground(g, n, ParitySector.POSITIVE)
    _, e_minus = _sector_ground(g, n, ParitySector.NEGATIVE)
    return e_minus - e_plus


def oracle_quench(protocol: QuenchProtocol, tol: float = DEFAULT_TOL) -> float:
    """
    在正宇称子空间内积分完整的薛定谔方程

    参数:
        protocol: 淬火协议，n_spins ≤ 10
        tol: 积分容差

    返回:
        终态处于 g_end 正宇称基态的概率 |⟨gs|ψ⟩|²
    """
    n = _check_oracle_size(protocol.n_spins, ORACLE_QUENCH_MAX_SPINS)
    bonds, field, states = _hamiltonian_parts(n, ParitySector.POSITIVE)
    start, _ = _sector_ground(protocol.g_start, n, ParitySector.POSITIVE)
    final_gs, _ = _sector_ground(protocol.g_end, n, ParitySector.POSITIVE)

    def rhs(t: float, psi: np.ndarray) -> np.ndarray:
        g = -t / protocol.tau_q
        return -1j * (bonds @ psi - g * field * psi)

    sol = integrate.solve_ivp(
        rhs, (protocol.t_start, protocol.t_end), start.amplitudes[states],
        method="DOP853", rtol=tol, atol=tol,
    )
    if not sol.success:
        raise IntegrationError(f"完整态演化失败: {sol.message}", math.nan)

    psi = sol.y[:, -1]
    p_gs = float(abs(np.vdot(final_gs.amplitudes[states], psi)) ** 2)
    logger.info(f"完整态淬火 N={n}, τ_Q={protocol.tau_q}: p_GS = {p_gs:.10g}，右端求值 {sol.nfev} 次")
    return p_gs


__all__ = [
    "DenseState",
    "parity_diagonal",
    "dense_hamiltonian",
    "dense_ground_state",
    "oracle_fidelity",
    "oracle_parity_gap",
    "oracle_quench",
]
