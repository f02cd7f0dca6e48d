"""
配置模块

该模块集中管理物理与数值默认值，命令行参数可以逐项覆盖。
"""

import logging
import os
from typing import Optional

logger = logging.getLogger(__name__)

# 淬火协议 g(t) = -t/τ_Q 的起止磁场
G_START = 5.0
G_END = 0.0

# 积分器与数值积分的默认容差
DEFAULT_TOL = 1e-10

# 热力学极限判据 N|δ| 的阈值
ONSET_THRESHOLD = 10.0

# 有限差分求 χ 的默认步长
FD_STEP = 1e-5

# 淬火轨迹采样点数
TRAJECTORY_SAMPLES = 201

# ln p_GS = ln2 - N·const/√τ_Q 中的常数，由 τ_Q=50 的尺寸扫描拟合得到
KZ_CONST = 0.14708

# 有限尺寸效应可忽略的判据 N ≥ FINITE_SIZE_FACTOR·√τ_Q
FINITE_SIZE_FACTOR = 10.0

# |c| = 1 附近标度函数连续性检查所用的偏移
SCALING_EPS = 1e-4

# 精确对角化的尺寸上限
ORACLE_MAX_SPINS = 12
ORACLE_QUENCH_MAX_SPINS = 10

# 拟合扫描默认值
FIT_SIZE_TAU_Q = 50.0
FIT_SIZE_RANGE = (100, 1000, 100)
FIT_TAU_N = 150
FIT_TAU_RANGE = (50.0, 150.0, 10.0)

# 线程数环境变量
THREADS_ENV = "ISING_THREADS"


def resolve_threads(flag: Optional[int] = None) -> int:
    """
    决定工作进程数

    参数:
        flag: 命令行 --threads 的取值，None 表示未指定

    返回:
        进程数，优先级为 命令行 > 环境变量 ISING_THREADS > CPU 核数
    """
    if flag is not None:
        return max(1, int(flag))
    env_value = os.environ.get(THREADS_ENV)
    if env_value:
        try:
            return max(1, int(env_value))
        except ValueError:
            logger.warning(f"环境变量 {THREADS_ENV}={env_value!r} 不是整数，已忽略")
    return os.cpu_count() or 1


__all__ = [
    "G_START",
    "G_END",
    "DEFAULT_TOL",
    "ONSET_THRESHOLD",
    "FD_STEP",
    "TRAJECTORY_SAMPLES",
    "KZ_CONST",
    "FINITE_SIZE_FACTOR",
    "SCALING_EPS",
    "ORACLE_MAX_SPINS",
    "ORACLE_QUENCH_MAX_SPINS",
    "FIT_SIZE_TAU_Q",
    "FIT_SIZE_RANGE",
    "FIT_TAU_N",
    "FIT_TAU_RANGE",
    "THREADS_ENV",
    "resolve_threads",
]
