"""
并行映射

扫描点与动量模式彼此独立，用进程池并行计算，结果按输入顺序返回。
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    对 items 逐项调用 func

    参数:
        func: 可被 pickle 的模块级函数（或其 functools.partial）
        items: 输入序列
        threads: 进程数，≤ 1 时串行执行

    返回:
        与输入顺序一致的结果列表
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    workers = min(threads, len(items))
    chunksize = max(1, len(items) // (4 * workers))
    logger.debug(f"并行计算 {len(items)} 项，进程数 {workers}，块大小 {chunksize}")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items, chunksize=chunksize))
