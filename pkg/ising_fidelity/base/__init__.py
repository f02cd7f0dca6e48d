"""
基础工具：记录反序列化与并行映射
"""

from .data_utils import from_float, from_int
from .parallel import parallel_map

__all__ = ["from_float", "from_int", "parallel_map"]
