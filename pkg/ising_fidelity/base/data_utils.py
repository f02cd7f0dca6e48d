# 记录类 from_dict 使用的类型转换函数

from typing import Any


def from_int(x: Any) -> int:
    assert isinstance(x, int) and not isinstance(x, bool)
    return x


def from_float(x: Any) -> float:
    # JSON 中的整数也接受为浮点
    assert isinstance(x, (float, int)) and not isinstance(x, bool)
    return float(x)
