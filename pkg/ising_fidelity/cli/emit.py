"""
扫描参数与结果输出
"""
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..errors import InvalidParameterError

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


class Quantity(Enum):
    CHI = "chi"
    CHI_SECTORS = "chi-sectors"
    FIDELITY = "fidelity"
    SCALING = "scaling"
    GAP = "gap"
    QUENCH = "quench"
    FIT_SIZE = "fit-size"
    FIT_TAU = "fit-tau"
    ORACLE = "oracle"


@dataclass(frozen=True)
class SweepSpec:
    """一维扫描：[minimum, maximum] 上等距取 steps 个点"""
    quantity: Quantity
    minimum: float
    maximum: float
    steps: int
    output: Optional[str] = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.steps < 1:
            raise InvalidParameterError(f"steps 至少为 1，实际为 {self.steps}")
        if not self.minimum <= self.maximum:
            raise InvalidParameterError(f"扫描区间要求 min ≤ max，实际为 [{self.minimum}, {self.maximum}]")
        if self.fmt not in FORMATS:
            raise InvalidParameterError(f"未知输出格式 {self.fmt}")

    def values(self) -> List[float]:
        if self.steps == 1:
            return [float(self.minimum)]
        return [float(v) for v in np.linspace(self.minimum, self.maximum, self.steps)]


@dataclass
class CommandOutput:
    columns: Sequence[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    # JSON 输出优先使用 document，缺省时输出 rows
    document: Optional[Dict[str, Any]] = None


def format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def _plain(value: Any) -> Any:
    # numpy 标量转为 JSON 可序列化的内置类型
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    return value


def render(records: Sequence[Dict[str, Any]], fmt: str = "csv", columns: Sequence[str] = None,
           document: Dict[str, Any] = None) -> str:
    """
    把记录渲染成 CSV 或 JSON 文本

    参数:
        records: 行记录，字段顺序即列顺序
        fmt: "csv" 或 "json"
        columns: CSV 表头；为 None 时取第一条记录的键
        document: JSON 输出的完整文档，为 None 时输出 records 列表

    返回:
        以换行结尾的文本
    """
    if fmt == "csv":
        if columns is None:
            columns = list(records[0].keys()) if records else []
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for record in records:
            writer.writerow([format_value(record.get(column, "")) for column in columns])
        return buffer.getvalue()
    if fmt == "json":
        payload = document if document is not None else list(records)
        return json.dumps(_plain(payload), ensure_ascii=False, indent=2) + "\n"
    raise InvalidParameterError(f"未知输出格式 {fmt}，可选 {', '.join(FORMATS)}")


def emit(records: Sequence[Dict[str, Any]], fmt: str = "csv", path: Optional[str] = None,
         columns: Sequence[str] = None, document: Dict[str, Any] = None) -> None:
    """输出到文件或标准输出；写文件失败时抛出 OSError"""
    text = render(records, fmt, columns, document)
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info(f"已写入 {len(records)} 行到 {path}")


__all__ = ["FORMATS", "Quantity", "SweepSpec", "CommandOutput", "format_value", "render", "emit"]
