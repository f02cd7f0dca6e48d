"""
最小二乘直线拟合
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np
import statsmodels.api as sm

from ..base.data_utils import from_float
from ..errors import InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FitResult:
    intercept: float
    slope: float
    stderr_intercept: float
    stderr_slope: float
    r_squared: float

    @staticmethod
    def from_dict(obj: Any) -> 'FitResult':
        assert isinstance(obj, dict)
        intercept = from_float(obj.get("intercept"))
        slope = from_float(obj.get("slope"))
        stderr_intercept = from_float(obj.get("stderr_intercept"))
        stderr_slope = from_float(obj.get("stderr_slope"))
        r_squared = from_float(obj.get("r_squared"))
        return FitResult(intercept, slope, stderr_intercept, stderr_slope, r_squared)

    def to_dict(self) -> dict:
        result: dict = {}
        result["intercept"] = from_float(self.intercept)
        result["slope"] = from_float(self.slope)
        result["stderr_intercept"] = from_float(self.stderr_intercept)
        result["stderr_slope"] = from_float(self.stderr_slope)
        result["r_squared"] = from_float(self.r_squared)
        return result


def linear_fit(points: Iterable[Sequence[float]]) -> FitResult:
    """
    普通最小二乘拟合 y = intercept + slope·x

    参数:
        points: (x, y) 序列，至少 3 个点且 x 互不相同

    返回:
        FitResult，标准误由残差方差给出
    """
    data = np.asarray(list(points), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise InvalidParameterError("拟合数据必须是 (x, y) 点列")
    if data.shape[0] < 3:
        raise InvalidParameterError(f"拟合至少需要 3 个点，实际为 {data.shape[0]}")
    x, y = data[:, 0], data[:, 1]
    if np.unique(x).size != x.size:
        raise InvalidParameterError("拟合点的 x 坐标必须互不相同")

    model = sm.OLS(y, sm.add_constant(x, has_constant="add")).fit()
    intercept, slope = (float(v) for v in model.params)
    stderr_intercept, stderr_slope = (float(v) for v in model.bse)
    r_squared = float(model.rsquared)
    if math.isnan(r_squared):
        # y 全相同：直线完全解释数据
        r_squared = 1.0
    r_squared = min(max(r_squared, 0.0), 1.0)

    logger.info(f"线性拟合: 截距 {intercept:.6f} ± {stderr_intercept:.1e}，斜率 {slope:.8f} ± {stderr_slope:.1e}")
    return FitResult(intercept, slope, stderr_intercept, stderr_slope, r_squared)


__all__ = ["FitResult", "linear_fit"]
