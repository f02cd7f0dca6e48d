"""
异常定义

参数校验类错误同时继承 ValueError，数值失败类错误同时继承 ArithmeticError，
命令行据此映射退出码。
"""


class IsingError(Exception):
    """本库所有异常的基类"""


class InvalidParameterError(IsingError, ValueError):
    """参数超出定义域"""


class DegenerateModeError(IsingError, ValueError):
    """Bogoliubov 角在 (g, k) = (1, 0) 或 (-1, π) 处无定义"""


class AmbiguousParityError(IsingError, ValueError):
    """奇数链在 g = 0 处基态宇称不确定"""


class ParityMismatchError(IsingError, ValueError):
    """g-δ 与 g+δ 的基态落在不同宇称子空间"""


class CorrelationLengthDivergence(IsingError, ValueError):
    """|g| = 1 处关联长度发散"""


class QuadratureError(IsingError, ArithmeticError):
    """数值积分未达到要求精度"""

    def __init__(self, message: str, achieved_error: float):
        super().__init__(message)
        self.achieved_error = achieved_error

    def __reduce__(self):
        # 进程池把异常 pickle 回主进程时需要完整的构造参数
        return self.__class__, (str(self), self.achieved_error)


class IntegrationError(IsingError, ArithmeticError):
    """常微分方程积分失败（步长下溢等）"""

    def __init__(self, message: str, k: float):
        super().__init__(message)
        self.k = k

    def __reduce__(self):
        return self.__class__, (str(self), self.k)


__all__ = [
    "IsingError",
    "InvalidParameterError",
    "DegenerateModeError",
    "AmbiguousParityError",
    "ParityMismatchError",
    "CorrelationLengthDivergence",
    "QuadratureError",
    "IntegrationError",
]
