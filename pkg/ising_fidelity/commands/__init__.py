"""
命令行子命令

每个模块中的函数使用 register_command 装饰器声明参数，启动时自动扫描注册。
"""

__all__ = []
