"""
命令行模块

提供子命令注册、参数解析和 CSV/JSON 输出。
"""
from .emit import CommandOutput, Quantity, SweepSpec, emit, render
from .main import run
from .registry import arg, register_command, scan_commands

__all__ = ["CommandOutput", "Quantity", "SweepSpec", "emit", "render", "run", "arg", "register_command", "scan_commands"]
