"""
子命令注册

commands 包中的函数用 register_command 装饰后，由 scan_commands 自动扫描并注册为
argparse 子命令。
"""
import importlib
import logging
import os
import pkgutil
from typing import Any, Callable, Dict, Sequence, Tuple

logger = logging.getLogger(__name__)

Argument = Tuple[Tuple[str, ...], Dict[str, Any]]


def arg(*flags: str, **kwargs: Any) -> Argument:
    """子命令参数声明，参数与 ArgumentParser.add_argument 相同"""
    return flags, kwargs


def register_command(name: str = None, description: str = None, arguments: Sequence[Argument] = ()):
    """
    子命令注册装饰器

    参数:
        name: 子命令名称，默认为函数名
        description: 帮助文本，默认为函数文档
        arguments: 由 arg(...) 构成的参数列表
    """
    def decorator(func: Callable) -> Callable:
        func._command_info = {
            'name': name or func.__name__.replace("_", "-"),
            'description': description or func.__doc__ or "",
            'arguments': tuple(arguments),
        }
        return func
    return decorator


def scan_commands() -> Dict[str, Callable]:
    """自动扫描 commands 包并返回 名称 → 函数"""
    import ising_fidelity.commands

    commands: Dict[str, Callable] = {}
    commands_path = os.path.dirname(ising_fidelity.commands.__file__)
    for _, module_name, _ in pkgutil.iter_modules([commands_path]):
        try:
            module = importlib.import_module(f"ising_fidelity.commands.{module_name}")
            logger.debug(f"已加载命令模块: ising_fidelity.commands.{module_name}")
        except ImportError as e:
            logger.error(f"加载命令模块 ising_fidelity.commands.{module_name} 时出错: {e}")
            continue

        for attr_name in dir(module):
            attr = getattr(module, attr_name)
            if callable(attr) and hasattr(attr, '_command_info'):
                command_name = attr._command_info['name']
                commands[command_name] = attr
                logger.debug(f"已注册命令: {command_name}")
    return commands


__all__ = ["Argument", "arg", "register_command", "scan_commands"]
