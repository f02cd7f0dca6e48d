"""
命令行入口

退出码：0 成功，2 参数错误，3 数值失败或输出失败。
"""
import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from ..config import DEFAULT_TOL, resolve_threads
from .emit import FORMATS, emit
from .registry import scan_commands

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv", help="输出格式，默认为 csv")
    common.add_argument("--output", default=None, help="输出文件路径，默认写到标准输出")
    common.add_argument("--threads", type=int, default=None,
                        help="工作进程数，默认取环境变量 ISING_THREADS 或 CPU 核数")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="积分容差，默认为 1e-10")
    common.add_argument("--debug", action="store_true", help="启用调试日志")
    return common


def build_parser(commands: Dict[str, Callable]) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ising", description="横场 Ising 链保真度与淬火动力学计算")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    common = _common_options()
    for name in sorted(commands):
        info = commands[name]._command_info
        summary = info['description'].strip().splitlines()[0] if info['description'].strip() else name
        sub = subparsers.add_parser(name, parents=[common], help=summary, description=info['description'])
        for flags, kwargs in info['arguments']:
            sub.add_argument(*flags, **kwargs)
        sub.set_defaults(handler=commands[name])
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    解析命令行并执行子命令

    参数:
        argv: 参数列表，None 表示 sys.argv[1:]

    返回:
        退出码
    """
    commands = scan_commands()
    parser = build_parser(commands)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 已把用法写到标准错误
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    log_level = logging.DEBUG if args.debug else logging.INFO
    logging.basicConfig(level=log_level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(log_level)

    threads = resolve_threads(args.threads)
    logger.debug(f"执行命令 {args.command}，进程数 {threads}")
    try:
        output = args.handler(args, threads)
        emit(output.rows, args.format, args.output, output.columns, output.document)
    except ValueError as e:
        logger.error(f"命令 {args.command} 参数错误: {e}")
        return EXIT_USAGE
    except (ArithmeticError, OSError) as e:
        logger.error(f"命令 {args.command} 执行失败: {e}")
        return EXIT_NUMERIC
    return EXIT_OK


def main() -> None:
    sys.exit(run())


__all__ = ["EXIT_OK", "EXIT_USAGE", "EXIT_NUMERIC", "build_parser", "run", "main"]
