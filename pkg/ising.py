#!/usr/bin/env python3
"""
横场 Ising 链保真度计算的命令行启动脚本

示例:
    python ising.py chi --n 40 --g-min 0.5 --g-max 1.5 --steps 1000
    python ising.py fit-size --tau-q 50 --format json
"""

import sys
from pathlib import Path

# 添加项目根目录到 Python 路径
sys.path.append(str(Path(__file__).parent.absolute()))

from ising_fidelity.cli.main import run


if __name__ == "__main__":
    sys.exit(run())
