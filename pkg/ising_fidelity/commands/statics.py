"""
静态量子命令：保真度磁化率、保真度与宇称能隙
"""
import logging
import math
from functools import partial
from typing import Tuple

from ..base.parallel import parallel_map
from ..cli.emit import CommandOutput, Quantity, SweepSpec
from ..cli.registry import arg, register_command
from ..config import ONSET_THRESHOLD
from ..physics.chain import parity_gap
from ..physics.overlap import fidelity
from ..physics.scaling import ln_fidelity_per_site, thermo_onset
from ..physics.susceptibility import chi_exact, chi_minus, chi_plus

logger = logging.getLogger(__name__)

CHI_COLUMNS = ("g", "n", "chi_exact", "chi_plus", "chi_minus")
CHI_SECTOR_COLUMNS = ("g", "n", "chi_plus", "chi_minus", "ratio", "n_over_xi")
FIDELITY_COLUMNS = ("g", "delta", "n", "F", "lnF_per_site", "F_susceptibility", "lnF_thermodynamic")
GAP_COLUMNS = ("g", "n", "gap", "regime")

_G_RANGE = (
    arg("--g-min", type=float, default=0.5, help="磁场下限"),
    arg("--g-max", type=float, default=1.5, help="磁场上限"),
    arg("--steps", type=int, default=101, help="扫描点数"),
)


def _chi_row(g: float, n: int) -> dict:
    return {
        "g": g,
        "n": n,
        "chi_exact": chi_exact(g, n).chi,
        "chi_plus": chi_plus(g, n).chi,
        "chi_minus": chi_minus(g, n).chi,
    }


def _chi_sector_row(g: float, n: int) -> dict:
    plus = chi_plus(g, n).chi
    minus = chi_minus(g, n).chi
    return {
        "g": g,
        "n": n,
        "chi_plus": plus,
        "chi_minus": minus,
        "ratio": plus / minus if minus != 0 else math.inf,
        "n_over_xi": n * abs(math.log(abs(g))),
    }


@register_command(
    name="chi",
    description="保真度磁化率随 g 的扫描：精确值与两个宇称子空间的闭式",
    arguments=(arg("--n", type=int, required=True, help="自旋数"),) + _G_RANGE,
)
def chi_command(args, threads: int) -> CommandOutput:
    spec = SweepSpec(Quantity.CHI, args.g_min, args.g_max, args.steps, args.output, args.format)
    rows = parallel_map(partial(_chi_row, n=args.n), spec.values(), threads)
    return CommandOutput(CHI_COLUMNS, rows)


@register_command(
    name="chi-sectors",
    description="两个宇称子空间的 χ 及其比值，横轴 N/ξ",
    arguments=(arg("--n", type=int, required=True, help="自旋数"),) + _G_RANGE,
)
def chi_sectors_command(args, threads: int) -> CommandOutput:
    spec = SweepSpec(Quantity.CHI_SECTORS, args.g_min, args.g_max, args.steps, args.output, args.format)
    rows = parallel_map(partial(_chi_sector_row, n=args.n), spec.values(), threads)
    return CommandOutput(CHI_SECTOR_COLUMNS, rows)


def _fidelity_row(point: Tuple[float, float, int]) -> dict:
    g, delta, n = point
    result = fidelity(g, delta, n)
    row = result.to_dict()
    row["F_susceptibility"] = 1.0 - 2.0 * chi_exact(g, n).chi * delta * delta if g != 0 else math.nan
    row["lnF_thermodynamic"] = n * ln_fidelity_per_site(g, delta)
    return row


@register_command(
    name="fidelity",
    description="基态保真度 F(g, δ) 沿 g、δ 或 N 的扫描",
    arguments=(
        arg("--vary", choices=("g", "delta", "n"), default="g", help="扫描的变量"),
        arg("--min", dest="minimum", type=float, required=True, help="扫描下限"),
        arg("--max", dest="maximum", type=float, required=True, help="扫描上限"),
        arg("--steps", type=int, default=101, help="扫描点数"),
        arg("--g", type=float, default=1.0, help="固定的 g"),
        arg("--delta", type=float, default=0.01, help="固定的 δ"),
        arg("--n", type=int, default=100, help="固定的自旋数"),
        arg("--threshold", type=float, default=ONSET_THRESHOLD, help="热力学极限判据 N|δ| 的阈值"),
    ),
)
def fidelity_command(args, threads: int) -> CommandOutput:
    spec = SweepSpec(Quantity.FIDELITY, args.minimum, args.maximum, args.steps, args.output, args.format)
    points = []
    for value in spec.values():
        g, delta, n = args.g, args.delta, args.n
        if args.vary == "g":
            g = value
        elif args.vary == "delta":
            delta = value
        else:
            n = int(round(value))
        points.append((g, delta, n))

    below = [p for p in points if not thermo_onset(p[2], p[1], args.threshold).reached]
    if below:
        logger.warning(f"{len(below)} 个扫描点的 N|δ| 低于 {args.threshold}，lnF_thermodynamic 仅作参考")
    rows = parallel_map(_fidelity_row, points, threads)
    return CommandOutput(FIDELITY_COLUMNS, rows)


def _gap_row(g: float, n: int, tol: float) -> dict:
    return parity_gap(g, n, tol).to_dict()


@register_command(
    name="gap",
    description="宇称能隙 ε⁻ - ε⁺ 随 g 的扫描",
    arguments=(arg("--n", type=int, required=True, help="自旋数"),) + _G_RANGE,
)
def gap_command(args, threads: int) -> CommandOutput:
    spec = SweepSpec(Quantity.GAP, args.g_min, args.g_max, args.steps, args.output, args.format)
    rows = parallel_map(partial(_gap_row, n=args.n, tol=args.tol), spec.values(), threads)
    return CommandOutput(GAP_COLUMNS, rows)
