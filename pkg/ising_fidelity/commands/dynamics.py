"""
淬火命令：p_GS 轨迹以及随链长、τ_Q 的线性拟合
"""
import logging
import math

import numpy as np

from ..cli.emit import CommandOutput
from ..cli.registry import arg, register_command
from ..config import FIT_SIZE_RANGE, FIT_SIZE_TAU_Q, FIT_TAU_N, FIT_TAU_RANGE, G_END, G_START, KZ_CONST, TRAJECTORY_SAMPLES
from ..errors import InvalidParameterError
from ..physics.fits import linear_fit
from ..physics.quench import (
    QuenchProtocol,
    adiabatic_impulse_p_gs,
    kz_const_from_fit,
    run_quench,
    size_sweep,
    tau_sweep,
)

logger = logging.getLogger(__name__)

TRAJECTORY_COLUMNS = ("t", "g", "p_instantaneous", "regime")

_FIELD_RANGE = (
    arg("--g-start", type=float, default=G_START, help="初始磁场，默认为 5"),
    arg("--g-end", type=float, default=G_END, help="终止磁场，默认为 0"),
)


@register_command(
    name="quench",
    description="线性淬火过程中处于瞬时基态的概率 p_GS(t)",
    arguments=(
        arg("--n", type=int, required=True, help="自旋数（偶数）"),
        arg("--tau-q", type=float, required=True, help="淬火时间 τ_Q"),
        arg("--samples", type=int, default=TRAJECTORY_SAMPLES, help="轨迹采样点数"),
    ) + _FIELD_RANGE,
)
def quench_command(args, threads: int) -> CommandOutput:
    protocol = QuenchProtocol(args.n, args.tau_q, args.g_start, args.g_end)
    result = run_quench(protocol, args.tol, record_trajectory=True, samples=args.samples, threads=threads)
    logger.info(f"绝热-冲击近似给出 p_GS ≈ {adiabatic_impulse_p_gs(args.n, args.tau_q):.6g}")
    rows = [point.to_dict() for point in result.trajectory]
    return CommandOutput(TRAJECTORY_COLUMNS, rows)


def _fit_document(points, x_name: str, kz_const: float, fit) -> dict:
    document = fit.to_dict()
    document["kz_const"] = kz_const
    document["points"] = [{x_name: x, "ln_p_gs": y} for x, y in points]
    return document


@register_command(
    name="fit-size",
    description="固定 τ_Q 扫描链长，拟合 ln p_GS = a + b·N",
    arguments=(
        arg("--tau-q", type=float, default=FIT_SIZE_TAU_Q, help="淬火时间 τ_Q"),
        arg("--n-min", type=int, default=FIT_SIZE_RANGE[0], help="最小链长"),
        arg("--n-max", type=int, default=FIT_SIZE_RANGE[1], help="最大链长"),
        arg("--n-step", type=int, default=FIT_SIZE_RANGE[2], help="链长步长"),
    ) + _FIELD_RANGE,
)
def fit_size_command(args, threads: int) -> CommandOutput:
    if args.n_step <= 0 or args.n_min > args.n_max:
        raise InvalidParameterError(f"链长范围无效: {args.n_min}..{args.n_max} 步长 {args.n_step}")
    sizes = range(args.n_min, args.n_max + 1, args.n_step)
    points = size_sweep(args.tau_q, sizes, args.tol, threads, args.g_start, args.g_end)
    fit = linear_fit(points)
    kz_const = kz_const_from_fit(fit, tau_q=args.tau_q)
    logger.info(f"由斜率得到 const = {kz_const:.6f}（默认值 {KZ_CONST}）")
    rows = [{"n": x, "ln_p_gs": y} for x, y in points]
    return CommandOutput(("n", "ln_p_gs"), rows, _fit_document(points, "n", kz_const, fit))


@register_command(
    name="fit-tau",
    description="固定链长扫描 τ_Q，拟合 ln p_GS = a + b/√τ_Q",
    arguments=(
        arg("--n", type=int, default=FIT_TAU_N, help="自旋数"),
        arg("--tau-min", type=float, default=FIT_TAU_RANGE[0], help="最小 τ_Q"),
        arg("--tau-max", type=float, default=FIT_TAU_RANGE[1], help="最大 τ_Q"),
        arg("--tau-step", type=float, default=FIT_TAU_RANGE[2], help="τ_Q 步长"),
    ) + _FIELD_RANGE,
)
def fit_tau_command(args, threads: int) -> CommandOutput:
    if args.tau_step <= 0 or args.tau_min > args.tau_max or args.tau_min <= 0:
        raise InvalidParameterError(f"τ_Q 范围无效: {args.tau_min}..{args.tau_max} 步长 {args.tau_step}")
    count = int(math.floor((args.tau_max - args.tau_min) / args.tau_step + 1e-9)) + 1
    taus = [float(t) for t in args.tau_min + args.tau_step * np.arange(count)]
    points = tau_sweep(args.n, taus, args.tol, threads, args.g_start, args.g_end)
    fit = linear_fit(points)
    kz_const = kz_const_from_fit(fit, n=args.n)
    logger.info(f"由斜率得到 const = {kz_const:.6f}（默认值 {KZ_CONST}）")
    rows = [{"inv_sqrt_tau_q": x, "ln_p_gs": y} for x, y in points]
    return CommandOutput(("inv_sqrt_tau_q", "ln_p_gs"), rows, _fit_document(points, "inv_sqrt_tau_q", kz_const, fit))
