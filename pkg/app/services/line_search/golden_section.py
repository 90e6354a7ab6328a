"""
单步黄金分割
两轮比较把不确定区间缩小为原来的 1/ρ²
"""

import logging
from dataclasses import dataclass
from typing import Callable

logger = logging.getLogger(__name__)

RHO_1 = 1.618033988749895  # 黄金比 ρ
RHO_2 = 2.618033988749895  # ρ²


@dataclass
class GoldenStep:
    """单步黄金分割的结果"""
    t_best: float
    t_second: float  # 另一个已求值的探测点（落在新区间端点上）
    a: float
    b: float
    converged: bool


def golden_section_step(f: Callable[[float], float], a: float, b: float,
                        eps: float = 1e-10) -> GoldenStep:
    """
    单步黄金分割搜索

    Args:
        f: 目标函数
        a, b: 当前区间
        eps: b'−a' <= eps 时标记收敛

    Returns:
        GoldenStep，t_best 为候选极小点
    """
    if not a < b:
        raise ValueError(f"黄金分割区间无效: a={a} 必须小于 b={b}")
    e = b - a
    t1 = a + e / RHO_2
    t2 = a + e / RHO_1
    f1, f2 = f(t1), f(t2)
    if f1 < f2:
        b = t2
        t2, f2 = t1, f1
        t1 = a + (b - a) / RHO_2
        f1 = f(t1)
    else:
        a = t1
        t1, f1 = t2, f2
        t2 = a + (b - a) / RHO_1
        f2 = f(t2)

    if f1 < f2:
        t_best, t_second = t1, t2
        b = t2
    else:
        t_best, t_second = t2, t1
        a = t1
    converged = b - a <= eps
    logger.debug(f"黄金分割: 新区间 [{a:.12g}, {b:.12g}], 候选 {t_best:.12g}")
    return GoldenStep(t_best=t_best, t_second=t_second, a=a, b=b, converged=converged)
