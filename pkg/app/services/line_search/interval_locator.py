"""
不确定区间定位
在等分网格上找极小节点，落在端点时按 ρ^k 向外扩展
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from app.models.optimization_models import LineSearchConfig
from .golden_section import RHO_1

logger = logging.getLogger(__name__)


@dataclass
class IntervalBracket:
    """定位结果"""
    a: float
    b: float
    iterations: int
    found: bool

    @property
    def interval(self) -> Optional[Tuple[float, float]]:
        return (self.a, self.b) if self.found else None


def _expand_left(a: float, factor: float) -> float:
    if a > 0.0:
        a = a / factor
        if a < 1.0:
            a = -1.0 / a
    elif a < 0.0:
        a = a * factor
    else:
        a = -factor
    return a


def _expand_right(b: float, factor: float) -> float:
    if b > 0.0:
        b = b * factor
    elif b < 0.0:
        b = b / factor
        if b > -1.0:
            b = -1.0 / b
    else:
        b = factor
    return b


def locate_uncertainty_interval(f: Callable[[float], float], a: float, b: float,
                                config: Optional[LineSearchConfig] = None,
                                rightward_only: Optional[bool] = None) -> IntervalBracket:
    """
    定位包含局部极小的不确定区间

    Args:
        f: 目标函数
        a, b: 初始区间
        config: 使用其中的 l_sub 与 k_max
        rightward_only: 只向右扩展，左端点不会越过初始 a

    Returns:
        IntervalBracket，found=False 表示 k_max 次扩展后仍未包住极小
    """
    config = config or LineSearchConfig()
    if rightward_only is None:
        rightward_only = config.rightward_only
    if not a < b:
        raise ValueError(f"初始区间无效: a={a} 必须小于 b={b}")
    l_sub = config.l_sub

    for k in range(1, config.k_max + 1):
        nodes = np.linspace(a, b, l_sub + 1)
        values = [f(float(t)) for t in nodes]
        j = int(np.argmin(values))
        if 0 < j < l_sub:
            logger.debug(f"区间定位第{k}次: 内部极小节点 j={j}")
            return IntervalBracket(float(nodes[j - 1]), float(nodes[j + 1]), k, True)

        factor = RHO_1 ** k
        if j == 0:
            if rightward_only:
                return IntervalBracket(float(nodes[0]), float(nodes[1]), k, True)
            b = float(nodes[1])
            a = _expand_left(a, factor)
        else:
            a = float(nodes[l_sub - 1])
            b = _expand_right(b, factor)
        logger.debug(f"区间定位第{k}次: 扩展为 [{a:.12g}, {b:.12g}]")

    logger.warning(f"区间定位失败: {config.k_max} 次扩展后仍未包住极小")
    return IntervalBracket(a, b, config.k_max, False)
