"""
Chebyshev 伪谱微分矩阵 (CPSDM)

完整矩阵与单行算子。非对角元素由 T_k^(m) 的精确展开给出，
对角元素（单行算子为最后一个元素）采用负和技巧。
"""

import logging
import math
from typing import Sequence, Union

import numpy as np

from app.models.optimization_models import DiffOperator, OperatorKind, EPS_MACH
from .chebyshev_core import (
    ZERO_BRANCH_TOL,
    cgl_nodes,
    cosine_table,
    derivative_profile,
    theta_weights,
)

logger = logging.getLogger(__name__)


def _row_entries(n: int, m: int, x: float, at_zero: bool, skip: int) -> np.ndarray:
    """
    计算一行 d_j^(m)，j != skip；第 skip 个元素取负和

    d_j = (2θ_j/n) Σ_k θ_k cos(jkπ/n) T_k^(m)(x)
    """
    table = cosine_table(n)
    theta = theta_weights(n).values
    weighted = theta * derivative_profile(n, m, x, at_zero=at_zero)
    row = np.zeros(n + 1)
    for j in range(n + 1):
        if j == skip:
            continue
        total = math.fsum(table[j, k] * weighted[k] for k in range(m, n + 1))
        row[j] = 2.0 * theta[j] / n * total
    row[skip] = -math.fsum(row[j] for j in range(n + 1) if j != skip)
    return row


def full_diff_matrix(n: int, m: int) -> DiffOperator:
    """
    (n+1)×(n+1) 的 m 阶微分矩阵

    Args:
        n: 网格阶数
        m: 导数阶数，1 <= m <= n
    """
    if m < 1:
        raise ValueError(f"导数阶数必须 >= 1: m={m}")
    if m > n:
        raise ValueError(f"导数阶数 m={m} 不能超过网格阶数 n={n}")
    nodes = cgl_nodes(n).nodes
    entries = np.empty((n + 1, n + 1))
    for i in range(n + 1):
        at_zero = n % 2 == 0 and i == n // 2
        entries[i] = _row_entries(n, m, nodes[i], at_zero=at_zero, skip=i)
    entries.flags.writeable = False
    logger.debug(f"构建完整微分矩阵: n={n}, m={m}")
    return DiffOperator(order=m, n=n, kind=OperatorKind.FULL, entries=entries)


def row_diff_matrix(m_grid: int, order: int, x_tilde: float) -> DiffOperator:
    """
    单行微分算子：由 CGL 样本给出 x_tilde 处的 order 阶导数

    最后一个元素为其余元素的负和。
    """
    if not abs(x_tilde) <= 1.0:
        raise ValueError(f"求导点超出 [-1,1]: x_tilde={x_tilde}")
    if order < 1:
        raise ValueError(f"导数阶数必须 >= 1: order={order}")
    if m_grid < order:
        raise ValueError(f"网格阶数 m_grid={m_grid} 必须 >= 导数阶数 {order}")
    at_zero = abs(x_tilde) < ZERO_BRANCH_TOL
    entries = _row_entries(m_grid, order, float(x_tilde), at_zero=at_zero, skip=m_grid)
    entries.flags.writeable = False
    return DiffOperator(order=order, n=m_grid, kind=OperatorKind.ROW, entries=entries,
                        eval_point=float(x_tilde))


def apply(op: DiffOperator, samples: Sequence[float]) -> Union[np.ndarray, float]:
    """微分算子作用于样本向量"""
    values = np.asarray(samples, dtype=float)
    if values.shape != (op.n + 1,):
        raise ValueError(f"样本长度 {values.size} 与算子阶数不匹配, 需要 {op.n + 1}")
    if op.kind == OperatorKind.ROW:
        return math.fsum(op.entries * values)
    return op.entries @ values


def roundoff_bound(n: int, order: int, delta: float = EPS_MACH) -> float:
    """
    d_01 元素舍入误差的上界

    一阶为 δ/3·(n−1)(2n−1)，二阶为 δ/15·(2n⁴ − 5n³ + 5n − 2)。
    """
    if order == 1:
        return delta / 3.0 * (n - 1) * (2 * n - 1)
    if order == 2:
        return delta / 15.0 * (2 * n ** 4 - 5 * n ** 3 + 5 * n - 2)
    raise ValueError(f"舍入误差上界只支持 1 阶和 2 阶: order={order}")
