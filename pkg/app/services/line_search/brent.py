"""
Brent 一维极小化（黄金分割 + 逐次抛物插值）
"""

import logging
from dataclasses import dataclass
from typing import Callable

logger = logging.getLogger(__name__)

GOLDEN = 0.381966011250105097  # 1 − 1/ρ
REL_TOL = 1e-12


@dataclass
class BrentResult:
    """Brent 搜索结果"""
    t: float
    f: float
    iterations: int
    converged: bool


def brent_minimize(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10,
                   cap: int = 200, rel_tol: float = REL_TOL) -> BrentResult:
    """
    在 [a, b] 上用 Brent 方法求极小

    Args:
        f: 目标函数
        a, b: 搜索区间
        tol: 绝对容差
        cap: 迭代上限，超过时返回当前最优点并标记未收敛
    """
    if not a < b:
        raise ValueError(f"Brent区间无效: a={a} 必须小于 b={b}")
    x = a + GOLDEN * (b - a)
    fx = f(x)
    x_sec, fx_sec = x, fx  # 次优点
    x_trd, fx_trd = x, fx  # 第三优点
    d, e = 0.0, 0.0  # 最近两步的步长
    converged = False
    iterations = 0

    for iterations in range(1, cap + 1):
        mid = 0.5 * (a + b)
        tol1 = rel_tol * abs(x) + tol
        tol2 = 2.0 * tol1
        if abs(x - mid) <= tol2 - 0.5 * (b - a):
            converged = True
            iterations -= 1
            break

        if abs(e) > tol1:
            # 过三个最优点的抛物线
            r = (x - x_sec) * (fx - fx_trd)
            q = (x - x_trd) * (fx - fx_sec)
            p = (x - x_trd) * q - (x - x_sec) * r
            q = 2.0 * (q - r)
            if q > 0.0:
                p = -p
            q = abs(q)
            e_prev = e
            e = d
            if abs(p) >= abs(0.5 * q * e_prev) or p <= q * (a - x) or p >= q * (b - x):
                e = b - x if x < mid else a - x
                d = GOLDEN * e
            else:
                d = p / q
                u = x + d
                if u - a < tol2 or b - u < tol2:
                    d = tol1 if x < mid else -tol1
        else:
            e = b - x if x < mid else a - x
            d = GOLDEN * e

        # 不在距 x 小于 tol1 的位置求值
        if abs(d) >= tol1:
            u = x + d
        elif d > 0.0:
            u = x + tol1
        else:
            u = x - tol1
        fu = f(u)

        if fu <= fx:
            if u >= x:
                a = x
            else:
                b = x
            x_trd, fx_trd = x_sec, fx_sec
            x_sec, fx_sec = x, fx
            x, fx = u, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu <= fx_sec or x_sec == x:
                x_trd, fx_trd = x_sec, fx_sec
                x_sec, fx_sec = u, fu
            elif fu <= fx_trd or x_trd == x or x_trd == x_sec:
                x_trd, fx_trd = u, fu

    if not converged:
        logger.warning(f"Brent 搜索达到迭代上限 {cap}, 返回当前最优点 {x:.12g}")
    return BrentResult(t=x, f=fx, iterations=iterations, converged=converged)
